"""Fuzzy DEMATEL: linguistic expert judgments to cause-effect factor analysis.

The pipeline: parse a survey (or a crisp matrix), defuzzify fuzzy judgment
panels into a direct-relation matrix, normalize it, solve for the
total-relation matrix, score every factor by prominence and relation, and
extract the critical success factors from the cause group.
"""
from ._version import __version__
from .cfcs import (
    CfcsTrace,
    DefuzzMode,
    ExpertTrace,
    FuzzyAssessmentPanel,
    FuzzyCellPanel,
    centroid,
    cfcs_cell,
    defuzzify_matrix,
)
from .engine import (
    CsfRule,
    DematelResult,
    DirectRelationMatrix,
    Factor,
    FactorCatalog,
    FactorScore,
    Group,
    NormalizedMatrix,
    TotalRelationMatrix,
    analyze,
    compute_scores,
    extract_csf,
    normalize,
    total_relation,
)
from .fuzzy import (
    DEFAULT_SCALE,
    LinguisticScale,
    LinguisticTerm,
    TriangularFuzzyNumber,
    fuzzy_add,
    fuzzy_div,
    fuzzy_mean,
    fuzzy_mul,
    fuzzy_scale,
    fuzzy_sub,
    term_to_fuzzy,
)
from .io import (
    ExpertResponses,
    ExpectedScore,
    Judgment,
    CaseStudyFixture,
    SurveyDocument,
    load_case_study,
    parse_crisp_matrix,
    parse_survey,
    serialize_survey,
)
from .diagram import diagram_points, emit_diagram
from .report import build_report, render_json, render_reproduction, run_reproduction

__all__ = [
    "__version__",
    "CfcsTrace",
    "CsfRule",
    "DEFAULT_SCALE",
    "DefuzzMode",
    "DematelResult",
    "DirectRelationMatrix",
    "ExpertResponses",
    "ExpertTrace",
    "ExpectedScore",
    "Factor",
    "FactorCatalog",
    "FactorScore",
    "FuzzyAssessmentPanel",
    "FuzzyCellPanel",
    "Group",
    "Judgment",
    "LinguisticScale",
    "LinguisticTerm",
    "NormalizedMatrix",
    "CaseStudyFixture",
    "SurveyDocument",
    "TotalRelationMatrix",
    "TriangularFuzzyNumber",
    "analyze",
    "build_report",
    "centroid",
    "cfcs_cell",
    "compute_scores",
    "defuzzify_matrix",
    "diagram_points",
    "emit_diagram",
    "extract_csf",
    "fuzzy_add",
    "fuzzy_div",
    "fuzzy_mean",
    "fuzzy_mul",
    "fuzzy_scale",
    "fuzzy_sub",
    "load_case_study",
    "normalize",
    "parse_crisp_matrix",
    "parse_survey",
    "render_json",
    "render_reproduction",
    "run_reproduction",
    "serialize_survey",
    "term_to_fuzzy",
    "total_relation",
]
