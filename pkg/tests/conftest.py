import sys
from pathlib import Path

import numpy as np
import pytest

from fdematel import TriangularFuzzyNumber, load_case_study

# make the oracle module importable regardless of invocation directory
sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture(scope="session")
def study():
    return load_case_study()


def random_tfn(rng, lo=0.0, hi=1.0):
    a, b, c = np.sort(rng.uniform(lo, hi, size=3))
    return TriangularFuzzyNumber(float(a), float(b), float(c))


def random_panel(rng, k=None, lo=0.0, hi=1.0):
    if k is None:
        k = int(rng.integers(1, 7))
    return [random_tfn(rng, lo, hi) for _ in range(k)]
