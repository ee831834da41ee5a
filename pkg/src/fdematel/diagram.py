"""Cause-effect diagram emitters: JSON records, static SVG, Graphviz DOT.

Convention: x is prominence (r + c), y is relation (r - c); the horizontal
zero line separates the cause group (above) from the effect group (below).
"""
from __future__ import annotations

import json

from .engine import DematelResult, Group
from .report import canonical_numbers

SVG_WIDTH = 880
SVG_HEIGHT = 600
MARGIN_LEFT = 70
MARGIN_RIGHT = 40
MARGIN_TOP = 40
MARGIN_BOTTOM = 60

CAUSE_COLOR = "#2166ac"
EFFECT_COLOR = "#b2182b"


def diagram_points(result: DematelResult) -> list:
    return [
        {"id": s.id, "name": s.name, "x": s.prominence, "y": s.relation, "group": s.group.value}
        for s in result.scores
    ]


def emit_diagram(result: DematelResult, fmt: str = "json") -> str:
    """Render the cause-effect scatter in the requested format."""
    kind = fmt.strip().lower()
    if kind == "json":
        return json.dumps(canonical_numbers(diagram_points(result)), indent=2)
    if kind == "svg":
        return _svg(result)
    if kind == "dot":
        return _dot(result)
    raise ValueError(f"unknown diagram format {fmt!r} (expected svg, dot or json)")


def _axis_range(values, always_include_zero=False):
    lo, hi = min(values), max(values)
    if always_include_zero:
        lo, hi = min(lo, 0.0), max(hi, 0.0)
    span = hi - lo
    pad = 0.05 * span if span > 0 else 1.0
    return lo - pad, hi + pad


def _svg(result: DematelResult) -> str:
    points = diagram_points(result)
    x_lo, x_hi = _axis_range([p["x"] for p in points])
    y_lo, y_hi = _axis_range([p["y"] for p in points], always_include_zero=True)
    plot_w = SVG_WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = SVG_HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

    def sx(v):
        return MARGIN_LEFT + (v - x_lo) / (x_hi - x_lo) * plot_w

    def sy(v):
        # SVG y grows downward
        return MARGIN_TOP + (y_hi - v) / (y_hi - y_lo) * plot_h

    zero_y = sy(0.0)
    out = []
    out.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{SVG_WIDTH}" height="{SVG_HEIGHT}" viewBox="0 0 {SVG_WIDTH} {SVG_HEIGHT}">'
    )
    out.append(f'<rect x="0" y="0" width="{SVG_WIDTH}" height="{SVG_HEIGHT}" fill="white"/>')
    out.append(
        f'<rect class="frame" x="{MARGIN_LEFT}" y="{MARGIN_TOP}" width="{plot_w}" height="{plot_h}" '
        f'fill="none" stroke="#444444" stroke-width="1"/>'
    )
    out.append(
        f'<line class="zero-line" x1="{MARGIN_LEFT}" y1="{zero_y:.2f}" '
        f'x2="{MARGIN_LEFT + plot_w}" y2="{zero_y:.2f}" '
        f'stroke="#888888" stroke-width="1" stroke-dasharray="6 4"/>'
    )
    out.append(
        f'<text x="{MARGIN_LEFT + plot_w / 2:.2f}" y="{SVG_HEIGHT - 18}" '
        f'text-anchor="middle" font-family="sans-serif" font-size="13">prominence (r + c)</text>'
    )
    out.append(
        f'<text x="20" y="{MARGIN_TOP + plot_h / 2:.2f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13" '
        f'transform="rotate(-90 20 {MARGIN_TOP + plot_h / 2:.2f})">relation (r - c)</text>'
    )
    for v in (x_lo, (x_lo + x_hi) / 2, x_hi):
        out.append(
            f'<text x="{sx(v):.2f}" y="{MARGIN_TOP + plot_h + 16}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{v:.2f}</text>'
        )
    for v in (y_lo, 0.0, y_hi):
        out.append(
            f'<text x="{MARGIN_LEFT - 8}" y="{sy(v) + 4:.2f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{v:.2f}</text>'
        )
    for p in points:
        color = CAUSE_COLOR if p["group"] == Group.CAUSE.value else EFFECT_COLOR
        cx, cy = sx(p["x"]), sy(p["y"])
        out.append(
            f'<circle class="point" cx="{cx:.2f}" cy="{cy:.2f}" r="4" '
            f'fill="{color}" fill-opacity="0.85"><title>{_esc(p["name"])}</title></circle>'
        )
        out.append(
            f'<text class="point-label" x="{cx + 6:.2f}" y="{cy - 5:.2f}" '
            f'font-family="sans-serif" font-size="10">{_esc(p["id"])}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _esc(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _dot(result: DematelResult) -> str:
    out = []
    out.append("graph cause_effect_diagram {")
    out.append('  // x = prominence (r + c), y = relation (r - c)')
    out.append("  layout=neato;")
    out.append('  node [shape=point, width=0.1];')
    for p in diagram_points(result):
        color = CAUSE_COLOR if p["group"] == Group.CAUSE.value else EFFECT_COLOR
        out.append(
            f'  "{p["id"]}" [pos="{p["x"]:.6f},{p["y"]:.6f}!", xlabel="{p["id"]}", '
            f'color="{color}", tooltip="{p["name"]}"];'
        )
    out.append("}")
    return "\n".join(out) + "\n"
