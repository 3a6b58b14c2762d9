"""Minimal SVG rendering of Lorenz curves, no plotting dependencies.

Output is a fixed-size square chart: axes, the perfect-equity diagonal,
the curve polyline, and a Gini annotation.  All coordinates are formatted
with fixed precision so identical inputs produce identical bytes.
"""

from __future__ import annotations

from .equity import LorenzCurve

_SIZE = 480
_MARGIN = 48
_PLOT = _SIZE - 2 * _MARGIN


def _px(x: float, y: float) -> tuple[float, float]:
    """Unit square -> pixel coordinates (SVG y grows downward)."""
    return _MARGIN + x * _PLOT, _SIZE - _MARGIN - y * _PLOT


def lorenz_svg(curve: LorenzCurve, gini_value: float, title: str) -> str:
    """Render one Lorenz curve as a standalone SVG document."""
    x0, y0 = _px(0.0, 0.0)
    x1, y1 = _px(1.0, 1.0)
    curve_points = " ".join(f"{px:.2f},{py:.2f}" for px, py in (_px(x, y) for x, y in curve.points))
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SIZE}" height="{_SIZE}" '
        f'viewBox="0 0 {_SIZE} {_SIZE}">',
        '<rect x="0" y="0" width="100%" height="100%" fill="#ffffff"/>',
        f'<text x="{_SIZE / 2:.1f}" y="24" text-anchor="middle" font-size="16" '
        f'font-family="sans-serif">{_escape(title)}</text>',
        # axes
        f'<line x1="{x0:.1f}" y1="{y0:.1f}" x2="{x1:.1f}" y2="{y0:.1f}" stroke="#000" stroke-width="1"/>',
        f'<line x1="{x0:.1f}" y1="{y0:.1f}" x2="{x0:.1f}" y2="{y1:.1f}" stroke="#000" stroke-width="1"/>',
        f'<text x="{(x0 + x1) / 2:.1f}" y="{_SIZE - 12}" text-anchor="middle" font-size="12" '
        f'font-family="sans-serif">cumulative share of stakeholders</text>',
        f'<text x="14" y="{(y0 + y1) / 2:.1f}" text-anchor="middle" font-size="12" '
        f'font-family="sans-serif" transform="rotate(-90 14 {(y0 + y1) / 2:.1f})">'
        "cumulative share of accessibility</text>",
        # perfect-equity diagonal
        f'<line x1="{x0:.1f}" y1="{y0:.1f}" x2="{x1:.1f}" y2="{y1:.1f}" stroke="#888" '
        'stroke-width="1" stroke-dasharray="5,4"/>',
        f'<polyline fill="none" stroke="#1f77b4" stroke-width="2" points="{curve_points}"/>',
        f'<text x="{x1 - 8:.1f}" y="{y0 - 10:.1f}" text-anchor="end" font-size="13" '
        f'font-family="sans-serif">Gini = {gini_value:.4f}</text>',
        "</svg>",
    ]
    return "\n".join(parts) + "\n"


def _escape(text: str) -> str:
    return (
        text.replace("&", "&amp;")
        .replace("<", "&lt;")
        .replace(">", "&gt;")
        .replace('"', "&quot;")
    )
