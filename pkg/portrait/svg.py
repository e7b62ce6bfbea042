from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from django.template.loader import render_to_string

from equilibria.classify import Classification

TEMPLATE = "portrait/portrait.svg"


@dataclass(frozen=True)
class SvgOptions:
    size: int = 600
    margin: int = 20
    precision: int = 5
    glyph_radius: float = 5.0
    stroke_width: float = 1.0
    disk_color: str = "#222222"
    orbit_color: str = "#4477aa"
    separatrix_color: str = "#cc3311"
    glyph_colors: dict[str, str] = field(
        default_factory=lambda: {
            Classification.SADDLE.value: "#ee7733",
            Classification.STABLE_NODE.value: "#228833",
            Classification.UNSTABLE_NODE.value: "#aa3377",
            Classification.STABLE_FOCUS.value: "#117733",
            Classification.UNSTABLE_FOCUS.value: "#882255",
            Classification.CENTER.value: "#0077bb",
            Classification.NON_HYPERBOLIC.value: "#777777",
            Classification.DEGENERATE.value: "#000000",
        }
    )

    @property
    def scale(self) -> float:
        return (self.size - 2 * self.margin) / 2.0

    @property
    def centre(self) -> float:
        return self.size / 2.0


def _to_canvas(points, options: SvgOptions) -> np.ndarray:
    """Disk coordinates to SVG pixels, q pointing up"""
    points = np.asarray(points, float).reshape(-1, 2)
    canvas = np.empty_like(points)
    canvas[:, 0] = options.centre + options.scale * points[:, 0]
    canvas[:, 1] = options.centre - options.scale * points[:, 1]
    return canvas


def _number(value: float, precision: int) -> str:
    text = f"{value:.{precision}f}".rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


def _polyline(points, options: SvgOptions) -> str:
    return " ".join(
        f"{_number(x, options.precision)},{_number(y, options.precision)}"
        for x, y in _to_canvas(points, options)
    )


def render_svg(trajectories=(), equilibria=(), options: SvgOptions | None = None) -> str:
    """
    Unit disk outline, equilibria as glyphs classed "equilibrium <type>" and
    trajectories as polylines. Separatrix objects are drawn in their own
    class. Output depends only on the inputs.
    """
    options = options or SvgOptions()
    lines = []
    for item in trajectories:
        trajectory = getattr(item, "trajectory", item)
        if len(trajectory) < 2:
            continue
        lines.append(
            {
                "kind": "separatrix" if trajectory is not item else "orbit",
                "points": _polyline(trajectory.points, options),
            }
        )

    glyphs = []
    for e in equilibria:
        (x, y), = _to_canvas(e.disk_position, options)
        glyphs.append(
            {
                "kind": e.classification.value,
                "x": _number(x, options.precision),
                "y": _number(y, options.precision),
                "at_infinity": e.at_infinity,
            }
        )

    return render_to_string(
        TEMPLATE,
        {
            "options": options,
            "centre": _number(options.centre, options.precision),
            "radius": _number(options.scale, options.precision),
            "glyph_colors": sorted(options.glyph_colors.items()),
            "lines": lines,
            "glyphs": glyphs,
        },
    )


def glyph_count(document: str) -> int:
    return document.count('class="equilibrium ')

