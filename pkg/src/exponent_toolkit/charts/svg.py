"""Static SVG rendering of Ext charts in Adams indexing."""

import logging
from pathlib import Path
from typing import Any

from jinja2 import Environment, FileSystemLoader, StrictUndefined, select_autoescape

from exponent_toolkit.resolution import ExtChart

logger = logging.getLogger(__name__)

TEMPLATES_DIR = Path(__file__).parent.parent / "templates"
templates = Environment(
    loader=FileSystemLoader(str(TEMPLATES_DIR)),
    autoescape=select_autoescape(["svg", "j2"]),
    undefined=StrictUndefined,
    keep_trailing_newline=True,
)

CELL = 24
MARGIN = 36
DOT_RADIUS = 3
DOT_SPREAD = 6


def _fmt(value: float) -> str:
    return f"{value:.2f}".rstrip("0").rstrip(".")


def vanishing_line(p: int, stem: float) -> float:
    """Height of the sphere's vanishing line over stem ``t - s``."""
    if p == 2:
        return (stem + 3) / 2
    return (stem + 2) / (2 * p - 2)


def chart_layout(chart: ExtChart) -> dict[str, Any]:
    """Pixel geometry for the template; one dot per unit of dimension at
    ``(t - s, s)``."""
    stems = chart.t_max
    width = 2 * MARGIN + stems * CELL
    height = 2 * MARGIN + chart.s_max * CELL

    def x(stem: float) -> str:
        return _fmt(MARGIN + stem * CELL)

    def y(s: float) -> str:
        return _fmt(height - MARGIN - s * CELL)

    dots = []
    for (s, t), dim in chart.entries:
        offset = -(dim - 1) * DOT_SPREAD / 2
        for k in range(dim):
            dots.append(
                {
                    "x": _fmt(MARGIN + (t - s) * CELL + offset + k * DOT_SPREAD),
                    "y": y(s),
                    "label": f"({s}, {t})",
                }
            )

    line = None
    if chart.module == "sphere" and stems > 0:
        start, end = vanishing_line(chart.prime, 0), vanishing_line(chart.prime, stems)
        if start <= chart.s_max:
            stop = stems
            if end > chart.s_max:
                # clip where the line leaves the window
                stop_stem = (
                    2 * chart.s_max - 3
                    if chart.prime == 2
                    else (2 * chart.prime - 2) * chart.s_max - 2
                )
                stop = max(0, min(stems, stop_stem))
                end = vanishing_line(chart.prime, stop)
            line = {"x1": x(0), "y1": y(start), "x2": x(stop), "y2": y(end)}

    return {
        "title": f"Ext chart of {chart.module} at p={chart.prime}",
        "width": width,
        "height": height,
        "origin": {"x": x(0), "y": y(0)},
        "x_end": x(stems),
        "y_end": y(chart.s_max),
        "x_ticks": [{"x": x(k), "label": k} for k in range(0, stems + 1, 2)],
        "y_ticks": [{"y": y(k), "label": k} for k in range(chart.s_max + 1)],
        "dots": dots,
        "radius": DOT_RADIUS,
        "vanishing_line": line,
    }


def render_chart_svg(chart: ExtChart) -> str:
    """Render ``chart`` as a standalone SVG document."""
    logger.info(
        "Rendering %s chart at p=%d with %d entries",
        chart.module,
        chart.prime,
        len(chart.entries),
    )
    return templates.get_template("chart.svg.j2").render(**chart_layout(chart))
