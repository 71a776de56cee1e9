"""Chart and group-data files, and chart rendering."""

from exponent_toolkit.charts.files import (
    ChartFormatError,
    atomic_write_text,
    emit,
    format_chart,
    parse_chart,
    parse_group_data,
    read_chart,
    read_group_data,
    write_chart,
)
from exponent_toolkit.charts.svg import chart_layout, render_chart_svg, vanishing_line

__all__ = [
    "ChartFormatError",
    "atomic_write_text",
    "chart_layout",
    "emit",
    "format_chart",
    "parse_chart",
    "parse_group_data",
    "read_chart",
    "read_group_data",
    "render_chart_svg",
    "vanishing_line",
    "write_chart",
]
