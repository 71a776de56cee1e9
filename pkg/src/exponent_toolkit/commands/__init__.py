"""Command-line subcommands."""

from exponent_toolkit.commands.bounds import (
    add_bound_commands,
    cmd_bounds,
    cmd_equivariant,
    cmd_hurewicz,
    cmd_witnesses,
)
from exponent_toolkit.commands.charts import (
    add_chart_commands,
    cmd_ext,
    cmd_render_svg,
    cmd_verify_dimshift,
    cmd_verify_vanishing,
)

__all__ = [
    "add_bound_commands",
    "add_chart_commands",
    "cmd_bounds",
    "cmd_equivariant",
    "cmd_ext",
    "cmd_hurewicz",
    "cmd_render_svg",
    "cmd_verify_dimshift",
    "cmd_verify_vanishing",
    "cmd_witnesses",
]
