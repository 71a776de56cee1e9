"""Line-oriented chart and group-data files."""

import logging
import os
import sys
import tempfile
from pathlib import Path

from exponent_toolkit.bounds import GroupFixedPointData, SubgroupRecord
from exponent_toolkit.config import BUILTIN_MODULES, settings
from exponent_toolkit.resolution import ExtChart

logger = logging.getLogger(__name__)

HEADER_KEYS = ("version", "prime", "module", "window")


class ChartFormatError(ValueError):
    """A chart or group-data file could not be parsed."""


def _content_lines(text: str) -> list[tuple[int, list[str]]]:
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            lines.append((number, stripped.split()))
    return lines


def _integers(number: int, fields: list[str]) -> list[int]:
    try:
        return [int(f) for f in fields]
    except ValueError as e:
        raise ChartFormatError(f"line {number}: expected integers, got {fields}") from e


def format_chart(chart: ExtChart) -> str:
    """Serialize a chart: fixed header, then sorted ``s t dim`` lines."""
    lines = [
        "# exponent-toolkit Ext chart",
        f"version {settings.chart_format_version}",
        f"prime {chart.prime}",
        f"module {chart.module}",
        f"window {chart.s_max} {chart.t_max}",
    ]
    lines.extend(f"{s} {t} {dim}" for (s, t), dim in chart.entries)
    return "\n".join(lines) + "\n"


def parse_chart(text: str) -> ExtChart:
    """Inverse of :func:`format_chart`.

    Raises:
        ChartFormatError: If the header is incomplete or out of order, the
            version is unsupported, or an entry is malformed, nonpositive or out
            of window.
    """
    lines = _content_lines(text)
    if len(lines) < len(HEADER_KEYS):
        raise ChartFormatError("chart file has an incomplete header")

    header: dict[str, list[str]] = {}
    for key, (number, fields) in zip(HEADER_KEYS, lines, strict=False):
        if fields[0] != key:
            raise ChartFormatError(
                f"line {number}: expected '{key}', got '{fields[0]}'"
            )
        header[key] = fields[1:]

    (version,) = _integers(lines[0][0], header["version"][:1] or ["?"])
    if version != settings.chart_format_version:
        raise ChartFormatError(f"unsupported chart format version {version}")
    (prime,) = _integers(lines[1][0], header["prime"][:1] or ["?"])
    if len(header["module"]) != 1:
        raise ChartFormatError(f"line {lines[2][0]}: module takes one tag")
    module = header["module"][0]
    if module not in BUILTIN_MODULES:
        logger.warning("Chart file names unknown module '%s'", module)
    window = _integers(lines[3][0], header["window"])
    if len(window) != 2:
        raise ChartFormatError(f"line {lines[3][0]}: window takes s_max and t_max")

    dims: dict[tuple[int, int], int] = {}
    for number, fields in lines[len(HEADER_KEYS) :]:
        if len(fields) != 3:
            raise ChartFormatError(f"line {number}: expected 's t dim'")
        s, t, dim = _integers(number, fields)
        if (s, t) in dims:
            raise ChartFormatError(f"line {number}: duplicate entry ({s}, {t})")
        if dim <= 0:
            raise ChartFormatError(
                f"line {number}: nonpositive dimension {dim} at ({s}, {t})"
            )
        dims[(s, t)] = dim

    try:
        return ExtChart.from_dimensions(prime, module, window[0], window[1], dims)
    except ValueError as e:
        raise ChartFormatError(str(e)) from e


def atomic_write_text(path: Path | str, text: str) -> None:
    """Write ``text`` to ``path`` through a temporary file and a rename."""
    target = Path(path)
    fd, temp_name = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
        os.replace(temp_name, target)
    except BaseException:
        Path(temp_name).unlink(missing_ok=True)
        raise
    logger.debug("Wrote %s", target)


def write_chart(chart: ExtChart, path: Path | str) -> None:
    atomic_write_text(path, format_chart(chart))


def read_chart(path: Path | str) -> ExtChart:
    return parse_chart(Path(path).read_text(encoding="utf-8"))


def parse_group_data(text: str, group: str = "G") -> GroupFixedPointData:
    """Parse ``label weyl_order fixed_dim`` records.

    An optional first line ``group NAME`` names the group.

    Raises:
        ChartFormatError: If a record is malformed or invalid.
    """
    records = []
    for number, fields in _content_lines(text):
        if fields[0] == "group" and not records:
            group = " ".join(fields[1:]) or group
            continue
        if len(fields) != 3:
            raise ChartFormatError(
                f"line {number}: expected 'label weyl_order fixed_dim'"
            )
        weyl_order, fixed_dim = _integers(number, fields[1:])
        try:
            records.append(SubgroupRecord(fields[0], weyl_order, fixed_dim))
        except ValueError as e:
            raise ChartFormatError(f"line {number}: {e}") from e
    try:
        return GroupFixedPointData(group, tuple(records))
    except ValueError as e:
        raise ChartFormatError(str(e)) from e


def read_group_data(path: Path | str) -> GroupFixedPointData:
    path = Path(path)
    return parse_group_data(path.read_text(encoding="utf-8"), group=path.stem)


def emit(text: str, out: Path | str | None) -> None:
    """Write command output atomically to ``out``, or to stdout."""
    if out is None:
        sys.stdout.write(text)
    else:
        atomic_write_text(out, text)
