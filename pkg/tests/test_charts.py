"""Tests for chart files, group-data files and SVG rendering."""

import logging
import random
from pathlib import Path

import pytest

from exponent_toolkit.charts import (
    ChartFormatError,
    chart_layout,
    emit,
    format_chart,
    parse_chart,
    parse_group_data,
    read_chart,
    read_group_data,
    render_chart_svg,
    vanishing_line,
    write_chart,
)
from exponent_toolkit.resolution import ExtChart

SMALL_CHART = ExtChart(2, "sphere", 3, 10, (((0, 0), 1), ((1, 8), 1)))

SMALL_TEXT = """\
# exponent-toolkit Ext chart
version 1
prime 2
module sphere
window 3 10
0 0 1
1 8 1
"""


class TestChartFiles:
    """Tests for the chart file format."""

    def test_format(self) -> None:
        """Test the exact serialized form."""
        assert format_chart(SMALL_CHART) == SMALL_TEXT

    def test_parse(self) -> None:
        """Test parsing the serialized form."""
        assert parse_chart(SMALL_TEXT) == SMALL_CHART

    def test_round_trip_computed_chart(
        self, tmp_path: Path, sphere_chart_3: ExtChart
    ) -> None:
        """Test that a computed chart survives a write and read."""
        path = tmp_path / "sphere3.chart"
        write_chart(sphere_chart_3, path)
        assert read_chart(path) == sphere_chart_3
        assert [p.name for p in tmp_path.iterdir()] == ["sphere3.chart"]

    @pytest.mark.parametrize("seed", [0, 1, 2, 3])
    def test_round_trip_random_charts(self, seed: int) -> None:
        """Test that random charts survive formatting and parsing."""
        rng = random.Random(seed)
        s_max, t_max = rng.randint(0, 12), rng.randint(0, 40)
        dims = {
            (rng.randint(0, s_max), rng.randint(0, t_max)): rng.randint(1, 5)
            for _ in range(rng.randint(0, 30))
        }
        chart = ExtChart.from_dimensions(
            rng.choice([2, 3, 5]), "sphere", s_max, t_max, dims
        )
        assert parse_chart(format_chart(chart)) == chart

    def test_comments_and_blank_lines(self) -> None:
        """Test that comments and blank lines are ignored."""
        text = SMALL_TEXT.replace("0 0 1\n", "\n0 0 1  # bottom cell\n\n")
        assert parse_chart(text) == SMALL_CHART

    def test_unknown_module_warns(self, caplog: pytest.LogCaptureFixture) -> None:
        """Test that an unknown module tag is kept with a warning."""
        with caplog.at_level(logging.WARNING):
            chart = parse_chart(SMALL_TEXT.replace("module sphere", "module ko"))
        assert chart.module == "ko"
        assert "unknown module 'ko'" in caplog.text

    @pytest.mark.parametrize(
        ("text", "message"),
        [
            ("version 1\nprime 2\n", "incomplete header"),
            (
                SMALL_TEXT.replace("version 1\nprime 2", "prime 2\nversion 1"),
                "expected",
            ),
            (SMALL_TEXT.replace("version 1", "version 2"), "unsupported"),
            (SMALL_TEXT.replace("prime 2", "prime two"), "integers"),
            (SMALL_TEXT.replace("window 3 10", "window 3"), "window takes"),
            (SMALL_TEXT + "4 4 1\n", "outside the chart window"),
            (SMALL_TEXT + "1 8 1\n", "duplicate"),
            (SMALL_TEXT + "2 2\n", "s t dim"),
            (SMALL_TEXT + "2 2 0\n", "line 8: nonpositive dimension 0"),
            (SMALL_TEXT + "2 2 -1\n", "nonpositive"),
        ],
    )
    def test_parse_errors(self, text: str, message: str) -> None:
        """Test that malformed files raise ChartFormatError."""
        with pytest.raises(ChartFormatError, match=message):
            parse_chart(text)

    def test_chart_format_error_is_value_error(self) -> None:
        """Test that parse errors can be caught as ValueError."""
        with pytest.raises(ValueError):
            parse_chart("")

    def test_emit(self, tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
        """Test output to stdout and to a file."""
        emit("hello\n", None)
        assert capsys.readouterr().out == "hello\n"
        emit("hello\n", tmp_path / "out.txt")
        assert (tmp_path / "out.txt").read_text() == "hello\n"


class TestGroupData:
    """Tests for subgroup data files."""

    def test_parse(self) -> None:
        """Test records, comments and the group line."""
        data = parse_group_data(
            "group Sigma_3\n# label |WH| dim V^H\ne 6 0\nC2 1 1  # reflection\n"
        )
        assert data.group == "Sigma_3"
        assert [(r.label, r.weyl_order, r.fixed_dim) for r in data.records] == [
            ("e", 6, 0),
            ("C2", 1, 1),
        ]

    def test_read_uses_file_stem(self, tmp_path: Path) -> None:
        """Test that the file name names the group by default."""
        path = tmp_path / "C2.txt"
        path.write_text("e 2 0\nC2 1 1\n")
        assert read_group_data(path).group == "C2"

    @pytest.mark.parametrize(
        ("text", "message"),
        [
            ("e 6\n", "label weyl_order fixed_dim"),
            ("e six 0\n", "integers"),
            ("e 0 0\n", "Weyl order"),
            ("# nothing\n", "no subgroup records"),
        ],
    )
    def test_parse_errors(self, text: str, message: str) -> None:
        """Test that malformed group data raises ChartFormatError."""
        with pytest.raises(ChartFormatError, match=message):
            parse_group_data(text)


class TestSvg:
    """Tests for chart rendering."""

    def test_layout_geometry(self) -> None:
        """Test pixel positions of the frame and a dot."""
        layout = chart_layout(SMALL_CHART)
        assert (layout["width"], layout["height"]) == (312, 144)
        assert layout["origin"] == {"x": "36", "y": "108"}
        assert layout["dots"][1] == {"x": "204", "y": "84", "label": "(1, 8)"}

    def test_vanishing_line_clipped(self) -> None:
        """Test that the vanishing line stops at the top of the window."""
        line = chart_layout(SMALL_CHART)["vanishing_line"]
        assert line == {"x1": "36", "y1": "72", "x2": "108", "y2": "36"}
        assert vanishing_line(2, 3) == 3
        assert vanishing_line(3, 6) == 2

    def test_multiple_dots_spread(self) -> None:
        """Test that a two-dimensional entry draws two offset dots."""
        chart = ExtChart(2, "hz", 2, 4, (((1, 3), 2),))
        dots = chart_layout(chart)["dots"]
        assert [d["x"] for d in dots] == ["81", "87"]
        assert chart_layout(chart)["vanishing_line"] is None

    def test_render(self) -> None:
        """Test the rendered document."""
        svg = render_chart_svg(SMALL_CHART)
        assert svg.startswith("<svg")
        assert svg.count("<circle") == 2
        assert 'class="vanishing-line"' in svg
        assert "<title>Ext chart of sphere at p=2</title>" in svg

    def test_render_escapes_module_name(self) -> None:
        """Test that module names are escaped in the SVG."""
        chart = ExtChart(2, "a<b", 1, 2)
        svg = render_chart_svg(chart)
        assert "a&lt;b" in svg
        assert "vanishing-line" not in svg

    def test_hz_chart_single_column(self, hz_chart_2: ExtChart) -> None:
        """Test that the hz chart draws every dot in the zero stem."""
        dots = chart_layout(hz_chart_2)["dots"]
        assert len(dots) == 9
        assert {d["x"] for d in dots} == {"36"}

    def test_empty_chart(self) -> None:
        """Test that an empty chart renders axes only."""
        svg = render_chart_svg(ExtChart(3, "tau1", 2, 6))
        assert "<circle" not in svg
        assert svg.count("<line") == 4 + 3 + 2
        assert svg.rstrip().endswith("</svg>")

    def test_h3_position(self, sphere_chart_2: ExtChart) -> None:
        """Test that h3 is drawn in stem 7, filtration 1."""
        layout = chart_layout(sphere_chart_2)
        h3 = next(d for d in layout["dots"] if d["label"] == "(1, 8)")
        assert h3["x"] == str(36 + 7 * 24)
        assert h3["y"] == str(layout["height"] - 36 - 24)
