"""Tests for the command-line interface."""

import argparse
from collections.abc import Callable
from pathlib import Path

import pytest

from exponent_toolkit.charts import read_chart
from exponent_toolkit.commands import bounds as bound_commands
from exponent_toolkit.algebra.linear import rank
from exponent_toolkit.bounds import smash_combine
from exponent_toolkit.main import build_parser, main
from exponent_toolkit.witnesses import witness_degree

CliRunner = Callable[..., tuple[int, str]]

SIGMA3 = """\
group Sigma_3
e 6 0
C2 1 1
C3 2 1
Sigma_3 1 2
"""


class TestChartCommands:
    """Tests for ext, verify-vanishing, verify-dimshift and render-svg."""

    def test_ext_stdout(self, run_cli: CliRunner) -> None:
        """Test a small chart written to stdout."""
        status, out = run_cli("ext", "--max-s", "3", "--max-t", "3", "--threads", "1")
        assert status == 0
        lines = out.splitlines()
        assert lines[1:5] == ["version 1", "prime 2", "module sphere", "window 3 3"]
        assert lines[5:] == ["0 0 1", "1 1 1", "1 2 1", "2 2 1", "3 3 1"]

    def test_ext_to_file(self, run_cli: CliRunner, tmp_path: Path) -> None:
        """Test writing a chart file with --out."""
        path = tmp_path / "hz.chart"
        status, out = run_cli(
            "ext", "--module", "hz", "--max-s", "4", "--max-t", "6", "--out", str(path)
        )
        assert (status, out) == (0, "")
        chart = read_chart(path)
        assert chart.module == "hz"
        assert chart.entries == tuple(((s, s), 1) for s in range(5))

    def test_ext_deterministic(self, run_cli: CliRunner, tmp_path: Path) -> None:
        """Test that threaded runs write byte-identical chart files."""
        outputs = []
        for threads in ("1", "4"):
            path = tmp_path / f"tau1-{threads}.chart"
            argv = ["ext", "--module", "tau1", "--max-s", "4", "--max-t", "12"]
            run_cli(*argv, "--threads", threads, "--out", str(path))
            outputs.append(path.read_bytes())
        assert outputs[0] == outputs[1]

    @pytest.mark.parametrize(
        "argv",
        [
            ["ext", "--module", "ko"],
            ["ext", "--max-s", "0"],
            ["ext", "--prime", "4", "--max-s", "2", "--max-t", "2"],
            ["ext", "--max-s", "two"],
        ],
    )
    def test_ext_bad_arguments(self, run_cli: CliRunner, argv: list[str]) -> None:
        """Test that bad arguments exit with status 2."""
        status, _ = run_cli(*argv)
        assert status == 2

    def test_verify_vanishing(self, run_cli: CliRunner) -> None:
        """Test that the vanishing region is empty over a small window."""
        status, out = run_cli(
            "verify-vanishing", "--max-s", "6", "--max-stem", "10", "--threads", "1"
        )
        assert status == 0
        assert out.strip().endswith("empty")
        assert "t <= 16" in out

    def test_verify_vanishing_degenerate_window(self, run_cli: CliRunner) -> None:
        """Test that a window with s <= 1 has no bidegree in the region."""
        status, out = run_cli(
            "verify-vanishing", "--max-s", "1", "--max-stem", "4", "--threads", "1"
        )
        assert status == 0
        assert out.strip().endswith("empty")
        assert "s <= 1, t <= 5" in out

    @pytest.mark.parametrize(("shift", "expected"), [("1", 0), ("-1", 1)])
    def test_verify_dimshift(
        self, run_cli: CliRunner, shift: str, expected: int
    ) -> None:
        """Test the dimension shift check and its opposite indexing."""
        status, out = run_cli(
            "verify-dimshift",
            "--max-s",
            "4",
            "--max-t",
            "10",
            "--threads",
            "2",
            f"--shift={shift}",
        )
        assert status == expected
        assert f"dimension shift {int(shift):+d} at p=2" in out

    def test_render_svg(self, run_cli: CliRunner, tmp_path: Path) -> None:
        """Test rendering a chart file produced by ext."""
        chart_path = tmp_path / "sphere.chart"
        svg_path = tmp_path / "sphere.svg"
        run_cli("ext", "--max-s", "3", "--max-t", "8", "--out", str(chart_path))
        status, _ = run_cli("render-svg", str(chart_path), "--out", str(svg_path))
        assert status == 0
        svg = svg_path.read_text()
        assert svg.startswith("<svg")
        assert 'class="vanishing-line"' in svg

    def test_render_svg_errors(self, run_cli: CliRunner, tmp_path: Path) -> None:
        """Test that missing and malformed chart files exit with status 2."""
        assert run_cli("render-svg", str(tmp_path / "missing.chart"))[0] == 2
        bad = tmp_path / "bad.chart"
        bad.write_text("version 9\n")
        assert run_cli("render-svg", str(bad))[0] == 2


class TestBoundCommands:
    """Tests for bounds, hurewicz, equivariant and witnesses."""

    def test_bounds_single(self, run_cli: CliRunner) -> None:
        """Test the bounds row at p=2, n=10."""
        status, out = run_cli("bounds", "--n", "10")
        assert status == 0
        lines = out.splitlines()
        assert lines[0] == "p = 2"
        assert lines[1].split() == [
            "n",
            "main-lower",
            "main-upper",
            "hurewicz-kernel",
            "hurewicz-cokernel",
            "k-invariant",
        ]
        assert lines[2].split() == ["10", "4", "8", "8", "8", "8"]

    def test_bounds_table(self, run_cli: CliRunner) -> None:
        """Test a table at p=3."""
        status, out = run_cli("bounds", "--prime", "3", "--table", "10")
        assert status == 0
        lines = out.splitlines()
        assert len(lines) == 12
        assert lines[-1].split()[:3] == ["10", "2", "5"]

    @pytest.mark.parametrize(
        "argv", [["bounds"], ["bounds", "--n", "0"], ["bounds", "--table", "0"]]
    )
    def test_bounds_bad_arguments(self, run_cli: CliRunner, argv: list[str]) -> None:
        """Test that a missing or nonpositive degree exits with status 2."""
        assert run_cli(*argv)[0] == 2

    def test_hurewicz(self, run_cli: CliRunner) -> None:
        """Test Hurewicz bounds with the stem-product comparison."""
        status, out = run_cli("hurewicz", "--n", "3", "--rho", "1,1,3")
        assert status == 0
        assert "kernel   <= p^5" in out
        assert "cokernel <= p^4" in out
        assert "stem-product kernel   <= p^5" in out
        assert "stem-product cokernel <= p^2" in out

    @pytest.mark.parametrize(
        "argv",
        [
            ["hurewicz", "--n", "10", "--rho", "1,1,3"],
            ["hurewicz", "--n", "3", "--rho", "1,x"],
            ["hurewicz"],
        ],
    )
    def test_hurewicz_bad_arguments(
        self, run_cli: CliRunner, argv: list[str]
    ) -> None:
        """Test that a short or malformed rho exits with status 2."""
        assert run_cli(*argv)[0] == 2

    def test_equivariant(self, run_cli: CliRunner, tmp_path: Path) -> None:
        """Test the equivariant bound for Sigma_3."""
        group_file = tmp_path / "sigma3.txt"
        group_file.write_text(SIGMA3)
        status, out = run_cli(
            "equivariant", "--group-file", str(group_file), "--n", "3"
        )
        assert status == 0
        assert "p-exponent: 6" in out
        assert f"integer bound: {2**6 * 3**4}" in out

    def test_equivariant_hypothesis_violation(
        self, run_cli: CliRunner, tmp_path: Path
    ) -> None:
        """Test that n = dim V^H exits with status 3."""
        group_file = tmp_path / "sigma3.txt"
        group_file.write_text(SIGMA3)
        status, _ = run_cli("equivariant", "--group-file", str(group_file), "--n", "1")
        assert status == 3

    def test_witnesses(self, run_cli: CliRunner) -> None:
        """Test the witness table and sweep."""
        status, out = run_cli("witnesses", "--n", "10")
        assert status == 0
        assert "RP^10" in out
        assert out.splitlines()[-1] == "5 witnesses, 0 violation(s)"


class TestMain:
    """Tests for exit status handling."""

    def test_version(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test that --version exits cleanly."""
        assert main(["--version"]) == 0
        assert capsys.readouterr().out.strip() == "0.1.0"

    def test_missing_command(self) -> None:
        """Test that no subcommand exits with status 2."""
        assert main([]) == 2

    def test_internal_error(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test that an unexpected exception exits with status 1."""

        def boom(args: argparse.Namespace) -> int:
            raise RuntimeError("boom")

        monkeypatch.setattr(bound_commands, "cmd_bounds", boom)
        assert main(["bounds", "--n", "3"]) == 1

    @pytest.mark.parametrize(
        "func", [build_parser, rank, smash_combine, witness_degree]
    )
    def test_public_helpers_documented(self, func: Callable[..., object]) -> None:
        """Test that public helpers carry a Returns section."""
        assert func.__doc__ is not None
        assert "Returns:" in func.__doc__
