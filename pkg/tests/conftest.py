"""Pytest configuration and fixtures."""

from collections.abc import Callable

import pytest

from exponent_toolkit.main import main
from exponent_toolkit.resolution import (
    ExtChart,
    MinimalResolution,
    compute_chart,
    minimal_resolution,
    present_module,
)

CliRunner = Callable[..., tuple[int, str]]


@pytest.fixture(scope="session")
def sphere_chart_2() -> ExtChart:
    """Sphere chart at p=2 over s <= 10, t <= 30."""
    return compute_chart("sphere", 2, 10, 30)


@pytest.fixture(scope="session")
def sphere_chart_3() -> ExtChart:
    """Sphere chart at p=3 over s <= 5, t <= 35."""
    return compute_chart("sphere", 3, 5, 35)


@pytest.fixture(scope="session")
def hz_chart_2() -> ExtChart:
    """Chart of H*(HZ) at p=2 over s <= 8, t <= 12."""
    return compute_chart("hz", 2, 8, 12)


@pytest.fixture(scope="session")
def tau1_chart_2() -> ExtChart:
    """Chart of the desuspended augmentation kernel at p=2, s <= 8, t <= 20."""
    return compute_chart("tau1", 2, 8, 20)


@pytest.fixture(scope="session")
def small_resolutions() -> dict[tuple[str, int], MinimalResolution]:
    """Resolutions of every built-in module over s <= 6, t <= 16 (p=2) and
    s <= 4, t <= 16 (p=3)."""
    windows = {2: (6, 16), 3: (4, 16)}
    return {
        (tag, p): minimal_resolution(present_module(tag, p, t_max), s_max, t_max)
        for p, (s_max, t_max) in windows.items()
        for tag in ("sphere", "hz", "tau1")
    }


@pytest.fixture
def run_cli(capsys: pytest.CaptureFixture[str]) -> CliRunner:
    """Run the command-line entry point and capture its stdout.

    Returns:
        A function taking CLI arguments and returning ``(status, stdout)``.
    """

    def run(*argv: str) -> tuple[int, str]:
        status = main(list(argv))
        return status, capsys.readouterr().out

    return run
