"""Toolkit configuration settings."""

import os
from dataclasses import dataclass, field


def _threads_from_env() -> int:
    raw = os.getenv("EXPONENT_TOOLKIT_THREADS")
    if raw is None:
        return os.cpu_count() or 1
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


@dataclass
class Settings:
    """Toolkit settings loaded from environment variables."""

    threads: int = field(default_factory=_threads_from_env)
    debug: bool = field(
        default_factory=lambda: (
            os.getenv("EXPONENT_TOOLKIT_DEBUG", "false").lower() == "true"
        )
    )
    chart_format_version: int = 1


# Built-in modules over the Steenrod algebra
BUILTIN_MODULES: dict[str, str] = {
    "sphere": "F_p, the cohomology of the sphere spectrum",
    "hz": "H*(HZ; F_p) = A_p / A_p Q_0",
    "tau1": "desuspended kernel of the augmentation H*(HZ; F_p) -> F_p",
}

# Default (max_s, max_t) window per prime for chart computation
DEFAULT_WINDOWS: dict[int, tuple[int, int]] = {
    2: (10, 30),
    3: (5, 35),
}

# Fill ratio above which F_p elimination switches to dense rows
DENSE_FILL_THRESHOLD = 0.30


settings = Settings()
