"""Minimal free resolutions over the Steenrod algebra and their Ext charts.

The resolution is built degreewise. At bidegree ``(s, t)`` the kernel of
``d_{s-1}`` in internal degree ``t`` is compared with the image of the
generators of ``P_s`` already placed in lower degrees, and one new generator
is added for every kernel direction that image misses. New generators are
never hit by decomposables, so the resolution is minimal by construction and
``Ext^{s,t}`` is the number of generators of ``P_s`` in degree ``t``.

Step ``(s, t)`` reads only ``(s, t-1)`` and ``(s-1, t)``, so every step on an
anti-diagonal ``s + t = const`` is independent. Each anti-diagonal is fanned
out over worker threads and committed in sorted order afterwards, which keeps
the result identical to a serial run.
"""

import asyncio
import logging
from dataclasses import dataclass, field

import numpy as np

from exponent_toolkit.algebra.linear import (
    EchelonBasis,
    FpMatrix,
    IntArray,
    kernel_basis,
    rank,
)
from exponent_toolkit.algebra.steenrod import (
    SteenrodElement,
    check_prime,
    indecomposables,
    q0,
    unit,
)
from exponent_toolkit.config import BUILTIN_MODULES, settings
from exponent_toolkit.modules.base import GradedModule
from exponent_toolkit.modules.free import FreeModule
from exponent_toolkit.modules.presented import (
    FinitelyPresentedModule,
    GradedModulePresentation,
    Relation,
    TruncatedModule,
)

logger = logging.getLogger(__name__)


class WindowError(ValueError):
    """A requested window exceeds what the input module is known through."""


@dataclass
class ResolutionStage:
    """One free module ``P_s`` with its differential ``d_s``.

    Attributes:
        free: The free module ``P_s``.
        images: ``d_s`` of each generator, as coordinates in the target.
        matrices: ``d_s`` in internal degree ``t`` as an F_p matrix with one
            column per basis element of ``P_s``.
    """

    free: FreeModule
    images: list[IntArray] = field(default_factory=list)
    matrices: dict[int, FpMatrix] = field(default_factory=dict)


@dataclass
class MinimalResolution:
    """A minimal free resolution ``... -> P_1 -> P_0 -> M`` over a window."""

    prime: int
    name: str
    module: GradedModule
    s_max: int
    t_max: int
    stages: list[ResolutionStage]

    def target(self, s: int) -> GradedModule:
        """The codomain of ``d_s``."""
        return self.module if s == 0 else self.stages[s - 1].free

    def generator_degrees(self, s: int) -> tuple[int, ...]:
        return self.stages[s].free.generator_degrees

    def differential(self, s: int, t: int) -> FpMatrix:
        return self.stages[s].matrices[t]

    def differential_terms(self, s: int, g: int) -> dict[int, SteenrodElement]:
        """``d_s`` of generator ``g`` as a Steenrod-linear combination (``s >= 1``)."""
        if s < 1:
            raise ValueError("the augmentation has no free target")
        t = self.stages[s].free.generator_degrees[g]
        return self.stages[s - 1].free.terms_from_vector(t, self.stages[s].images[g])


@dataclass(frozen=True)
class _StepResult:
    columns: list[IntArray]
    new_images: list[IntArray]
    target_dimension: int


def _compute_step(resolution: MinimalResolution, s: int, t: int) -> _StepResult:
    p = resolution.prime
    stage = resolution.stages[s]
    target = resolution.target(s)
    dim_target = target.dimension(t)

    kernel: list[IntArray]
    if s == 0:
        kernel = list(np.eye(dim_target, dtype=np.int64))
    else:
        kernel = [
            v.to_dense() for v in kernel_basis(resolution.stages[s - 1].matrices[t])
        ]

    degrees = stage.free.generator_degrees
    columns: list[IntArray] = []
    span = EchelonBasis(p, dim_target)
    for g, mono in stage.free.basis(t):
        column = target.act_on_vector(mono, degrees[g], stage.images[g])
        columns.append(column)
        span.add(column)

    new_images = [vector for vector in kernel if span.add(vector)]
    return _StepResult(columns, new_images, dim_target)


def _commit(resolution: MinimalResolution, s: int, t: int, step: _StepResult) -> None:
    stage = resolution.stages[s]
    for image in step.new_images:
        stage.free.add_generator(t)
        stage.images.append(image)
    if step.new_images:
        logger.debug(
            "%s: %d generator(s) at (s, t) = (%d, %d)",
            resolution.name,
            len(step.new_images),
            s,
            t,
        )
    stage.matrices[t] = FpMatrix.from_columns(
        resolution.prime, step.target_dimension, step.columns + step.new_images
    )


def _diagonals(s_max: int, t_max: int) -> list[list[tuple[int, int]]]:
    return [
        [(s, k - s) for s in range(s_max + 1) if 0 <= k - s <= t_max]
        for k in range(s_max + t_max + 1)
    ]


def _start(
    module: GradedModule,
    s_max: int,
    t_max: int,
    name: str,
    workers: int,
    order_seed: int | None,
) -> MinimalResolution:
    if s_max < 0 or t_max < 0:
        raise ValueError(f"window (s_max={s_max}, t_max={t_max}) must be nonnegative")
    top = module.valid_through
    if top is not None and t_max > top:
        raise WindowError(f"t_max={t_max} exceeds module window t <= {top}")

    p = module.prime
    logger.info(
        "Resolving %s at p=%d through s=%d, t=%d on %d thread(s)",
        name,
        p,
        s_max,
        t_max,
        workers,
    )
    return MinimalResolution(
        prime=p,
        name=name,
        module=module,
        s_max=s_max,
        t_max=t_max,
        stages=[
            ResolutionStage(FreeModule(p, order_seed=order_seed))
            for _ in range(s_max + 1)
        ],
    )


def _finish(resolution: MinimalResolution) -> MinimalResolution:
    total = sum(len(stage.images) for stage in resolution.stages)
    logger.info("Resolved %s: %d generators in window", resolution.name, total)
    return resolution


def _workers(threads: int | None) -> int:
    return max(1, threads if threads is not None else settings.threads)


async def resolve_async(
    module: GradedModule,
    s_max: int,
    t_max: int,
    *,
    name: str = "module",
    threads: int | None = None,
    order_seed: int | None = None,
) -> MinimalResolution:
    """Resolve ``module`` through homological degree ``s_max`` and degree ``t_max``.

    Args:
        module: The module to resolve; must be known through ``t_max``.
        s_max: Top homological degree.
        t_max: Top internal degree.
        name: Label carried into the chart.
        threads: Worker threads per anti-diagonal; defaults to the configured
            ``EXPONENT_TOOLKIT_THREADS``.
        order_seed: If given, permute the basis order inside every free module.

    Returns:
        The minimal resolution over the window.

    Raises:
        ValueError: If the window is negative.
        WindowError: If the window exceeds the module's validity.
    """
    workers = _workers(threads)
    resolution = _start(module, s_max, t_max, name, workers, order_seed)
    semaphore = asyncio.Semaphore(workers)

    async def run(s: int, t: int) -> _StepResult:
        async with semaphore:
            return await asyncio.to_thread(_compute_step, resolution, s, t)

    for cells in _diagonals(s_max, t_max):
        if workers == 1 or len(cells) == 1:
            results = [_compute_step(resolution, s, t) for s, t in cells]
        else:
            results = list(await asyncio.gather(*(run(s, t) for s, t in cells)))
        for (s, t), step in zip(cells, results, strict=True):
            _commit(resolution, s, t, step)
    return _finish(resolution)


def resolve(
    module: GradedModule,
    s_max: int,
    t_max: int,
    *,
    name: str = "module",
    threads: int | None = None,
    order_seed: int | None = None,
) -> MinimalResolution:
    """Synchronous form of :func:`resolve_async`.

    A single worker runs in the calling thread without an event loop, so this
    is safe to call from async code with ``threads=1``.
    """
    workers = _workers(threads)
    if workers > 1:
        return asyncio.run(
            resolve_async(
                module,
                s_max,
                t_max,
                name=name,
                threads=workers,
                order_seed=order_seed,
            )
        )
    resolution = _start(module, s_max, t_max, name, workers, order_seed)
    for cells in _diagonals(s_max, t_max):
        for s, t in cells:
            _commit(resolution, s, t, _compute_step(resolution, s, t))
    return _finish(resolution)


def present_module(tag: str, p: int, t_max: int) -> GradedModulePresentation:
    """Presentation of a built-in module, complete through ``t_max``.

    Args:
        tag: One of ``sphere``, ``hz``, ``tau1``.
        p: The prime.
        t_max: Top degree of the presentation.

    Raises:
        ValueError: If the tag is unknown or ``t_max`` is negative.
    """
    p = check_prime(p)
    if tag not in BUILTIN_MODULES:
        raise ValueError(f"Unknown module '{tag}'. Use: {list(BUILTIN_MODULES)}")
    if t_max < 0:
        raise ValueError(f"t_max={t_max} must be nonnegative")

    if tag == "sphere":
        relations = tuple(
            Relation(
                SteenrodElement.monomial(p, op).degree,
                ((0, SteenrodElement.monomial(p, op)),),
            )
            for op in indecomposables(p, t_max)
        )
        return GradedModulePresentation(p, (0,), relations, t_max, name="sphere")

    if tag == "hz":
        bockstein = SteenrodElement.monomial(p, q0(p))
        relations = (Relation(1, ((0, bockstein),)),) if t_max >= 1 else ()
        return GradedModulePresentation(p, (0,), relations, t_max, name="hz")

    return _augmentation_kernel_presentation(p, t_max)


def _augmentation_kernel_presentation(p: int, t_max: int) -> GradedModulePresentation:
    # The positive part of H*(HZ) is resolved one step to read off minimal
    # generators and relations, then desuspended once.
    hz = FinitelyPresentedModule(present_module("hz", p, t_max + 1))
    kernel = TruncatedModule(hz, 1)
    first_steps = resolve(kernel, 1, t_max + 1, name="ker(hz -> F_p)", threads=1)

    generators = tuple(d - 1 for d in first_steps.generator_degrees(0))
    relations = []
    for g, d in enumerate(first_steps.generator_degrees(1)):
        terms = first_steps.differential_terms(1, g)
        relations.append(Relation(d - 1, tuple(sorted(terms.items()))))
    logger.debug(
        "tau1 presentation: %d generators, %d relations through t=%d",
        len(generators),
        len(relations),
        t_max,
    )
    return GradedModulePresentation(p, generators, tuple(relations), t_max, name="tau1")


def minimal_resolution(
    presentation: GradedModulePresentation,
    s_max: int,
    t_max: int,
    *,
    threads: int | None = None,
    order_seed: int | None = None,
) -> MinimalResolution:
    """Minimal resolution of a presented module over the window.

    Raises:
        WindowError: If ``t_max`` exceeds the presentation's validity.
    """
    if t_max > presentation.t_max:
        raise WindowError(
            f"t_max={t_max} exceeds the presentation window t <= {presentation.t_max}"
        )
    return resolve(
        FinitelyPresentedModule(presentation),
        s_max,
        t_max,
        name=presentation.name,
        threads=threads,
        order_seed=order_seed,
    )


@dataclass(frozen=True)
class ExtChart:
    """Dimensions of ``Ext^{s,t}(M, F_p)`` over ``s <= s_max``, ``t <= t_max``.

    ``entries`` lists the nonzero ``((s, t), dim)`` pairs sorted by bidegree.
    """

    prime: int
    module: str
    s_max: int
    t_max: int
    entries: tuple[tuple[tuple[int, int], int], ...] = ()

    def __post_init__(self) -> None:
        for (s, t), dim in self.entries:
            if not self.in_window(s, t):
                raise ValueError(f"entry ({s}, {t}) outside the chart window")
            if dim <= 0:
                raise ValueError(f"entry ({s}, {t}) has nonpositive dimension {dim}")

    @classmethod
    def from_dimensions(
        cls,
        p: int,
        module: str,
        s_max: int,
        t_max: int,
        dims: dict[tuple[int, int], int],
    ) -> "ExtChart":
        entries = tuple(sorted((k, v) for k, v in dims.items() if v))
        return cls(p, module, s_max, t_max, entries)

    def in_window(self, s: int, t: int) -> bool:
        return 0 <= s <= self.s_max and 0 <= t <= self.t_max

    def dim(self, s: int, t: int) -> int:
        """Dimension at ``(s, t)``; 0 for bidegrees outside the window."""
        return dict(self.entries).get((s, t), 0)

    def as_dict(self) -> dict[tuple[int, int], int]:
        return dict(self.entries)

    def row(self, s: int) -> dict[int, int]:
        return {t: d for (row, t), d in self.entries if row == s}


def ext_chart(resolution: MinimalResolution) -> ExtChart:
    """Read ``Ext^{s,t}`` off the generators of the resolution."""
    dims: dict[tuple[int, int], int] = {}
    for s, stage in enumerate(resolution.stages):
        for t in stage.free.generator_degrees:
            dims[(s, t)] = dims.get((s, t), 0) + 1
    return ExtChart.from_dimensions(
        resolution.prime, resolution.name, resolution.s_max, resolution.t_max, dims
    )


def compute_chart(
    tag: str,
    p: int,
    s_max: int,
    t_max: int,
    *,
    threads: int | None = None,
    order_seed: int | None = None,
) -> ExtChart:
    """Present, resolve and chart a built-in module in one call."""
    presentation = present_module(tag, p, t_max)
    resolution = minimal_resolution(
        presentation, s_max, t_max, threads=threads, order_seed=order_seed
    )
    return ext_chart(resolution)


@dataclass(frozen=True)
class ShiftViolation:
    """A bidegree where the tau1 chart disagrees with the shifted sphere chart."""

    s: int
    t: int
    expected: int
    actual: int


@dataclass(frozen=True)
class DimensionShiftReport:
    shift: int
    checked: int
    violations: tuple[ShiftViolation, ...]

    @property
    def verified(self) -> bool:
        return not self.violations


def verify_dimension_shift(
    sphere_chart: ExtChart, tau1_chart: ExtChart, shift: int = 1
) -> DimensionShiftReport:
    """Compare the tau1 chart with the sphere chart shifted by ``(shift, shift)``.

    The exact sequence ``0 -> I -> H*(HZ) -> F_p -> 0`` with
    ``Ext^{s,t}(H*(HZ)) = [s = t]`` gives ``dim(s, t) = sphere(s + 1, t + 1)``
    off the diagonal and ``0`` on it for the desuspension of ``I``. Pass
    ``shift=-1`` to test the ``(s - 1, t - 1)`` indexing instead. Only
    bidegrees whose shifted partner lies in the sphere window are checked;
    negative homological degrees count as zero.

    Raises:
        ValueError: If the charts are at different primes.
    """
    if sphere_chart.prime != tau1_chart.prime:
        raise ValueError("charts are at different primes")
    violations = []
    checked = 0
    for s in range(tau1_chart.s_max + 1):
        for t in range(tau1_chart.t_max + 1):
            s2, t2 = s + shift, t + shift
            if s2 >= 0 and not sphere_chart.in_window(s2, max(t2, 0)):
                continue
            expected = 0 if s == t or s2 < 0 or t2 < 0 else sphere_chart.dim(s2, t2)
            actual = tau1_chart.dim(s, t)
            checked += 1
            if actual != expected:
                violations.append(ShiftViolation(s, t, expected, actual))
    return DimensionShiftReport(shift, checked, tuple(violations))


def in_vanishing_region(p: int, s: int, t: int) -> bool:
    """Whether the sphere's Ext is zero at ``(s, t)`` by the vanishing line.

    The region is ``0 < s < t < 3s - 3`` at p = 2 and
    ``0 < s < t < (2p - 1)s - 2`` at odd p.
    """
    bound = 3 * s - 3 if p == 2 else (2 * p - 1) * s - 2
    return 0 < s < t < bound


def verify_vanishing_region(
    chart: ExtChart, max_stem: int | None = None
) -> list[tuple[int, int]]:
    """Nonzero bidegrees of ``chart`` inside the sphere's vanishing region."""
    return [
        (s, t)
        for (s, t), _ in chart.entries
        if in_vanishing_region(chart.prime, s, t)
        and (max_stem is None or t - s <= max_stem)
    ]


def verify_d_squared_zero(resolution: MinimalResolution) -> list[tuple[int, int]]:
    """Bidegrees ``(s, t)`` where ``d_{s-1} d_s`` is nonzero."""
    failures = []
    for s in range(1, resolution.s_max + 1):
        for t in range(resolution.t_max + 1):
            product = resolution.differential(s - 1, t) @ resolution.differential(s, t)
            if not product.is_zero():
                failures.append((s, t))
    return failures


def verify_exactness(resolution: MinimalResolution) -> list[tuple[int, int]]:
    """Bidegrees where the resolution fails to be exact.

    ``(-1, t)`` flags ``d_0`` not surjective onto ``M_t``; ``(s, t)`` flags
    ``image d_{s+1} != kernel d_s`` in ``P_s``.
    """
    failures = []
    for t in range(resolution.t_max + 1):
        if rank(resolution.differential(0, t)) != resolution.module.dimension(t):
            failures.append((-1, t))
        for s in range(resolution.s_max):
            d_s = resolution.differential(s, t)
            kernel = d_s.cols - rank(d_s)
            if rank(resolution.differential(s + 1, t)) != kernel:
                failures.append((s, t))
    return failures


def verify_minimality(resolution: MinimalResolution) -> list[tuple[int, int]]:
    """Generators ``(s, g)`` whose differential has a unit coefficient."""
    failures = []
    for s in range(1, resolution.s_max + 1):
        target = resolution.stages[s - 1].free
        for g, t in enumerate(resolution.generator_degrees(s)):
            image = resolution.stages[s].images[g]
            for h in target.generators_in_degree(t):
                if image[target.position(t, (h, unit(resolution.prime)))]:
                    failures.append((s, g))
                    break
    return failures
