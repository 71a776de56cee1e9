"""Lower-bound witnesses from skeleta of RP^infinity and B(Sigma_p).

Homology groups are computed (or read off closed formulas); the K-theory
orders that turn them into lower bounds are cited facts and are never
recomputed here.
"""

import logging
from dataclasses import dataclass, field

from exponent_toolkit.algebra.steenrod import check_prime
from exponent_toolkit.bounds import (
    CertificateKind,
    ExponentCertificate,
    main_lower,
    main_upper,
)

logger = logging.getLogger(__name__)

RP_K_THEORY_CITATION = "reduced K^0(RP^{2r}) = Z/2^r (cited)"
YK_K_THEORY_CITATION = "K^0(Y_k) = Z/p^k, extensions fixed by naturality (cited)"


@dataclass(frozen=True)
class AbelianGroup:
    """A finitely generated abelian group as a list of cyclic summands.

    An order of 0 stands for a free summand of ``ring``.
    """

    cyclic_orders: tuple[int, ...] = ()
    ring: str = "Z"

    @property
    def is_zero(self) -> bool:
        return not self.cyclic_orders

    @property
    def torsion_orders(self) -> tuple[int, ...]:
        return tuple(o for o in self.cyclic_orders if o)

    @property
    def rank(self) -> int:
        return sum(1 for o in self.cyclic_orders if o == 0)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        return " + ".join(self.ring if o == 0 else f"Z/{o}" for o in self.cyclic_orders)


@dataclass(frozen=True)
class HomologyTable:
    """Homology of a space over a window of degrees."""

    space: str
    ring: str
    groups: dict[int, AbelianGroup] = field(default_factory=dict)

    def group(self, i: int) -> AbelianGroup:
        return self.groups.get(i, AbelianGroup(ring=self.ring))

    def nonzero_degrees(self) -> list[int]:
        return sorted(i for i, g in self.groups.items() if not g.is_zero)


def _rp_boundary(j: int) -> int:
    # d_j : C_j -> C_{j-1} in the cellular complex of RP^n
    return 0 if j % 2 else 2


def rp_homology(r: int, i: int) -> AbelianGroup:
    """Reduced integral homology ``H_i(RP^{2r})`` from its cellular chains.

    Degrees outside ``0..2r`` give the zero group.

    Raises:
        ValueError: If ``r < 1``.
    """
    if r < 1:
        raise ValueError(f"r={r} must be at least 1")
    top = 2 * r
    # reduced, so the point class in degree 0 is dropped
    if not 0 < i <= top or _rp_boundary(i) != 0:
        return AbelianGroup()
    boundaries = _rp_boundary(i + 1) if i < top else 0
    return AbelianGroup((boundaries,))


def rp_homology_table(r: int) -> HomologyTable:
    return HomologyTable(
        f"RP^{2 * r}", "Z", {i: rp_homology(r, i) for i in range(2 * r + 1)}
    )


def bsigma_homology(p: int, i: int) -> AbelianGroup:
    """``H_i(B Sigma_p; Z_(p))`` for odd p.

    Raises:
        ValueError: If ``p`` is 2 or not prime, or ``i < 0``.
    """
    p = check_prime(p)
    if p == 2:
        raise ValueError("B Sigma_p homology is tabulated for odd primes only")
    if i < 0:
        raise ValueError(f"degree {i} is negative")
    ring = f"Z_({p})"
    if i == 0:
        return AbelianGroup((0,), ring)
    if (i + 1) % (2 * p - 2) == 0:
        return AbelianGroup((p,), ring)
    return AbelianGroup(ring=ring)


def bsigma_homology_table(p: int, i_max: int) -> HomologyTable:
    return HomologyTable(
        f"B Sigma_{p}",
        f"Z_({p})",
        {i: bsigma_homology(p, i) for i in range(i_max + 1)},
    )


def yk_cohomology(p: int, k: int, i: int) -> AbelianGroup:
    """``H^i(Y_k)``: ``Z/p`` in degrees ``j(2p - 2)`` for ``1 <= j <= k``."""
    p = check_prime(p)
    if k < 1:
        raise ValueError(f"k={k} must be at least 1")
    period = 2 * p - 2
    if i > 0 and i % period == 0 and i // period <= k:
        return AbelianGroup((p,))
    return AbelianGroup()


def yk_cell_window(p: int, k: int) -> tuple[int, int]:
    """Lowest and highest cell dimension of ``Y_k``."""
    p = check_prime(p)
    if k < 1:
        raise ValueError(f"k={k} must be at least 1")
    period = 2 * p - 2
    return period - 1, period * k


@dataclass(frozen=True)
class WitnessRecord:
    """A lower bound on ``exp_p(tau[1,n] S^0)`` and the space that realizes it.

    Attributes:
        prime: The prime p.
        parameter: ``r`` at p = 2, ``k`` at odd p.
        space: ``RP^{2r}`` or ``Y_k``.
        k_theory_exponent: ``e`` with K-theory of order ``p^e``.
        citation: Source of the K-theory order.
        n: Top degree of the truncation the bound is about.
        cell_window: Lowest and highest cell dimension of the space.
        certificate: The resulting lower certificate.
    """

    prime: int
    parameter: int
    space: str
    k_theory_exponent: int
    citation: str
    n: int
    cell_window: tuple[int, int]
    certificate: ExponentCertificate

    @property
    def lower(self) -> int:
        return self.certificate.value


def witness_degree(p: int, parameter: int) -> int:
    """Top degree ``n`` of the truncation a witness bounds.

    Args:
        p: The prime.
        parameter: ``r`` at p = 2, ``k`` at odd p.

    Returns:
        ``2r - 1`` at p = 2, ``(2p - 2)(k - 1) + 1`` at odd p.
    """
    if p == 2:
        return 2 * parameter - 1
    return (2 * p - 2) * (parameter - 1) + 1


def lower_bound_witness(p: int, parameter: int) -> WitnessRecord:
    """Witness record for ``r`` (p = 2) or ``k`` (odd p).

    Raises:
        ValueError: If ``parameter < 1`` or ``p`` is not prime.
    """
    p = check_prime(p)
    if parameter < 1:
        raise ValueError(f"witness parameter {parameter} must be at least 1")
    n = witness_degree(p, parameter)
    if p == 2:
        space, citation = f"RP^{2 * parameter}", RP_K_THEORY_CITATION
        cells = (1, 2 * parameter)
    else:
        space, citation = f"Y_{parameter}", YK_K_THEORY_CITATION
        cells = yk_cell_window(p, parameter)
    certificate = ExponentCertificate(
        p,
        CertificateKind.LOWER,
        parameter - 1,
        f"tau[1,{n}] S^0",
        f"K-theory of {space}",
    )
    return WitnessRecord(
        p, parameter, space, parameter, citation, n, cells, certificate
    )


def witness_table(p: int, n_max: int) -> list[WitnessRecord]:
    """All witnesses with ``n <= n_max``, in parameter order."""
    records = []
    parameter = 1
    while witness_degree(p, parameter) <= n_max:
        records.append(lower_bound_witness(p, parameter))
        parameter += 1
    return records


@dataclass(frozen=True)
class SweepViolation:
    parameter: int
    n: int
    lower: int
    upper: int
    reason: str


@dataclass(frozen=True)
class SweepReport:
    prime: int
    n_max: int
    checked: int
    violations: tuple[SweepViolation, ...]

    @property
    def consistent(self) -> bool:
        return not self.violations


def consistency_sweep(p: int, n_max: int) -> SweepReport:
    """Check every witness with ``n <= n_max`` against the closed-form bounds.

    A witness must not exceed the upper bound at its ``n``, and its value must
    be the floor formula for the lower bound there.

    Raises:
        ValueError: If ``n_max < 1`` or ``p`` is not prime.
    """
    p = check_prime(p)
    if n_max < 1:
        raise ValueError(f"n_max={n_max} must be at least 1")
    violations = []
    records = witness_table(p, n_max)
    for record in records:
        n = record.n
        upper = main_upper(p, n)
        if record.lower > upper:
            violations.append(
                SweepViolation(record.parameter, n, record.lower, upper, "above upper")
            )
        if record.lower != main_lower(p, n):
            violations.append(
                SweepViolation(
                    record.parameter, n, record.lower, upper, "not the floor formula"
                )
            )
    if violations:
        logger.error("Witness sweep at p=%d found %d violation(s)", p, len(violations))
    else:
        logger.info("Witness sweep at p=%d: %d witnesses consistent", p, len(records))
    return SweepReport(p, n_max, len(records), tuple(violations))
