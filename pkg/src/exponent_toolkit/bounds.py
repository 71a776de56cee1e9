"""Exponent certificates and the bound formulas built from them.

Every certificate carries a p-exponent ``e``: an upper certificate says
``p^e`` annihilates its subject, a lower one says ``p^(e-1)`` does not.
Composition laws (cofiber sequences, smash products, truncation) act
additively or by ``min``/``max`` on these exponents.
"""

import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from enum import StrEnum

from sympy import multiplicity, primefactors, primerange

from exponent_toolkit.algebra.steenrod import check_prime
from exponent_toolkit.resolution import ExtChart

logger = logging.getLogger(__name__)


class HypothesisViolationError(ValueError):
    """A theorem's hypothesis fails for the supplied data."""


class WindowLimitedError(RuntimeError):
    """A chart-derived vanishing function ran out of window."""


class CertificateKind(StrEnum):
    UPPER = "upper"
    LOWER = "lower"


class BoundKind(StrEnum):
    """Closed-form bounds understood by :func:`closed_form_bound`."""

    MAIN_UPPER = "main-upper"
    MAIN_LOWER = "main-lower"
    HUREWICZ_KERNEL = "hurewicz-kernel"
    HUREWICZ_COKERNEL = "hurewicz-cokernel"
    K_INVARIANT = "k-invariant"
    INFINITE_LOOP_KERNEL = "infinite-loop-kernel"
    TORSION_INTERVAL = "torsion-interval"
    CLASSIFYING_SPACE = "classifying-space"


@dataclass(frozen=True)
class ExponentCertificate:
    """A p-exponent bound for a named spectrum or map.

    Attributes:
        prime: The prime p.
        kind: Upper or lower bound.
        value: The exponent ``e``.
        subject: What the bound is about, e.g. ``tau[1,10] S^0``.
        provenance: The result or operation that produced it.
    """

    prime: int
    kind: CertificateKind
    value: int
    subject: str
    provenance: str

    def __post_init__(self) -> None:
        if self.value < 0:
            raise ValueError(f"certificate value {self.value} is negative")
        if not self.subject:
            raise ValueError("certificate subject must be set")

    def __str__(self) -> str:
        relation = "<=" if self.kind is CertificateKind.UPPER else ">="
        return (
            f"exp_{self.prime}({self.subject}) {relation} {self.value}"
            f"  [{self.provenance}]"
        )


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _truncation(n: int) -> str:
    return f"tau[1,{n}] S^0"


def main_upper(p: int, n: int) -> int:
    """Upper bound on the p-exponent of ``tau[1,n] S^0``."""
    if p == 2:
        return _ceil_div(n, 2) + 3
    return _ceil_div(n + 3, 2 * p - 2) + 1


def main_lower(p: int, n: int) -> int:
    """Lower bound on the p-exponent of ``tau[1,n] S^0``."""
    if p == 2:
        return (n - 1) // 2
    return (n - 1) // (2 * p - 2)


def truncation_certificate(p: int, n: int) -> ExponentCertificate:
    """Upper certificate for ``tau[1,n] S^0``; exponent 0 when the truncation is 0."""
    p = check_prime(p)
    if n <= 0:
        return ExponentCertificate(
            p, CertificateKind.UPPER, 0, _truncation(n), "empty truncation"
        )
    return ExponentCertificate(
        p, CertificateKind.UPPER, main_upper(p, n), _truncation(n), "vanishing line"
    )


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ValueError(message)


def closed_form_bound(
    kind: BoundKind | str,
    p: int,
    n: int,
    *,
    m: int | None = None,
    k: int | None = None,
    ell: int | None = None,
    group_order: int | None = None,
) -> ExponentCertificate:
    """Evaluate a closed-form bound.

    Args:
        kind: Which bound to evaluate.
        p: The prime.
        n: Top degree of the truncation, ``n >= 1``.
        m: Connectivity parameter for ``infinite-loop-kernel`` (``0 <= m <= n``).
        k: Exponent of the homotopy groups for ``torsion-interval``.
        ell: Interval length for ``torsion-interval`` (``ell >= 1``).
        group_order: ``|G|`` for ``classifying-space``.

    Returns:
        The certificate with its provenance.

    Raises:
        ValueError: If ``p`` is not prime, ``n < 1``, or the extra parameters
            for ``kind`` are missing or out of range.
    """
    p = check_prime(p)
    try:
        kind = BoundKind(kind)
    except ValueError as e:
        raise ValueError(
            f"Unknown bound kind '{kind}'. Use: {[b.value for b in BoundKind]}"
        ) from e
    _require(n >= 1, f"n={n} must be at least 1")
    upper = CertificateKind.UPPER

    if kind is BoundKind.MAIN_UPPER:
        return truncation_certificate(p, n)
    if kind is BoundKind.MAIN_LOWER:
        return ExponentCertificate(
            p,
            CertificateKind.LOWER,
            main_lower(p, n),
            _truncation(n),
            "K-theory witnesses",
        )
    if kind is BoundKind.HUREWICZ_KERNEL:
        return ExponentCertificate(
            p, upper, main_upper(p, n), f"ker(h: pi_{n} X -> H_{n} X)", "Hurewicz"
        )
    if kind is BoundKind.HUREWICZ_COKERNEL:
        return ExponentCertificate(
            p,
            upper,
            truncation_certificate(p, n - 1).value,
            f"coker(h: pi_{n} X -> H_{n} X)",
            "Hurewicz",
        )
    if kind is BoundKind.K_INVARIANT:
        return k_invariant_bound(p, n)
    if kind is BoundKind.INFINITE_LOOP_KERNEL:
        if m is None:
            raise ValueError("infinite-loop-kernel needs m")
        _require(0 <= m <= n, f"m={m} must satisfy 0 <= m <= n={n}")
        return ExponentCertificate(
            p,
            upper,
            truncation_certificate(p, n - m).value,
            f"ker(h: pi_{n} X -> H_{n} X), X ({m - 1})-connected infinite loop space",
            "infinite loop Hurewicz",
        )
    if kind is BoundKind.TORSION_INTERVAL:
        if k is None or ell is None:
            raise ValueError("torsion-interval needs k and ell")
        _require(k >= 0, f"k={k} must be nonnegative")
        _require(ell >= 1, f"ell={ell} must be at least 1")
        value = (
            k
            + truncation_certificate(p, ell).value
            + truncation_certificate(p, ell - 1).value
        )
        return ExponentCertificate(
            p,
            upper,
            value,
            f"X with p^{k} pi_i X = 0 on an interval of length {ell}",
            "torsion interval",
        )
    if group_order is None:
        raise ValueError("classifying-space needs group_order")
    _require(group_order >= 1, f"group order {group_order} must be positive")
    return ExponentCertificate(
        p,
        upper,
        p_valuation(group_order, p) + main_upper(p, n),
        f"tau[1,{n}] Sigma^inf BG, |G|={group_order}",
        "|G| exp(tau[1,n] S^0)",
    )


def p_valuation(value: int, p: int) -> int:
    """Exponent of ``p`` in the positive integer ``value``."""
    if value < 1:
        raise ValueError(f"valuation of nonpositive integer {value}")
    return int(multiplicity(p, value))


@dataclass(frozen=True)
class VanishingFunction:
    """A function ``f`` with ``Ext^{s,t} = 0`` whenever ``t < f(s)``.

    Either affine, ``f(s) = slope * s + intercept``, or a table read off a
    chart. A table row that is empty through ``t_max`` is stored as ``None``
    (window-limited).
    """

    prime: int
    slope: int | None = None
    intercept: int | None = None
    table: tuple[int | None, ...] | None = None
    t_max: int | None = None

    def __post_init__(self) -> None:
        affine = self.slope is not None and self.intercept is not None
        if affine == (self.table is not None):
            raise ValueError("give either slope and intercept, or a table")
        if self.table is not None and self.t_max is None:
            raise ValueError("a table-form vanishing function needs t_max")

    @classmethod
    def affine(cls, p: int, slope: int, intercept: int) -> "VanishingFunction":
        return cls(p, slope=slope, intercept=intercept)

    @classmethod
    def main_line(cls, p: int) -> "VanishingFunction":
        """``3s - 5`` at p = 2, ``(2p - 1)s - 2p`` at odd p."""
        if p == 2:
            return cls.affine(2, 3, -5)
        return cls.affine(p, 2 * p - 1, -2 * p)

    @property
    def is_affine(self) -> bool:
        return self.table is None

    @property
    def s_max(self) -> int | None:
        return None if self.table is None else len(self.table) - 1

    def __call__(self, s: int) -> int | None:
        if self.table is None:
            assert self.slope is not None and self.intercept is not None
            return self.slope * s + self.intercept
        if not 0 <= s < len(self.table):
            raise ValueError(f"s={s} outside the table window 0..{self.s_max}")
        return self.table[s]

    def guaranteed(self, s: int) -> int:
        """A valid vanishing value at ``s``, counting empty rows as ``t_max + 1``."""
        value = self(s)
        if value is None:
            assert self.t_max is not None
            return self.t_max + 1
        return value


def vanishing_function_from_chart(chart: ExtChart) -> VanishingFunction:
    """Table-form vanishing function: the lowest nonzero ``t`` in each row."""
    table: list[int | None] = []
    for s in range(chart.s_max + 1):
        row = chart.row(s)
        table.append(min(row) if row else None)
    return VanishingFunction(chart.prime, table=tuple(table), t_max=chart.t_max)


def exponent_bound_from_vanishing(
    f: VanishingFunction, n: int, subject: str | None = None
) -> ExponentCertificate | None:
    """Least ``m`` with ``f(m) - m > n``, as an upper certificate.

    Returns:
        The certificate, or ``None`` when an affine ``f`` never satisfies the
        condition.

    Raises:
        WindowLimitedError: If ``f`` is a table and no row in its window
            satisfies the condition.
    """
    label = subject or _truncation(n)
    if f.is_affine:
        assert f.slope is not None and f.intercept is not None
        a, b = f.slope, f.intercept
        if a > 1:
            m = max(0, (n - b) // (a - 1) + 1)
        elif b > n:
            m = 0
        else:
            return None
        return ExponentCertificate(
            f.prime,
            CertificateKind.UPPER,
            m,
            label,
            f"vanishing function {a}s{b:+d}",
        )

    assert f.s_max is not None
    for m in range(f.s_max + 1):
        if f.guaranteed(m) - m > n:
            return ExponentCertificate(
                f.prime,
                CertificateKind.UPPER,
                m,
                label,
                f"chart vanishing function through t={f.t_max}",
            )
    raise WindowLimitedError(
        f"no s <= {f.s_max} has f(s) - s > {n} within t <= {f.t_max}"
    )


def _check_upper(*certs: ExponentCertificate) -> int:
    primes = {c.prime for c in certs}
    if len(primes) > 1:
        raise ValueError(f"certificates at mixed primes {sorted(primes)}")
    for cert in certs:
        if cert.kind is not CertificateKind.UPPER:
            raise ValueError(f"'{cert.subject}' is a lower bound, not an upper one")
    return primes.pop()


def cofiber_combine(
    a: ExponentCertificate, b: ExponentCertificate
) -> ExponentCertificate:
    """Bound the middle term of a cofiber sequence by the sum of the outer ones."""
    p = _check_upper(a, b)
    return ExponentCertificate(
        p,
        CertificateKind.UPPER,
        a.value + b.value,
        f"cofiber({a.subject}, {b.subject})",
        f"cofiber sequence: {a.provenance} + {b.provenance}",
    )


def interval_product_bound(
    p: int, exponents: Sequence[int], subject: str = "tau[m,n] X"
) -> ExponentCertificate:
    """Bound a finite Postnikov section by the sum of its homotopy exponents."""
    p = check_prime(p)
    for e in exponents:
        _require(e >= 0, f"exponent {e} is negative")
    return ExponentCertificate(
        p,
        CertificateKind.UPPER,
        sum(exponents),
        subject,
        f"Postnikov tower over {len(exponents)} homotopy group(s)",
    )


def truncate_cert(
    cert: ExponentCertificate, subject: str | None = None
) -> ExponentCertificate:
    """A bound for ``X`` stays valid for any Postnikov truncation of ``X``."""
    _check_upper(cert)
    return ExponentCertificate(
        cert.prime,
        CertificateKind.UPPER,
        cert.value,
        subject or f"truncation of {cert.subject}",
        f"truncation of {cert.provenance}",
    )


def smash_combine(
    a: ExponentCertificate, b: ExponentCertificate
) -> ExponentCertificate:
    """Bound a smash product by the smaller of the two exponents.

    Args:
        a: Upper certificate for the first factor.
        b: Upper certificate for the second factor, at the same prime.

    Returns:
        An upper certificate for ``a ^ b``.

    Raises:
        ValueError: If the primes differ or either certificate is a lower bound.
    """
    p = _check_upper(a, b)
    return ExponentCertificate(
        p,
        CertificateKind.UPPER,
        min(a.value, b.value),
        f"{a.subject} ^ {b.subject}",
        "smash product",
    )


def hurewicz_bounds_from_cert(
    kernel_cert: ExponentCertificate, cokernel_cert: ExponentCertificate
) -> tuple[ExponentCertificate, ExponentCertificate]:
    """Hurewicz kernel and cokernel bounds from certificates for
    ``tau[1,n] S^0`` and ``tau[1,n-1] S^0``."""
    p = _check_upper(kernel_cert, cokernel_cert)
    kernel = ExponentCertificate(
        p,
        CertificateKind.UPPER,
        kernel_cert.value,
        "ker(Hurewicz)",
        f"Hurewicz from {kernel_cert.subject}",
    )
    cokernel = ExponentCertificate(
        p,
        CertificateKind.UPPER,
        cokernel_cert.value,
        "coker(Hurewicz)",
        f"Hurewicz from {cokernel_cert.subject}",
    )
    return kernel, cokernel


def arlettaz_bound(
    p: int, rho: Sequence[int], n: int, mode: str = "kernel"
) -> ExponentCertificate:
    """Product-of-stem-exponents bound for the Hurewicz map.

    ``rho[i - 1]`` is the p-exponent of the ``i``-th stable stem, supplied by
    the caller. The kernel bound sums the first ``n`` entries, the cokernel
    bound the first ``n - 1``.

    Raises:
        ValueError: If ``mode`` is unknown or ``rho`` is too short.
    """
    p = check_prime(p)
    if mode not in ("kernel", "cokernel"):
        raise ValueError(f"Unknown mode '{mode}'. Use: ['kernel', 'cokernel']")
    _require(n >= 1, f"n={n} must be at least 1")
    count = n if mode == "kernel" else n - 1
    if len(rho) < count:
        raise ValueError(f"rho has {len(rho)} entries, {mode} bound needs {count}")
    return interval_product_bound(p, rho[:count], subject=f"{mode}(Hurewicz), n={n}")


@dataclass(frozen=True)
class SubgroupRecord:
    """A conjugacy class of subgroups ``H`` with ``|WH|`` and ``dim V^H``."""

    label: str
    weyl_order: int
    fixed_dim: int

    def __post_init__(self) -> None:
        if self.weyl_order < 1:
            raise ValueError(f"{self.label}: Weyl order {self.weyl_order} < 1")
        if self.fixed_dim < 0:
            raise ValueError(f"{self.label}: fixed dimension {self.fixed_dim} < 0")


@dataclass(frozen=True)
class GroupFixedPointData:
    group: str
    records: tuple[SubgroupRecord, ...]

    def __post_init__(self) -> None:
        if not self.records:
            raise ValueError(f"group '{self.group}' has no subgroup records")


def _check_hypothesis(data: GroupFixedPointData, n: int) -> None:
    for record in data.records:
        if record.fixed_dim == n:
            logger.warning(
                "Equivariant hypothesis fails: n=%d = dim V^H for H=%s",
                n,
                record.label,
            )
            raise HypothesisViolationError(
                f"n={n} equals dim V^H for subgroup '{record.label}'"
            )


def equivariant_bound(
    data: GroupFixedPointData,
    n: int,
    p: int,
    cert_source: Callable[[int], ExponentCertificate] | None = None,
) -> ExponentCertificate:
    """p-exponent bound for ``tau[1,n]`` of an equivariant sphere.

    The value is the max over subgroups with ``dim V^H < n`` of
    ``v_p(|WH|) + exp_p(tau[1, n - dim V^H] S^0)``.

    Args:
        data: Weyl orders and fixed dimensions of the subgroups.
        n: Top degree.
        p: The prime.
        cert_source: Upper certificate for ``tau[1,k] S^0`` as a function of
            ``k``; the closed-form bound by default.

    Raises:
        HypothesisViolationError: If ``n = dim V^H`` for some subgroup.
    """
    p = check_prime(p)
    _check_hypothesis(data, n)
    source = cert_source or (lambda k: truncation_certificate(p, k))

    best: tuple[int, str] | None = None
    for record in data.records:
        if record.fixed_dim >= n:
            continue
        value = (
            p_valuation(record.weyl_order, p) + source(n - record.fixed_dim).value
        )
        if best is None or value > best[0]:
            best = (value, record.label)

    subject = f"tau[1,{n}] S^V, G={data.group}"
    if best is None:
        return ExponentCertificate(
            p, CertificateKind.UPPER, 0, subject, "no contributing subgroups"
        )
    return ExponentCertificate(
        p,
        CertificateKind.UPPER,
        best[0],
        subject,
        f"tom Dieck splitting, maximized at H={best[1]}",
    )


def equivariant_lcm_bound(data: GroupFixedPointData, n: int) -> int:
    """Integer form of :func:`equivariant_bound`: ``prod q^(e_q)`` over primes q.

    Only primes dividing some ``|WH|`` or with first torsion in stem
    ``2q - 3 <= n - dim V^H`` can contribute.
    """
    _check_hypothesis(data, n)
    primes: set[int] = set()
    for record in data.records:
        if record.fixed_dim >= n:
            continue
        primes.update(int(q) for q in primefactors(record.weyl_order))
        top = (n - record.fixed_dim + 3) // 2
        primes.update(int(q) for q in primerange(2, top + 1))
    result = 1
    for q in sorted(primes):
        result *= q ** equivariant_bound(data, n, q).value
    return result


def k_invariant_bound(
    p: int, n: int, cert: ExponentCertificate | None = None
) -> ExponentCertificate:
    """Bound on the ``n``-th k-invariant of a connective spectrum."""
    p = check_prime(p)
    _require(n >= 1, f"n={n} must be at least 1")
    source = cert or truncation_certificate(p, n)
    _check_upper(source)
    return ExponentCertificate(
        p,
        CertificateKind.UPPER,
        source.value,
        f"k-invariant k_{n}",
        f"annihilated by exp({source.subject})",
    )


def bounds_row(p: int, n: int) -> dict[str, int]:
    """The headline bounds at ``(p, n)`` in table order."""
    return {
        kind.value: closed_form_bound(kind, p, n).value
        for kind in (
            BoundKind.MAIN_LOWER,
            BoundKind.MAIN_UPPER,
            BoundKind.HUREWICZ_KERNEL,
            BoundKind.HUREWICZ_COKERNEL,
            BoundKind.K_INVARIANT,
        )
    }
