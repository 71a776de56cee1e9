"""The mod p Steenrod algebra in the admissible basis.

Monomials are flat integer tuples. At p = 2 a monomial ``(i_1, ..., i_k)`` is
``Sq^{i_1} ... Sq^{i_k}``; the unit is ``()``. At an odd prime a monomial
``(e_0, s_1, e_1, ..., s_k, e_k)`` is ``b^{e_0} P^{s_1} b^{e_1} ... P^{s_k}
b^{e_k}`` with Bockstein exponents ``e_j``; the unit is ``(0,)``.

The same tuples double as words: any product of generators is written in flat
form, admissible or not, and :func:`adem_normalize` rewrites it into the
admissible basis using the Adem relations.
"""

import logging
import re
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from math import comb

from sympy import isprime

logger = logging.getLogger(__name__)

Monomial = tuple[int, ...]

_TOKEN = re.compile(r"^(Sq|P)(\d+)$")


class Prime(int):
    """A prime integer, checked at construction."""

    def __new__(cls, value: int) -> "Prime":
        if not isinstance(value, int) or value < 2 or not isprime(value):
            raise ValueError(f"{value!r} is not a prime")
        return super().__new__(cls, value)


def check_prime(p: int) -> Prime:
    """Return ``p`` as a :class:`Prime`.

    Raises:
        ValueError: If ``p`` is not prime.
    """
    return p if isinstance(p, Prime) else Prime(p)


def binomial_mod_p(n: int, k: int, p: int) -> int:
    """Binomial coefficient ``C(n, k)`` reduced mod ``p`` by Lucas' theorem.

    Negative arguments and ``k > n`` give 0.
    """
    if n < 0 or k < 0 or k > n:
        return 0
    result = 1
    while n or k:
        n_digit, k_digit = n % p, k % p
        if k_digit > n_digit:
            return 0
        result = result * comb(n_digit, k_digit) % p
        n //= p
        k //= p
    return result


def unit(p: int) -> Monomial:
    """Return the unit monomial at ``p``."""
    return () if p == 2 else (0,)


def sq(i: int) -> Monomial:
    """Return the word ``Sq^i`` (p = 2)."""
    return (i,) if i > 0 else ()


def bockstein() -> Monomial:
    """Return the word ``b`` (odd p)."""
    return (1,)


def reduced_power(s: int) -> Monomial:
    """Return the word ``P^s`` (odd p)."""
    return (0, s, 0) if s > 0 else (0,)


def q0(p: int) -> Monomial:
    """Return the first Milnor primitive: ``Sq^1`` at 2, ``b`` at odd p."""
    return sq(1) if p == 2 else bockstein()


def indecomposables(p: int, max_degree: int) -> list[Monomial]:
    """Algebra generators of degree at most ``max_degree``.

    These are ``Sq^{2^k}`` at p = 2, and ``b`` together with ``P^{p^k}`` at
    odd p.
    """
    gens: list[Monomial] = []
    if p == 2:
        power = 1
        while power <= max_degree:
            gens.append(sq(power))
            power *= 2
        return gens
    if max_degree >= 1:
        gens.append(bockstein())
    power = 1
    while 2 * (p - 1) * power <= max_degree:
        gens.append(reduced_power(power))
        power *= p
    return gens


def degree(p: int, word: Monomial) -> int:
    """Internal degree of a word."""
    if p == 2:
        return sum(word)
    return sum(word[0::2]) + 2 * (p - 1) * sum(word[1::2])


def is_admissible(p: int, word: Monomial) -> bool:
    """Whether ``word`` is an admissible monomial."""
    if p == 2:
        return all(a >= 2 * b > 0 for a, b in zip(word, word[1:], strict=False)) and (
            not word or word[-1] > 0
        )
    if len(word) % 2 == 0 or any(e not in (0, 1) for e in word[0::2]):
        return False
    powers = word[1::2]
    if any(s <= 0 for s in powers):
        return False
    return all(
        powers[j] >= p * powers[j + 1] + word[2 * j + 2]
        for j in range(len(powers) - 1)
    )


def _clean(p: int, word: Monomial) -> Monomial | None:
    """Drop trivial factors; ``None`` when the word is zero (``b^2``)."""
    if p == 2:
        return tuple(i for i in word if i != 0)
    if not word:
        return (0,)
    out = [word[0]]
    for j in range(1, len(word) - 1, 2):
        power, exponent = word[j], word[j + 1]
        if power == 0:
            out[-1] += exponent
        else:
            out.extend((power, exponent))
    if any(e > 1 for e in out[0::2]):
        return None
    return tuple(out)


def _concat(p: int, left: Monomial, right: Monomial) -> Monomial | None:
    if p == 2:
        return left + right
    middle = left[-1] + right[0]
    if middle > 1:
        return None
    return left[:-1] + (middle,) + right[1:]


def _accumulate(
    p: int,
    acc: defaultdict[Monomial, int],
    coefficient: int,
    word: Monomial | None,
) -> None:
    if word is None or coefficient % p == 0:
        return
    cleaned = _clean(p, word)
    if cleaned is None:
        return
    for mono, c in _normal_form(p, cleaned):
        acc[mono] = (acc[mono] + coefficient * c) % p


def _finish(acc: dict[Monomial, int]) -> tuple[tuple[Monomial, int], ...]:
    return tuple(sorted((m, c) for m, c in acc.items() if c))


def _adem_even(word: Monomial) -> tuple[tuple[Monomial, int], ...] | None:
    for i in range(len(word) - 1):
        a, b = word[i], word[i + 1]
        if a < 2 * b:
            acc: defaultdict[Monomial, int] = defaultdict(int)
            prefix, suffix = word[:i], word[i + 2 :]
            for j in range(a // 2 + 1):
                c = binomial_mod_p(b - 1 - j, a - 2 * j, 2)
                _accumulate(2, acc, c, prefix + (a + b - j, j) + suffix)
            return _finish(acc)
    return None


def _adem_odd(p: int, word: Monomial) -> tuple[tuple[Monomial, int], ...] | None:
    powers = len(word) // 2
    for i in range(1, powers):
        a, e, b = word[2 * i - 1], word[2 * i], word[2 * i + 1]
        if a >= p * b + e:
            continue
        acc: defaultdict[Monomial, int] = defaultdict(int)
        prefix, suffix = word[: 2 * i - 1], word[2 * i + 2 :]
        for j in range(a // p + 1):
            sign = -1 if (a + j) % 2 else 1
            if e == 0:
                c = binomial_mod_p((p - 1) * (b - j) - 1, a - p * j, p)
                middle = (0, a + b - j, 0, j, 0)
                _accumulate(p, acc, sign * c, _splice(p, prefix, middle, suffix))
            else:
                c = binomial_mod_p((p - 1) * (b - j), a - p * j, p)
                middle = (1, a + b - j, 0, j, 0)
                _accumulate(p, acc, sign * c, _splice(p, prefix, middle, suffix))
                c = binomial_mod_p((p - 1) * (b - j) - 1, a - p * j - 1, p)
                middle = (0, a + b - j, 1, j, 0)
                _accumulate(p, acc, -sign * c, _splice(p, prefix, middle, suffix))
        return _finish(acc)
    return None


def _splice(
    p: int, prefix: Monomial, middle: Monomial, suffix: Monomial
) -> Monomial | None:
    joined = _concat(p, prefix, middle)
    return None if joined is None else _concat(p, joined, suffix)


@lru_cache(maxsize=None)
def _normal_form(p: int, word: Monomial) -> tuple[tuple[Monomial, int], ...]:
    """Admissible expansion of a cleaned word, as sorted ``(monomial, coeff)``."""
    rewritten = _adem_even(word) if p == 2 else _adem_odd(p, word)
    if rewritten is None:
        return ((word, 1),)
    return rewritten


@dataclass(frozen=True)
class SteenrodElement:
    """A homogeneous element of the Steenrod algebra.

    ``terms`` holds ``(monomial, coefficient)`` pairs sorted by monomial, with
    coefficients in ``1..p-1``.
    """

    prime: int
    degree: int
    terms: tuple[tuple[Monomial, int], ...] = ()

    def __post_init__(self) -> None:
        for mono, coefficient in self.terms:
            if not 0 < coefficient < self.prime:
                raise ValueError(f"coefficient {coefficient} not a nonzero residue")
            if degree(self.prime, mono) != self.degree:
                raise ValueError(f"monomial {mono} is not in degree {self.degree}")

    @classmethod
    def from_dict(
        cls, p: int, deg: int, coefficients: dict[Monomial, int]
    ) -> "SteenrodElement":
        """Build an element from a monomial -> coefficient map, reducing mod p."""
        terms = tuple(
            sorted((m, c % p) for m, c in coefficients.items() if c % p)
        )
        return cls(p, deg, terms)

    @classmethod
    def monomial(
        cls, p: int, mono: Monomial, coefficient: int = 1
    ) -> "SteenrodElement":
        """The element ``coefficient * mono`` (``mono`` must be admissible)."""
        return cls.from_dict(p, degree(p, mono), {mono: coefficient})

    def is_zero(self) -> bool:
        return not self.terms

    def as_dict(self) -> dict[Monomial, int]:
        return dict(self.terms)

    def scaled(self, c: int) -> "SteenrodElement":
        return SteenrodElement.from_dict(
            self.prime, self.degree, {m: c * v for m, v in self.terms}
        )

    def __add__(self, other: "SteenrodElement") -> "SteenrodElement":
        self._check_compatible(other)
        acc = self.as_dict()
        for mono, c in other.terms:
            acc[mono] = acc.get(mono, 0) + c
        deg = self.degree if self.terms else other.degree
        return SteenrodElement.from_dict(self.prime, deg, acc)

    def __neg__(self) -> "SteenrodElement":
        return self.scaled(-1)

    def __sub__(self, other: "SteenrodElement") -> "SteenrodElement":
        return self + (-other)

    def __mul__(self, other: "SteenrodElement") -> "SteenrodElement":
        if self.prime != other.prime:
            raise ValueError("cannot multiply elements at different primes")
        p = self.prime
        acc: defaultdict[Monomial, int] = defaultdict(int)
        for left, a in self.terms:
            for right, b in other.terms:
                for mono, c in multiply_monomials(p, left, right):
                    acc[mono] += a * b * c
        return SteenrodElement.from_dict(p, self.degree + other.degree, acc)

    def _check_compatible(self, other: "SteenrodElement") -> None:
        if self.prime != other.prime:
            raise ValueError("cannot add elements at different primes")
        if self.degree != other.degree and self.terms and other.terms:
            raise ValueError(
                f"cannot add elements of degrees {self.degree} and {other.degree}"
            )

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self.terms:
            name = format_monomial(self.prime, mono)
            parts.append(name if c == 1 else f"{c} {name}")
        return " + ".join(parts)


def format_monomial(p: int, mono: Monomial) -> str:
    """Render a monomial as ``Sq4 Sq2`` or ``b P3 P1``."""
    if p == 2:
        return " ".join(f"Sq{i}" for i in mono) or "1"
    tokens: list[str] = []
    for j, value in enumerate(mono):
        if j % 2:
            tokens.append(f"P{value}")
        else:
            tokens.extend(["b"] * value)
    return " ".join(tokens) or "1"


def parse_word(p: int, text: str) -> Monomial:
    """Parse ``"Sq2 Sq2"`` or ``"b P1 b"`` into a flat word.

    The word need not be admissible. A product containing ``b b`` is still
    returned in flat form with a Bockstein exponent of 2, which normalizes to 0.

    Raises:
        ValueError: If a token is not a generator at ``p``.
    """
    check_prime(p)
    tokens = text.replace("β", "b").split()
    if p == 2:
        word: list[int] = []
        for token in tokens:
            match = _TOKEN.match(token)
            if match is None or match.group(1) != "Sq":
                raise ValueError(f"'{token}' is not a generator at p = 2")
            word.append(int(match.group(2)))
        return tuple(word)
    flat = [0]
    for token in tokens:
        if token == "b":
            flat[-1] += 1
            continue
        match = _TOKEN.match(token)
        if match is None or match.group(1) != "P":
            raise ValueError(f"'{token}' is not a generator at p = {p}")
        flat.extend((int(match.group(2)), 0))
    return tuple(flat)


def adem_normalize(p: int, word: Monomial) -> SteenrodElement:
    """Rewrite a word of generators into the admissible basis."""
    check_prime(p)
    deg = degree(p, word)
    cleaned = _clean(p, word)
    if cleaned is None:
        return SteenrodElement(p, deg)
    return SteenrodElement(p, deg, _normal_form(p, cleaned))


@lru_cache(maxsize=None)
def multiply_monomials(
    p: int, left: Monomial, right: Monomial
) -> tuple[tuple[Monomial, int], ...]:
    """Product of two admissible monomials as sorted ``(monomial, coeff)`` pairs."""
    joined = _concat(p, left, right)
    if joined is None:
        return ()
    cleaned = _clean(p, joined)
    if cleaned is None:
        return ()
    return _normal_form(p, cleaned)


def _admissible_even(d: int, bound: int) -> list[Monomial]:
    if d == 0:
        return [()]
    out: list[Monomial] = []
    for first in range(min(d, bound), 0, -1):
        for rest in _admissible_even(d - first, first // 2):
            out.append((first,) + rest)
    return out


def _admissible_odd(p: int, d: int, previous: int | None) -> list[Monomial]:
    q = 2 * (p - 1)
    out: list[Monomial] = []
    for e in (0, 1):
        remaining = d - e
        if remaining < 0:
            continue
        if remaining == 0:
            out.append((e,))
        limit = remaining // q
        if previous is not None:
            limit = min(limit, (previous - e) // p)
        for s in range(1, limit + 1):
            for rest in _admissible_odd(p, remaining - q * s, s):
                out.append((e, s) + rest)
    return out


@lru_cache(maxsize=None)
def _basis(p: int, d: int) -> tuple[Monomial, ...]:
    if d < 0:
        return ()
    found = _admissible_even(d, d) if p == 2 else _admissible_odd(p, d, None)
    return tuple(sorted(found))


def basis_in_degree(p: int, d: int) -> list[Monomial]:
    """Admissible monomials of degree ``d`` in lexicographic order."""
    return list(_basis(check_prime(p), d))


def algebra_dimension(p: int, d: int) -> int:
    """Dimension of the Steenrod algebra in degree ``d``."""
    return len(_basis(check_prime(p), d))


def milnor_dimension(p: int, d: int) -> int:
    """Count of Milnor basis elements in degree ``d``.

    At p = 2 this counts sequences with ``sum r_i (2^i - 1) = d``. At odd p
    it counts ``Q(E) P(R)`` with exterior degrees ``2p^i - 1`` and polynomial
    degrees ``2(p^i - 1)``. Used as an independent check on the admissible
    basis.
    """
    p = check_prime(p)
    if d < 0:
        return 0
    counts = [1] + [0] * d
    if p == 2:
        i = 1
        while 2**i - 1 <= d:
            part = 2**i - 1
            for n in range(part, d + 1):
                counts[n] += counts[n - part]
            i += 1
        return counts[d]
    i = 1
    while 2 * (p**i - 1) <= d:
        part = 2 * (p**i - 1)
        for n in range(part, d + 1):
            counts[n] += counts[n - part]
        i += 1
    i = 0
    while 2 * p**i - 1 <= d:
        part = 2 * p**i - 1
        for n in range(d, part - 1, -1):
            counts[n] += counts[n - part]
        i += 1
    return counts[d]
