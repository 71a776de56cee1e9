"""Free graded modules over the Steenrod algebra."""

import logging
import random
from collections.abc import Mapping, Sequence

import numpy as np

from exponent_toolkit.algebra.linear import IntArray
from exponent_toolkit.algebra.steenrod import (
    Monomial,
    SteenrodElement,
    basis_in_degree,
    check_prime,
    degree,
    multiply_monomials,
)
from exponent_toolkit.modules.base import GradedModule

logger = logging.getLogger(__name__)

BasisElement = tuple[int, Monomial]


class FreeModule(GradedModule):
    """A free module on generators of given degrees.

    The basis in degree ``t`` is the list of pairs ``(generator, monomial)``
    with ``monomial`` admissible of degree ``t - |generator|``, grouped by
    generator in generator order. Inside each block monomials follow the
    canonical lexicographic order, or a seeded permutation of it when
    ``order_seed`` is given.
    """

    def __init__(
        self,
        p: int,
        generator_degrees: Sequence[int] = (),
        order_seed: int | None = None,
    ) -> None:
        self._prime = check_prime(p)
        self._degrees: list[int] = list(generator_degrees)
        self._order_seed = order_seed
        self._basis: dict[int, tuple[BasisElement, ...]] = {}
        self._positions: dict[int, dict[BasisElement, int]] = {}
        self._actions: dict[tuple[Monomial, int, int], IntArray] = {}

    @property
    def prime(self) -> int:
        return self._prime

    @property
    def valid_through(self) -> int | None:
        return None

    @property
    def generator_degrees(self) -> tuple[int, ...]:
        return tuple(self._degrees)

    def generators_in_degree(self, t: int) -> list[int]:
        return [g for g, d in enumerate(self._degrees) if d == t]

    def add_generator(self, t: int) -> int:
        """Append a generator of degree ``t`` and return its index.

        Cached bases in degrees ``>= t``, and cached actions landing there,
        are dropped.
        """
        self._degrees.append(t)
        for cache in (self._basis, self._positions):
            for stale in [d for d in list(cache) if d >= t]:
                cache.pop(stale, None)
        p = self._prime
        for key in list(self._actions):
            if key[1] + degree(p, key[0]) >= t:
                self._actions.pop(key, None)
        return len(self._degrees) - 1

    def basis(self, t: int) -> tuple[BasisElement, ...]:
        cached = self._basis.get(t)
        if cached is not None:
            return cached
        elements: list[BasisElement] = []
        for g, d in enumerate(tuple(self._degrees)):
            if d > t:
                continue
            monomials = basis_in_degree(self._prime, t - d)
            if self._order_seed is not None:
                random.Random(f"{self._order_seed}:{t}:{g}").shuffle(monomials)
            elements.extend((g, m) for m in monomials)
        built = tuple(elements)
        self._positions[t] = {e: i for i, e in enumerate(built)}
        self._basis[t] = built
        return built

    def position(self, t: int, element: BasisElement) -> int:
        if t not in self._positions:
            self.basis(t)
        return self._positions[t][element]

    def dimension(self, t: int) -> int:
        return len(self.basis(t)) if t >= 0 else 0

    def act(self, op: Monomial, t: int, index: int) -> IntArray:
        key = (op, t, index)
        cached = self._actions.get(key)
        if cached is not None:
            return cached
        p = self._prime
        g, mono = self.basis(t)[index]
        target = t + degree(p, op)
        out = np.zeros(self.dimension(target), dtype=np.int64)
        for product, c in multiply_monomials(p, op, mono):
            out[self.position(target, (g, product))] += c
        out %= p
        self._actions[key] = out
        return out

    def vector_from_terms(
        self, t: int, terms: Mapping[int, SteenrodElement]
    ) -> IntArray:
        """Coordinates of ``sum a_g * g`` in degree ``t``.

        Raises:
            ValueError: If a term is not homogeneous of degree ``t``.
        """
        out = np.zeros(self.dimension(t), dtype=np.int64)
        for g, element in terms.items():
            if element.is_zero():
                continue
            if element.degree + self._degrees[g] != t:
                raise ValueError(
                    f"term on generator {g} has degree "
                    f"{element.degree + self._degrees[g]}, expected {t}"
                )
            for mono, c in element.terms:
                out[self.position(t, (g, mono))] += c
        return out % self._prime

    def terms_from_vector(self, t: int, vector: IntArray) -> dict[int, SteenrodElement]:
        """Inverse of :meth:`vector_from_terms`."""
        p = self._prime
        grouped: dict[int, dict[Monomial, int]] = {}
        basis = self.basis(t)
        for index in np.flatnonzero(vector):
            g, mono = basis[int(index)]
            grouped.setdefault(g, {})[mono] = int(vector[index])
        return {
            g: SteenrodElement.from_dict(p, t - self._degrees[g], coefficients)
            for g, coefficients in sorted(grouped.items())
        }
