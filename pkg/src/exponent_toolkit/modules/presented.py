"""Finitely presented graded modules and simple module constructions."""

import logging
from dataclasses import dataclass

from exponent_toolkit.algebra.linear import EchelonBasis, IntArray
from exponent_toolkit.algebra.steenrod import (
    Monomial,
    SteenrodElement,
    basis_in_degree,
    check_prime,
    degree,
)
from exponent_toolkit.modules.base import GradedModule
from exponent_toolkit.modules.free import FreeModule

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Relation:
    """A homogeneous relation ``sum a_g * g = 0`` of the given degree."""

    degree: int
    terms: tuple[tuple[int, SteenrodElement], ...]

    def as_dict(self) -> dict[int, SteenrodElement]:
        return dict(self.terms)


@dataclass(frozen=True)
class GradedModulePresentation:
    """Generators and relations of a graded module, complete through ``t_max``.

    Attributes:
        prime: The prime p.
        generators: Degree of each generator.
        relations: Homogeneous relations among the generators.
        t_max: Top degree in which the presentation is complete.
        name: Label used in logs and chart files.
    """

    prime: int
    generators: tuple[int, ...]
    relations: tuple[Relation, ...]
    t_max: int
    name: str = "module"

    def __post_init__(self) -> None:
        check_prime(self.prime)
        if self.t_max < 0:
            raise ValueError(f"presentation window t_max={self.t_max} is negative")
        for d in self.generators:
            if d < 0 or d > self.t_max:
                raise ValueError(f"generator degree {d} outside 0..{self.t_max}")
        for relation in self.relations:
            for g, element in relation.terms:
                if not 0 <= g < len(self.generators):
                    raise ValueError(f"relation references missing generator {g}")
                if element.prime != self.prime:
                    raise ValueError("relation coefficient at the wrong prime")
                if not element.is_zero() and (
                    element.degree + self.generators[g] != relation.degree
                ):
                    raise ValueError(
                        f"relation of degree {relation.degree} is not homogeneous"
                    )


class FinitelyPresentedModule(GradedModule):
    """The quotient of a free module by the submodule its relations generate.

    In each degree the relation subspace is kept in reduced row-echelon form;
    the quotient basis is the set of non-pivot coordinates, so reducing a
    vector modulo the relations and reading those coordinates gives its
    class.
    """

    def __init__(self, presentation: GradedModulePresentation) -> None:
        self.presentation = presentation
        self._free = FreeModule(presentation.prime, presentation.generators)
        self._relations: dict[int, EchelonBasis] = {}
        self._columns: dict[int, tuple[int, ...]] = {}
        self._actions: dict[tuple[Monomial, int, int], IntArray] = {}

    @property
    def prime(self) -> int:
        return self.presentation.prime

    @property
    def valid_through(self) -> int | None:
        return self.presentation.t_max

    def _relation_space(self, t: int) -> EchelonBasis:
        cached = self._relations.get(t)
        if cached is not None:
            return cached
        p = self.prime
        span = EchelonBasis(p, self._free.dimension(t))
        for relation in self.presentation.relations:
            if relation.degree > t:
                continue
            base = self._free.vector_from_terms(relation.degree, relation.as_dict())
            for op in basis_in_degree(p, t - relation.degree):
                span.add(self._free.act_on_vector(op, relation.degree, base))
        pivots = set(span.pivots)
        self._columns[t] = tuple(
            c for c in range(self._free.dimension(t)) if c not in pivots
        )
        self._relations[t] = span
        return span

    def _quotient_columns(self, t: int) -> tuple[int, ...]:
        if t not in self._columns:
            self._relation_space(t)
        return self._columns[t]

    def dimension(self, t: int) -> int:
        if t < 0:
            return 0
        self.check_degree(t)
        return len(self._quotient_columns(t))

    def act(self, op: Monomial, t: int, index: int) -> IntArray:
        key = (op, t, index)
        cached = self._actions.get(key)
        if cached is not None:
            return cached
        target = t + degree(self.prime, op)
        self.check_degree(target)
        column = self._quotient_columns(t)[index]
        image = self._free.act(op, t, column)
        remainder = self._relation_space(target).reduce(image)
        out = remainder[list(self._quotient_columns(target))]
        self._actions[key] = out
        return out


class TruncatedModule(GradedModule):
    """The submodule of ``module`` in degrees ``>= bottom``."""

    def __init__(self, module: GradedModule, bottom: int) -> None:
        self.module = module
        self.bottom = bottom

    @property
    def prime(self) -> int:
        return self.module.prime

    @property
    def valid_through(self) -> int | None:
        return self.module.valid_through

    def dimension(self, t: int) -> int:
        return 0 if t < self.bottom else self.module.dimension(t)

    def act(self, op: Monomial, t: int, index: int) -> IntArray:
        if t < self.bottom:
            raise IndexError(f"no basis element {index} in degree {t}")
        return self.module.act(op, t, index)


class ShiftedModule(GradedModule):
    """The shift ``(Sigma^k M)_t = M_{t-k}``."""

    def __init__(self, module: GradedModule, shift: int) -> None:
        self.module = module
        self.shift = shift

    @property
    def prime(self) -> int:
        return self.module.prime

    @property
    def valid_through(self) -> int | None:
        top = self.module.valid_through
        return None if top is None else top + self.shift

    def dimension(self, t: int) -> int:
        return self.module.dimension(t - self.shift)

    def act(self, op: Monomial, t: int, index: int) -> IntArray:
        return self.module.act(op, t - self.shift, index)


def zero_presentation(p: int, t_max: int) -> GradedModulePresentation:
    """The zero module."""
    return GradedModulePresentation(p, (), (), t_max, name="zero")


def dense_dimensions(module: GradedModule, t_max: int) -> list[int]:
    """Dimensions of ``module`` in degrees ``0..t_max``."""
    return [module.dimension(t) for t in range(t_max + 1)]

