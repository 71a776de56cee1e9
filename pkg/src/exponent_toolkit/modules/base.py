"""Abstract base class for graded modules over the Steenrod algebra."""

from abc import ABC, abstractmethod

import numpy as np

from exponent_toolkit.algebra.linear import IntArray
from exponent_toolkit.algebra.steenrod import Monomial, degree


class GradedModule(ABC):
    """A graded left module over the mod p Steenrod algebra.

    Each degree is a finite-dimensional F_p vector space with a fixed ordered
    basis; elements of degree ``t`` are dense coordinate vectors of length
    ``dimension(t)``.
    """

    @property
    @abstractmethod
    def prime(self) -> int:
        """Return the prime p of the ground field."""

    @property
    @abstractmethod
    def valid_through(self) -> int | None:
        """Return the top degree the module is known in, or ``None`` if unbounded."""

    @abstractmethod
    def dimension(self, t: int) -> int:
        """Return the F_p dimension in degree ``t``.

        Raises:
            ValueError: If ``t`` lies beyond ``valid_through``.
        """

    @abstractmethod
    def act(self, op: Monomial, t: int, index: int) -> IntArray:
        """Apply an admissible monomial to a basis element.

        Args:
            op: Admissible monomial acting on the left.
            t: Degree of the basis element.
            index: Position of the basis element in degree ``t``.

        Returns:
            Coordinates of the product in degree ``t + |op|``. Callers must not
            mutate the returned array.
        """

    def check_degree(self, t: int) -> None:
        top = self.valid_through
        if top is not None and t > top:
            raise ValueError(f"degree {t} beyond the module's window (t <= {top})")

    def act_on_vector(self, op: Monomial, t: int, vector: IntArray) -> IntArray:
        """Apply ``op`` to an element of degree ``t``."""
        target = t + degree(self.prime, op)
        out = np.zeros(self.dimension(target), dtype=np.int64)
        for index in np.flatnonzero(vector):
            out += int(vector[index]) * self.act(op, t, int(index))
        return out % self.prime
