"""Exact linear algebra over the prime field F_p.

Matrices are stored sparsely. Row reduction runs on sparse rows and switches to
dense numpy rows once the fill ratio exceeds ``DENSE_FILL_THRESHOLD``; both
paths produce the same reduced row-echelon form, which is unique.
"""

import logging
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field

import numpy as np
import numpy.typing as npt

from exponent_toolkit.config import DENSE_FILL_THRESHOLD

logger = logging.getLogger(__name__)

IntArray = npt.NDArray[np.int64]


@dataclass(frozen=True)
class FpVector:
    """A sparse vector over F_p.

    ``coefficients`` holds ``(index, value)`` pairs sorted by index, with
    values in ``1..p-1``.
    """

    prime: int
    length: int
    coefficients: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        for index, value in self.coefficients:
            if not 0 <= index < self.length:
                raise ValueError(f"index {index} out of range {self.length}")
            if not 0 < value < self.prime:
                raise ValueError(f"stored coefficient {value} must be nonzero mod p")

    @classmethod
    def from_mapping(
        cls, p: int, length: int, values: Mapping[int, int]
    ) -> "FpVector":
        """Build a vector from ``index -> value``, reducing mod p."""
        coefficients = tuple(
            sorted((i, v % p) for i, v in values.items() if v % p)
        )
        return cls(p, length, coefficients)

    @classmethod
    def from_dense(cls, p: int, values: Iterable[int]) -> "FpVector":
        """Build a vector from a dense sequence of integers."""
        dense = [int(v) % p for v in values]
        return cls(p, len(dense), tuple((i, v) for i, v in enumerate(dense) if v))

    def to_dense(self) -> IntArray:
        out = np.zeros(self.length, dtype=np.int64)
        for index, value in self.coefficients:
            out[index] = value
        return out

    def __getitem__(self, index: int) -> int:
        return dict(self.coefficients).get(index, 0)

    def is_zero(self) -> bool:
        return not self.coefficients


@dataclass(frozen=True)
class FpMatrix:
    """A sparse ``rows x cols`` matrix over F_p.

    ``entries`` maps ``(row, col)`` to a value in ``1..p-1``.
    """

    prime: int
    rows: int
    cols: int
    entries: dict[tuple[int, int], int] = field(default_factory=dict, hash=False)

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        for (r, c), value in self.entries.items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise ValueError(f"entry ({r}, {c}) out of bounds")
            if not 0 < value < self.prime:
                raise ValueError(f"stored entry {value} must be nonzero mod p")

    @classmethod
    def from_entries(
        cls, p: int, rows: int, cols: int, values: Mapping[tuple[int, int], int]
    ) -> "FpMatrix":
        """Build a matrix from ``(row, col) -> value``, reducing mod p."""
        return cls(p, rows, cols, {k: v % p for k, v in values.items() if v % p})

    @classmethod
    def from_dense(cls, p: int, array: npt.ArrayLike) -> "FpMatrix":
        dense = np.asarray(array, dtype=np.int64) % p
        if dense.ndim != 2:
            raise ValueError("expected a two-dimensional array")
        rows, cols = dense.shape
        nonzero = np.argwhere(dense)
        entries = {(int(r), int(c)): int(dense[r, c]) for r, c in nonzero}
        return cls(p, rows, cols, entries)

    @classmethod
    def from_rows(
        cls, p: int, rows: Sequence[Sequence[int]], cols: int | None = None
    ) -> "FpMatrix":
        """Build a matrix from nested row lists."""
        width = cols if cols is not None else (len(rows[0]) if rows else 0)
        values = {
            (r, c): v for r, row in enumerate(rows) for c, v in enumerate(row) if v
        }
        return cls.from_entries(p, len(rows), width, values)

    @classmethod
    def from_columns(
        cls, p: int, rows: int, columns: Sequence[IntArray]
    ) -> "FpMatrix":
        """Build a matrix whose ``j``-th column is ``columns[j]``."""
        values: dict[tuple[int, int], int] = {}
        for c, column in enumerate(columns):
            for r in np.flatnonzero(column):
                values[(int(r), c)] = int(column[r])
        return cls.from_entries(p, rows, len(columns), values)

    @classmethod
    def identity(cls, p: int, n: int) -> "FpMatrix":
        return cls(p, n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def zero(cls, p: int, rows: int, cols: int) -> "FpMatrix":
        return cls(p, rows, cols, {})

    @property
    def fill(self) -> float:
        """Fraction of stored (nonzero) entries."""
        size = self.rows * self.cols
        return len(self.entries) / size if size else 0.0

    def to_dense(self) -> IntArray:
        out = np.zeros((self.rows, self.cols), dtype=np.int64)
        for (r, c), value in self.entries.items():
            out[r, c] = value
        return out

    def row_dicts(self) -> list[dict[int, int]]:
        out: list[dict[int, int]] = [{} for _ in range(self.rows)]
        for (r, c), value in self.entries.items():
            out[r][c] = value
        return out

    def apply(self, vector: FpVector) -> FpVector:
        """Return ``self . vector``.

        Raises:
            ValueError: If the vector length does not match ``cols``.
        """
        if vector.length != self.cols:
            raise ValueError(
                f"vector of length {vector.length} against {self.cols} columns"
            )
        values = dict(vector.coefficients)
        acc: dict[int, int] = {}
        for (r, c), v in self.entries.items():
            if c in values:
                acc[r] = acc.get(r, 0) + v * values[c]
        return FpVector.from_mapping(self.prime, self.rows, acc)

    def __matmul__(self, other: "FpMatrix") -> "FpMatrix":
        if self.prime != other.prime:
            raise ValueError("cannot multiply matrices over different fields")
        if self.cols != other.rows:
            raise ValueError(
                f"shape mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}"
            )
        product = (self.to_dense() @ other.to_dense()) % self.prime
        return FpMatrix.from_dense(self.prime, product)

    def is_zero(self) -> bool:
        return not self.entries


@dataclass(frozen=True)
class RowReduction:
    """Result of :func:`row_reduce`."""

    rank: int
    pivots: tuple[int, ...]
    reduced: FpMatrix


def _eliminate_dense(
    dense: IntArray, p: int, row: int, start_col: int, pivots: list[int]
) -> IntArray:
    rows, cols = dense.shape
    for c in range(start_col, cols):
        if row == rows:
            break
        candidates = np.flatnonzero(dense[row:, c])
        if candidates.size == 0:
            continue
        pivot_row = row + int(candidates[0])
        if pivot_row != row:
            dense[[row, pivot_row]] = dense[[pivot_row, row]]
        dense[row] = dense[row] * pow(int(dense[row, c]), -1, p) % p
        column = dense[:, c].copy()
        column[row] = 0
        targets = np.flatnonzero(column)
        if targets.size:
            update = np.outer(column[targets], dense[row])
            dense[targets] = (dense[targets] - update) % p
        pivots.append(c)
        row += 1
    return dense


def _rref(matrix: FpMatrix) -> tuple[IntArray | list[dict[int, int]], list[int]]:
    p, rows, cols = matrix.prime, matrix.rows, matrix.cols
    pivots: list[int] = []
    if matrix.fill > DENSE_FILL_THRESHOLD:
        return _eliminate_dense(matrix.to_dense(), p, 0, 0, pivots), pivots

    work = matrix.row_dicts()
    size = rows * cols
    nnz = len(matrix.entries)
    row = 0
    for c in range(cols):
        if row == rows:
            break
        pivot_row = next((i for i in range(row, rows) if c in work[i]), None)
        if pivot_row is None:
            continue
        work[row], work[pivot_row] = work[pivot_row], work[row]
        inverse = pow(work[row][c], -1, p)
        pivot = {k: v * inverse % p for k, v in work[row].items()}
        work[row] = pivot
        for i in range(rows):
            if i == row or c not in work[i]:
                continue
            factor = work[i][c]
            target = work[i]
            nnz -= len(target)
            for k, v in pivot.items():
                value = (target.get(k, 0) - factor * v) % p
                if value:
                    target[k] = value
                else:
                    target.pop(k, None)
            nnz += len(target)
        pivots.append(c)
        row += 1
        if size and nnz / size > DENSE_FILL_THRESHOLD:
            logger.debug("densifying %dx%d elimination at column %d", rows, cols, c)
            dense = np.zeros((rows, cols), dtype=np.int64)
            for r, entries in enumerate(work):
                for k, v in entries.items():
                    dense[r, k] = v
            return _eliminate_dense(dense, p, row, c + 1, pivots), pivots
    return work, pivots


def row_reduce(matrix: FpMatrix) -> RowReduction:
    """Reduced row-echelon form of ``matrix``.

    Pivots are the first nonzero entries in column order.
    """
    reduced, pivots = _rref(matrix)
    if isinstance(reduced, np.ndarray):
        result = FpMatrix.from_dense(matrix.prime, reduced)
    else:
        result = FpMatrix(
            matrix.prime,
            matrix.rows,
            matrix.cols,
            {(r, c): v for r, row in enumerate(reduced) for c, v in row.items()},
        )
    return RowReduction(len(pivots), tuple(pivots), result)


def rank(matrix: FpMatrix) -> int:
    """Rank of ``matrix`` over F_p.

    Args:
        matrix: The matrix to reduce.

    Returns:
        The number of pivots after row reduction.
    """
    return row_reduce(matrix).rank


def kernel_basis(matrix: FpMatrix) -> list[FpVector]:
    """Basis of ``{v : matrix . v = 0}``, one vector per free column."""
    p = matrix.prime
    reduction = row_reduce(matrix)
    pivot_set = set(reduction.pivots)
    rows = reduction.reduced.row_dicts()
    basis: list[FpVector] = []
    for free in range(matrix.cols):
        if free in pivot_set:
            continue
        values = {free: 1}
        for i, pivot in enumerate(reduction.pivots):
            entry = rows[i].get(free, 0)
            if entry:
                values[pivot] = -entry
        basis.append(FpVector.from_mapping(p, matrix.cols, values))
    return basis


def solve(matrix: FpMatrix, target: FpVector) -> FpVector | None:
    """A solution ``x`` of ``matrix . x = target``, or ``None`` if there is none.

    Raises:
        ValueError: If ``target`` does not have ``matrix.rows`` entries.
    """
    if target.length != matrix.rows:
        raise ValueError(
            f"right-hand side of length {target.length} for {matrix.rows} rows"
        )
    augmented = dict(matrix.entries)
    for r, value in target.coefficients:
        augmented[(r, matrix.cols)] = value
    reduction = row_reduce(
        FpMatrix(matrix.prime, matrix.rows, matrix.cols + 1, augmented)
    )
    if matrix.cols in reduction.pivots:
        return None
    rows = reduction.reduced.row_dicts()
    values = {
        pivot: rows[i].get(matrix.cols, 0) for i, pivot in enumerate(reduction.pivots)
    }
    return FpVector.from_mapping(matrix.prime, matrix.cols, values)


class EchelonBasis:
    """A growing subspace of F_p^n kept in reduced row-echelon form.

    Vectors are dense numpy arrays. Each stored row has a 1 in its own pivot
    column and 0 in every other pivot column.
    """

    def __init__(self, p: int, length: int) -> None:
        self.prime = p
        self.length = length
        self._rows = np.zeros((0, length), dtype=np.int64)
        self._pivots: list[int] = []

    @property
    def rank(self) -> int:
        return len(self._pivots)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(self._pivots)

    def rows(self) -> IntArray:
        return self._rows.copy()

    def reduce(self, vector: IntArray) -> IntArray:
        """Remainder of ``vector`` modulo the stored span."""
        v = np.asarray(vector, dtype=np.int64) % self.prime
        if not self._pivots:
            return v
        return (v - v[self._pivots] @ self._rows) % self.prime

    def contains(self, vector: IntArray) -> bool:
        return not self.reduce(vector).any()

    def add(self, vector: IntArray) -> bool:
        """Add ``vector`` to the span; return whether the rank grew."""
        remainder = self.reduce(vector)
        nonzero = np.flatnonzero(remainder)
        if nonzero.size == 0:
            return False
        pivot = int(nonzero[0])
        remainder = remainder * pow(int(remainder[pivot]), -1, self.prime) % self.prime
        if self._pivots:
            column = self._rows[:, pivot].copy()
            self._rows = (self._rows - np.outer(column, remainder)) % self.prime
        self._rows = np.vstack([self._rows, remainder])
        self._pivots.append(pivot)
        return True
