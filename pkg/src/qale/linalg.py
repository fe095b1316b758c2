"""Exact linear algebra over Q and Q(zeta_m).

The elimination routines are generic: entries may be ``Fraction`` or
``CycNumber`` (anything with field operations and truthiness for zero).
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .errors import ConfigurationError, DimensionMismatch
from .field import CycNumber, _mul_into, _reduce_full, _ZERO, format_cyc

MAX_SIZE = 64


def rref_rows(rows: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form of a list of rows; returns (rows, pivot columns).

    Pivots are the topmost nonzero entry in the leftmost remaining column.
    """
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        if p != 1:
            m[r] = [x / p for x in m[r]]
        prow = m[r]
        for i in range(len(m)):
            if i != r:
                f = m[i][c]
                if f:
                    m[i] = [x - f * y if y else x for x, y in zip(m[i], prow)]
        pivots.append(c)
        r += 1
    return m, pivots


def rank_rows(rows: Sequence[Sequence]) -> int:
    return len(rref_rows(rows)[1])


def nullspace_rows(rows: Sequence[Sequence], ncols: int, zero, one) -> list[list]:
    """Basis of {v : rows . v = 0}, returned in canonical RREF."""
    reduced, pivots = rref_rows(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        basis.append(v)
    if not basis:
        return []
    return rref_rows(basis)[0]


def det_rows(rows: Sequence[Sequence]):
    """Determinant by elimination; rows must be square."""
    m = [list(r) for r in rows]
    n = len(m)
    sign = 1
    result = None
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return m[0][0] * 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        p = m[c][c]
        result = p if result is None else result * p
        for i in range(c + 1, n):
            f = m[i][c]
            if f:
                q = f / p
                m[i] = [x - q * y for x, y in zip(m[i], m[c])]
    return result * sign


class CycMatrix:
    """Dense matrix over Q(zeta_m), entries promoted to one common order."""

    __slots__ = ("rows", "cols", "order", "entries", "_key")

    def __init__(self, rows: int, cols: int, entries: Sequence, order: int | None = None):
        if rows < 1 or cols < 1:
            raise DimensionMismatch("matrices must have at least one row and column")
        if rows > MAX_SIZE or cols > MAX_SIZE:
            raise ConfigurationError(f"matrix {rows}x{cols} exceeds the {MAX_SIZE}x{MAX_SIZE} limit")
        if len(entries) != rows * cols:
            raise DimensionMismatch(f"expected {rows * cols} entries, got {len(entries)}")
        vals = [CycNumber.coerce(e) for e in entries]
        common = 1
        for v in vals:
            common = math.lcm(common, v.order)
        if order is not None:
            if order % common:
                raise DimensionMismatch(f"entries need order {common}, which does not divide {order}")
            common = order
        self.rows = rows
        self.cols = cols
        self.order = common
        self.entries = tuple(v.promote(common) for v in vals)
        self._key = None

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], order: int | None = None) -> CycMatrix:
        rows = [list(r) for r in rows]
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise DimensionMismatch("ragged or empty row list")
        return cls(len(rows), len(rows[0]), [x for r in rows for x in r], order)

    @classmethod
    def identity(cls, n: int, order: int = 1) -> CycMatrix:
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)], order)

    @classmethod
    def zeros(cls, rows: int, cols: int, order: int = 1) -> CycMatrix:
        return cls(rows, cols, [0] * (rows * cols), order)

    @classmethod
    def diag(cls, values: Sequence, order: int | None = None) -> CycMatrix:
        n = len(values)
        return cls(n, n, [values[i] if i == j else 0 for i in range(n) for j in range(n)], order)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row_list(self) -> list[list[CycNumber]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def promote(self, order: int) -> CycMatrix:
        if order == self.order:
            return self
        return CycMatrix(self.rows, self.cols, self.entries, order)

    def key(self) -> tuple:
        """Hashable canonical key; only comparable between matrices of equal order."""
        if self._key is None:
            self._key = (self.order, self.rows, self.cols) + tuple(e.reduced for e in self.entries)
        return self._key

    def __eq__(self, other):
        if not isinstance(other, CycMatrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            return False
        if self.order == other.order:
            return self.key() == other.key()
        return all(a == b for a, b in zip(self.entries, other.entries))

    def __hash__(self):
        return hash(tuple(self.entries))

    def __matmul__(self, other: CycMatrix) -> CycMatrix:
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        m = math.lcm(self.order, other.order)
        a = self.promote(m)
        b = other.promote(m)
        n, k, p = a.rows, a.cols, b.cols
        ae = [e.reduced for e in a.entries]
        be = [e.reduced for e in b.entries]
        out = []
        for i in range(n):
            for j in range(p):
                acc = [_ZERO] * m
                touched = False
                for t in range(k):
                    x = ae[i * k + t]
                    y = be[t * p + j]
                    if any(x) and any(y):
                        _mul_into(m, acc, x, y)
                        touched = True
                red = _reduce_full(m, acc) if touched else (_ZERO,) * len(ae[0])
                out.append(CycNumber._raw(m, red))
        res = CycMatrix.__new__(CycMatrix)
        res.rows, res.cols, res.order, res.entries, res._key = n, p, m, tuple(out), None
        return res

    def __add__(self, other: CycMatrix) -> CycMatrix:
        self._same_shape(other)
        return CycMatrix(self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: CycMatrix) -> CycMatrix:
        self._same_shape(other)
        return CycMatrix(self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)])

    def scale(self, s) -> CycMatrix:
        return CycMatrix(self.rows, self.cols, [e * s for e in self.entries])

    def _same_shape(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("shape mismatch")

    def transpose(self) -> CycMatrix:
        r, c = self.rows, self.cols
        return CycMatrix(c, r, [self.entries[i * c + j] for j in range(c) for i in range(r)], self.order)

    def conj_transpose(self) -> CycMatrix:
        r, c = self.rows, self.cols
        return CycMatrix(c, r, [self.entries[i * c + j].conj() for j in range(c) for i in range(r)], self.order)

    def trace(self) -> CycNumber:
        if self.rows != self.cols:
            raise DimensionMismatch("trace of a non-square matrix")
        total = CycNumber.rational(0, self.order)
        for i in range(self.rows):
            total = total + self.entries[i * self.cols + i]
        return total

    def det(self) -> CycNumber:
        if self.rows != self.cols:
            raise DimensionMismatch("determinant of a non-square matrix")
        return det_rows(self.row_list())

    def is_identity(self) -> bool:
        c = self.cols
        return self.rows == c and all(
            e == (1 if i // c == i % c else 0) for i, e in enumerate(self.entries)
        )

    def apply_rows(self, vectors: Sequence[Sequence]) -> list[list[CycNumber]]:
        """Image of each row vector v (as a column) under this matrix."""
        rows = self.row_list()
        out = []
        for v in vectors:
            out.append([sum((r[j] * v[j] for j in range(self.cols) if r[j] and v[j]),
                            CycNumber.rational(0, self.order)) for r in rows])
        return out

    def __repr__(self):
        body = "; ".join(", ".join(format_cyc(e) for e in row) for row in self.row_list())
        return f"CycMatrix[{self.order}]({body})"


def _zero_one(order: int):
    return CycNumber.rational(0, order), CycNumber.rational(1, order)


def rref(M: CycMatrix) -> tuple[CycMatrix, int, list[int]]:
    """Reduced row echelon form, rank and pivot columns."""
    reduced, pivots = rref_rows(M.row_list())
    return CycMatrix.from_rows(reduced, M.order), len(pivots), pivots


def rank(M: CycMatrix) -> int:
    return rank_rows(M.row_list())


def nullspace(M: CycMatrix) -> CycMatrix | None:
    """Basis rows of {v : M v = 0} in RREF; ``None`` for the zero space."""
    zero, one = _zero_one(M.order)
    basis = nullspace_rows(M.row_list(), M.cols, zero, one)
    if not basis:
        return None
    return CycMatrix.from_rows(basis, M.order)


def subspace_key(basis: Sequence[Sequence[CycNumber]]) -> tuple:
    """Hashable canonical key of a row space given by RREF rows of one order."""
    return tuple(tuple(e.reduced for e in row) for row in basis)


def row_space_basis(vectors: Sequence[Sequence[CycNumber]]) -> list[list[CycNumber]]:
    """Nonzero RREF rows spanning the same space as ``vectors``."""
    if not vectors:
        return []
    reduced, pivots = rref_rows(vectors)
    return reduced[: len(pivots)]


def intersect(basis_a, basis_b, n: int, order: int) -> list[list[CycNumber]]:
    """Intersection of two row spaces in dimension n, as canonical RREF rows."""
    zero, one = _zero_one(order)
    if not basis_a or not basis_b:
        return []
    # a subspace is the solution set of the nullspace of its own basis
    eq_a = nullspace_rows(basis_a, n, zero, one)
    eq_b = nullspace_rows(basis_b, n, zero, one)
    eqs = eq_a + eq_b
    if not eqs:
        return row_space_basis(basis_a)
    return nullspace_rows(eqs, n, zero, one)


def fraction_matrix(rows) -> list[list[Fraction]]:
    return [[Fraction(x) for x in r] for r in rows]
