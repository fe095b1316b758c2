"""
Exact arithmetic in cyclotomic fields Q(zeta_m).

A number of order ``m`` is stored as its remainder modulo the m-th cyclotomic
polynomial, i.e. a rational coefficient vector on 1, z, ..., z^(phi(m)-1).
That remainder is unique, so equality at a fixed order is coefficient
equality.  Mixed-order operands are promoted to the lcm of their orders
through zeta_m^j -> zeta_L^(j*L/m).
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache

from .errors import ConfigurationError, DivisionByZero

Rational = Fraction

MAX_ORDER = 10_000

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _check_order(m: int) -> None:
    if not isinstance(m, int) or m < 1:
        raise ConfigurationError(f"cyclotomic order must be a positive integer, got {m!r}")
    if m > MAX_ORDER:
        raise ConfigurationError(f"cyclotomic order {m} exceeds the limit {MAX_ORDER}")


def _divisors(m: int) -> list[int]:
    return [d for d in range(1, m + 1) if m % d == 0]


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (constant term first), den monic."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("cyclotomic division left a remainder")
    return out


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, constant term first.

    >>> cyclotomic_polynomial(12)
    (1, 0, -1, 0, 1)
    """
    _check_order(m)
    prod = [1]
    for d in _divisors(m)[:-1]:
        prod = _poly_mul(prod, list(cyclotomic_polynomial(d)))
    zm1 = [-1] + [0] * (m - 1) + [1]
    return tuple(_poly_divexact(zm1, prod))


@lru_cache(maxsize=None)
def totient(m: int) -> int:
    return len(cyclotomic_polynomial(m)) - 1


@lru_cache(maxsize=None)
def _power_table(m: int) -> tuple[tuple[int, ...], ...]:
    """Row j holds z^j mod Phi_m on the basis 1..z^(phi-1), for j < m."""
    phi = cyclotomic_polynomial(m)
    deg = len(phi) - 1
    rows = []
    cur = [0] * deg
    cur[0] = 1
    for _ in range(m):
        rows.append(tuple(cur))
        # multiply by z, fold the overflow with z^deg = -sum(phi[i] z^i)
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(deg):
                cur[i] -= top * phi[i]
    return tuple(rows)


def _reduce_full(m: int, full) -> tuple[Fraction, ...]:
    """Reduce a length-m coefficient list (exponents mod m) to canonical form."""
    table = _power_table(m)
    deg = len(table[0])
    out = [_ZERO] * deg
    for e, c in enumerate(full):
        if c:
            row = table[e]
            for i in range(deg):
                r = row[i]
                if r:
                    out[i] += c * r
    return tuple(out)


def _mul_into(m: int, acc: list, a: tuple, b: tuple) -> None:
    """acc[(i+j) % m] += a[i]*b[j]; acc has length m."""
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    k = i + j
                    if k >= m:
                        k -= m
                    acc[k] += x * y


@lru_cache(maxsize=None)
def _embed_table(m: int, big: int) -> tuple[tuple[Fraction, ...], ...]:
    """Canonical order-``big`` images of the basis z^i (i < phi(m)) of Q(zeta_m)."""
    step = big // m
    rows = []
    for i in range(totient(m)):
        full = [_ZERO] * big
        full[(i * step) % big] = _ONE
        rows.append(_reduce_full(big, full))
    return tuple(rows)


def _promote(m: int, c: tuple, big: int) -> tuple[Fraction, ...]:
    if m == big:
        return c
    table = _embed_table(m, big)
    out = [_ZERO] * totient(big)
    for i, x in enumerate(c):
        if x:
            for k, y in enumerate(table[i]):
                if y:
                    out[k] += x * y
    return tuple(out)


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def _solve_square(mat: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    n = len(mat)
    aug = [list(row) + [rhs[i]] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise DivisionByZero("singular system")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


_INVERSES: dict = {}


class CycNumber:
    """An element of Q(zeta_m); immutable.

    ``CycNumber(m, coeffs)`` reads ``coeffs[j]`` as the coefficient of zeta_m^j
    (any length, exponents taken mod m) and stores the reduced form.
    """

    __slots__ = ("order", "_c", "_hash")

    def __init__(self, order: int, coeffs=()):
        _check_order(order)
        full = [_ZERO] * order
        for j, c in enumerate(coeffs):
            if c:
                full[j % order] += _as_fraction(c)
        self.order = order
        self._c = _reduce_full(order, full)
        self._hash = None

    @classmethod
    def _raw(cls, order: int, reduced: tuple) -> CycNumber:
        obj = cls.__new__(cls)
        obj.order = order
        obj._c = reduced
        obj._hash = None
        return obj

    @classmethod
    def rational(cls, q, order: int = 1) -> CycNumber:
        _check_order(order)
        c = [_ZERO] * totient(order)
        c[0] = _as_fraction(q)
        return cls._raw(order, tuple(c))

    @classmethod
    def zeta(cls, m: int, power: int = 1) -> CycNumber:
        full = [0] * m
        full[power % m] = 1
        return cls(m, full)

    @classmethod
    def coerce(cls, x, order: int = 1) -> CycNumber:
        if isinstance(x, CycNumber):
            return x
        return cls.rational(x, order)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        """Canonical coefficients padded to length ``order``."""
        return self._c + (_ZERO,) * (self.order - len(self._c))

    @property
    def reduced(self) -> tuple[Fraction, ...]:
        return self._c

    def promote(self, order: int) -> CycNumber:
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError(f"cannot embed Q(zeta_{self.order}) into Q(zeta_{order})")
        _check_order(order)
        return CycNumber._raw(order, _promote(self.order, self._c, order))

    def _pair(self, other) -> tuple[int, tuple, tuple]:
        if not isinstance(other, CycNumber):
            other = CycNumber.rational(other, self.order)
        if other.order == self.order:
            return self.order, self._c, other._c
        big = math.lcm(self.order, other.order)
        _check_order(big)
        return big, _promote(self.order, self._c, big), _promote(other.order, other._c, big)

    def __add__(self, other):
        if not isinstance(other, (CycNumber, int, Fraction)):
            return NotImplemented
        m, a, b = self._pair(other)
        return CycNumber._raw(m, tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return CycNumber._raw(self.order, tuple(-x for x in self._c))

    def __sub__(self, other):
        if not isinstance(other, (CycNumber, int, Fraction)):
            return NotImplemented
        m, a, b = self._pair(other)
        return CycNumber._raw(m, tuple(x - y for x, y in zip(a, b)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycNumber._raw(self.order, tuple(x * other for x in self._c))
        if not isinstance(other, CycNumber):
            return NotImplemented
        m, a, b = self._pair(other)
        acc = [_ZERO] * m
        _mul_into(m, acc, a, b)
        return CycNumber._raw(m, _reduce_full(m, acc))

    __rmul__ = __mul__

    def inverse(self) -> CycNumber:
        if not self:
            raise DivisionByZero("division by zero in cyclotomic field")
        m = self.order
        deg = len(self._c)
        if deg == 1:
            return CycNumber._raw(m, (1 / self._c[0],))
        key = (m, self._c)
        hit = _INVERSES.get(key)
        if hit is not None:
            return hit
        # a / |a|^2 whenever the norm to the real subfield is rational,
        # which covers roots of unity and their rational multiples
        bar = self.conj()
        acc = [_ZERO] * m
        _mul_into(m, acc, self._c, bar._c)
        norm = _reduce_full(m, acc)
        if not any(norm[1:]):
            inv = CycNumber._raw(m, tuple(x / norm[0] for x in bar._c))
        else:
            inv = self._inverse_by_solve()
        if len(_INVERSES) > 100_000:
            _INVERSES.clear()
        _INVERSES[key] = inv
        return inv

    def _inverse_by_solve(self) -> CycNumber:
        m = self.order
        deg = len(self._c)
        # column j of the multiplication matrix is self * z^j
        cols = []
        for j in range(deg):
            e = [_ZERO] * deg
            e[j] = _ONE
            acc = [_ZERO] * m
            _mul_into(m, acc, self._c, tuple(e))
            cols.append(_reduce_full(m, acc))
        mat = [[cols[j][i] for j in range(deg)] for i in range(deg)]
        rhs = [_ONE] + [_ZERO] * (deg - 1)
        return CycNumber._raw(m, tuple(_solve_square(mat, rhs)))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DivisionByZero("division by zero in cyclotomic field")
            return CycNumber._raw(self.order, tuple(x / other for x in self._c))
        if not isinstance(other, CycNumber):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return CycNumber.coerce(other, self.order) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = CycNumber.rational(1, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self) -> CycNumber:
        m = self.order
        full = [_ZERO] * m
        for j, c in enumerate(self._c):
            if c:
                full[(-j) % m] += c
        return CycNumber._raw(m, _reduce_full(m, full))

    def __bool__(self):
        return any(self._c)

    def is_rational(self) -> bool:
        return not any(self._c[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self._c[0]

    def __complex__(self):
        m = self.order
        return sum(
            (complex(c) * cmath.exp(2j * math.pi * j / m) for j, c in enumerate(self._c) if c),
            0j,
        )

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self._c[0] == other
        if not isinstance(other, CycNumber):
            return NotImplemented
        _, a, b = self._pair(other)
        return a == b

    def minimal(self) -> CycNumber:
        """The same number written over the smallest cyclotomic field containing it."""
        for d in _divisors(self.order):
            coords = _coordinates_in_subfield(self.order, d, self._c)
            if coords is not None:
                return CycNumber._raw(d, coords)
        raise AssertionError("unreachable: every number lies in its own field")

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self._c[0])
            else:
                low = self.minimal()
                self._hash = hash((low.order, low._c))
        return self._hash

    def __repr__(self):
        return f"CycNumber({self.order}, {self})"

    def __str__(self):
        return format_cyc(self)


@lru_cache(maxsize=None)
def _subfield_basis(m: int, d: int):
    """Row-reduced embedding of Q(zeta_d) in Q(zeta_m), with pivot columns."""
    from .linalg import rref_rows  # local import: linalg depends on this module

    rows = [list(r) for r in _embed_table(d, m)]
    # transpose: columns are basis images, solve A x = c
    return rows, rref_rows


def _coordinates_in_subfield(m: int, d: int, c: tuple):
    if d == m:
        return c
    rows, rref_rows = _subfield_basis(m, d)
    k = len(rows)
    deg = totient(m)
    # augmented system: sum_i x_i rows[i] = c  -> deg equations, k unknowns
    aug = [[rows[i][r] for i in range(k)] + [c[r]] for r in range(deg)]
    reduced, pivots = rref_rows(aug)
    if k in pivots:
        return None
    x = [_ZERO] * k
    for row, p in zip(reduced, pivots):
        x[p] = row[k]
    return tuple(x)


def format_cyc(a: CycNumber, var: str = "z") -> str:
    """Render in the group-file entry grammar, e.g. ``1/2*z^3 - z``."""
    parts = []
    for j, c in enumerate(a.reduced):
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if j == 0:
            body = str(mag)
        elif mag == 1:
            body = var if j == 1 else f"{var}^{j}"
        else:
            body = f"{mag}*{var}^{j}"
        parts.append((sign, body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def cyc_arith(a: CycNumber, b: CycNumber, op: str) -> CycNumber:
    """Dispatch ``add``/``sub``/``mul``/``div`` on two cyclotomic numbers."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def cyc_conj(a: CycNumber) -> CycNumber:
    return a.conj()
