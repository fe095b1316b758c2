"""Exact-rational chain complexes, exact sequences and the five-term ladder lemma."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import HypothesisViolated, NotAComplex, WrongDimension
from .linalg import rank_rows, rref_rows
from .mckay import CohomTable


@dataclass(frozen=True)
class QMat:
    """Rational matrix that keeps its shape even when a dimension is zero."""

    rows: int
    cols: int
    data: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def of(cls, rows: Sequence[Sequence], cols: int | None = None) -> QMat:
        data = tuple(tuple(Fraction(x) for x in r) for r in rows)
        if cols is None:
            if not data:
                raise ValueError("give cols for a matrix with no rows")
            cols = len(data[0])
        if any(len(r) != cols for r in data):
            raise WrongDimension("ragged matrix")
        return cls(len(data), cols, data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> QMat:
        return cls(rows, cols, tuple((Fraction(0),) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> QMat:
        return cls(n, n, tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))

    def __matmul__(self, other: QMat) -> QMat:
        if self.cols != other.rows:
            raise WrongDimension(f"cannot compose {self.rows}x{self.cols} with {other.rows}x{other.cols}")
        zero = Fraction(0)
        out = tuple(
            tuple(sum((self.data[i][t] * other.data[t][j] for t in range(self.cols) if self.data[i][t]), zero)
                  for j in range(other.cols))
            for i in range(self.rows)
        )
        return QMat(self.rows, other.cols, out)

    @property
    def T(self) -> QMat:
        return QMat(self.cols, self.rows, tuple(tuple(self.data[i][j] for i in range(self.rows))
                                                for j in range(self.cols)))

    def rank(self) -> int:
        if not self.rows or not self.cols:
            return 0
        return rank_rows(self.data)

    def is_zero(self) -> bool:
        return all(not x for r in self.data for x in r)

    def hstack(self, other: QMat) -> QMat:
        if self.rows != other.rows:
            raise WrongDimension("hstack needs equal row counts")
        return QMat(self.rows, self.cols + other.cols, tuple(a + b for a, b in zip(self.data, other.data)))

    def inverse(self) -> QMat:
        n = self.rows
        if not n:
            return self
        aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self.data)]
        red, piv = rref_rows(aug)
        if piv[:n] != list(range(n)):
            raise ZeroDivisionError("singular matrix")
        return QMat(n, n, tuple(tuple(r[n:]) for r in red))


@dataclass(frozen=True)
class RatComplex:
    """Cochain complex dims[0] -> dims[1] -> ...; maps[k] is dims[k+1] x dims[k]."""

    dims: tuple[int, ...]
    maps: tuple[QMat, ...]

    def __post_init__(self):
        if len(self.maps) != max(len(self.dims) - 1, 0):
            raise WrongDimension("need one map between each pair of consecutive spaces")
        for k, d in enumerate(self.maps):
            if (d.rows, d.cols) != (self.dims[k + 1], self.dims[k]):
                raise WrongDimension(f"map {k} has shape {d.rows}x{d.cols}")

    def dual(self) -> RatComplex:
        return RatComplex(tuple(reversed(self.dims)), tuple(d.T for d in reversed(self.maps)))


def betti(c: RatComplex) -> CohomTable:
    for k in range(len(c.maps) - 1):
        if not (c.maps[k + 1] @ c.maps[k]).is_zero():
            raise NotAComplex(f"d{k + 1} d{k} is not zero")
    ranks = [d.rank() for d in c.maps]
    dims = {}
    for k, d in enumerate(c.dims):
        out_rank = ranks[k] if k < len(ranks) else 0
        in_rank = ranks[k - 1] if k > 0 else 0
        dims[k] = d - out_rank - in_rank
    return CohomTable(dims, max(len(c.dims) - 1, 0), "betti")


def exactness_feasible(dims: Sequence[int]) -> bool:
    """Whether ranks r_i of the maps dims[i] -> dims[i+1] can make every interior spot exact."""
    dims = list(dims)
    if len(dims) < 3:
        raise ValueError("need at least three spaces")
    for r0 in range(min(dims[0], dims[1]) + 1):
        ranks = [r0]
        for i in range(1, len(dims) - 1):
            ranks.append(dims[i] - ranks[-1])
        if all(0 <= r <= min(dims[i], dims[i + 1]) for i, r in enumerate(ranks)):
            return True
    return False


def _check_ladder(upper: Sequence[QMat], vertical: Sequence[QMat], lower: Sequence[QMat]):
    if len(upper) != 4 or len(lower) != 4 or len(vertical) != 5:
        raise WrongDimension("a ladder has 4 upper maps, 5 verticals and 4 lower maps")
    top = [v.cols for v in vertical]
    bot = [v.rows for v in vertical]
    failures = []
    for i in range(4):
        if (upper[i].rows, upper[i].cols) != (top[i + 1], top[i]):
            failures.append(f"upper map {i + 1} shape")
        if (lower[i].rows, lower[i].cols) != (bot[i + 1], bot[i]):
            failures.append(f"lower map {i + 1} shape")
    if failures:
        raise HypothesisViolated(failures)
    for i in range(4):
        if vertical[i + 1] @ upper[i] != lower[i] @ vertical[i]:
            failures.append(f"square {i + 1} does not commute")
    for name, maps, dims in (("upper", upper, top), ("lower", lower, bot)):
        for i in range(1, 4):
            if not (maps[i] @ maps[i - 1]).is_zero() or maps[i - 1].rank() + maps[i].rank() != dims[i]:
                failures.append(f"{name} row not exact at position {i + 1}")
    if vertical[3].rank() != top[3]:
        failures.append("fourth vertical not injective")
    if vertical[4].rank() != top[4]:
        failures.append("fifth vertical not injective")
    if vertical[1].rank() != bot[1]:
        failures.append("second vertical not surjective")
    if failures:
        raise HypothesisViolated(failures)
    return top, bot


def verify_ladder(upper: Sequence[QMat], vertical: Sequence[QMat], lower: Sequence[QMat]) -> bool:
    """Exactness of A' -> B' -> im(C -> C') -> D -> E for a commutative ladder with exact rows.

    D and E stand for their images in D' and E' (the verticals there are injective).
    Raises HypothesisViolated when the ladder does not meet the hypotheses.
    """
    _check_ladder(upper, vertical, lower)
    _, f1, f2, f3, _ = vertical
    p1, p2, p3, p4 = lower
    im_f2, im_f3 = f2.rank(), f3.rank()
    r_p2 = p2.rank()
    # at B': the corestriction B' -> im f2 has the same kernel as B' -> C'
    exact_b = p1.rank() + r_p2 == p2.cols and (p2 @ p1).is_zero()
    inside = f2.hstack(p2).rank() == im_f2
    p3f2 = p3 @ f2
    exact_c = inside and im_f2 - p3f2.rank() == r_p2
    # at D: im(p3 f2) sits in im f3 and is the kernel of p4 restricted to im f3
    exact_d = (
        f3.hstack(p3f2).rank() == im_f3
        and (p4 @ p3f2).is_zero()
        and im_f3 - (p4 @ f3).rank() == p3f2.rank()
    )
    return exact_b and exact_c and exact_d


# -- random ladders satisfying the hypotheses ---------------------------------
#
# An exact-inside 5-term complex of vector spaces splits into summands
# E_j = (Q at j -> Q at j+1, identity) and S_0, S_4 (Q alone at an end).
# Chain maps between such sums are block matrices whose only nonzero blocks
# are the ones listed in _allowed; conjugating by random bases then gives a
# general commutative ladder.

def _pieces(rng: random.Random, max_dim: int) -> list[tuple[str, int]]:
    while True:
        pieces = [("E", j) for j in range(4) for _ in range(rng.randint(0, 2))]
        pieces += [("S", 0)] * rng.randint(0, 1) + [("S", 4)] * rng.randint(0, 1)
        dims = [0] * 5
        for kind, j in pieces:
            dims[j] += 1
            if kind == "E":
                dims[j + 1] += 1
        if all(d <= max_dim for d in dims):
            return pieces


def _node_basis(pieces) -> list[list[int]]:
    nodes = [[] for _ in range(5)]
    for p, (kind, j) in enumerate(pieces):
        nodes[j].append(p)
        if kind == "E":
            nodes[j + 1].append(p)
    return nodes


def _allowed(src, dst) -> list[int]:
    ks, js = src
    kd, jd = dst
    if ks == "E" and kd == "E":
        if js == jd:
            return [js, js + 1]
        return [js] if jd == js - 1 else []
    if ks == kd == "S":
        return [js] if js == jd else []
    if ks == "E" and kd == "S" and js == jd == 0:
        return [0]
    if ks == "S" and kd == "E" and js == 4 and jd == 3:
        return [4]
    return []


def _imul(a: list, b: list, inner: int) -> list:
    cols = len(b[0]) if b else 0
    return [[sum(r[t] * b[t][j] for t in range(inner)) for j in range(cols)] for r in a]


def _differentials(pieces, nodes) -> list[list]:
    out = []
    for i in range(4):
        m = [[0] * len(nodes[i]) for _ in range(len(nodes[i + 1]))]
        for c, p in enumerate(nodes[i]):
            if pieces[p] == ("E", i):
                m[nodes[i + 1].index(p)][c] = 1
        out.append(m)
    return out


def _random_unimodular(rng: random.Random, n: int) -> tuple[list, list]:
    """Integer matrix L U (unit triangular factors, row-permuted) and its integer inverse."""
    lower = [[1 if i == j else (rng.randint(-2, 2) if j < i else 0) for j in range(n)] for i in range(n)]
    upper = [[1 if i == j else (rng.randint(-2, 2) if j > i else 0) for j in range(n)] for i in range(n)]
    perm = list(range(n))
    rng.shuffle(perm)
    P = [[int(perm[i] == j) for j in range(n)] for i in range(n)]
    M = _imul(P, _imul(lower, upper, n), n)

    def unit_inverse(T, is_lower):
        inv = [[0] * n for _ in range(n)]
        order = range(n) if is_lower else range(n - 1, -1, -1)
        for col in range(n):
            for i in order:
                acc = int(i == col)
                rng_j = range(i) if is_lower else range(i + 1, n)
                acc -= sum(T[i][j] * inv[j][col] for j in rng_j)
                inv[i][col] = acc
        return inv

    Pt = [[P[j][i] for j in range(n)] for i in range(n)]
    Minv = _imul(unit_inverse(upper, False), _imul(unit_inverse(lower, True), Pt, n), n)
    return M, Minv


def random_ladder(rng: random.Random, max_dim: int = 4, tries: int = 500):
    """Sample (upper, vertical, lower) meeting the ladder lemma's hypotheses."""
    for _ in range(tries):
        up, lo = _pieces(rng, max_dim), _pieces(rng, max_dim)
        un, ln = _node_basis(up), _node_basis(lo)
        vert = [[[0] * len(un[i]) for _ in range(len(ln[i]))] for i in range(5)]
        for ps, src in enumerate(up):
            for pd, dst in enumerate(lo):
                at = _allowed(src, dst)
                if at:
                    lam = rng.randint(-2, 2)
                    for i in at:
                        vert[i][ln[i].index(pd)][un[i].index(ps)] = lam
        # ranks are basis independent, so test the hypotheses before conjugating
        if (QMat.of(vert[3], len(un[3])).rank() != len(un[3])
                or QMat.of(vert[4], len(un[4])).rank() != len(un[4])
                or QMat.of(vert[1], len(un[1])).rank() != len(ln[1])):
            continue
        du, dl = _differentials(up, un), _differentials(lo, ln)
        P = [_random_unimodular(rng, len(un[i])) for i in range(5)]
        Q = [_random_unimodular(rng, len(ln[i])) for i in range(5)]

        def conj(left, m, right, inner_l, inner_r, cols):
            return QMat.of(_imul(_imul(left, m, inner_l), right, inner_r), cols)

        upper = [conj(P[i + 1][0], du[i], P[i][1], len(un[i + 1]), len(un[i]), len(un[i])) for i in range(4)]
        lower = [conj(Q[i + 1][0], dl[i], Q[i][1], len(ln[i + 1]), len(ln[i]), len(ln[i])) for i in range(4)]
        vertical = [conj(Q[i][0], vert[i], P[i][1], len(ln[i]), len(un[i]), len(un[i])) for i in range(5)]
        return upper, vertical, lower
    raise RuntimeError("could not sample a ladder satisfying the hypotheses")


def identity_ladder(dims: Sequence[int]):
    """Both rows equal to one elementary exact complex, identity verticals."""
    if len(dims) != 5:
        raise WrongDimension("need five node dimensions")
    pieces = []
    budget = list(dims)
    for j in range(4):
        while budget[j] > 0 and budget[j + 1] > 0:
            pieces.append(("E", j))
            budget[j] -= 1
            budget[j + 1] -= 1
    if any(budget[1:4]):
        raise ValueError(f"dimensions {list(dims)} admit no exact-inside elementary row")
    pieces += [("S", 0)] * budget[0] + [("S", 4)] * budget[4]
    nodes = _node_basis(pieces)
    d = [QMat.of(m, len(nodes[i])) for i, m in enumerate(_differentials(pieces, nodes))]
    return d, [QMat.identity(len(nodes[i])) for i in range(5)], list(d)


# -- Mayer-Vietoris bookkeeping -------------------------------------------------

def mv_tables(G, E=None, l2=None) -> dict:
    """Tables entering the Mayer-Vietoris sequence of X = K u O.

    ``E`` defaults to the heuristic end geometry and ``l2`` to the SU(3) table.
    """
    from .assembly import boundary_betti, end_geometry, end_l2, end_l2_weighted, su3_l2
    from .group import conjugacy_classes
    from .mckay import crepant_betti

    E = E if E is not None else end_geometry(G)
    return {
        "core": crepant_betti(conjugacy_classes(G), G.n),
        "end_weighted": end_l2_weighted(E),
        "boundary": boundary_betti(E),
        "l2": l2 if l2 is not None else su3_l2(G),
        "end": end_l2(E),
    }


def mv_terms(tables: dict, k: int) -> list[int]:
    """Dimensions H^{k-1}(K)+H^{k-1}_w(O), H^{k-1}(dK), L2 H^k(X), H^k(K)+H^k(O), H^k(dK)."""
    K, w, b, x, o = (tables[key] for key in ("core", "end_weighted", "boundary", "l2", "end"))
    return [K[k - 1] + w[k - 1], b[k - 1], x[k], K[k] + o[k], b[k]]


def mv_check(tables: dict, n: int) -> bool:
    """The Mayer-Vietoris dimensions admit exact ranks in every degree 1..2n-1."""
    return all(exactness_feasible(mv_terms(tables, k)) for k in range(1, 2 * n))


def mv_check_su3(G) -> bool:
    if G.n != 3:
        raise WrongDimension(f"mv_check_su3 needs n = 3, got {G.n}")
    return mv_check(mv_tables(G), G.n)
