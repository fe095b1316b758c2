"""Finite subgroups of SU(n) given by generators.

Elements are enumerated breadth first from the identity; the full
multiplication table is filled from the right-multiplication-by-generator
table, so only ``|G| * #generators`` matrix products are ever formed.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import (
    ConfigurationError,
    DimensionMismatch,
    InternalInconsistency,
    NotASubgroup,
    NotSpecialDeterminant,
    NotUnitary,
    OrderExceeded,
)
from .field import CycNumber
from .linalg import CycMatrix, rank_rows, row_space_basis

DEFAULT_MAX_ORDER = 10_000


def default_max_order() -> int:
    raw = os.environ.get("QALE_MAX_ORDER")
    if raw is None:
        return DEFAULT_MAX_ORDER
    try:
        value = int(raw)
    except ValueError:
        raise ConfigurationError(f"QALE_MAX_ORDER must be an integer, got {raw!r}") from None
    if value < 1:
        raise ConfigurationError("QALE_MAX_ORDER must be positive")
    return value


@dataclass(frozen=True)
class GroupData:
    n: int
    order_m: int
    elements: tuple[CycMatrix, ...]
    mul: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]
    generator_indices: tuple[int, ...]
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __len__(self):
        return len(self.elements)

    @property
    def identity(self) -> int:
        return 0

    def element_order(self, i: int) -> int:
        orders = self._cache.get("orders")
        if orders is None:
            orders = self._cache["orders"] = [None] * len(self)
        if orders[i] is None:
            r, x = 1, i
            while x != 0:
                x = self.mul[x][i]
                r += 1
                if r > len(self):
                    raise InternalInconsistency(f"element {i} has no finite order within |G|")
            orders[i] = r
        return orders[i]

    def power(self, i: int, k: int) -> int:
        x = 0
        for _ in range(k % self.element_order(i)):
            x = self.mul[x][i]
        return x

    def trace(self, i: int) -> CycNumber:
        traces = self._cache.setdefault("traces", {})
        if i not in traces:
            traces[i] = self.elements[i].trace()
        return traces[i]

    def conjugate(self, g: int, x: int) -> int:
        """Index of g x g^-1."""
        return self.mul[self.mul[g][x]][self.inv[g]]

    def generated_subgroup(self, indices: Sequence[int]) -> list[int]:
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for s in indices:
                    y = self.mul[x][s]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return sorted(seen)


@dataclass(frozen=True)
class ClassDatum:
    rep_index: int
    member_indices: tuple[int, ...]
    order: int
    eigen_mult: dict
    age: int
    fixed_dim: int

    @property
    def size(self) -> int:
        return len(self.member_indices)


def _validate_generator(g: CycMatrix, index: int, n: int) -> None:
    if g.rows != g.cols:
        raise DimensionMismatch(f"generator {index} is not square")
    if g.rows != n:
        raise DimensionMismatch(f"generator {index} has size {g.rows}, expected {n}")
    if not (g.conj_transpose() @ g).is_identity():
        raise NotUnitary(index)
    if g.det() != 1:
        raise NotSpecialDeterminant(index)


def close_group(generators: Sequence[CycMatrix], max_order: int | None = None) -> GroupData:
    """Enumerate the finite group generated by unitary, determinant-one matrices."""
    if not generators:
        raise DimensionMismatch("at least one generator is required")
    if max_order is None:
        max_order = default_max_order()
    if max_order < 1:
        raise ConfigurationError("max_order must be positive")
    n = generators[0].rows
    for k, g in enumerate(generators):
        _validate_generator(g, k, n)
    m = 1
    for g in generators:
        m = math.lcm(m, g.order)
    gens = [g.promote(m) for g in generators]

    ident = CycMatrix.identity(n, m)
    elements = [ident]
    index = {ident.key(): 0}
    parent = [-1]
    via = [-1]
    right: list[list[int]] = []
    head = 0
    while head < len(elements):
        x = elements[head]
        row = []
        for s, g in enumerate(gens):
            y = x @ g
            k = y.key()
            j = index.get(k)
            if j is None:
                j = len(elements)
                if j >= max_order:
                    raise OrderExceeded(f"closure exceeds max_order={max_order}")
                index[k] = j
                elements.append(y)
                parent.append(head)
                via.append(s)
            row.append(j)
        right.append(row)
        head += 1

    size = len(elements)
    # column j of mul: elements[j] = elements[parent[j]] * gens[via[j]]
    cols = [None] * size
    cols[0] = list(range(size))
    for j in range(1, size):
        pc = cols[parent[j]]
        s = via[j]
        cols[j] = [right[pc[i]][s] for i in range(size)]
    mul = tuple(tuple(cols[j][i] for j in range(size)) for i in range(size))
    inv = [0] * size
    for i in range(size):
        inv[i] = mul[i].index(0)

    gen_idx = tuple(index[g.key()] for g in gens)
    return GroupData(n, m, tuple(elements), mul, tuple(inv), gen_idx)


def eigen_multiplicities(G: GroupData, i: int) -> dict[int, int]:
    """Multiplicity of each eigenvalue zeta_r^j (r = element order) by trace DFT.

    Only nonzero multiplicities are returned.
    """
    r = G.element_order(i)
    traces = []
    x = 0
    for _ in range(r):
        traces.append(G.trace(x))
        x = G.mul[x][i]
    out = {}
    total = 0
    for j in range(r):
        acc = CycNumber.rational(0, r)
        for k in range(r):
            acc = acc + traces[k] * CycNumber.zeta(r, -j * k)
        acc = acc / r
        if not acc.is_rational():
            raise InternalInconsistency(f"eigenvalue multiplicity of element {i} is not rational")
        q = acc.to_fraction()
        if q.denominator != 1 or q < 0:
            raise InternalInconsistency(f"eigenvalue multiplicity {q} of element {i} is not a nonnegative integer")
        if q:
            out[j] = int(q)
            total += int(q)
    if total != G.n:
        raise InternalInconsistency(f"multiplicities of element {i} sum to {total}, not {G.n}")
    return out


def age(G: GroupData, i: int) -> int:
    mult = eigen_multiplicities(G, i)
    r = G.element_order(i)
    value = Fraction(sum(j * k for j, k in mult.items()), r)
    if value.denominator != 1:
        raise InternalInconsistency(f"age {value} of element {i} is not an integer")
    return int(value)


def _class_partition(G: GroupData) -> list[list[int]]:
    assigned = [False] * len(G)
    classes = []
    for x in range(len(G)):
        if assigned[x]:
            continue
        members = sorted({G.conjugate(g, x) for g in range(len(G))})
        for y in members:
            assigned[y] = True
        classes.append(members)
    return classes


def conjugacy_classes(G: GroupData) -> list[ClassDatum]:
    cached = G._cache.get("classes")
    if cached is not None:
        return cached
    out = []
    for members in _class_partition(G):
        rep = members[0]
        mult = eigen_multiplicities(G, rep)
        r = G.element_order(rep)
        a = Fraction(sum(j * k for j, k in mult.items()), r)
        if a.denominator != 1:
            raise InternalInconsistency(f"age {a} of element {rep} is not an integer")
        out.append(ClassDatum(rep, tuple(members), r, mult, int(a), mult.get(0, 0)))
    out.sort(key=lambda c: (c.age, c.order, c.rep_index))
    G._cache["classes"] = out
    return out


def fixed_dim(G: GroupData, i: int) -> int:
    return eigen_multiplicities(G, i).get(0, 0)


def check_subgroup(G: GroupData, H: Sequence[int]) -> None:
    hs = set(H)
    if 0 not in hs:
        raise NotASubgroup("subset does not contain the identity")
    for a in hs:
        for b in hs:
            if G.mul[a][b] not in hs:
                raise NotASubgroup(f"product of {a} and {b} leaves the subset")


def fixed_space(G: GroupData, H: Sequence[int]) -> tuple[int, CycMatrix | None]:
    """Dimension and RREF basis (rows) of the common fixed space of subgroup H."""
    check_subgroup(G, H)
    H = sorted(set(H))
    n = G.n
    total = CycMatrix.zeros(n, n, G.order_m)
    for h in H:
        total = total + G.elements[h]
    proj = total.scale(Fraction(1, len(H)))
    # image of P = column space = row space of P^T
    basis = row_space_basis(proj.transpose().row_list())
    dim = len(basis)
    tr = sum((G.trace(h) for h in H), CycNumber.rational(0, G.order_m)) / len(H)
    if tr != dim:
        raise InternalInconsistency(f"projector rank {dim} disagrees with averaged trace {tr}")
    if rank_rows(proj.row_list()) != dim:
        raise InternalInconsistency("projector rank mismatch")
    return dim, (CycMatrix.from_rows(basis, G.order_m) if basis else None)
