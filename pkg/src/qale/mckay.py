"""Cohomology tables of crepant resolutions from age-graded conjugacy classes."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import FreeActionViolated
from .group import ClassDatum, GroupData, age
from .strata import Stratum, free_action_ok


@dataclass(frozen=True)
class CohomTable:
    """Graded dimensions; zero degrees are dropped so equal tables compare equal."""

    dims: Mapping[int, int]
    top_degree: int
    label: str = ""
    flags: tuple[str, ...] = field(default=())

    def __post_init__(self):
        clean = {}
        for k, v in dict(self.dims).items():
            k, v = int(k), int(v)
            if v < 0:
                raise ValueError(f"negative dimension {v} in degree {k}")
            if v and not 0 <= k <= self.top_degree:
                raise ValueError(f"degree {k} outside [0, {self.top_degree}]")
            if v:
                clean[k] = v
        object.__setattr__(self, "dims", dict(sorted(clean.items())))

    def __getitem__(self, k: int) -> int:
        return self.dims.get(k, 0)

    def __hash__(self):
        return hash((tuple(self.dims.items()), self.top_degree, self.label, self.flags))

    def euler(self) -> int:
        return sum((-1) ** k * v for k, v in self.dims.items())

    def total(self) -> int:
        return sum(self.dims.values())

    def as_list(self) -> list[int]:
        return [self[k] for k in range(self.top_degree + 1)]

    def to_json(self) -> dict:
        out = {"dims": {str(k): v for k, v in self.dims.items()}, "top_degree": self.top_degree}
        if self.label:
            out["label"] = self.label
        if self.flags:
            out["flags"] = list(self.flags)
        return out


def crepant_betti(classes: Sequence[ClassDatum], n: int) -> CohomTable:
    """dim H^{2k} = number of conjugacy classes of age k; odd degrees vanish."""
    dims: dict[int, int] = {}
    for c in classes:
        dims[2 * c.age] = dims.get(2 * c.age, 0) + 1
    return CohomTable(dims, 2 * n, "crepant")


def _subgroup_classes(G: GroupData, H: Sequence[int]) -> list[list[int]]:
    hs = sorted(set(H))
    seen = set()
    out = []
    for x in hs:
        if x in seen:
            continue
        cls = sorted({G.conjugate(h, x) for h in hs})
        seen.update(cls)
        out.append(cls)
    return out


def ale_tables(S: Stratum, G: GroupData) -> tuple[CohomTable, CohomTable]:
    """(B-invariant table, plain table) of the crepant resolution Y of W/A.

    B acts on H^{2k}(Y) through N-conjugation of the age-k classes of A, so
    the invariant dimension is the number of orbits on those classes.
    """
    if not free_action_ok(G, S):
        raise FreeActionViolated("A does not act freely on W minus 0")
    classes = _subgroup_classes(G, S.A_indices)
    where = {x: k for k, cls in enumerate(classes) for x in cls}
    parent = list(range(len(classes)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for g in S.B_coset_reps:
        for k, cls in enumerate(classes):
            j = where[G.conjugate(g, cls[0])]
            ra, rb = find(k), find(j)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)

    ages = [age(G, cls[0]) for cls in classes]
    plain: dict[int, int] = {}
    inv: dict[int, int] = {}
    for k, a in enumerate(ages):
        plain[2 * a] = plain.get(2 * a, 0) + 1
        if find(k) == k:
            inv[2 * a] = inv.get(2 * a, 0) + 1
    top = 2 * S.m_i
    return CohomTable(inv, top, "ale-invariant"), CohomTable(plain, top, "ale-plain")


def ale_invariant_betti(S: Stratum, G: GroupData) -> CohomTable:
    return ale_tables(S, G)[0]


def compact_support_betti(t: CohomTable, real_dim: int) -> CohomTable:
    """Degree reversal k -> real_dim - k."""
    return CohomTable({real_dim - k: v for k, v in t.dims.items()}, real_dim, t.label, t.flags)


def ale_l2_betti(t: CohomTable) -> CohomTable:
    """L^2 table of an ALE resolution: the absolute table with degree 0 removed."""
    return CohomTable({k: v for k, v in t.dims.items() if k > 0}, t.top_degree, "ale-l2")
