"""L^2 cohomology tables of QALE ends, crepant resolutions and weighted cones.

All functions work at the level of dimensions.  End and boundary tables are
evaluated orbit by orbit from the B-invariant cohomology of the ALE pieces.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import (
    InconclusiveWeight,
    InternalInconsistency,
    NotIsolated,
    NotSymplectic,
    RankBound,
    WrongDimension,
)
from .group import GroupData, conjugacy_classes
from .mckay import CohomTable, ale_l2_betti, ale_tables, compact_support_betti, crepant_betti
from .strata import StratificationReport, stratification_report


@dataclass(frozen=True)
class OrbitEnd:
    n_i: int
    m_i: int
    invariant_table: CohomTable
    plain_table: CohomTable
    source: str = "heuristic"
    heuristic_table: CohomTable | None = None


@dataclass(frozen=True)
class EndGeometry:
    n: int
    orbits: tuple[OrbitEnd, ...]
    isolated: bool = True

    def __post_init__(self):
        for o in self.orbits:
            if o.n_i + o.m_i != self.n:
                raise ValueError(f"n_i + m_i = {o.n_i + o.m_i} differs from n = {self.n}")


@dataclass(frozen=True)
class WeightSpec:
    """Radial weight r^{2a} (1 + log r)^{2b}."""

    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))


def end_geometry(
    G: GroupData,
    report: StratificationReport | None = None,
    overrides: Mapping[int, Mapping[int, int]] | None = None,
) -> EndGeometry:
    """One OrbitEnd per G-orbit of strata, computed on the lowest-index representative.

    ``overrides`` maps orbit index to a replacement invariant table.
    """
    report = report or stratification_report(G)
    if not report.isolated:
        raise NotIsolated(f"stratification has length {report.length}")
    overrides = overrides or {}
    ends = []
    for k, orbit in enumerate(report.orbits):
        s = report.strata[orbit[0]]
        inv, plain = ale_tables(s, G)
        if k in overrides:
            forced = CohomTable(overrides[k], 2 * s.m_i, "ale-invariant-override")
            ends.append(OrbitEnd(s.n_i, s.m_i, forced, plain, "override", inv))
        else:
            ends.append(OrbitEnd(s.n_i, s.m_i, inv, plain, "heuristic", inv))
    return EndGeometry(G.n, tuple(ends), report.isolated)


def _require_isolated(E: EndGeometry) -> None:
    if not E.isolated:
        raise NotIsolated("the sphere quotient does not have isolated singularities")


def end_l2(E: EndGeometry) -> CohomTable:
    """Unweighted L^2 cohomology of the end X minus K."""
    _require_isolated(E)
    n = E.n
    dims = {}
    for k in range(1, 2 * n - 1):
        guarded = 0
        plain = 0
        for o in E.orbits:
            if o.n_i <= 1:
                continue
            t = o.invariant_table
            plain += ale_l2_betti(t)[k - 2 * o.n_i + 1] if k - 2 * o.n_i + 1 >= 0 else 0
            if k > 2 * o.n_i - 1:
                guarded += t[k - 2 * o.n_i + 1]
        if guarded != plain:
            raise InternalInconsistency(f"end table forms disagree in degree {k}")
        dims[k] = guarded
    dims[2 * n - 1] = 1
    return CohomTable(dims, 2 * n, "end-l2", ("degree-0-out-of-range",))


def end_l2_weighted(E: EndGeometry) -> CohomTable:
    """L^2_w cohomology of the end for w = r^-2 (1 + log r)^-2, degrees 0..2n-2."""
    _require_isolated(E)
    n = E.n
    dims = {}
    for k in range(1, 2 * n):
        total = 0
        for o in E.orbits:
            t = o.invariant_table
            if k > 2 * o.n_i:
                total += t[k - 2 * o.n_i]
            if o.n_i == 1 and k > 1:
                total += t[k - 1]
        dims[k - 1] = total
    return CohomTable(dims, 2 * n, "end-l2-weighted")


def boundary_betti(E: EndGeometry) -> CohomTable:
    """Betti numbers of the boundary of the compact core (assumed connected)."""
    _require_isolated(E)
    n = E.n
    dims = {0: 1, 2 * n - 1: 1}
    for k in range(1, 2 * n - 1):
        total = 0
        for o in E.orbits:
            t = o.invariant_table
            total += t[k]
            if k > 2 * o.n_i - 1:
                total += t[k - 2 * o.n_i + 1]
        dims[k] = total
    return CohomTable(dims, 2 * n - 1, "boundary", ("assumes-connected-boundary",))


def _isolated_report(G: GroupData) -> StratificationReport:
    report = stratification_report(G)
    if not report.isolated:
        raise NotIsolated(f"stratification has length {report.length}")
    return report


def _age_counts(G: GroupData) -> dict[int, int]:
    counts: dict[int, int] = {}
    for c in conjugacy_classes(G):
        counts[c.age] = counts.get(c.age, 0) + 1
    return counts


def su3_l2(G: GroupData) -> CohomTable:
    """L^2 cohomology of a QALE crepant resolution of C^3/G."""
    if G.n != 3:
        raise WrongDimension(f"su3 model needs n = 3, got {G.n}")
    _isolated_report(G)
    c2 = _age_counts(G).get(2, 0)
    return CohomTable({2: c2, 4: c2}, 6, "l2-su3")


def sp2_l2(G: GroupData, force: bool = False) -> CohomTable:
    """L^2 cohomology of a QALE crepant resolution of C^4/G, G in Sp(2)."""
    if G.n != 4:
        raise WrongDimension(f"sp2 model needs n = 4, got {G.n}")
    report = _isolated_report(G)
    if report.sp_status != "yes" and not force:
        raise NotSymplectic(f"symplectic check returned {report.sp_status!r}")
    counts = _age_counts(G)
    c3, c2 = counts.get(3, 0), counts.get(2, 0)
    return CohomTable({2: c3, 4: c2, 6: c3}, 8, "l2-sp2")


def chi_l2(G: GroupData) -> int:
    """Number of conjugacy classes acting without nonzero fixed vectors."""
    return sum(1 for c in conjugacy_classes(G) if c.fixed_dim == 0)


def cone_rule(k: int, d: int, w: WeightSpec, betti_V: CohomTable | Mapping[int, int],
              variant: str = "absolute") -> tuple[int, str]:
    """Decision for the weighted L^2 cohomology of a cone C_1(V); returns (dim, rule)."""
    betti = betti_V if isinstance(betti_V, CohomTable) else CohomTable(betti_V, max(list(betti_V) + [0]))
    edge = Fraction(d, 2) + w.a
    half = Fraction(1, 2)
    k = Fraction(k)
    if variant not in ("absolute", "relative"):
        raise ValueError(f"variant must be 'absolute' or 'relative', got {variant!r}")
    # the vanishing at k = d/2 + a, |b| <= 1/2 comes from the proof, not the lex cases
    if k == edge and -half <= w.b <= half:
        return 0, "edge-derived"
    # off the edge band the two sides are never lex-equal
    if variant == "absolute":
        if (k, -half) < (edge, w.b):
            return 0, "lex-below"
        return betti[int(k)], "lex-above"
    if (k, half) > (edge, w.b):
        return 0, "lex-above"
    return betti[int(k) - 1], "lex-below"


def cone_l2(k: int, d: int, w: WeightSpec, betti_V, variant: str = "absolute") -> int:
    return cone_rule(k, d, w, betti_V, variant)[0]


def conical_end_l2(k: int, d: int, a, h_c: int, h: int, rank_nat: int) -> int:
    """L^2 cohomology in degree k of a manifold with a conical end for weight r^{2a}."""
    if rank_nat > min(h_c, h) or rank_nat < 0:
        raise RankBound(f"rank {rank_nat} exceeds min(h_c, h) = {min(h_c, h)}")
    edge = Fraction(d, 2) + Fraction(a)
    if k < edge:
        return h_c
    if k == edge:
        return rank_nat
    return h


def weighted_extreme_l2(a, n: int, h_c: CohomTable, h: CohomTable) -> CohomTable:
    """Weighted L^2 cohomology for |a| > n: compactly supported or absolute cohomology."""
    a = Fraction(a)
    if a > n:
        return h_c
    if a < -n:
        return h
    raise InconclusiveWeight(f"|a| = {abs(a)} does not exceed n = {n}")


def kunneth(t1: CohomTable, t2: CohomTable) -> CohomTable:
    dims: dict[int, int] = {}
    for p, x in t1.dims.items():
        for q, y in t2.dims.items():
            dims[p + q] = dims.get(p + q, 0) + x * y
    return CohomTable(dims, t1.top_degree + t2.top_degree, "kunneth")


def crepant_tables(G: GroupData) -> tuple[CohomTable, CohomTable]:
    """(absolute, compactly supported) cohomology of a crepant resolution."""
    h = crepant_betti(conjugacy_classes(G), G.n)
    return h, compact_support_betti(h, 2 * G.n)
