"""Fixed-subspace stratification of C^n / G."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .field import CycNumber
from .group import GroupData, fixed_dim
from .linalg import (
    CycMatrix,
    det_rows,
    intersect,
    nullspace_rows,
    rank_rows,
    row_space_basis,
    subspace_key,
)


@dataclass(frozen=True)
class Stratum:
    basis: CycMatrix
    n_i: int
    m_i: int
    A_indices: tuple[int, ...]
    N_indices: tuple[int, ...]
    B_coset_reps: tuple[int, ...]
    orbit_id: int

    @property
    def key(self) -> tuple:
        return subspace_key(self.basis.row_list())


@dataclass(frozen=True)
class StratificationReport:
    strata: tuple[Stratum, ...]
    orbits: tuple[tuple[int, ...], ...]
    length: int
    isolated: bool
    su_ok: bool
    sp_status: str

    def orbit_representatives(self) -> list[int]:
        return [orb[0] for orb in self.orbits]


@dataclass(frozen=True)
class Finding:
    code: str
    ok: bool
    detail: str = ""


def _zero_one(G: GroupData):
    return CycNumber.rational(0, G.order_m), CycNumber.rational(1, G.order_m)


def fixed_subspace(G: GroupData, i: int) -> list[list[CycNumber]]:
    """RREF rows spanning ker(g_i - Id)."""
    zero, one = _zero_one(G)
    g = G.elements[i] - CycMatrix.identity(G.n, G.order_m)
    return nullspace_rows(g.row_list(), G.n, zero, one)


def image_basis(G: GroupData, i: int, basis: Sequence[Sequence[CycNumber]]):
    return row_space_basis(G.elements[i].apply_rows(basis))


def _sort_key(basis) -> tuple:
    return (len(basis), tuple(tuple(tuple(str(c) for c in e.reduced) for e in row) for row in basis))


def _proper_fixed_spaces(G: GroupData) -> dict:
    spaces = {}
    for i in range(1, len(G)):
        if fixed_dim(G, i) == 0:
            continue
        b = fixed_subspace(G, i)
        spaces.setdefault(subspace_key(b), b)
    # close under intersection: V^H is the intersection of the Fix(h), h in H
    frontier = list(spaces.values())
    while frontier:
        new = []
        current = list(spaces.values())
        for a in frontier:
            # a line meets another subspace in 0 or in itself; neither is new
            if len(a) == 1:
                continue
            for b in current:
                if len(b) == 1:
                    continue
                c = intersect(a, b, G.n, G.order_m)
                if c:
                    k = subspace_key(c)
                    if k not in spaces:
                        spaces[k] = c
                        new.append(c)
        frontier = new
    return spaces


def _strata_permutations(G: GroupData, gen_perms: dict[int, list[int]], count: int) -> list[list[int]]:
    """perm[g][k] = index of g . V_k, built from the generator permutations through the mul table."""
    perm: list = [None] * len(G)
    perm[0] = list(range(count))
    queue = [0]
    for x in queue:
        for s, ps in gen_perms.items():
            y = G.mul[x][s]
            if perm[y] is None:
                # (x s) . V = x . (s . V)
                perm[y] = [perm[x][ps[k]] for k in range(count)]
                queue.append(y)
    return perm


def _stabilizers(G: GroupData, basis, k: int, perm) -> tuple[list[int], list[int]]:
    N = [g for g in range(len(G)) if perm[g][k] == k]
    A = []
    for g in N:
        img = G.elements[g].apply_rows(basis)
        if all(u == v for ru, rv in zip(img, basis) for u, v in zip(ru, rv)):
            A.append(g)
    return A, N


def _coset_reps(G: GroupData, A: Sequence[int], N: Sequence[int]) -> list[int]:
    covered = set()
    reps = []
    for g in N:
        if g in covered:
            continue
        reps.append(g)
        covered.update(G.mul[g][a] for a in A)
    return reps


def enumerate_strata(G: GroupData) -> list[Stratum]:
    """Proper nonzero fixed subspaces V^H with their stabilizer data, in canonical order."""
    cached = G._cache.get("strata")
    if cached is not None:
        return cached
    spaces = sorted(_proper_fixed_spaces(G).values(), key=_sort_key)
    index = {subspace_key(b): k for k, b in enumerate(spaces)}

    gen_perms = {
        g: [index[subspace_key(image_basis(G, g, b))] for b in spaces]
        for g in G.generator_indices
    }
    perm = _strata_permutations(G, gen_perms, len(spaces))

    # orbits of the G-action, explored through generators
    orbit_of = [-1] * len(spaces)
    orbit_count = 0
    for start in range(len(spaces)):
        if orbit_of[start] >= 0:
            continue
        orbit_of[start] = orbit_count
        stack = [start]
        while stack:
            k = stack.pop()
            for ps in gen_perms.values():
                j = ps[k]
                if orbit_of[j] < 0:
                    orbit_of[j] = orbit_count
                    stack.append(j)
        orbit_count += 1

    strata = []
    for k, basis in enumerate(spaces):
        A, N = _stabilizers(G, basis, k, perm)
        reps = _coset_reps(G, A, N)
        strata.append(Stratum(
            basis=CycMatrix.from_rows(basis, G.order_m),
            n_i=len(basis),
            m_i=G.n - len(basis),
            A_indices=tuple(A),
            N_indices=tuple(N),
            B_coset_reps=tuple(reps),
            orbit_id=orbit_of[k],
        ))
    G._cache["strata"] = strata
    return strata


def _contains(big, small) -> bool:
    return rank_rows(list(big) + list(small)) == len(big)


def _meets(a, b) -> bool:
    """Whether two subspaces (given by independent rows) share a nonzero vector."""
    return rank_rows(list(a) + list(b)) < len(a) + len(b)


def poset_length(G: GroupData, strata: Sequence[Stratum]) -> int:
    """Longest strict chain C^n > V_i > ... > {0}, counted in steps."""
    bases = [s.basis.row_list() for s in strata]
    order = sorted(range(len(bases)), key=lambda k: -len(bases[k]))
    depth = {}
    for k in order:
        best = 1  # C^n > V_k
        for j in order:
            if len(bases[j]) > len(bases[k]) and j in depth and _contains(bases[j], bases[k]):
                best = max(best, depth[j] + 1)
        depth[k] = best
    return 1 + max(depth.values(), default=0)


def symplectic_forms(G: GroupData) -> list[list[list[CycNumber]]]:
    """Basis of G-invariant alternating bilinear forms, as n x n matrices J with g^T J g = J."""
    n = G.n
    zero, one = _zero_one(G)
    pairs = [(p, q) for p in range(n) for q in range(p + 1, n)]
    eqs = []
    for s in G.generator_indices:
        g = G.elements[s]
        for i in range(n):
            for j in range(i + 1, n):
                row = []
                for p, q in pairs:
                    c = g[p, i] * g[q, j] - g[q, i] * g[p, j]
                    if (i, j) == (p, q):
                        c = c - 1
                    row.append(c)
                eqs.append(row)
        # keep the system small between generators
        eqs = row_space_basis(eqs)
    sols = nullspace_rows(eqs, len(pairs), zero, one) if eqs else [
        [one if a == b else zero for b in range(len(pairs))] for a in range(len(pairs))
    ]
    forms = []
    for v in sols:
        J = [[zero] * n for _ in range(n)]
        for (p, q), c in zip(pairs, v):
            J[p][q] = c
            J[q][p] = -c
        forms.append(J)
    return forms


def _combination_weights(count: int, trial: int) -> list[int]:
    return [((trial + 1) * (k + 2) * 7 + 3 * k * k + trial) % 7 - 3 for k in range(count)]


def symplectic_status(G: GroupData) -> str:
    """``yes`` if a nondegenerate invariant alternating form is found, ``no`` if none exists."""
    cached = G._cache.get("sp_status")
    if cached is not None:
        return cached
    status = "no"
    if G.n % 2 == 0:
        forms = symplectic_forms(G)
        if forms:
            status = "indeterminate"
            candidates = list(forms)
            for t in range(16):
                w = _combination_weights(len(forms), t)
                J = [[sum((f[i][j] * c for f, c in zip(forms, w) if c), forms[0][i][j] * 0)
                      for j in range(G.n)] for i in range(G.n)]
                candidates.append(J)
            if any(det_rows(J) != 0 for J in candidates):
                status = "yes"
    G._cache["sp_status"] = status
    return status


def stratification_report(G: GroupData) -> StratificationReport:
    strata = enumerate_strata(G)
    orbits: dict[int, list[int]] = {}
    for k, s in enumerate(strata):
        orbits.setdefault(s.orbit_id, []).append(k)
    isolated = True
    for a in range(len(strata)):
        for b in range(a + 1, len(strata)):
            if _meets(strata[a].basis.row_list(), strata[b].basis.row_list()):
                isolated = False
    su_ok = all(
        (G.elements[s].conj_transpose() @ G.elements[s]).is_identity() and G.elements[s].det() == 1
        for s in G.generator_indices
    )
    return StratificationReport(
        strata=tuple(strata),
        orbits=tuple(tuple(orbits[k]) for k in sorted(orbits)),
        length=poset_length(G, strata),
        isolated=isolated,
        su_ok=su_ok,
        sp_status=symplectic_status(G),
    )


def free_action_ok(G: GroupData, s: Stratum) -> bool:
    """Every nontrivial a in A fixes exactly V_i, i.e. A acts freely off V_i."""
    key = s.key
    return all(subspace_key(fixed_subspace(G, a)) == key for a in s.A_indices if a != 0)


def validate_hypotheses(G: GroupData, report: StratificationReport) -> list[Finding]:
    findings = []
    if report.isolated:
        findings.append(Finding("IsolatedOK", True, f"length {report.length}"))
    else:
        findings.append(Finding("IsolatedFail", False, f"length {report.length}"))
    for k, s in enumerate(report.strata):
        if free_action_ok(G, s):
            findings.append(Finding("FreeActionOK", True, f"stratum {k}"))
        else:
            findings.append(Finding("FreeActionFail", False, f"stratum {k}"))
    small = [k for k, s in enumerate(report.strata) if s.m_i < 2]
    if small:
        findings.append(Finding("MiDimensionFail", False, "strata " + ",".join(map(str, small))))
    else:
        findings.append(Finding("MiDimensionOK", True))
    findings.append(Finding("SUOK" if report.su_ok else "SUFail", report.su_ok))
    sp = {"yes": "SpYes", "no": "SpNo", "indeterminate": "SpIndeterminate"}[report.sp_status]
    # Sp membership is informational; only the sp2 model requires it
    findings.append(Finding(sp, True, report.sp_status))
    return findings


def all_ok(findings: Sequence[Finding]) -> bool:
    return all(f.ok for f in findings)
