from qale.catalog import named_group
from qale.linalg import CycMatrix, intersect, subspace_key
from qale.strata import (
    enumerate_strata,
    fixed_subspace,
    image_basis,
    stratification_report,
    validate_hypotheses,
)


def _codes(G):
    return {f.code for f in validate_hypotheses(G, stratification_report(G))}


def test_z4_single_axis(z4):
    (s,) = enumerate_strata(z4)
    assert s.basis == CycMatrix.from_rows([[1, 0, 0]])
    assert (s.n_i, len(s.A_indices), len(s.N_indices), len(s.B_coset_reps)) == (1, 2, 4, 2)
    g2 = z4.elements[s.A_indices[1]]
    assert g2 == CycMatrix.diag([1, -1, -1])


def test_z2z2_three_axes_three_orbits(z2z2):
    strata = enumerate_strata(z2z2)
    assert len(strata) == 3
    assert all((len(s.A_indices), len(s.B_coset_reps)) == (2, 2) for s in strata)
    assert len(stratification_report(z2z2).orbits) == 3


def test_s3_planes_in_one_orbit(s3):
    strata = enumerate_strata(s3)
    assert [s.n_i for s in strata] == [2, 2, 2]
    assert all((len(s.A_indices), len(s.B_coset_reps)) == (2, 1) for s in strata)
    rep = stratification_report(s3)
    assert len(rep.orbits) == 1 and rep.length == 2 and rep.isolated


def test_reports_for_small_examples(z4, free_z5):
    r = stratification_report(z4)
    assert (r.length, r.isolated, len(r.orbits)) == (2, True, 1)
    r = stratification_report(free_z5)
    assert (r.strata, r.length, r.isolated, r.orbits) == ((), 1, True, ())
    assert all(fixed_subspace(free_z5, i) == [] for i in range(1, len(free_z5)))


def test_hypothesis_findings(z4, s3):
    assert _codes(z4) == {"IsolatedOK", "FreeActionOK", "MiDimensionOK", "SUOK", "SpNo"}
    assert stratification_report(s3).sp_status == "yes"
    assert "SpYes" in _codes(s3)
    assert all(f.ok for f in validate_hypotheses(s3, stratification_report(s3)))


def test_two_commuting_rotations_are_isolated():
    # Fix(g1) = span(e3, e4) and Fix(g2) = span(e1, e2) meet only in 0
    G = named_group("z3-pair")
    r = stratification_report(G)
    assert len(r.strata) == 2
    assert r.isolated and r.length == 2
    assert r.sp_status == "yes"


def test_stratum_invariants(random_groups, z4, z2z2, s3):
    for G in [z4, z2z2, s3] + random_groups:
        report = stratification_report(G)
        strata = report.strata
        small = len(G) <= 24
        fixed = [fixed_subspace(G, g) for g in range(len(G))] if small else None
        for s in strata:
            basis = s.basis.row_list()
            assert set(s.A_indices) <= set(s.N_indices)
            assert len(s.N_indices) == len(s.A_indices) * len(s.B_coset_reps)
            assert 0 < s.n_i < G.n
            # A is exactly the set of elements whose fixed space contains V
            if small:
                fixing = [g for g in range(len(G))
                          if len(intersect(fixed[g], basis, G.n, G.order_m)) == s.n_i]
                assert fixing == list(s.A_indices)
        for orbit in report.orbits:
            first = strata[orbit[0]]
            for k in orbit[1:]:
                other = strata[k]
                assert (other.n_i, len(other.A_indices), len(other.B_coset_reps)) == \
                       (first.n_i, len(first.A_indices), len(first.B_coset_reps))
                if not small:
                    continue
                target = subspace_key(other.basis.row_list())
                assert any(subspace_key(image_basis(G, g, first.basis.row_list())) == target
                           for g in range(len(G)))
        if report.isolated:
            for a in range(len(strata)):
                for b in range(a + 1, len(strata)):
                    assert not intersect(strata[a].basis.row_list(), strata[b].basis.row_list(),
                                         G.n, G.order_m)
        if not strata:
            assert all(fixed_subspace(G, i) == [] for i in range(1, len(G)))
