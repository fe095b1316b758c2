import pytest

from qale.catalog import named_group
from qale.group import close_group, conjugacy_classes
from qale.linalg import CycMatrix
from qale.mckay import (
    CohomTable,
    ale_invariant_betti,
    ale_l2_betti,
    ale_tables,
    compact_support_betti,
    crepant_betti,
)
from qale.strata import Stratum, enumerate_strata, stratification_report


def test_crepant_tables(z4, z2z2):
    assert crepant_betti(conjugacy_classes(z4), 3).dims == {0: 1, 2: 2, 4: 1}
    assert crepant_betti(conjugacy_classes(z2z2), 3).dims == {0: 1, 2: 3}
    trivial = close_group([CycMatrix.identity(3)])
    assert crepant_betti(conjugacy_classes(trivial), 3).dims == {0: 1}


def test_ale_invariant_tables(z4, s3):
    assert ale_invariant_betti(enumerate_strata(z4)[0], z4).dims == {0: 1, 2: 1}
    assert ale_invariant_betti(enumerate_strata(s3)[0], s3).dims == {0: 1, 2: 1}
    trivial = close_group([CycMatrix.identity(3)])
    line = Stratum(CycMatrix.from_rows([[1, 0, 0]]), 1, 2, (0,), (0,), (0,), 0)
    assert ale_invariant_betti(line, trivial).dims == {0: 1}


def test_conjugation_can_merge_classes():
    # the block swap exchanges the two order-2 classes of each A-factor in Hilb^2(A_1)
    G = named_group("hilb2-a1")
    for s in enumerate_strata(G):
        inv, plain = ale_tables(s, G)
        assert inv.dims == {0: 1, 2: 1} and plain.dims == {0: 1, 2: 1}


@pytest.mark.parametrize("table,real_dim,expected", [
    ({0: 1, 2: 2, 4: 1}, 6, {2: 1, 4: 2, 6: 1}),
    ({0: 1}, 4, {4: 1}),
    ({0: 1, 2: 1}, 4, {2: 1, 4: 1}),
])
def test_compact_support_reversal(table, real_dim, expected):
    t = CohomTable(table, real_dim)
    assert compact_support_betti(t, real_dim).dims == expected
    assert compact_support_betti(compact_support_betti(t, real_dim), real_dim) == t


@pytest.mark.parametrize("table,expected", [({0: 1, 2: 1}, {2: 1}), ({0: 1}, {}), ({0: 1, 2: 3}, {2: 3})])
def test_ale_l2_drops_degree_zero(table, expected):
    assert ale_l2_betti(CohomTable(table, 4)).dims == expected


def test_table_validation():
    with pytest.raises(ValueError):
        CohomTable({7: 1}, 6)
    with pytest.raises(ValueError):
        CohomTable({2: -1}, 6)
    assert CohomTable({0: 1, 3: 0}, 6) == CohomTable({0: 1}, 6)


def test_table_properties(random_groups, z4, z2z2, s3):
    for G in [z4, z2z2, s3] + random_groups:
        classes = conjugacy_classes(G)
        t = crepant_betti(classes, G.n)
        assert t.total() == len(classes) and t[0] == 1
        report = stratification_report(G)
        for orbit in report.orbits:
            tables = [ale_tables(report.strata[k], G) for k in orbit]
            for inv, plain in tables:
                assert all(inv[d] <= plain[d] for d in plain.dims)
            assert len({inv for inv, _ in tables}) == 1
