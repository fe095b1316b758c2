import random
import time

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qale.errors import HypothesisViolated, NotAComplex, WrongDimension
from qale.group import close_group
from qale.homological import (
    QMat,
    RatComplex,
    betti,
    exactness_feasible,
    identity_ladder,
    mv_check_su3,
    mv_tables,
    mv_terms,
    random_ladder,
    verify_ladder,
)
from qale.linalg import CycMatrix


def test_betti_of_acyclic_pair():
    c = RatComplex((0, 1, 1, 0), (QMat.zeros(1, 0), QMat.identity(1), QMat.zeros(0, 1)))
    assert betti(c).dims == {}


def test_betti_of_circle():
    # vertices v0, v1; edges e0 = v1 - v0, e1 = v0 - v1
    d0 = QMat.of([[-1, 1], [1, -1]])
    assert betti(RatComplex((2, 2), (d0,))).dims == {0: 1, 1: 1}


def test_betti_with_zero_maps():
    c = RatComplex((2, 3, 1), (QMat.zeros(3, 2), QMat.zeros(1, 3)))
    assert betti(c).dims == {0: 2, 1: 3, 2: 1}


def test_not_a_complex():
    c = RatComplex((1, 1, 1), (QMat.identity(1), QMat.identity(1)))
    with pytest.raises(NotAComplex):
        betti(c)


def test_shape_mismatch():
    with pytest.raises(WrongDimension):
        RatComplex((1, 2), (QMat.identity(1),))


@pytest.mark.parametrize("seed", range(20))
def test_dual_complex_has_reversed_betti(seed):
    rng = random.Random(seed)
    # d1 d0 = 0 by building d0 from the kernel side: d1 = [A | 0], d0 = [0 ; B]
    a, b, c = rng.randint(0, 3), rng.randint(0, 3), rng.randint(0, 3)
    mid = a + b
    d0 = QMat.of([[0] * a for _ in range(a)] + [[rng.randint(-2, 2) for _ in range(a)] for _ in range(b)], a)
    d1 = QMat.of([[rng.randint(-2, 2) for _ in range(a)] + [0] * b for _ in range(c)], mid)
    cx = RatComplex((a, mid, c), (d0, d1))
    forward, backward = betti(cx), betti(cx.dual())
    assert [forward[k] for k in range(3)] == [backward[2 - k] for k in range(3)]


@pytest.mark.parametrize("dims,expected", [
    ((0, 0, 1, 2, 4), True),
    ((0, 1, 0, 0, 0), False),
    ((1, 1, 0, 0, 0), True),
    ((1, 2, 1), True),
    ((1, 3, 1), False),
])
def test_exactness_examples(dims, expected):
    assert exactness_feasible(dims) is expected


def test_padding_can_break_feasibility():
    # the right end is unconstrained; padding makes it an interior spot
    assert exactness_feasible((2, 1, 0))
    assert not exactness_feasible((0, 2, 1, 0, 0))


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 4), min_size=3, max_size=7))
def test_padding_never_creates_feasibility(dims):
    if not exactness_feasible(dims):
        assert not exactness_feasible([0] + list(dims) + [0])


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 4), min_size=2, max_size=6))
def test_feasible_when_built_from_ranks(ranks):
    # dims[i] = r_{i-1} + r_i is always feasible
    rs = [0] + ranks + [0]
    dims = [rs[i] + rs[i + 1] for i in range(len(rs) - 1)]
    assert exactness_feasible(dims)


def test_identity_ladder():
    assert verify_ladder(*identity_ladder([1, 2, 2, 1, 0]))
    assert verify_ladder(*identity_ladder([2, 3, 3, 2, 1]))


def test_non_injective_fourth_vertical():
    upper, vertical, lower = identity_ladder([1, 1, 1, 1, 1])
    vertical = list(vertical)
    vertical[3] = QMat.zeros(1, 1)
    with pytest.raises(HypothesisViolated) as e:
        verify_ladder(upper, vertical, lower)
    assert "fourth vertical not injective" in e.value.failures


def test_random_ladders():
    rng = random.Random(11)
    start = time.perf_counter()
    results = [verify_ladder(*random_ladder(rng)) for _ in range(300)]
    assert all(results)
    assert time.perf_counter() - start < 10


def test_random_ladder_dimensions_are_bounded():
    rng = random.Random(5)
    for _ in range(50):
        _, vertical, _ = random_ladder(rng, max_dim=4)
        assert all(v.rows <= 4 and v.cols <= 4 for v in vertical)


def test_mayer_vietoris_examples(z4, z2z2, free_z5):
    trivial = close_group([CycMatrix.identity(3)])
    for G in (z4, z2z2, free_z5, trivial):
        assert mv_check_su3(G)
    t = mv_tables(z4)
    assert [mv_terms(t, k) for k in range(1, 6)] == [
        [1, 1, 0, 0, 0], [0, 0, 1, 2, 1], [3, 1, 0, 0, 1], [1, 1, 1, 1, 0], [1, 0, 0, 1, 1],
    ]


def test_mayer_vietoris_needs_n3(s3):
    with pytest.raises(WrongDimension):
        mv_check_su3(s3)
