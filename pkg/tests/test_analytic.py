import numpy as np
import pytest

from qale.analytic import (
    CM_POINTS,
    RadialGrid,
    cm_norm_probe,
    cm_operator,
    hardy_check,
    hardy_suite,
    random_hardy_pair,
    tail_exponent,
)
from qale.errors import HypothesisViolated, ModeMismatch


def cube(t):
    return t**3


def test_closed_form_instance():
    lhs, rhs, ok = hardy_check(cube, lambda t: t**-2.0, "finite", t_max=1e3)
    assert ok
    assert abs(lhs - 0.5) < 1e-4
    assert abs(rhs - 2.0) < 1e-4


def test_closed_form_with_exact_derivative():
    res = hardy_check(cube, lambda t: t**-2.0, "finite", dphi=lambda t: -2 * t**-3.0)
    assert abs(res.rhs - 2.0) < 1e-5 and res.ok


def test_near_extremal_profile():
    # phi = sqrt(G) with G = 1/(2 t^2): both sides diverge at the same rate
    lhs, rhs, ok = hardy_check(cube, lambda t: np.sqrt(0.5 / t**2), "finite")
    assert ok
    assert 0.2 <= lhs / rhs <= 1 + 1e-6 + 1e-4


def test_zero_function():
    lhs, rhs, ok = hardy_check(cube, lambda t: 0 * t, "finite")
    assert (lhs, rhs, ok) == (0.0, 0.0, True)


def test_infinite_mode_closed_form():
    # rho = 1: g = t - 1, phi = (t - 1) / t^2, both sides finite
    res = hardy_check(lambda t: np.ones_like(t), lambda t: (t - 1) / t**2, "infinite", t_max=1e4)
    assert res.ok and res.lhs > 0


def test_mode_mismatch():
    with pytest.raises(ModeMismatch):
        hardy_check(lambda t: t, lambda t: 1 / t, "finite")
    with pytest.raises(ModeMismatch):
        hardy_check(cube, lambda t: (t - 1) / t**3, "infinite")
    with pytest.raises(ModeMismatch):
        hardy_check(lambda t: np.sqrt(t), lambda t: 1 / t, "infinite")


def test_grid_validation():
    with pytest.raises(ValueError):
        RadialGrid(10.0, np.linspace(1, 10, 10))
    with pytest.raises(ValueError):
        RadialGrid(10.0, np.linspace(2, 10, 100))
    g = RadialGrid.geometric(1e3, 201)
    assert g.points[0] == 1.0 and len(g.coarsen().points) == 101
    assert abs(g.integrate(1 / g.points**2) - (1 - 1e-3)) < 1e-3
    with pytest.raises(ValueError):
        RadialGrid.geometric(1e3, 101).coarsen()


def test_tail_exponent_recovers_power():
    t = np.exp(np.linspace(0, np.log(1e3), 500))
    assert abs(tail_exponent(t, 3 * t**-2.5) - 2.5) < 1e-9


@pytest.mark.parametrize("mode", ["finite", "infinite"])
def test_random_pairs_pass(mode):
    rng = np.random.default_rng(1)
    for _ in range(25):
        rho, phi = random_hardy_pair(rng, mode)
        assert hardy_check(rho, phi, mode).ok


@pytest.mark.parametrize("mode", ["finite", "infinite"])
def test_quadrature_is_resolution_stable(mode):
    rng = np.random.default_rng(2)
    for _ in range(10):
        rho, phi = random_hardy_pair(rng, mode)
        a = hardy_check(rho, phi, mode, points=2001)
        b = hardy_check(rho, phi, mode, points=4001)
        assert abs(a.lhs - b.lhs) <= 0.01 * abs(b.lhs) + 1e-12
        assert abs(a.rhs - b.rhs) <= 0.01 * abs(b.rhs) + 1e-12


def test_suite_is_deterministic():
    assert hardy_suite(seed=4, count=5) == hardy_suite(seed=4, count=5)


def test_cm_examples():
    assert cm_norm_probe(1, 1, 3, 0)[1]
    assert cm_norm_probe(2, 2, 1, 0)[1]
    with pytest.raises(HypothesisViolated):
        cm_norm_probe(1, 1, 2, 0)
    with pytest.raises(HypothesisViolated):
        cm_norm_probe(3, 1, 2, 1)


def test_cm_exponential_kernel_norm():
    # for b = 0 the kernel is exp(-c (y - x)), whose norm on the half-line is 1/c
    norms, ok = cm_norm_probe(1, 1, 3, 0, grids=[(1e6, 800), (1e12, 1600)])
    assert ok and abs(norms[-1] - 2.0) < 0.05


def test_cm_all_points_stable():
    for p in CM_POINTS:
        norms, ok = cm_norm_probe(*p)
        assert ok and len(norms) >= 3, p


def test_cm_detects_unbounded_operator():
    # M_1 with a < 2k: the kernel grows like exp(|c| (y - x)) and the norm blows up
    small = np.linalg.norm(cm_operator(1, 1, 1, 0, 1e3, 200), 2)
    large = np.linalg.norm(cm_operator(1, 1, 1, 0, 1e6, 400), 2)
    assert large > 10 * small
