"""Quadrature checks of one-dimensional Hardy inequalities and of the radial
integral operators used on cones.

Everything lives on the half-line [1, t_max]; grids are geometric, so the
natural variable is x = log t and integrals are trapezoid sums in x.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Sequence

import numpy as np
from scipy.integrate import cumulative_trapezoid, trapezoid
from scipy.interpolate import PchipInterpolator

from .errors import HypothesisViolated, ModeMismatch

Func = Callable[[np.ndarray], np.ndarray]

REL_TOL = 1e-6
# fitted exponents within this of 1 count as the non-integrable borderline t^-1
EXP_MARGIN = 1e-6


@dataclass(frozen=True)
class RadialGrid:
    t_max: float
    points: np.ndarray
    t_min: float = 1.0
    scheme: str = "trapezoid"

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if len(pts) < 64:
            raise ValueError(f"a radial grid needs at least 64 points, got {len(pts)}")
        if np.any(np.diff(pts) <= 0):
            raise ValueError("grid points must be strictly increasing")
        if pts[0] != 1.0 or self.t_min != 1.0:
            raise ValueError("grid must start at t = 1")
        object.__setattr__(self, "points", pts)

    @classmethod
    def geometric(cls, t_max: float = 1e3, n: int = 4001) -> "RadialGrid":
        pts = np.exp(np.linspace(0.0, math.log(t_max), n))
        pts[0] = 1.0
        return cls(float(t_max), pts)

    @property
    def x(self) -> np.ndarray:
        return np.log(self.points)

    def integrate(self, f: np.ndarray) -> float:
        """Integral of f(t) dt over [1, t_max]."""
        return float(trapezoid(f * self.points, self.x))

    def coarsen(self) -> "RadialGrid":
        return RadialGrid(self.t_max, self.points[::2] if len(self.points) % 2 else
                          np.append(self.points[:-1:2], self.points[-1]))


def tail_exponent(t: np.ndarray, f: np.ndarray, decades: float = 1.0) -> float:
    """Least-squares q with f ~ C t^-q over the last ``decades`` of the grid."""
    mask = (t >= t[-1] / 10 ** decades) & (f > 0)
    if mask.sum() < 4:
        return math.nan
    slope = np.polyfit(np.log(t[mask]), np.log(f[mask]), 1)[0]
    return float(-slope)


def _power_tail(t: np.ndarray, f: np.ndarray) -> tuple[float, bool]:
    """Estimated integral of f beyond t[-1] under a power-law fit; flag says whether it converges."""
    q = tail_exponent(t, np.abs(f))
    if not math.isfinite(q):
        return 0.0, True
    if abs(f[-1]) == 0:
        return 0.0, True
    if q <= 1.05:
        return 0.0, False
    return float(t[-1] * abs(f[-1]) / (q - 1)), True


def _derivative(grid: RadialGrid, phi: np.ndarray) -> np.ndarray:
    return np.gradient(phi, grid.x, edge_order=2) / grid.points


@dataclass(frozen=True)
class HardyResult:
    lhs: float
    rhs: float
    ok: bool
    allowance: float = 0.0

    def __iter__(self) -> Iterator:
        return iter((self.lhs, self.rhs, self.ok))


def _hardy_terms(grid: RadialGrid, rho: Func, phi: Func, dphi: Func | None, mode: str):
    t = grid.points
    r = np.asarray(rho(t), dtype=float)
    p = np.asarray(phi(t), dtype=float)
    dp = np.asarray(dphi(t), dtype=float) if dphi is not None else _derivative(grid, p)
    inv = 1.0 / r
    if mode == "finite":
        tail, _ = _power_tail(t, inv)
        # G(t) = int_t^tmax + tail, accumulated from the right to avoid cancellation
        rev = cumulative_trapezoid((inv * t)[::-1], -grid.x[::-1], initial=0.0)
        G = rev[::-1] + tail
        ratio = p / G
    else:
        G = cumulative_trapezoid(inv * t, grid.x, initial=0.0)
        ratio = np.empty_like(p)
        ratio[1:] = p[1:] / G[1:]
        # phi(1) = g(1) = 0: the quotient tends to phi'(1) rho(1)
        ratio[0] = dp[0] * r[0]
    lhs_f = 0.25 * ratio**2 * inv
    rhs_f = dp**2 * r
    lhs_tail, lhs_conv = _power_tail(t, lhs_f)
    rhs_tail, rhs_conv = _power_tail(t, rhs_f)
    lhs = grid.integrate(lhs_f)
    rhs = grid.integrate(rhs_f)
    if lhs_conv and rhs_conv:
        lhs += lhs_tail
        rhs += rhs_tail
    return lhs, rhs, lhs_tail + rhs_tail


def hardy_check(rho: Func, phi: Func, mode: str, dphi: Func | None = None,
                t_max: float = 1e3, points: int = 4001, tol: float = REL_TOL) -> HardyResult:
    """Quadrature check of (1/4) int (G'/G)^2 phi^2 rho <= int phi'^2 rho.

    ``mode="finite"`` uses G(t) = int_t^oo dtau/rho and needs 1/rho integrable;
    ``mode="infinite"`` uses g(t) = int_1^t dtau/rho and needs phi(1) = 0.
    """
    if mode not in ("finite", "infinite"):
        raise ValueError(f"mode must be 'finite' or 'infinite', got {mode!r}")
    grid = RadialGrid.geometric(t_max, points)
    t = grid.points
    q = tail_exponent(t, 1.0 / np.asarray(rho(t), dtype=float))
    if mode == "finite" and not q > 1.0 + EXP_MARGIN:
        raise ModeMismatch(f"1/rho decays like t^-{q:.3g}; finite mode needs an integrable tail")
    if mode == "infinite" and q > 1.0 + EXP_MARGIN:
        raise ModeMismatch(f"1/rho decays like t^-{q:.3g}; infinite mode needs a divergent tail")
    phi0 = float(np.asarray(phi(np.array([1.0])))[0])
    if mode == "infinite" and abs(phi0) > 1e-12:
        raise ModeMismatch(f"infinite mode needs phi(1) = 0, got {phi0:.3g}")

    lhs, rhs, tails = _hardy_terms(grid, rho, phi, dphi, mode)
    lhs2, rhs2, _ = _hardy_terms(grid.coarsen(), rho, phi, dphi, mode)
    # Richardson: halving h quadruples the trapezoid error
    allowance = (abs(lhs - lhs2) + abs(rhs - rhs2)) / 3 + 0.1 * tails
    ok = lhs <= rhs * (1 + tol) + allowance
    return HardyResult(lhs, rhs, bool(ok), allowance)


# -- random admissible pairs --------------------------------------------------

def _bounded_spline(rng: np.random.Generator, x_end: float, amp: float) -> PchipInterpolator:
    """Monotone cubic interpolant in x = log t with random knots; stays within [-amp, amp]."""
    knots = np.sort(rng.uniform(0.0, x_end, size=rng.integers(3, 8)))
    knots = np.unique(np.concatenate([[0.0], knots, [x_end]]))
    vals = rng.uniform(-amp, amp, size=len(knots))
    return PchipInterpolator(knots, vals, extrapolate=True)


def _frozen(s: PchipInterpolator, x_end: float) -> Callable[[np.ndarray], np.ndarray]:
    end = float(s(x_end))
    return lambda x: np.where(x < x_end, s(np.minimum(x, x_end)), end)


def random_hardy_pair(rng: np.random.Generator, mode: str, t_max: float = 1e3):
    """Random (rho, phi) meeting the preconditions of ``mode``.

    rho = t^p exp(S1(log t)) and phi = S2(log t) t^-q, with S1, S2 random shape-preserving
    cubic interpolants that are frozen one decade before t_max so tails are exact powers.
    In infinite mode phi carries an extra factor (1 - exp(-c log t)) to vanish at 1.
    """
    x_end = math.log(t_max) - math.log(10.0)
    s1 = _frozen(_bounded_spline(rng, x_end, 1.0), x_end)
    s2 = _frozen(_bounded_spline(rng, x_end, 2.0), x_end)
    if mode == "finite":
        p = rng.uniform(1.5, 4.0)
    else:
        p = rng.uniform(-1.0, 0.8)
    q = (p - 1) / 2 + rng.uniform(0.3, 1.5)
    c = rng.uniform(0.5, 3.0)
    shift = 2.5  # keep the second spline away from zero so phi is not trivially small

    def rho(t):
        x = np.log(t)
        return t**p * np.exp(s1(x))

    if mode == "finite":
        def phi(t):
            x = np.log(t)
            return (s2(x) + shift) * t**-q
    else:
        def phi(t):
            x = np.log(t)
            return (1 - np.exp(-c * x)) * (s2(x) + shift) * t**-q
    return rho, phi


def hardy_suite(seed: int = 0, count: int = 100, t_max: float = 1e3) -> dict[str, tuple[int, int]]:
    rng = np.random.default_rng(seed)
    out = {}
    for mode in ("finite", "infinite"):
        passed = 0
        for _ in range(count):
            rho, phi = random_hardy_pair(rng, mode, t_max)
            passed += hardy_check(rho, phi, mode, t_max=t_max).ok
        out[mode] = (passed, count)
    return out


# -- radial integral operators ------------------------------------------------

DEFAULT_RESOLUTIONS: tuple[tuple[float, int], ...] = ((1e3, 300), (1e5, 600), (1e7, 1200))


def _case_region(case: int, k: int, a: Fraction, b: Fraction) -> bool:
    if case == 1:
        return a > 2 * k
    if case == 2:
        return a < 2 * k
    if case == 3:
        return a == 2 * k and b < 1
    if case == 4:
        return a == 2 * k and b > 1
    raise ValueError(f"case must be 1..4, got {case}")


def _power_norm(A: np.ndarray, iters: int = 500, rtol: float = 1e-10) -> float:
    v = np.ones(A.shape[1]) / math.sqrt(A.shape[1])
    est = 0.0
    for _ in range(iters):
        w = A.T @ (A @ v)
        nw = float(np.linalg.norm(w))
        if nw == 0:
            return 0.0
        v = w / nw
        new = math.sqrt(nw)
        if abs(new - est) <= rtol * new:
            return new
        est = new
    return est


def cm_operator(case: int, k: int, a, b, t_max: float, n: int) -> np.ndarray:
    """Nystrom matrix of M_k or m_k, conjugated to unweighted L^2 in x = log t.

    Input space L^2(r^{a-1}(1+log r)^b dr); output weight r^{a-3}(1+log r)^{b'}
    with b' = b in cases 1-2 and b - 2 in cases 3-4.  After substituting
    u(x) = v(e^x) sqrt(w_in e^x) the kernel becomes
    exp(-c|y - x|) (1+x)^{b'/2} (1+y)^{-b/2} with c = a/2 - k.
    """
    a, b = float(a), float(b)
    x = np.linspace(0.0, math.log(t_max), n)
    w = np.full(n, x[1] - x[0])
    w[0] = w[-1] = w[0] / 2
    c = a / 2 - k
    b_out = b if case in (1, 2) else b - 2
    X, Y = np.meshgrid(x, x, indexing="ij")
    if case in (1, 4):
        mask = Y >= X  # M_k integrates over s > t
        core = np.exp(-c * (Y - X))
    else:
        mask = Y <= X
        core = np.exp(c * (X - Y))
    K = np.where(mask, core, 0.0) * (1 + X) ** (b_out / 2) * (1 + Y) ** (-b / 2)
    sw = np.sqrt(w)
    return sw[:, None] * K * sw[None, :]


def cm_norm_probe(case: int, k: int, a, b,
                  grids: Sequence[tuple[float, int]] = DEFAULT_RESOLUTIONS) -> tuple[list[float], bool]:
    """Operator-norm estimates at increasing resolutions; ok when they stay bounded."""
    a, b = Fraction(a), Fraction(b)
    if not _case_region(case, k, a, b):
        raise HypothesisViolated([f"(k, a, b) = ({k}, {a}, {b}) outside case {case}"])
    if len(grids) < 2:
        raise ValueError("need at least two resolutions")
    norms = [_power_norm(cm_operator(case, k, a, b, t_max, n)) for t_max, n in grids]
    ok = all(math.isfinite(v) for v in norms) and norms[-1] <= 1.5 * norms[0]
    return norms, bool(ok)


CM_POINTS: tuple[tuple[int, int, Fraction, Fraction], ...] = tuple(
    (case, k, Fraction(a), Fraction(b)) for case, k, a, b in [
        (1, 1, 3, 0), (1, 2, 5, 1), (1, 1, "5/2", -1),
        (2, 2, 1, 0), (2, 1, 1, "1/2"), (2, 3, 4, -1),
        (3, 1, 2, 0), (3, 2, 4, -1), (3, 1, 2, "1/2"),
        (4, 1, 2, 2), (4, 2, 4, 3), (4, 1, 2, "3/2"),
    ]
)


def cm_suite(points=CM_POINTS) -> tuple[int, int]:
    passed = sum(cm_norm_probe(*p)[1] for p in points)
    return passed, len(points)
