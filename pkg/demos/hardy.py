"""Quadrature check of a weighted Hardy inequality, exact and randomized."""

import numpy as np

from qale.analytic import cm_norm_probe, hardy_check, random_hardy_pair

res = hardy_check(lambda t: t**3, lambda t: t**-2.0, "finite")
print(f"rho = t^3, phi = t^-2: lhs {res.lhs:.6f} (exact 1/2), rhs {res.rhs:.6f} (exact 2)")

rng = np.random.default_rng(3)
for mode in ("finite", "infinite"):
    rho, phi = random_hardy_pair(rng, mode)
    r = hardy_check(rho, phi, mode)
    print(f"random {mode} pair: lhs/rhs = {r.lhs / r.rhs:.4f}, ok = {r.ok}")

norms, stable = cm_norm_probe(1, 1, 3, 0)
print("operator norm across resolutions:", [round(x, 4) for x in norms], "stable" if stable else "unstable")
