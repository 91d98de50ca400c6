"""Zermelo navigation: a wind on a Riemannian sea induces a Randers metric.

Given sea h and wind W with |W|_h < 1, the travel-time norm is the Randers
metric built by ``zermelo_to_randers``.  Two sanity identities: the induced
one-form has |beta|_a = |W|_h, and unit-F vectors satisfy the navigation
equation |y/F - W|_h = 1.
"""

import numpy as np

from finsler.catalog import ZermeloData, zermelo_metric_spec, zermelo_to_randers
from finsler.finsler_metric import finsler_eval
from finsler.geometry_core import ChartDomain, _inverse_spd
from finsler.phi_families import RandersPhi

wind = np.array([0.5, -0.2])
z = ZermeloData(h=lambda x: np.eye(2), W=lambda x: wind, n=2)

a, b = zermelo_to_randers(z, [0.0, 0.0])
print("induced Randers data at the origin:")
print("  a =", np.round(a, 6).tolist())
print("  b =", np.round(b, 6).tolist())
print(f"  |beta|_a = {np.sqrt(b @ _inverse_spd(a) @ b):.12f}"
      f"   |W|_h = {np.linalg.norm(wind):.12f}")

m = zermelo_metric_spec(z, ChartDomain((-1, -1), (1, 1)))
rng = np.random.default_rng(0)
print("\nnavigation equation |y/F - W| = 1:")
for _ in range(4):
    y = rng.normal(size=2)
    F = finsler_eval(m, RandersPhi(), [0, 0], y)
    v = y / F - wind
    print(f"  y = {np.round(y, 3).tolist()}  ->  residual {abs(v @ v - 1):.2e}")
