"""Distinct boundary points of the complex ball are infinitely far apart.

Along the radial witness towards xi, the detour partial values
u_n = d(0, z^n) + h_eta(z^n) grow without bound unless eta = xi.
"""

import numpy as np

from horolib import detour, horo, spaces as sp

B = sp.ball(2)
xi = np.array([1.0, 0.0])
wb = detour.boundary_witness(B, sp.ball_boundary(xi), t_max=23)

for angle in (0.0, 1e-3, 0.1, 1.0, np.pi / 2):
    eta = np.array([np.cos(angle), np.sin(angle)])
    h = horo.BallBoundary(eta)
    u = [sp.distance(B, [0, 0], z) + h(z) for z in wb.witness]
    print(f"angle {angle:8.4f}: u_n at n = 5, 10, 15, 20, 23 ->", " ".join(f"{u[n]:8.3f}" for n in (5, 10, 15, 20, 23)))

print("\nH(h_xi, h_xi):", detour.detour_cost(detour.boundary_witness(B, sp.ball_boundary(xi)), horo.BallBoundary(xi)))
print("delta(h_xi, h_eta), eta at angle 1:", detour.detour_distance(
    wb, detour.boundary_witness(B, sp.ball_boundary([np.cos(1), np.sin(1)]), t_max=23)))
