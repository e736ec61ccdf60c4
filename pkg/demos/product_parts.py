"""Detour distances between Busemann points of the bidisc that share factors.

Points with offsets alpha and beta sit in one part; their detour distance
is the variation norm of alpha - beta. The table compares the two.
"""

import itertools

import numpy as np

from horolib import detour, spaces as sp

D2 = sp.polydisc(2)
ray = sp.boundary_ray(sp.disc(), sp.disc_boundary(1))
offsets = [(0.0, 0.0), (0.0, 1.0), (0.0, 2.5), (1.0, 0.0), (3.0, 0.0)]
points = {a: detour.product_busemann(D2, {0: ray, 1: ray}, a) for a in offsets}

print(f"{'alpha':>12} {'beta':>12} {'delta':>12} {'var norm':>10}")
for a, b in itertools.combinations(offsets, 2):
    d = detour.detour_distance(points[a], points[b])
    v = detour.variation_norm(np.subtract(a, b))
    print(f"{str(a):>12} {str(b):>12} {d.value:12.9f} {v:10.6f}")

# a different boundary point in the second factor lands in another part
other = detour.product_busemann(D2, {0: ray, 1: sp.boundary_ray(sp.disc(), sp.disc_boundary(-1))}, (0.0, 0.0))
print("\nchanging a factor's boundary point:", detour.detour_distance(points[(0.0, 0.0)], other))
print("part dimension of a 2-factor point:", detour.part_dimension(points[(0.0, 1.0)].h))
