import math

import numpy as np
import pytest

import oracles
from horolib import detour, geo, horo
from horolib import spaces as sp
from horolib.errors import RadiusUnreachable

BACKTRACK_DEFECT = 3.6916533809966614  # oracle: rho(.5,.9) + rho(.9,0) - rho(.5,0) = 2 log(19/3)


def test_geodesic_sequence_has_zero_defect():
    seq = [math.tanh(n / 2) for n in range(12)]
    for m in range(12):
        for k in range(m + 1):
            assert abs(geo.almost_geodesic_defect(sp.disc(), seq, m, k)) < 1e-12


def test_backtracking_defect():
    seq = [0, 0.9, 0.5]
    ref = float(oracles.disc_distance(0.5, 0.9) + oracles.disc_distance(0.9, 0) - oracles.disc_distance(0.5, 0))
    assert ref == pytest.approx(BACKTRACK_DEFECT, abs=1e-15)
    assert geo.almost_geodesic_defect(sp.disc(), seq, 2, 1) == pytest.approx(BACKTRACK_DEFECT, abs=1e-13)
    rep = geo.is_almost_geodesic(sp.disc(), seq, 0.1)
    assert not rep.verdict and not rep.monotone and rep.notes


def test_real_line_anchors_are_geodesic():
    assert geo.is_almost_geodesic(sp.real_line(), [0, 1, 2, 3], 1e-9).verdict


def test_star_tips_are_not_geodesic():
    rep = geo.is_almost_geodesic(sp.star_graph(), [(1, 1), (2, 2), (3, 3)], 0.1)
    assert not rep.verdict
    assert rep.sup == 4  # d(y2, y1) + d(y1, y0) - d(y2, y0) = 5 + 2 - 3


def test_defect_index_checks():
    with pytest.raises(IndexError):
        geo.almost_geodesic_defect(sp.real_line(), [0, 1], 0, 1)


def test_induced_ray_real_line():
    ray = geo.induced_ray(sp.real_line(), [1, 4])
    assert ray(1.5) == pytest.approx(2.5)
    ray = geo.induced_ray(sp.real_line(), [0, 2, 5])
    assert ray(3) == pytest.approx(3)
    assert ray.breakpoints == (0.0, 2.0, 5.0)


def test_induced_ray_disc_endpoints():
    ray = geo.induced_ray(sp.disc(), [0, 0.5])
    assert ray(0) == 0
    assert ray(math.log(3)) == pytest.approx(0.5, abs=1e-15)


def test_radius_inversion_disc():
    ray = sp.boundary_ray(sp.disc(), sp.disc_boundary(1))
    t, x = geo.ray_point_at_radius(ray, 2.5)
    assert t == pytest.approx(2.5, abs=1e-10)
    assert x == pytest.approx(0.848284, abs=1e-6)
    t, x = geo.ray_point_at_radius(ray, 0)
    assert t == 0 and x == 0


def test_radius_inversion_induced():
    ray = geo.induced_ray(sp.real_line(), [0, 2, 5])
    t, x = geo.ray_point_at_radius(ray, 4)
    assert t == pytest.approx(4) and x == pytest.approx(4)


def test_radius_inversion_product_ray_is_monotone():
    wb = detour.product_busemann(
        sp.product(sp.disc(), sp.ball(2)),
        {0: sp.boundary_ray(sp.disc(), sp.disc_boundary(1)), 1: sp.boundary_ray(sp.ball(2), sp.ball_boundary([0, 1]))},
        (0.0, 1.0),
        n_max=12,
    )
    ray = geo.induced_ray(wb.space, wb.witness)
    prev = -1.0
    for beta in np.linspace(0, 10, 21):
        t, x = geo.ray_point_at_radius(ray, float(beta))
        assert abs(sp.distance(wb.space, x, ray.origin) - beta) <= 1e-10
        assert t >= prev
        prev = t


def test_radius_beyond_induced_ray():
    ray = geo.induced_ray(sp.real_line(), [0, 2])
    with pytest.raises(RadiusUnreachable):
        geo.ray_point_at_radius(ray, 3)


def test_busemann_from_ray_matches_closed_form():
    B = sp.ball(2)
    xi = np.array([0.6, 0.8j])
    ray = sp.boundary_ray(B, sp.ball_boundary(xi))
    z = [0.2 - 0.1j, 0.3]
    est = geo.busemann_from_ray(B, ray, z, [5, 8, 11, 14, 17])
    assert est.value == pytest.approx(horo.BallBoundary(xi)(z), abs=1e-6)
    assert geo.busemann_from_ray(B, ray, [0, 0], [5, 8, 11]).value == 0


def test_busemann_from_sup_ray():
    R2 = sp.sup_rn(2)
    ray = sp.boundary_ray(R2, sp.sign_boundary((0,), ("+",)))
    assert geo.busemann_from_ray(R2, ray, [1, 0], [10, 20, 30]).value == -1
