import math
from fractions import Fraction

import numpy as np
import pytest

import oracles
from horolib import spaces as sp
from horolib.errors import DimensionMismatch, MalformedStarCoordinate, OutOfDomain
from horolib.sampling import random_batch, random_point

LOG3 = 1.0986122886681098  # oracle: 2 atanh(1/2)
DISC_03_06 = 0.7672551527136672  # oracle: disc_distance(0.3, 0.6)


def test_domain_checks():
    assert sp.as_point(sp.disc(), 0.5) == 0.5
    with pytest.raises(OutOfDomain):
        sp.as_point(sp.ball(2), [1.0, 0])
    assert sp.as_point(sp.star_graph(), (3, 3.0)).offset == 3.0
    with pytest.raises(MalformedStarCoordinate):
        sp.as_point(sp.star_graph(), (3, 3.1))
    with pytest.raises(DimensionMismatch):
        sp.as_point(sp.ball(2), [0.1, 0.1, 0.1])


def test_frozen_distances():
    assert sp.distance(sp.disc(), 0, 0.5) == pytest.approx(LOG3, abs=1e-15)
    assert sp.distance(sp.disc(), 0.3, 0.6) == pytest.approx(DISC_03_06, abs=1e-15)
    assert sp.distance(sp.ball(2), [0, 0], [0.5, 0]) == pytest.approx(LOG3, abs=1e-15)
    d = sp.distance(sp.product(sp.disc(), sp.disc()), (0, 0), (0.5, 0.3))
    assert d == pytest.approx(LOG3, abs=1e-15)


def test_frozen_values_match_oracle():
    assert float(oracles.disc_distance(0, 0.5)) == LOG3
    assert float(oracles.disc_distance(0.3, 0.6)) == DISC_03_06


@pytest.mark.parametrize(
    "z,w",
    [(0.3 + 0.6j, -0.2 + 0.1j), (0.999999 + 0j, -0.5j), (1e-8, 0.99999999), (0.7j, 0.7j + 1e-9)],
)
def test_disc_against_oracle(z, w):
    assert sp.distance(sp.disc(), z, w) == pytest.approx(float(oracles.disc_distance(z, w)), abs=1e-13)


def test_ball_against_oracle():
    rng = np.random.default_rng(3)
    B = sp.ball(3)
    for _ in range(50):
        z, w = random_point(B, rng, 8.0), random_point(B, rng, 8.0)
        assert sp.distance(B, z, w) == pytest.approx(float(oracles.ball_distance(z, w)), abs=1e-12)


def test_polydisc_is_max():
    z, w = [0.5, 0.1j], [0, 0.9]
    assert sp.distance(sp.polydisc(2), z, w) == pytest.approx(float(oracles.polydisc_distance(z, w)), abs=1e-14)


def test_star_graph_exact():
    S = sp.star_graph()
    assert sp.distance(S, (3, Fraction(1, 3)), (3, Fraction(5, 2))) == Fraction(13, 6)
    assert sp.distance(S, (2, 1), (5, 4)) == 5
    assert sp.distance(S, (2, 0), (5, 4)) == 4


def test_sup_rn_and_real_line():
    assert sp.distance(sp.sup_rn(2), [1, 0], [0, 3]) == 3
    assert sp.distance(sp.real_line(), -1.5, 2) == 3.5


def test_rho_forms_agree():
    rng = np.random.default_rng(0)
    for _ in range(200):
        z, w = (random_point(sp.disc(), rng, 12.0) for _ in range(2))
        assert sp.rho_log_form(z, w) == pytest.approx(sp.rho_atanh_form(z, w), abs=1e-12)


def test_batch_matches_scalar_and_is_symmetric():
    rng = np.random.default_rng(1)
    for space in (sp.disc(), sp.ball(2), sp.polydisc(3), sp.sup_rn(2)):
        X, Y = random_batch(space, rng, 200), random_batch(space, rng, 200)
        d = sp.distance_batch(space, X, Y)
        assert np.array_equal(d, sp.distance_batch(space, Y, X))
        for i in range(0, 200, 37):
            assert d[i] == pytest.approx(sp.distance(space, X[i], Y[i]), abs=1e-13)


def test_complement_is_accurate_near_boundary():
    z = 1 - 1e-12
    assert sp.complement(sp.disc(), z) == pytest.approx(2e-12 - 1e-24, rel=1e-12)


def test_basepoint_canonical():
    assert sp.disc(basepoint=0) == sp.disc()
    assert sp.distance(sp.disc(basepoint=0.5), 0.5, 0.5) == 0.0
    assert sp.disc(basepoint=0.5).basepoint == 0.5


def test_boundary_ray_points():
    ray = sp.boundary_ray(sp.disc(), sp.disc_boundary(1))
    assert ray(2.5) == pytest.approx(math.tanh(1.25), abs=1e-16)
    assert ray(2.5) == pytest.approx(0.848284, abs=1e-6)
    assert np.all(sp.boundary_ray(sp.ball(2), sp.ball_boundary([1, 0]))(0) == 0)
    R = sp.boundary_ray(sp.sup_rn(2), sp.sign_boundary((0, 1), ("+", "-")))
    assert np.array_equal(R(1), [1, -1])
    assert sp.distance(sp.sup_rn(2), R(1), R(3)) == 2


def test_connect_endpoints():
    g = sp.connect(sp.real_line(), 1, 4)
    assert g(1.5) == pytest.approx(2.5)
    g = sp.connect(sp.disc(), 0, 0.5)
    assert g(0) == 0
    assert g(LOG3) == pytest.approx(0.5, abs=1e-15)
