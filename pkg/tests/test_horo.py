import math

import numpy as np
import pytest

import oracles
from horolib import horo
from horolib import spaces as sp
from horolib.errors import GaugeViolation, NotEscaping, Undecided
from horolib.sampling import random_boundary, random_point

LOG_4_3 = 0.2876820724517809  # oracle: log(4/3)
LOG3 = 1.0986122886681098


def test_ball_boundary_frozen():
    h = horo.BallBoundary([1, 0])
    assert h([0, 0.5]) == pytest.approx(LOG_4_3, abs=1e-15)
    assert h([0.5, 0]) == pytest.approx(-LOG3, abs=1e-15)
    assert h([0, 0]) == 0.0


def test_disc_boundary_frozen():
    h = horo.DiscBoundary(1)
    assert h(0.5) == pytest.approx(-LOG3, abs=1e-15)
    assert h(0.3 + 0.6j) == pytest.approx(float(oracles.disc_horofunction(1, 0.3 + 0.6j)), abs=1e-15)


def test_ball_boundary_against_oracle():
    rng = np.random.default_rng(5)
    B = sp.ball(2)
    for _ in range(50):
        xi = random_boundary(B, rng).directions[0]
        z = random_point(B, rng, 10.0)
        ref = float(oracles.ball_horofunction(xi, z))
        assert horo.BallBoundary(xi)(z) == pytest.approx(ref, abs=1e-12)


def test_ball_n1_matches_disc():
    for z in (0.3 + 0.1j, -0.9, 0.5j):
        assert horo.BallBoundary([1j])([z]) == pytest.approx(horo.DiscBoundary(1j)(z), abs=1e-15)


def test_horoball_membership():
    h = horo.BallBoundary([1, 0])
    assert horo.horoball_contains(h, 0, [0.5, 0])
    assert not horo.horoball_contains(h, 0, [0, 0])
    s = horo.SupSign(sp.sup_rn(2), (0,), ("+",), (0.0,))
    assert horo.horoball_contains(s, 1, [0.5, 7])


def test_internal_peak_is_normalised_distance():
    D = sp.disc()
    h = horo.InternalPeak(D, 0.4j)
    assert h(0) == 0.0
    assert h(0.1) == pytest.approx(sp.distance(D, 0.1, 0.4j) - sp.distance(D, 0, 0.4j))


def test_limit_estimate_disc():
    seq = [1 - 10.0**-k for k in range(1, 8)]
    est = horo.horofunction_limit_estimate(sp.disc(), seq, 0.5)
    assert est.converged
    assert est.value == pytest.approx(-LOG3, abs=1e-6)


def test_limit_estimate_constant_basepoint():
    est = horo.horofunction_limit_estimate(sp.disc(), [0, 0, 0], 0.5, K=3)
    assert est.value == pytest.approx(LOG3)
    assert est.spread == 0


def test_star_tips_converge_to_basepoint_distance():
    S = sp.star_graph()
    tips = [(n, n) for n in range(1, 41)]
    est = horo.horofunction_limit_estimate(S, tips, (3, 1.0))
    assert est.values[3:] == (1.0,) * 37
    assert est.converged and est.spread == 0


def test_sup_sign_ignores_other_coordinates():
    s = horo.SupSign(sp.sup_rn(3), (0, 2), ("+", "-"), (0.0, 1.5))
    assert s([2, 100, 0]) == 2.0
    assert s([0, -4, -3]) == pytest.approx(1.5)


def test_gauge_enforced():
    D2 = sp.polydisc(2)
    with pytest.raises(GaugeViolation):
        horo.ProductComposite(D2, (0, 1), (horo.DiscBoundary(1), horo.DiscBoundary(1)), (1.0, 2.0))


def test_product_composite_formula():
    D2 = sp.polydisc(2)
    h = horo.ProductComposite(D2, (0, 1), (horo.DiscBoundary(1), horo.DiscBoundary(1j)), (0.0, 1.0))
    z = [0.2, 0.3j]
    assert h(z) == max(horo.DiscBoundary(1)(0.2), horo.DiscBoundary(1j)(0.3j) - 1.0)


def test_rebased_vanishes_at_new_basepoint():
    h = horo.rebase(horo.DiscBoundary(1), 0.3 - 0.2j)
    assert h(0.3 - 0.2j) == 0.0


def test_decompose_two_offsets():
    seq = [(math.tanh(n / 2), math.tanh((n - 1) / 2)) for n in range(1, 16)]
    dec = horo.decompose_product_horofunction(sp.polydisc(2), seq)
    assert dec.J == (0, 1)
    assert dec.alpha == pytest.approx((0.0, 1.0), abs=1e-6)


def test_decompose_excludes_pinned_factor():
    seq = [(math.tanh(n / 2), 0) for n in range(1, 31)]
    dec = horo.decompose_product_horofunction(sp.polydisc(2), seq)
    assert dec.J == (0,) and dec.excluded == (1,)


def test_decompose_single_factor():
    seq = [(math.tanh(n / 2),) for n in range(1, 16)]
    dec = horo.decompose_product_horofunction(sp.polydisc(1), seq)
    assert dec.J == (0,) and dec.alpha == (0.0,)


def test_decompose_needs_escape():
    with pytest.raises(NotEscaping):
        horo.decompose_product_horofunction(sp.polydisc(2), [(0.1, 0.1), (0.2, 0.2)])


def test_decompose_undecided_carries_values():
    # second factor oscillates around the cutoff
    seq = [(math.tanh(n / 2), math.tanh((n - 10 + (n % 2) * 3) / 2) if n > 12 else 0) for n in range(1, 21)]
    with pytest.raises(Undecided) as e:
        horo.decompose_product_horofunction(sp.polydisc(2), seq)
    assert e.value.values
