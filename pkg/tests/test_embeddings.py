import cmath

import numpy as np
import pytest

from horolib import detour, embeddings, horo
from horolib import spaces as sp
from horolib.errors import NotIsometric


def test_identity_is_fixed_point():
    D = sp.disc()
    src = detour.boundary_witness(D, sp.disc_boundary(1j), t_max=10)
    out = detour.transport_under_embedding(embeddings.identity(D), src)
    assert out.h is src.h
    assert out.witness == src.witness


def test_diagonal_pushforward():
    src = detour.boundary_witness(sp.disc(), sp.disc_boundary(1))
    out = detour.transport_under_embedding(embeddings.diagonal(2), src)
    assert isinstance(out.h, horo.ProductComposite)
    assert out.h.J == (0, 1) and out.h.alpha == (0.0, 0.0)
    dec = horo.decompose_product_horofunction(out.space, out.witness)
    assert dec.J == (0, 1) and dec.alpha == pytest.approx((0, 0), abs=1e-6)


def test_unitary_pushforward_pointwise():
    th = 0.7
    U = np.array([[np.cos(th), -np.sin(th)], [np.sin(th), np.cos(th)]]) @ np.diag([1, 1j])
    phi = embeddings.unitary(U)
    assert phi.verify() < 1e-9
    xi = np.array([0.6, 0.8j])
    pushed = phi.push(horo.BallBoundary(xi))
    rng = np.random.default_rng(0)
    for _ in range(20):
        z = rng.normal(size=2) + 1j * rng.normal(size=2)
        z *= 0.9 * rng.uniform() / np.linalg.norm(z)
        assert pushed(U @ z) == pytest.approx(horo.BallBoundary(xi)(z), abs=1e-12)


def test_unitary_rejects_non_unitary():
    with pytest.raises(NotIsometric):
        embeddings.unitary([[1, 0.1], [0, 1]])


def test_mobius_preserves_horofunction_differences():
    phi = embeddings.mobius(0.3 + 0.1j, 0.5)
    phi.verify()
    h = horo.DiscBoundary(cmath.exp(0.4j))
    g = phi.push(h)
    z, w = 0.2 - 0.3j, -0.5j
    assert g(phi(z)) - g(phi(w)) == pytest.approx(h(z) - h(w), abs=1e-12)
    assert g(phi(0)) == 0.0


def test_factor_inclusion():
    phi = embeddings.factor_inclusion(sp.disc(), sp.disc(), 0.4)
    phi.verify()
    src = detour.boundary_witness(sp.disc(), sp.disc_boundary(1), t_max=12)
    out = detour.transport_under_embedding(phi, src)
    assert out.h.J == (0,)
    assert all(z[1] == 0.4 for z in out.witness)


def test_transport_preserves_detour():
    D2 = sp.polydisc(2)
    r = sp.boundary_ray(sp.disc(), sp.disc_boundary(1))
    a = detour.product_busemann(D2, {0: r, 1: r}, (0.0, 2.0))
    b = detour.product_busemann(D2, {0: r, 1: r}, (1.0, 0.0))
    phi = embeddings.diagonal(2, D2)
    v = detour.detour_distance(detour.transport_under_embedding(phi, a), detour.transport_under_embedding(phi, b))
    assert v.value == pytest.approx(detour.detour_distance(a, b).value, abs=2e-6)


def test_broken_map_fails_verification():
    D = sp.disc()
    bad = embeddings.Embedding("squash", D, D, lambda z: 0.5 * z)
    with pytest.raises(NotIsometric):
        bad.verify(pairs=50)
