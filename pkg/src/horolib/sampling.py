"""Seeded random points, boundary points and batches for the property suites."""

import math

import numpy as np

from . import spaces as sp

# half-width of the box used for real-line and sup-Rn samples
REAL_BOX = 10.0
# star-graph samples use edges 1..STAR_EDGES
STAR_EDGES = 20


def _unit_complex_vector(rng, n):
    v = rng.normal(size=n) + 1j * rng.normal(size=n)
    return v / np.linalg.norm(v)


def random_point(space, rng, max_radius=None):
    """Random point of ``space``.

    Without ``max_radius`` the sample is uniform on the Euclidean model
    (area/volume measure for the disc and ball, a box for real kinds).
    With ``max_radius`` the distance to the origin is drawn uniformly
    from ``[0, max_radius]``, which keeps coordinates well conditioned.
    """
    kind = space.kind
    if kind == "product":
        return tuple(random_point(f, rng, max_radius) for f in space.factors)
    if kind == "real_line":
        box = REAL_BOX if max_radius is None else max_radius
        return float(rng.uniform(-box, box))
    if kind == "sup_rn":
        box = REAL_BOX if max_radius is None else max_radius
        return sp.as_point(space, rng.uniform(-box, box, size=space.dim))
    if kind == "disc":
        theta = rng.uniform(0, 2 * math.pi)
        if max_radius is None:
            r = math.sqrt(rng.uniform())
        else:
            r = math.tanh(rng.uniform(0, max_radius) / 2)
        return sp.as_point(space, r * complex(math.cos(theta), math.sin(theta)))
    if kind == "ball":
        v = _unit_complex_vector(rng, space.dim)
        if max_radius is None:
            r = rng.uniform() ** (1 / (2 * space.dim))
        else:
            r = math.tanh(rng.uniform(0, max_radius) / 2)
        return sp.as_point(space, r * v)
    if kind == "polydisc":
        return sp.as_point(space, [random_point(sp.disc(), rng, max_radius) for _ in range(space.dim)])
    if kind == "star":
        k = int(rng.integers(1, STAR_EDGES + 1))
        top = k if max_radius is None else min(k, max_radius)
        return sp.StarPoint(k, float(rng.uniform(0, top)))
    raise AssertionError(kind)


def random_boundary(space, rng):
    """Random boundary point of a non-product space."""
    kind = space.kind
    if kind == "disc":
        theta = rng.uniform(0, 2 * math.pi)
        return sp.disc_boundary(complex(math.cos(theta), math.sin(theta)))
    if kind == "ball":
        return sp.ball_boundary(_unit_complex_vector(rng, space.dim))
    if kind == "real_line":
        return sp.sign_boundary((0,), (rng.choice([1, -1]),))
    if kind in ("sup_rn", "polydisc"):
        size = int(rng.integers(1, space.dim + 1))
        J = tuple(sorted(rng.choice(space.dim, size=size, replace=False).tolist()))
        if kind == "sup_rn":
            return sp.sign_boundary(J, rng.choice([1, -1], size=size).tolist())
        phases = rng.uniform(0, 2 * math.pi, size=size)
        return sp.polydisc_boundary(J, [complex(math.cos(a), math.sin(a)) for a in phases])
    raise sp.UnsupportedSpace(f"no random boundary points for {space}")


def random_batch(space, rng, size):
    """``size`` points of ``space`` in the batch layout of :func:`spaces.distance_batch`."""
    kind = space.kind
    if kind == "product":
        return tuple(random_batch(f, rng, size) for f in space.factors)
    if kind == "real_line":
        return rng.uniform(-REAL_BOX, REAL_BOX, size=size)
    if kind == "sup_rn":
        return rng.uniform(-REAL_BOX, REAL_BOX, size=(size, space.dim))
    if kind == "disc":
        r = np.sqrt(rng.uniform(size=size))
        return r * np.exp(1j * rng.uniform(0, 2 * math.pi, size=size))
    if kind == "polydisc":
        r = np.sqrt(rng.uniform(size=(size, space.dim)))
        return r * np.exp(1j * rng.uniform(0, 2 * math.pi, size=(size, space.dim)))
    if kind == "ball":
        n = space.dim
        v = rng.normal(size=(size, n)) + 1j * rng.normal(size=(size, n))
        v /= np.linalg.norm(v, axis=1, keepdims=True)
        r = rng.uniform(size=size) ** (1 / (2 * n))
        return r[:, None] * v
    if kind == "star":
        k = rng.integers(1, STAR_EDGES + 1, size=size)
        s = rng.uniform(0, 1, size=size) * k
        # a few exact centre hits exercise the shared-vertex branch
        s[rng.uniform(size=size) < 0.05] = 0.0
        return k, s
    raise AssertionError(kind)


def batch_point(space, batch, i):
    """The ``i``-th sample of a batch as a canonical point."""
    kind = space.kind
    if kind == "product":
        return tuple(batch_point(f, b, i) for f, b in zip(space.factors, batch))
    if kind == "star":
        k, s = batch
        return sp.StarPoint(int(k[i]), float(s[i]))
    return sp.as_point(space, batch[i])
