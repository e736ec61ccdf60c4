"""Whitelisted isometric embeddings used to transport Busemann points.

Each embedding knows its source and target spaces (the target basepoint is
the image of the source basepoint) and, where a closed form exists, how
to push a horofunction forward.
"""

import cmath
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import horo
from . import spaces as sp
from .errors import NotIsometric
from .sampling import random_point

PROBE_PAIRS = 1000
PROBE_TOL = 1e-9
# probe points stay within this hyperbolic radius so 1e-9 is attainable
PROBE_RADIUS = 6.0


@dataclass(frozen=True, eq=False)
class Embedding:
    """A map ``source -> target`` claimed to preserve distances."""

    name: str
    source: sp.Space
    target: sp.Space
    fn: Callable = field(repr=False)
    pusher: Callable = field(default=None, repr=False)

    def __call__(self, x):
        return sp.as_point(self.target, self.fn(sp.as_point(self.source, x)))

    def push(self, h):
        """Closed-form image of ``h``, or ``None`` when none is known."""
        return None if self.pusher is None else self.pusher(h)

    def verify(self, pairs=PROBE_PAIRS, tol=PROBE_TOL, seed=0):
        """Probe ``|d(phi x, phi y) - d(x, y)|`` on random pairs; return the worst residual.

        Raises
        ------
        NotIsometric
            Some residual exceeds ``tol``.
        """
        cached = self.__dict__.get("_verified")
        if cached is not None and cached[0] >= pairs and cached[1] <= tol:
            return cached[2]
        rng = np.random.default_rng(seed)
        worst = 0.0
        for _ in range(pairs):
            x = random_point(self.source, rng, PROBE_RADIUS)
            y = random_point(self.source, rng, PROBE_RADIUS)
            r = abs(sp._dist(self.target, self(x), self(y)) - sp._dist(self.source, x, y))
            worst = max(worst, r)
        if worst > tol:
            raise NotIsometric(f"{self.name}: distance residual {worst:.3g} above {tol}")
        object.__setattr__(self, "_verified", (pairs, tol, worst))
        return worst


def identity(space):
    return Embedding("identity", space, space, lambda x: x, lambda h: h)


def diagonal(k, space=None):
    """``x -> (x, ..., x)`` into the ``k``-fold sup-metric power of ``space`` (default: the disc)."""
    space = sp.disc() if space is None else space
    if k < 1:
        raise ValueError("k must be positive")
    target = sp.product(*([space] * k))
    if space.kind == "product":
        p = len(space.factors)

        def fn(x):
            return tuple(x) * k

        def pusher(h):
            if not isinstance(h, horo.ProductComposite):
                return None
            J = tuple(j + i * p for i in range(k) for j in h.J)
            return horo.ProductComposite(target, J, h.factors * k, h.alpha * k)

        return Embedding(f"diagonal({k})", space, target, fn, pusher)

    def pusher(h):
        return horo.ProductComposite(target, tuple(range(k)), (h,) * k, (0.0,) * k)

    return Embedding(f"diagonal({k})", space, target, lambda x: (x,) * k, pusher)


def factor_inclusion(space, extra, c=None):
    """``x -> (x, c)`` into ``space x extra``, with ``c`` fixed (default: the basepoint of ``extra``)."""
    c = extra.basepoint if c is None else sp.as_point(extra, c)
    extra = sp.with_basepoint(extra, c)
    target = sp.product(space, extra)
    nested = space.kind == "product"

    def fn(x):
        return (*x, c) if nested else (x, c)

    def pusher(h):
        if nested:
            if isinstance(h, horo.ProductComposite):
                return horo.ProductComposite(target, h.J, h.factors, h.alpha)
            return None
        return horo.ProductComposite(target, (0,), (h,), (0.0,))

    return Embedding("factor_inclusion", space, target, fn, pusher)


def unitary(U):
    """``z -> U z`` on the ball; ``U`` must be unitary to 1e-12."""
    U = np.asarray(U, dtype=complex)
    n = U.shape[0]
    if U.shape != (n, n) or not np.allclose(U.conj().T @ U, np.eye(n), atol=1e-12, rtol=0):
        raise NotIsometric("matrix is not unitary")
    space = sp.ball(n)

    def pusher(h):
        if isinstance(h, horo.BallBoundary):
            return horo.BallBoundary(U @ np.asarray(h.xi), space)
        if isinstance(h, horo.InternalPeak):
            return horo.InternalPeak(space, U @ h.peak)
        return None

    return Embedding("unitary", space, space, lambda z: U @ z, pusher)


def mobius(a, theta=0.0):
    """Disc automorphism ``z -> e^{i theta} (z + a) / (1 + conj(a) z)``.

    The target is the disc based at the image of the origin.
    """
    a = sp._complex_scalar(a)
    sp.validate_point(sp.disc(), a)
    rot = cmath.exp(1j * theta)

    def fn(z):
        return rot * (z + a) / (1 + a.conjugate() * z)

    b = fn(0j)
    target = sp.disc(basepoint=b)

    def pusher(h):
        if isinstance(h, horo.DiscBoundary):
            w = fn(h.xi)
            return horo.Rebased(horo.DiscBoundary(w / abs(w)), b)
        if isinstance(h, horo.InternalPeak):
            return horo.InternalPeak(target, fn(h.peak))
        return None

    return Embedding("mobius", sp.disc(), target, fn, pusher)
