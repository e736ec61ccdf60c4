"""Almost-geodesic sequences, the rays they induce, and radius inversion."""

import bisect
import math
from dataclasses import dataclass, field

import numpy as np

from . import spaces as sp
from .errors import MonotonicityViolation, RadiusUnreachable
from .horo import DEFAULT_TOL, DEFAULT_WINDOW, stabilize
from .spaces import BoundaryRay

RADIUS_TOL = 1e-10
MAX_BISECTIONS = 200
# grid points per segment when searching for the first radius crossing
SCAN_POINTS = 32


def almost_geodesic_defect(space, seq, m, k):
    """``d(y^m, y^k) + d(y^k, y^0) - d(y^m, y^0)`` for ``0 <= k <= m < len(seq)``."""
    if not 0 <= k <= m < len(seq):
        raise IndexError(f"need 0 <= k <= m < {len(seq)}, got m={m}, k={k}")
    ym, yk, y0 = (sp.as_point(space, seq[i]) for i in (m, k, 0))
    return sp._dist(space, ym, yk) + sp._dist(space, yk, y0) - sp._dist(space, ym, y0)


@dataclass(frozen=True)
class DefectReport:
    """Defects over all pairs ``m >= k >= N`` of a finite sequence.

    The verdict only speaks for the probed window.
    """

    defects: dict = field(repr=False)
    sup: float
    N: int
    eps: float
    window: int
    verdict: bool
    monotone: bool
    notes: tuple = ()


def is_almost_geodesic(space, seq, eps, N=0):
    """Check ``sup_{m >= k >= N} defect(m, k) < eps`` on the given data.

    A sequence whose distances to ``y^0`` are not strictly increasing gets
    a ``MonotonicityViolation`` note; the verdict is still computed.
    """
    pts = [sp.as_point(space, y) for y in seq]
    if not 0 <= N < len(pts):
        raise IndexError(f"N={N} outside the sequence")
    radii = [sp._dist(space, y, pts[0]) for y in pts]
    defects = {}
    for k in range(N, len(pts)):
        for m in range(k, len(pts)):
            defects[(m, k)] = sp._dist(space, pts[m], pts[k]) + radii[k] - radii[m]
    sup = max(defects.values())
    monotone = all(a < b for a, b in zip(radii, radii[1:]))
    notes = () if monotone else ("MonotonicityViolation: d(y^n, y^0) is not strictly increasing",)
    return DefectReport(defects, sup, N, eps, len(pts) - N, sup < eps, monotone, notes)


# relative slack for parameters just past the last breakpoint
END_SLACK = 1e-12


@dataclass(frozen=True, eq=False)
class InducedRay:
    """Piecewise-geodesic path through anchors ``y^0, y^1, ...``.

    The segment from ``y^n`` to ``y^{n+1}`` is affinely reparametrised onto
    ``[Delta_n, Delta_{n+1}]`` with ``Delta_n = d(y^n, y^0)``, so the ray
    passes through ``y^n`` exactly at ``t = Delta_n``.
    """

    space: sp.Space
    anchors: tuple
    breakpoints: tuple
    segments: tuple = field(repr=False)

    @property
    def origin(self):
        return self.anchors[0]

    @property
    def extent(self):
        return self.breakpoints[-1]

    def __call__(self, t):
        bp = self.breakpoints
        if bp[-1] < t <= bp[-1] * (1 + END_SLACK):
            # rounding in the last breakpoint; snap to the final anchor
            t = bp[-1]
        if t < 0 or t > bp[-1]:
            raise RadiusUnreachable(f"t={t} outside [0, {bp[-1]}]")
        n = bisect.bisect_right(bp, t) - 1
        if bp[n] == t:
            return self.anchors[n]
        seg = self.segments[n]
        return seg(seg.length / (bp[n + 1] - bp[n]) * (t - bp[n]))

    def radius(self, t):
        return sp._dist(self.space, self(t), self.anchors[0])


Ray = BoundaryRay | InducedRay


def induced_ray(space, seq):
    """Ray induced by ``seq``; needs ``d(y^n, y^0)`` strictly increasing.

    Raises
    ------
    MonotonicityViolation
        The radii are not strictly increasing (no subsequence is chosen
        on the caller's behalf).
    UnsupportedSpace
        No connector exists between some consecutive anchors.
    """
    pts = tuple(sp.as_point(space, y) for y in seq)
    if len(pts) < 2:
        raise ValueError("an induced ray needs at least two anchors")
    deltas = [sp._dist(space, y, pts[0]) for y in pts]
    for n, (a, b) in enumerate(zip(deltas, deltas[1:])):
        if not a < b:
            raise MonotonicityViolation(f"d(y^{n + 1}, y^0) = {b!r} does not exceed d(y^{n}, y^0) = {a!r}")
    segments = tuple(sp.connect(space, a, b) for a, b in zip(pts, pts[1:]))
    return InducedRay(space, pts, tuple(deltas), segments)


def _bisect_radius(ray, beta, lo, hi):
    """Bisection for ``radius(t) = beta`` with ``radius(lo) < beta <= radius(hi)``."""
    best = hi
    for _ in range(MAX_BISECTIONS):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        r = ray.radius(mid)
        if r < beta:
            lo = mid
        else:
            hi = best = mid
        if abs(r - beta) <= 0.01 * RADIUS_TOL:
            return mid
    # the bracket has collapsed to adjacent floats; keep the closer end
    r_lo, r_hi = ray.radius(lo), ray.radius(best)
    return lo if abs(r_lo - beta) < abs(r_hi - beta) else best


def ray_point_at_radius(ray, beta):
    """Smallest ``t`` with ``d(ray(t), ray(0)) = beta`` and the point there.

    The radius function is bracketed (on a grid inside each segment for
    induced rays, by doubling for closed-form rays) and the first crossing
    is refined by bisection to within ``RADIUS_TOL``.

    Raises
    ------
    RadiusUnreachable
        ``beta`` is negative or beyond the ray's extent.
    """
    if beta < 0:
        raise RadiusUnreachable("radius must be nonnegative")
    if beta == 0:
        return 0.0, ray(0.0)
    if isinstance(ray, InducedRay):
        if beta > ray.breakpoints[-1]:
            raise RadiusUnreachable(f"radius {beta} beyond the last anchor at {ray.breakpoints[-1]}")
        lo = 0.0
        for a, b in zip(ray.breakpoints, ray.breakpoints[1:]):
            for t in np.linspace(a, b, SCAN_POINTS + 1)[1:]:
                t = float(t)
                if ray.radius(t) >= beta:
                    t_star = _bisect_radius(ray, beta, lo, t)
                    return t_star, ray(t_star)
                lo = t
        raise AssertionError("radius at the last anchor equals its breakpoint")
    # closed-form rays are unit speed, so the crossing sits near t = beta
    lo, hi = 0.0, beta + 1e-6
    while ray.radius(hi) < beta:
        lo, hi = hi, 2 * hi
        if hi > 1e6:
            raise RadiusUnreachable(f"radius {beta} not reached")
    if ray.radius(max(lo, beta - 1e-6)) < beta:
        lo = max(lo, beta - 1e-6)
    t_star = _bisect_radius(ray, beta, lo, hi)
    return t_star, ray(t_star)


def busemann_from_ray(space, ray, z, T_schedule, tol=DEFAULT_TOL, K=DEFAULT_WINDOW):
    """Estimate ``lim_T d(z, ray(T)) - d(b, ray(T))`` along ``T_schedule``."""
    T = list(T_schedule)
    if not T:
        raise ValueError("empty schedule")
    if max(T) > ray.extent:
        raise RadiusUnreachable(f"schedule reaches {max(T)}, the ray ends at {ray.extent}")
    z = sp.as_point(space, z)
    b = space.basepoint
    values = []
    for t in T:
        y = ray(t)
        values.append(sp._dist(space, z, y) - sp._dist(space, b, y))
    return stabilize(values, tol, K)


def sample_radius_profile(ray, count=200, t_max=None):
    """``(t, radius)`` pairs on a uniform grid over ``[0, t_max]``."""
    end = ray.extent if t_max is None else t_max
    if not math.isfinite(end):
        raise ValueError("closed-form rays need an explicit t_max")
    ts = np.linspace(0.0, end, count)
    return [(float(t), float(ray.radius(float(t)))) for t in ts]
