"""Detour cost and distance, product Busemann points, parts, and transport.

Divergence can only be witnessed at a finite scale: a detour cost whose
partial values pass ``cutoff`` is reported as :class:`ExceedsCutoff`.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import horo
from . import spaces as sp
from .errors import GaugeViolation, NotABoundaryHorofunction, RadiusUnreachable, Undecided
from .geo import InducedRay, is_almost_geodesic, ray_point_at_radius
from .horo import DEFAULT_TOL, DEFAULT_WINDOW, stabilize

DEFAULT_DETOUR_CUTOFF = 20.0
# Euclidean norm cap for witness points in the disc, ball and polydisc
WITNESS_NORM_CAP = 1 - 1e-10
WITNESS_EPS = 1e-6
KEY_TOL = 1e-9


def variation_norm(x):
    """``max_j x_j + max_j (-x_j)``, the quotient norm on ``R^n / Sp(1)``."""
    x = np.asarray(x, dtype=float)
    if x.size == 0:
        raise ValueError("variation norm of an empty vector")
    return float(x.max() - x.min())


@dataclass(frozen=True)
class Finite:
    value: float
    diagnostics: object = field(default=None, repr=False)

    is_finite = True


@dataclass(frozen=True)
class ExceedsCutoff:
    """Partial values passed ``cutoff`` at index ``last_n``."""

    cutoff: float
    last_n: int

    is_finite = False


DetourValue = Finite | ExceedsCutoff


@dataclass(frozen=True, eq=False)
class WitnessedBusemann:
    """A Busemann point ``h`` with an almost-geodesic sequence converging to it."""

    h: horo.Horofunction
    witness: tuple

    def __post_init__(self):
        pts = tuple(sp.as_point(self.h.space, z) for z in self.witness)
        if len(pts) < 2:
            raise ValueError("a witness needs at least two points")
        object.__setattr__(self, "witness", pts)

    @property
    def space(self):
        return self.h.space

    def check(self, eps=WITNESS_EPS, K=DEFAULT_WINDOW):
        """Almost-geodesic report on the last ``K`` witness points."""
        return is_almost_geodesic(self.space, self.witness, eps, N=max(0, len(self.witness) - K))


def boundary_witness(space, xi, t_max=15.0, step=1.0):
    """Closed-form ray witness ``ray(0), ray(step), ...`` for a boundary point.

    Disc-type witnesses may not pass the norm cap ``1 - 1e-10``
    (``t_max`` at most about 23.7).
    """
    ray = sp.boundary_ray(space, xi)
    if space.kind in ("disc", "ball", "polydisc") and math.tanh(t_max / 2) > WITNESS_NORM_CAP:
        raise ValueError(f"t_max={t_max} pushes the witness past the norm cap {WITNESS_NORM_CAP}")
    ts = np.arange(0.0, t_max + step / 2, step)
    return WitnessedBusemann(horo.ray_horofunction(ray), tuple(ray(float(t)) for t in ts))


def _require_witness(wb, check):
    if not check:
        return
    report = wb.check()
    if not report.verdict:
        raise ValueError(f"witness tail defect {report.sup:.3g} is not below {report.eps}")


def detour_cost(from_, to, cutoff=DEFAULT_DETOUR_CUTOFF, tol=DEFAULT_TOL, K=DEFAULT_WINDOW, check=True):
    """Detour cost ``H(from_.h, to)`` as ``lim_n d(b, z^n) + to(z^n)`` along the witness.

    Returns
    -------
    ExceedsCutoff
        At the first index whose partial value passes ``cutoff``.
    Finite
        When the last ``K`` partial values agree within ``tol``; the value
        is the last one and ``diagnostics`` the :class:`LimitEstimate`.

    Raises
    ------
    Undecided
        Neither outcome on the given window.
    """
    space = from_.space
    if to.space != space:
        raise ValueError(f"horofunctions live on {from_.space} and {to.space} (basepoints must match)")
    _require_witness(from_, check)
    b = space.basepoint
    values = []
    for n, z in enumerate(from_.witness):
        u = sp._dist(space, b, z) + to._eval(z)
        values.append(u)
        if u > cutoff:
            return ExceedsCutoff(cutoff, n)
    est = stabilize(values, tol, K)
    if not est.converged:
        raise Undecided(f"detour partial values spread {est.spread:.3g} on the tail, above {tol}", values)
    return Finite(est.value, est)


def detour_distance(a, b, cutoff=DEFAULT_DETOUR_CUTOFF, tol=DEFAULT_TOL, K=DEFAULT_WINDOW, check=True):
    """``delta(a, b) = H(a, b) + H(b, a)``; infinite as soon as one side is."""
    ab = detour_cost(a, b.h, cutoff, tol, K, check)
    if not ab.is_finite:
        return ab
    ba = detour_cost(b, a.h, cutoff, tol, K, check)
    if not ba.is_finite:
        return ba
    return Finite(ab.value + ba.value, (ab.diagnostics, ba.diagnostics))


def _anchor_radii(ray, n_max, step):
    if isinstance(ray, InducedRay):
        if len(ray.breakpoints) <= n_max:
            raise RadiusUnreachable(f"induced ray has {len(ray.breakpoints)} anchors, need {n_max + 1}")
        return list(ray.breakpoints[: n_max + 1])
    return [n * step for n in range(n_max + 1)]


def product_busemann(space, factor_rays, alpha, n_max=15, step=1.0):
    """Busemann point ``max_{j in J} (h_j - alpha_j)`` with an explicit witness.

    ``factor_rays`` maps factor index ``j`` to a ray in that factor; ``J``
    is its sorted key set and ``alpha`` is aligned with it. With
    ``R_n = max_j Delta^j_n`` over the factor anchor radii (``n * step``
    for closed-form rays), the witness has ``z^n_j`` on ray ``j`` at radius
    ``R_n - alpha_j`` and the other coordinates pinned at the basepoint.
    Anchors with ``R_n <= max alpha`` are skipped.

    Raises
    ------
    GaugeViolation
        ``min alpha`` is not 0 or some offset is negative.
    RadiusUnreachable
        A factor ray is too short for the requested schedule.
    """
    J = tuple(sorted(int(j) for j in factor_rays))
    if isinstance(alpha, dict):
        alpha = [alpha[j] for j in J]
    alpha = tuple(float(a) for a in alpha)
    if len(alpha) != len(J):
        raise ValueError("one offset per factor ray is required")
    if min(alpha) < -horo.GAUGE_TOL or abs(min(alpha)) > horo.GAUGE_TOL:
        raise GaugeViolation(f"offsets must be >= 0 with minimum 0, got {alpha}")
    fs = sp.factor_spaces(space)
    for j in J:
        if factor_rays[j].space != fs[j]:
            raise ValueError(f"ray {j} lives on {factor_rays[j].space}, expected {fs[j]}")
    parts0 = list(sp.split_point(space, space.basepoint))
    for j in J:
        parts0[j] = factor_rays[j].origin
    y0 = sp.join_point(space, parts0)
    if space.kind == "product":
        space = sp.with_basepoint(space, y0)
    elif not sp.points_equal(space, y0, space.basepoint):
        raise sp.UnsupportedSpace("polydisc and sup-Rn rays must start at the origin")
    fs = sp.factor_spaces(space)
    radii = [_anchor_radii(factor_rays[j], n_max, step) for j in J]
    top = max(alpha)
    witness = [y0]
    for n in range(1, n_max + 1):
        R = max(r[n] for r in radii)
        if R <= top:
            continue
        parts = list(parts0)
        for j, a in zip(J, alpha):
            parts[j] = ray_point_at_radius(factor_rays[j], R - a)[1]
        witness.append(sp.join_point(space, parts))
    factors = []
    for j in J:
        ray = factor_rays[j]
        if isinstance(ray, InducedRay):
            factors.append(horo.SampledHorofunction(fs[j], ray.anchors))
        else:
            factors.append(horo.ray_horofunction(ray))
    h = horo.ProductComposite(space, J, tuple(factors), alpha)
    return WitnessedBusemann(h, tuple(witness))


# ---------------------------------------------------------------------------
# parts


@dataclass(frozen=True)
class PartKey:
    """Index set and per-index boundary identifiers of a Busemann point."""

    J: tuple
    ids: tuple

    def __post_init__(self):
        if not self.J:
            raise ValueError("J must be non-empty")

    @property
    def leaves(self):
        return sum(i.leaves if isinstance(i, PartKey) else 1 for i in self.ids)


def part_key(h):
    """Part identifier of a boundary horofunction.

    Raises
    ------
    NotABoundaryHorofunction
        For internal peaks and sampled horofunctions.
    """
    if isinstance(h, horo.Rebased):
        return part_key(h.inner)
    if isinstance(h, horo.DiscBoundary):
        return PartKey((0,), (("disc", h.xi),))
    if isinstance(h, horo.BallBoundary):
        return PartKey((0,), (("ball", tuple(h.xi)),))
    if isinstance(h, horo.SupSign):
        return PartKey(h.J, tuple(("sign", s) for s in h.signs))
    if isinstance(h, horo.ProductComposite):
        return PartKey(h.J, tuple(part_key(f) for f in h.factors))
    raise NotABoundaryHorofunction(f"{type(h).__name__} has no part key")


def part_dimension(h):
    """Dimension ``|J| - 1`` of the part of ``h`` (leaf indices are counted)."""
    return part_key(h).leaves - 1


def _ids_close(a, b, tol):
    if isinstance(a, PartKey) or isinstance(b, PartKey):
        return isinstance(a, PartKey) and isinstance(b, PartKey) and same_part(a, b, tol)
    (ta, va), (tb, vb) = a, b
    if ta != tb:
        return False
    return bool(np.all(np.abs(np.atleast_1d(np.asarray(va)) - np.atleast_1d(np.asarray(vb))) <= tol))


def same_part(k1, k2, tol=KEY_TOL):
    """Keys agree: identical ``J`` and boundary identifiers within ``tol``."""
    return k1.J == k2.J and len(k1.ids) == len(k2.ids) and all(
        _ids_close(a, b, tol) for a, b in zip(k1.ids, k2.ids)
    )


def transport_under_embedding(phi, src):
    """Push a witnessed Busemann point through a whitelisted isometric embedding.

    The embedding is probed first (:meth:`Embedding.verify`). The image
    horofunction is in closed form when the embedding knows how to push
    ``src.h``, and is otherwise sampled from the image witness.
    """
    phi.verify()
    if src.space != phi.source:
        raise ValueError(f"witness lives on {src.space}, the map starts on {phi.source}")
    image = tuple(phi(z) for z in src.witness)
    h = phi.push(src.h)
    if h is None:
        h = horo.SampledHorofunction(phi.target, image)
    return WitnessedBusemann(h, image)
