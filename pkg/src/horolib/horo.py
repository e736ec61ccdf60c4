"""Horofunctions: closed forms, limit estimates and product decomposition.

Every horofunction lives on a :class:`~horolib.spaces.Space` and uses that
space's basepoint, so ``h(space.basepoint) == 0``. Closed forms for the
disc, the ball and the real kinds assume the origin as basepoint; use
:func:`rebase` to move it.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import spaces as sp
from .errors import GaugeViolation, NotEscaping, Undecided

# stabilisation defaults for finite-window limits
DEFAULT_TOL = 1e-6
DEFAULT_WINDOW = 5
# alpha^n_j above this value counts as escaping to infinity
DEFAULT_CUTOFF = 10.0
GAUGE_TOL = 1e-12


@dataclass(frozen=True)
class LimitEstimate:
    """Finite-window surrogate for a limit.

    ``value`` is the last partial value and ``spread`` the max-min over the
    last ``window`` values; ``converged`` means ``spread <= tol``. Nothing
    here claims the true limit exists.
    """

    value: float
    spread: float
    converged: bool
    tol: float
    window: int
    values: tuple = field(default=(), repr=False)


def stabilize(values, tol=DEFAULT_TOL, window=DEFAULT_WINDOW):
    """Wrap a finite sequence of partial values in a :class:`LimitEstimate`."""
    if not values:
        raise ValueError("need at least one partial value")
    if window < 2:
        raise ValueError("the tail window needs at least two entries")
    tail = values[-window:]
    spread = max(tail) - min(tail)
    return LimitEstimate(values[-1], spread, spread <= tol, tol, window, tuple(values))


class Horofunction:
    """Base class; subclasses implement ``_eval`` on canonical points."""

    space: sp.Space

    @property
    def basepoint(self):
        return self.space.basepoint

    def __call__(self, x):
        return self._eval(sp.as_point(self.space, x))

    def _eval(self, x):
        raise NotImplementedError


def evaluate(h, x):
    """Value of the horofunction ``h`` at ``x`` (validated)."""
    return h(x)


def horoball_contains(h, r, x):
    """Whether ``x`` lies in the open horoball ``{h < r}``."""
    return h(x) < r


def _require_origin(space):
    if np.any(np.asarray(sp.freeze_point(space.basepoint), dtype=complex) != 0):
        raise ValueError(f"closed form on {space} needs the origin as basepoint; use rebase()")


@dataclass(frozen=True)
class InternalPeak(Horofunction):
    """``h_y(x) = d(x, y) - d(b, y)`` for an interior point ``y``."""

    space: sp.Space
    y: object

    def __post_init__(self):
        pt = sp.as_point(self.space, self.y)
        object.__setattr__(self, "y", sp.freeze_point(pt))
        object.__setattr__(self, "_y", pt)
        object.__setattr__(self, "_offset", sp._dist(self.space, self.space.basepoint, pt))

    @property
    def peak(self):
        return self._y

    def _eval(self, x):
        return sp._dist(self.space, x, self._y) - self._offset


@dataclass(frozen=True)
class DiscBoundary(Horofunction):
    """Disc horofunction ``log(|xi - z|^2 / (1 - |z|^2))``."""

    xi: complex
    space: sp.Space = sp.disc()

    def __post_init__(self):
        object.__setattr__(self, "xi", sp._complex_scalar(self.xi))
        sp.validate_boundary(self.space, sp.disc_boundary(self.xi))
        _require_origin(self.space)

    def _eval(self, z):
        return 2 * math.log(abs(self.xi - z)) - math.log(sp.complement(self.space, z))


@dataclass(frozen=True)
class BallBoundary(Horofunction):
    """Ball horofunction ``log(|1 - <z, xi>|^2 / (1 - |z|^2))``."""

    xi: tuple
    space: sp.Space = None

    def __post_init__(self):
        bp = sp.ball_boundary(self.xi)
        xi = bp.directions[0]
        object.__setattr__(self, "xi", xi)
        if self.space is None:
            object.__setattr__(self, "space", sp.ball(len(xi)))
        sp.validate_boundary(self.space, bp)
        _require_origin(self.space)
        v = np.asarray(xi, dtype=complex)
        # dividing by the computed norm keeps <z, xi> consistent with ||z|| on the ray
        object.__setattr__(self, "_xi_parts", sp._vector_parts(v / np.linalg.norm(v)))

    def _eval(self, z):
        den = sp._one_minus_dot(sp._vector_parts(z), self._xi_parts)
        return 2 * math.log(den) - math.log(sp.complement(self.space, z))


@dataclass(frozen=True)
class SupSign(Horofunction):
    """``max_{j in J} (sign_j x_j - alpha_j)`` on the real line or sup-Rn (0-based ``J``)."""

    space: sp.Space
    J: tuple
    signs: tuple
    alpha: tuple = None

    def __post_init__(self):
        if self.space.kind not in ("real_line", "sup_rn"):
            raise sp.UnsupportedSpace("sign horofunctions live on the real line or sup-Rn")
        bp = sp.sign_boundary(self.J, self.signs)
        sp.validate_boundary(self.space, bp)
        _require_origin(self.space)
        object.__setattr__(self, "J", bp.J)
        object.__setattr__(self, "signs", bp.directions)
        alpha = (0.0,) * len(bp.J) if self.alpha is None else tuple(float(a) for a in self.alpha)
        _check_gauge(alpha, len(bp.J))
        object.__setattr__(self, "alpha", alpha)

    def _eval(self, x):
        x = np.atleast_1d(x)
        return max(s * float(x[j]) - a for j, s, a in zip(self.J, self.signs, self.alpha))


def _check_gauge(alpha, size):
    if len(alpha) != size:
        raise ValueError("one offset per index in J is required")
    if not alpha:
        raise ValueError("J must be non-empty")
    if abs(min(alpha)) > GAUGE_TOL:
        raise GaugeViolation(f"min alpha must be 0, got {min(alpha)!r}")


@dataclass(frozen=True)
class ProductComposite(Horofunction):
    """``max_{j in J} (h_j(x_j) - alpha_j)`` on a product-like space.

    ``factors`` and ``alpha`` are aligned with the sorted index set ``J``;
    each ``h_j`` lives on the ``j``-th factor space (including its
    basepoint).
    """

    space: sp.Space
    J: tuple
    factors: tuple
    alpha: tuple = None

    def __post_init__(self):
        if not self.space.is_product_like:
            raise sp.UnsupportedSpace(f"{self.space} is not a product")
        J = tuple(int(j) for j in self.J)
        if not J or list(J) != sorted(set(J)):
            raise ValueError("J must be a non-empty increasing index tuple")
        fs = sp.factor_spaces(self.space)
        if J[-1] >= len(fs) or J[0] < 0:
            raise ValueError(f"index set {J} out of range for {self.space}")
        factors = tuple(self.factors)
        if len(factors) != len(J):
            raise ValueError("one factor horofunction per index in J is required")
        for j, h in zip(J, factors):
            if h.space != fs[j]:
                raise ValueError(f"factor {j} horofunction lives on {h.space}, expected {fs[j]}")
        alpha = (0.0,) * len(J) if self.alpha is None else tuple(float(a) for a in self.alpha)
        _check_gauge(alpha, len(J))
        object.__setattr__(self, "J", J)
        object.__setattr__(self, "factors", factors)
        object.__setattr__(self, "alpha", alpha)

    def _eval(self, x):
        xs = sp.split_point(self.space, x)
        return max(h._eval(xs[j]) - a for j, h, a in zip(self.J, self.factors, self.alpha))


@dataclass(frozen=True)
class Rebased(Horofunction):
    """``inner(x) - inner(basepoint)``: the same boundary point seen from a new basepoint."""

    inner: Horofunction
    new_basepoint: object

    def __post_init__(self):
        space = sp.with_basepoint(self.inner.space, self.new_basepoint)
        b = space.basepoint
        object.__setattr__(self, "new_basepoint", sp.freeze_point(b))
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "_offset", self.inner._eval(b))

    def _eval(self, x):
        return self.inner._eval(x) - self._offset


@dataclass(frozen=True, eq=False)
class SampledHorofunction(Horofunction):
    """Horofunction known only through a sequence converging to it.

    Evaluates the last term ``d(x, y^N) - d(b, y^N)`` of the defining
    sequence; :func:`horofunction_limit_estimate` reports how settled it is.
    """

    space: sp.Space
    sequence: tuple

    def __post_init__(self):
        seq = tuple(sp.as_point(self.space, y) for y in self.sequence)
        if not seq:
            raise ValueError("empty sequence")
        object.__setattr__(self, "sequence", seq)
        object.__setattr__(self, "_offset", sp._dist(self.space, self.space.basepoint, seq[-1]))

    def _eval(self, x):
        return sp._dist(self.space, x, self.sequence[-1]) - self._offset


def rebase(h, y0):
    """Change the basepoint of ``h`` to ``y0``: ``x -> h(x) - h(y0)``.

    Product composites are rebased factor by factor, with the offsets
    re-gauged so that their minimum stays 0.
    """
    if isinstance(h, ProductComposite) and h.space.kind == "product":
        space = sp.with_basepoint(h.space, y0)
        y0 = space.basepoint
        shifted = [h_j._eval(y0[j]) - a for j, h_j, a in zip(h.J, h.factors, h.alpha)]
        top = max(shifted)
        factors = tuple(rebase(h_j, y0[j]) for j, h_j in zip(h.J, h.factors))
        return ProductComposite(space, h.J, factors, tuple(top - s for s in shifted))
    if isinstance(h, Rebased):
        return Rebased(h.inner, y0)
    return Rebased(h, y0)


def ray_horofunction(ray):
    """Closed-form Busemann point of a :class:`~horolib.spaces.BoundaryRay`."""
    space, xi = ray.space, ray.target
    if space.kind == "disc":
        return DiscBoundary(xi.directions[0], space)
    if space.kind == "ball":
        return BallBoundary(xi.directions[0], space)
    if space.kind in ("real_line", "sup_rn"):
        return SupSign(space, xi.J, xi.directions)
    if space.kind == "polydisc":
        return ProductComposite(space, xi.J, tuple(DiscBoundary(d) for d in xi.directions))
    raise sp.UnsupportedSpace(f"no closed-form horofunction for rays in {space}")


def horofunction_limit_estimate(space, seq, z, tol=DEFAULT_TOL, K=DEFAULT_WINDOW):
    """Estimate ``lim_n d(z, y^n) - d(b, y^n)`` from a finite sequence.

    Returns the last partial value, the spread of the last ``K`` partial
    values, and whether that spread is within ``tol``.
    """
    if len(seq) == 0:
        raise ValueError("empty sequence")
    z = sp.as_point(space, z)
    b = space.basepoint
    values = []
    for y in seq:
        y = sp.as_point(space, y)
        values.append(sp._dist(space, z, y) - sp._dist(space, b, y))
    return stabilize(values, tol, K)


def probe_points(space, count=5, seed=0, max_radius=2.0):
    """Deterministic probe points near the basepoint (the basepoint comes first)."""
    from .sampling import random_point

    rng = np.random.default_rng(seed)
    pts = [space.basepoint]
    while len(pts) < count:
        pts.append(random_point(space, rng, max_radius))
    return pts


@dataclass(frozen=True, eq=False)
class Decomposition:
    """Result of :func:`decompose_product_horofunction` (0-based indices)."""

    space: sp.Space
    J: tuple
    alpha: tuple
    excluded: tuple
    factor_estimates: dict
    indices: tuple
    alpha_sequences: np.ndarray = field(repr=False)
    factor_sequences: tuple = field(repr=False)

    @property
    def horofunction(self):
        """The decomposed limit, with sampled factor horofunctions."""
        fs = sp.factor_spaces(self.space)
        factors = tuple(SampledHorofunction(fs[j], self.factor_sequences[j]) for j in self.J)
        return ProductComposite(self.space, self.J, factors, self.alpha)


def decompose_product_horofunction(
    space, seq, cutoff=DEFAULT_CUTOFF, tol=DEFAULT_TOL, K=DEFAULT_WINDOW, probes=None
):
    """Split the limit of ``h_{y^n}`` on a product into ``(J, alpha, h_j)``.

    With ``alpha^n_j = d(b, y^n) - d_j(b_j, y^n_j)``, an index belongs to
    ``J`` when its last ``K`` offsets stay below ``cutoff`` within a spread
    of ``tol``, and is excluded when they all exceed ``cutoff``. The
    offsets on ``J`` are shifted so their minimum is 0.

    Raises
    ------
    NotEscaping
        ``d(b, y^n)`` has not passed ``cutoff`` by the end of ``seq``.
    Undecided
        Some offset neither settles nor escapes on the tail window.
    """
    if not space.is_product_like:
        raise sp.UnsupportedSpace(f"{space} is not a product")
    if K < 2:
        raise ValueError("the tail window needs at least two entries")
    fs = sp.factor_spaces(space)
    b = space.basepoint
    bs = sp.split_point(space, b)
    pts = [sp.as_point(space, y) for y in seq]
    if not pts:
        raise ValueError("empty sequence")
    parts = [sp.split_point(space, y) for y in pts]
    radii = np.array([sp._dist(space, b, y) for y in pts])
    if radii[-1] <= cutoff:
        raise NotEscaping(f"d(b, y^n) ends at {radii[-1]:.6g}, not beyond the cutoff {cutoff}")
    alphas = np.array(
        [[r - sp._dist(f, bj, yj) for f, bj, yj in zip(fs, bs, ys)] for r, ys in zip(radii, parts)]
    )
    tail = tuple(range(max(0, len(pts) - K), len(pts)))
    J, excluded, unsettled = [], [], []
    for j in range(len(fs)):
        a = alphas[list(tail), j]
        if a.min() > cutoff:
            excluded.append(j)
        elif a.max() < cutoff and a.max() - a.min() <= tol:
            J.append(j)
        else:
            unsettled.append(j)
    if unsettled:
        raise Undecided(f"offsets of factors {unsettled} neither settle nor escape", alphas.tolist())
    if not J:
        raise Undecided("no factor has settled offsets", alphas.tolist())
    tail_alpha = alphas[tail[-1], J]
    alpha = tail_alpha - tail_alpha.min()
    assert alpha.min() >= -GAUGE_TOL
    factor_seqs = tuple(tuple(ys[j] for ys in parts) for j in range(len(fs)))
    estimates = {}
    for j in J:
        grid = probe_points(fs[j]) if probes is None else probes[j]
        estimates[j] = tuple(horofunction_limit_estimate(fs[j], factor_seqs[j], z, tol, K) for z in grid)
    return Decomposition(
        space, tuple(J), tuple(float(a) for a in alpha), tuple(excluded), estimates, tail, alphas, factor_seqs
    )
