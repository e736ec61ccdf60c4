"""Model metric spaces: descriptors, points, distance kernels and geodesics.

Point representations, by space kind:

=========== ==================================================
real_line   ``float``
sup_rn      read-only ``float`` array of shape ``(n,)``
disc        ``complex``
ball        read-only ``complex`` array of shape ``(n,)``
polydisc    read-only ``complex`` array of shape ``(n,)``
star        :class:`StarPoint` ``(edge, offset)``
product     ``tuple`` of factor points (products are always flat)
=========== ==================================================

Every public entry point coerces its inputs through :func:`as_point`, so
plain lists, ``[re, im]`` pairs and nested sequences are accepted too.
"""

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from numbers import Real
from typing import Callable, NamedTuple

import numpy as np

from .errors import (
    DimensionMismatch,
    MalformedStarCoordinate,
    OutOfDomain,
    UnsupportedSpace,
)

# open-domain membership margin for the disc, ball and polydisc
MARGIN = 1e-15
# unit-norm tolerance for boundary points
UNIT_TOL = 1e-12
# complex-line test for two-point ball connectors
LINE_TOL = 1e-12

KINDS = ("real_line", "sup_rn", "disc", "ball", "polydisc", "star", "product")


class StarPoint(NamedTuple):
    """Point on edge ``edge`` (of length ``edge``) at distance ``offset`` from the centre."""

    edge: int
    offset: Real


@dataclass(frozen=True)
class Space:
    """Descriptor of a model metric space.

    Build instances with the constructor functions (:func:`disc`,
    :func:`ball`, :func:`product`, ...) rather than directly. ``base`` is a
    hashable form of a non-default basepoint, or ``None``.
    """

    kind: str
    dim: int = 1
    factors: tuple = ()
    base: object = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown space kind {self.kind!r}")
        if self.kind == "product" and not self.factors:
            raise ValueError("a product needs at least one factor")
        if self.dim < 1:
            raise DimensionMismatch("dimension must be positive")
        if self.base is not None:
            as_point(self, self.base)

    @property
    def basepoint(self):
        if self.kind == "product":
            return tuple(f.basepoint for f in self.factors)
        if self.base is not None:
            return as_point(self, self.base)
        return _default_basepoint(self)

    @property
    def is_product_like(self):
        return self.kind in ("product", "polydisc", "sup_rn")

    def __str__(self):
        if self.kind == "product":
            return "Product[" + ", ".join(str(f) for f in self.factors) + "]"
        if self.kind in ("sup_rn", "ball", "polydisc"):
            return f"{_NAMES[self.kind]}({self.dim})"
        return _NAMES[self.kind]


_NAMES = {
    "real_line": "RealLine",
    "sup_rn": "SupRn",
    "disc": "PoincareDisc",
    "ball": "ComplexBall",
    "polydisc": "Polydisc",
    "star": "StarGraph",
    "product": "Product",
}


def real_line(basepoint=None):
    return _with_base(Space("real_line"), basepoint)


def sup_rn(n, basepoint=None):
    return _with_base(Space("sup_rn", dim=int(n)), basepoint)


def disc(basepoint=None):
    return _with_base(Space("disc"), basepoint)


def ball(n, basepoint=None):
    return _with_base(Space("ball", dim=int(n)), basepoint)


def polydisc(n, basepoint=None):
    return _with_base(Space("polydisc", dim=int(n)), basepoint)


def star_graph(basepoint=None):
    return _with_base(Space("star"), basepoint)


def product(*factors, basepoint=None):
    """Sup-metric product of ``factors``; nested products are flattened.

    A basepoint for the product is pushed down into the factors, so the
    product basepoint is always the tuple of factor basepoints.
    """
    if len(factors) == 1 and isinstance(factors[0], (list, tuple)):
        factors = tuple(factors[0])
    flat = []
    for f in factors:
        if not isinstance(f, Space):
            raise TypeError(f"product factor must be a Space, got {type(f).__name__}")
        if f.kind == "product":
            flat.extend(f.factors)
        else:
            flat.append(f)
    if not flat:
        raise ValueError("a product needs at least one factor")
    space = Space("product", dim=len(flat), factors=tuple(flat))
    if basepoint is not None:
        b = as_point(space, basepoint)
        space = Space(
            "product",
            dim=len(flat),
            factors=tuple(_with_base(f, bj) for f, bj in zip(flat, b)),
        )
    return space


def with_basepoint(space, basepoint):
    """Return ``space`` with a different basepoint."""
    if space.kind == "product":
        return product(*space.factors, basepoint=basepoint)
    return _with_base(replace(space, base=None), basepoint)


def _with_base(space, basepoint):
    if basepoint is None:
        return space
    pt = as_point(space, basepoint)
    # the default basepoint is stored as None so equal spaces compare equal
    if points_equal(space, pt, _default_basepoint(space)):
        return replace(space, base=None)
    return replace(space, base=freeze_point(pt))


def _default_basepoint(space):
    kind = space.kind
    if kind == "real_line":
        return 0.0
    if kind == "disc":
        return 0j
    if kind == "sup_rn":
        return _readonly(np.zeros(space.dim))
    if kind in ("ball", "polydisc"):
        return _readonly(np.zeros(space.dim, dtype=complex))
    if kind == "star":
        return StarPoint(1, 0)
    raise AssertionError(kind)


def factor_spaces(space):
    """Factor spaces of a product-like space (product, polydisc, sup-Rn)."""
    if space.kind == "product":
        return space.factors
    if space.kind == "polydisc":
        return (disc(),) * space.dim
    if space.kind == "sup_rn":
        return (real_line(),) * space.dim
    return (space,)


def split_point(space, x):
    """Factor coordinates of a point of a product-like space."""
    if space.kind == "product":
        return tuple(x)
    if space.kind == "polydisc":
        return tuple(complex(c) for c in x)
    if space.kind == "sup_rn":
        return tuple(float(c) for c in x)
    return (x,)


def join_point(space, parts):
    """Inverse of :func:`split_point`."""
    if space.kind == "product":
        return tuple(parts)
    if space.kind in ("polydisc", "sup_rn"):
        return as_point(space, list(parts))
    (only,) = parts
    return only


# ---------------------------------------------------------------------------
# points


def _readonly(a):
    a.setflags(write=False)
    return a


def _complex_array(x):
    try:
        a = np.array(x)
    except ValueError:
        raise DimensionMismatch("ragged coordinate array")
    if a.dtype == object:
        raise DimensionMismatch("ragged coordinate array")
    if a.ndim == 2 and a.shape[1] == 2 and not np.iscomplexobj(a):
        a = a[:, 0] + 1j * a[:, 1]
    return np.asarray(a, dtype=complex)


def _complex_vector(x, n):
    a = _complex_array(x)
    if a.shape != (n,):
        raise DimensionMismatch(f"expected {n} complex coordinates, got shape {a.shape}")
    return _readonly(a.copy())


def _complex_scalar(x):
    if isinstance(x, (list, tuple, np.ndarray)):
        a = np.asarray(x)
        if a.shape == (2,) and not np.iscomplexobj(a):
            return complex(float(a[0]), float(a[1]))
        if a.size == 1:
            return complex(a.reshape(()))
        raise DimensionMismatch(f"expected a complex scalar, got shape {a.shape}")
    return complex(x)


def as_point(space, x):
    """Coerce ``x`` to the canonical point type of ``space`` and validate it.

    Raises
    ------
    DimensionMismatch
        Wrong number of coordinates or factors.
    OutOfDomain
        Outside the open domain (norm at least ``1 - MARGIN``) or non-finite.
    MalformedStarCoordinate
        Bad edge index or offset outside ``[0, edge]``.
    """
    kind = space.kind
    if kind == "real_line":
        if isinstance(x, (list, tuple, np.ndarray)):
            a = np.asarray(x, dtype=float)
            if a.size != 1:
                raise DimensionMismatch("real line points are scalars")
            x = a.reshape(())
        p = float(x)
        if not math.isfinite(p):
            raise OutOfDomain("non-finite coordinate")
        return p
    if kind == "sup_rn":
        a = np.asarray(x, dtype=float)
        if a.shape != (space.dim,):
            raise DimensionMismatch(f"expected {space.dim} coordinates, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise OutOfDomain("non-finite coordinate")
        return _readonly(a.copy())
    if kind == "disc":
        z = _complex_scalar(x)
        if not (abs(z) < 1 - MARGIN):
            raise OutOfDomain(f"|z| = {abs(z)!r} is not inside the disc")
        return z
    if kind in ("ball", "polydisc"):
        z = _complex_vector(x, space.dim)
        size = np.linalg.norm(z) if kind == "ball" else np.max(np.abs(z))
        if not (size < 1 - MARGIN):
            raise OutOfDomain(f"norm {size!r} is not inside the {_NAMES[kind]}")
        return z
    if kind == "star":
        return _star_point(x)
    if kind == "product":
        if isinstance(x, np.ndarray):
            x = list(x)
        if not isinstance(x, (list, tuple)) or len(x) != len(space.factors):
            raise DimensionMismatch(f"expected a tuple of {len(space.factors)} factor points")
        return tuple(as_point(f, xj) for f, xj in zip(space.factors, x))
    raise AssertionError(kind)


def _star_point(x):
    if isinstance(x, dict):
        x = (x.get("edge"), x.get("offset"))
    try:
        k, s = x
    except (TypeError, ValueError):
        raise MalformedStarCoordinate(f"star graph points are (edge, offset) pairs, got {x!r}")
    if isinstance(k, float) and k.is_integer():
        k = int(k)
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or k < 1:
        raise MalformedStarCoordinate(f"edge index must be a positive integer, got {k!r}")
    if not isinstance(s, (int, float, Fraction, np.integer, np.floating)) or isinstance(s, bool):
        raise MalformedStarCoordinate(f"offset must be a real number, got {s!r}")
    if isinstance(s, (np.integer, np.floating)):
        s = s.item()
    if isinstance(s, float) and not math.isfinite(s):
        raise MalformedStarCoordinate("non-finite offset")
    if s < 0 or s > k:
        raise MalformedStarCoordinate(f"offset {s!r} outside [0, {k}] on edge {k}")
    return StarPoint(int(k), s)


def validate_point(space, x):
    """Raise if ``x`` is not a valid point of ``space``; return ``None`` otherwise."""
    as_point(space, x)


def freeze_point(x):
    """Hashable form of a canonical point (arrays become tuples)."""
    if isinstance(x, np.ndarray):
        return tuple(x.tolist())
    if isinstance(x, StarPoint):
        return x
    if isinstance(x, tuple):
        return tuple(freeze_point(c) for c in x)
    return x


def points_equal(space, x, y, tol=0.0):
    """Coordinate-wise equality (within ``tol``) of two canonical points."""
    if space.kind == "product":
        return all(points_equal(f, a, b, tol) for f, a, b in zip(space.factors, x, y))
    if space.kind == "star":
        if x.offset == 0 and y.offset == 0:
            return True
        return x.edge == y.edge and abs(x.offset - y.offset) <= tol
    return bool(np.all(np.abs(np.asarray(x) - np.asarray(y)) <= tol))


# ---------------------------------------------------------------------------
# boundary points


@dataclass(frozen=True)
class BoundaryPoint:
    """A point at infinity, given by the index set ``J`` and one direction per index.

    Directions are: a unit complex number (disc, polydisc coordinate), a
    tuple of complex numbers of unit norm (ball), or ``+1.0``/``-1.0``
    (real line, sup-Rn coordinate).
    """

    J: tuple
    directions: tuple

    def __post_init__(self):
        if not self.J:
            raise ValueError("boundary point needs a non-empty index set")
        if len(self.J) != len(self.directions):
            raise DimensionMismatch("one direction per index is required")
        if len(set(self.J)) != len(self.J):
            raise ValueError("duplicate indices in J")


def disc_boundary(xi):
    return BoundaryPoint((0,), (_complex_scalar(xi),))


def ball_boundary(xi):
    v = _complex_array(xi)
    if v.ndim != 1:
        raise DimensionMismatch("ball boundary points are complex vectors")
    return BoundaryPoint((0,), (tuple(complex(c) for c in v),))


def sign_boundary(J, signs):
    """Sign pattern at infinity for the real line or sup-Rn (``J`` is 0-based)."""
    signs = tuple(_sign(s) for s in signs)
    return BoundaryPoint(tuple(int(j) for j in J), signs)


def polydisc_boundary(J, xis):
    return BoundaryPoint(tuple(int(j) for j in J), tuple(_complex_scalar(x) for x in xis))


def _sign(s):
    if s in ("+", 1, 1.0):
        return 1.0
    if s in ("-", -1, -1.0):
        return -1.0
    raise ValueError(f"sign must be +1 or -1, got {s!r}")


def validate_boundary(space, xi):
    """Check that ``xi`` is a boundary point of ``space`` (unit norms within ``UNIT_TOL``)."""
    kind = space.kind
    if kind in ("disc", "ball", "real_line"):
        if xi.J != (0,):
            raise DimensionMismatch(f"{space} boundary points use J = (0,)")
    if kind in ("sup_rn", "polydisc"):
        if any(j < 0 or j >= space.dim for j in xi.J):
            raise DimensionMismatch(f"index set {xi.J} out of range for {space}")
    if kind in ("disc", "polydisc"):
        for d in xi.directions:
            if not isinstance(d, complex) or abs(abs(d) - 1) > UNIT_TOL:
                raise OutOfDomain(f"direction {d!r} is not a unit complex number")
    elif kind == "ball":
        (d,) = xi.directions
        if len(d) != space.dim:
            raise DimensionMismatch(f"expected {space.dim} coordinates")
        if abs(np.linalg.norm(np.asarray(d)) - 1) > UNIT_TOL:
            raise OutOfDomain("boundary direction is not a unit vector")
    elif kind in ("real_line", "sup_rn"):
        if any(d not in (1.0, -1.0) for d in xi.directions):
            raise ValueError("real directions must be +1 or -1")
    else:
        raise UnsupportedSpace(f"no boundary points for {space}")


# ---------------------------------------------------------------------------
# distance kernels


# Complements 1 - |z|^2 and |1 - <z, w>| lose all their digits to
# cancellation near the boundary. They are formed in double-double
# arithmetic (Dekker products, Knuth sums), which works elementwise on
# floats and numpy arrays alike.
_SPLIT = 134217729.0  # 2^27 + 1


def _split(a):
    c = _SPLIT * a
    hi = c - (c - a)
    return hi, a - hi


def _two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    # the cross term is summed in a symmetric order so that swapping a and b is exact
    return p, ((ah * bh - p) + (ah * bl + al * bh)) + al * bl


def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _scalar_parts(z):
    """Coordinates of complex scalars (or arrays of them, elementwise)."""
    return [(z.real, z.imag)]


def _vector_parts(z):
    """Coordinates of complex vectors along the last axis."""
    if z.ndim == 1:
        return list(zip(z.real.tolist(), z.imag.tolist()))
    return [(z[..., k].real, z[..., k].imag) for k in range(z.shape[-1])]


def _one_minus_sq(parts):
    """``1 - sum(re^2 + im^2)``, accurate near the boundary."""
    s, err = 1.0, 0.0
    for re, im in parts:
        for x in (re, im):
            p, e = _two_prod(x, x)
            s, t = _two_sum(s, -p)
            err = err + (t - e)
    return s + err


def _one_minus_dot(zp, wp):
    """``|1 - sum z_k conj(w_k)|``, accurate near the boundary and symmetric in ``z, w``."""
    s, err = 1.0, 0.0
    for (zr, zi), (wr, wi) in zip(zp, wp):
        for a, b in ((zr, wr), (zi, wi)):
            p, e = _two_prod(a, b)
            s, t = _two_sum(s, -p)
            err = err + (t - e)
    re = s + err
    s, err = 0.0, 0.0
    for (zr, zi), (wr, wi) in zip(zp, wp):
        pa, ea = _two_prod(zi, wr)
        pb, eb = _two_prod(zr, wi)
        d, t = _two_sum(pa, -pb)
        s, u = _two_sum(s, d)
        err = err + (u + (t + (ea - eb)))
    im = s + err
    if isinstance(re, float):
        return math.hypot(re, im)
    return np.hypot(re, im)


def complement(space, z):
    """``1 - |z|^2`` (disc) or ``1 - ||z||^2`` (ball) in compensated arithmetic."""
    if space.kind == "disc":
        return _one_minus_sq(_scalar_parts(complex(z)))
    if space.kind == "ball":
        return _one_minus_sq(_vector_parts(np.asarray(z)))
    raise UnsupportedSpace(f"no complement on {space}")


def _rho(z, w):
    """Hyperbolic distance on the disc for complex scalars.

    Small separations use log((1+u)/(1-u)) through log1p; large ones take
    1 - u^2 = (1-|z|^2)(1-|w|^2) / |1 - conj(z) w|^2 from the complements
    so that points near the circle keep their relative accuracy.
    """
    zp, wp = _scalar_parts(z), _scalar_parts(w)
    den = _one_minus_dot(wp, zp)
    u = abs(w - z) / den
    if u < 0.5:
        return math.log1p(u) - math.log1p(-u)
    q = _one_minus_sq(zp) * _one_minus_sq(wp) / (den * den)
    return 2 * math.log1p(u) - math.log(q)


def _cdot(z, w):
    """``(re, im)`` of ``sum z_i conj(w_i)`` in real arithmetic.

    Swapping the arguments returns ``(re, -im)`` bit for bit, which keeps
    the distances exactly symmetric (complex SIMD kernels may fuse
    multiply-adds differently for the two orders).
    """
    zr, zi, wr, wi = z.real, z.imag, w.real, w.imag
    return np.sum(zr * wr + zi * wi, axis=-1), np.sum(zi * wr - zr * wi, axis=-1)


def _ball_terms(z, w):
    zp, wp = _vector_parts(z), _vector_parts(w)
    qz, qw = _one_minus_sq(zp), _one_minus_sq(wp)
    d = w - z
    dd = float(_cdot(d, d)[0])
    # |1 - <z,w>|^2 - (1-|z|^2)(1-|w|^2), written as a sum of nonnegative terms
    nz_side = dd * qz + math.hypot(*_cdot(z, d)) ** 2
    nw_side = dd * qw + math.hypot(*_cdot(w, d)) ** 2
    num = 0.5 * (nz_side + nw_side)
    return num, _one_minus_dot(zp, wp), qz * qw


def _kball(z, w):
    num, den, qq = _ball_terms(z, w)
    s = math.sqrt(num) / den
    if s < 0.5:
        return math.log1p(s) - math.log1p(-s)
    return 2 * math.log1p(s) - math.log(qq / (den * den))


def _dist(space, x, y):
    kind = space.kind
    if kind == "disc":
        return _rho(x, y)
    if kind == "ball":
        return _kball(x, y)
    if kind == "product":
        return max(_dist(f, a, b) for f, a, b in zip(space.factors, x, y))
    if kind == "polydisc":
        return max(_rho(complex(a), complex(b)) for a, b in zip(x, y))
    if kind == "real_line":
        return abs(x - y)
    if kind == "sup_rn":
        return float(np.max(np.abs(x - y)))
    if kind == "star":
        if x.edge == y.edge or x.offset == 0 or y.offset == 0:
            return abs(x.offset - y.offset)
        return x.offset + y.offset
    raise AssertionError(kind)


def distance(space, x, y):
    """Distance between two points of ``space``.

    Symmetric to the last bit and exactly zero on equal points. The star
    graph returns whatever number type its offsets carry, so
    ``fractions.Fraction`` offsets give exact path lengths.

    >>> round(distance(disc(), 0, 0.5), 6)
    1.098612
    """
    return _dist(space, as_point(space, x), as_point(space, y))


def rho_log_form(z, w):
    """Disc distance via log((1+u)/(1-u)), u = |w-z| / |1 - conj(z) w|."""
    return _rho(complex(z), complex(w))


def rho_atanh_form(z, w):
    """Disc distance via 2 artanh(sqrt(1 - (1-|w|^2)(1-|z|^2) / |1 - w conj(z)|^2)).

    The complement inside the square root is formed from the norms here,
    independently of the difference w - z used by :func:`rho_log_form`.
    """
    zp, wp = _scalar_parts(complex(z)), _scalar_parts(complex(w))
    den = _one_minus_dot(zp, wp)
    q = _one_minus_sq(zp) * _one_minus_sq(wp) / (den * den)
    s = math.sqrt(max(1.0 - q, 0.0))
    if s < 0.5:
        return 2 * math.atanh(s)
    # 2 artanh(s) = log((1+s)^2 / (1-s^2)) and 1 - s^2 = q
    return 2 * math.log1p(s) - math.log(q)


def _rho_batch(z, w):
    zp, wp = _scalar_parts(z), _scalar_parts(w)
    den = _one_minus_dot(wp, zp)
    u = np.abs(w - z) / den
    q = _one_minus_sq(zp) * _one_minus_sq(wp) / (den * den)
    with np.errstate(divide="ignore", invalid="ignore"):
        near = np.log1p(u) - np.log1p(-u)
        far = 2 * np.log1p(u) - np.log(q)
    return np.where(u < 0.5, near, far)


def _kball_batch(z, w):
    zp, wp = _vector_parts(z), _vector_parts(w)
    qz, qw = _one_minus_sq(zp), _one_minus_sq(wp)
    d = w - z
    dd = _cdot(d, d)[0]
    nz_side = dd * qz + np.hypot(*_cdot(z, d)) ** 2
    nw_side = dd * qw + np.hypot(*_cdot(w, d)) ** 2
    num = 0.5 * (nz_side + nw_side)
    den = _one_minus_dot(zp, wp)
    s = np.sqrt(num) / den
    with np.errstate(divide="ignore", invalid="ignore"):
        near = np.log1p(s) - np.log1p(-s)
        far = 2 * np.log1p(s) - np.log(qz * qw / (den * den))
    return np.where(s < 0.5, near, far)


def distance_batch(space, X, Y):
    """Vectorised distances between matched batches of points.

    Batches are arrays with a leading sample axis (``(N,)`` for scalar
    kinds, ``(N, n)`` for vector kinds), a pair ``(edges, offsets)`` of
    arrays for the star graph, and a tuple of factor batches for products.
    Inputs are assumed valid; no domain checks are made.
    """
    kind = space.kind
    if kind == "disc":
        return _rho_batch(np.asarray(X, complex), np.asarray(Y, complex))
    if kind == "ball":
        return _kball_batch(np.asarray(X, complex), np.asarray(Y, complex))
    if kind == "polydisc":
        return np.max(_rho_batch(np.asarray(X, complex), np.asarray(Y, complex)), axis=-1)
    if kind == "real_line":
        return np.abs(np.asarray(X, float) - np.asarray(Y, float))
    if kind == "sup_rn":
        return np.max(np.abs(np.asarray(X, float) - np.asarray(Y, float)), axis=-1)
    if kind == "star":
        (kx, sx), (ky, sy) = X, Y
        kx, sx, ky, sy = map(np.asarray, (kx, sx, ky, sy))
        along = (kx == ky) | (sx == 0) | (sy == 0)
        return np.where(along, np.abs(sx - sy), sx + sy)
    if kind == "product":
        parts = [distance_batch(f, a, b) for f, a, b in zip(space.factors, X, Y)]
        return np.max(np.stack(parts), axis=0)
    raise AssertionError(kind)


# ---------------------------------------------------------------------------
# geodesics


@dataclass(frozen=True)
class Segment:
    """Unit-speed geodesic ``[0, length] -> space`` from ``start`` to ``end``."""

    space: Space
    start: object
    end: object
    length: float
    at: Callable = field(repr=False, compare=False)

    def __call__(self, s):
        if s <= 0:
            if s < -1e-12 * max(1.0, self.length):
                raise ValueError(f"parameter {s} outside [0, {self.length}]")
            return self.start
        if s >= self.length:
            if s > self.length * (1 + 1e-12) + 1e-12:
                raise ValueError(f"parameter {s} outside [0, {self.length}]")
            return self.end
        return self.at(s)


def _disc_path(z, w):
    """Unit-speed parametrisation of the hyperbolic segment from z to w."""
    zc = z.conjugate()
    wp = (w - z) / (1 - zc * w)
    v = wp / abs(wp)

    def at(s):
        p = math.tanh(s / 2) * v
        return (p + z) / (1 + zc * p)

    return at


def _line_coefficients(x, y):
    """Write x = a v, y = b v for a unit vector v, if both lie on a complex line through 0."""
    nx, ny = np.linalg.norm(x), np.linalg.norm(y)
    v = y / ny if ny >= nx else x / nx
    a, b = complex(np.vdot(v, x)), complex(np.vdot(v, y))
    if np.linalg.norm(x - a * v) > LINE_TOL or np.linalg.norm(y - b * v) > LINE_TOL:
        return None
    return v, a, b


def connect(space, x, y):
    """Geodesic segment from ``x`` to ``y``.

    Supported: real line and sup-Rn (straight segments), disc (Moebius
    transport of a radial segment), ball pairs lying on one complex line
    through the origin, polydisc and products (per-factor segments run at
    constant speed ``d_j / d``), and star-graph pairs on a common edge.

    Raises
    ------
    UnsupportedSpace
        Ball pairs off a common complex line, star pairs on different edges.
    """
    x = as_point(space, x)
    y = as_point(space, y)
    length = _dist(space, x, y)
    kind = space.kind
    if length == 0:
        return Segment(space, x, y, 0.0, lambda s: x)
    if kind == "real_line":
        step = math.copysign(1.0, y - x)
        return Segment(space, x, y, length, lambda s: x + step * s)
    if kind == "sup_rn":
        return Segment(space, x, y, length, lambda s: _readonly(x + (y - x) * (s / length)))
    if kind == "disc":
        return Segment(space, x, y, length, _disc_path(x, y))
    if kind == "ball":
        line = _line_coefficients(x, y)
        if line is None:
            raise UnsupportedSpace("ball connectors are limited to pairs on a complex line through the origin")
        v, a, b = line
        path = _disc_path(a, b)
        return Segment(space, x, y, length, lambda s: _readonly(path(s) * v))
    if kind == "star":
        if not (x.edge == y.edge or x.offset == 0 or y.offset == 0):
            raise UnsupportedSpace("star graph segments must stay on a single edge")
        edge = x.edge if x.offset != 0 else y.edge
        step = 1 if y.offset >= x.offset else -1
        return Segment(space, x, y, length, lambda s: StarPoint(edge, x.offset + step * s))
    if kind in ("product", "polydisc"):
        fs = factor_spaces(space)
        xs, ys = split_point(space, x), split_point(space, y)
        pieces = [connect(f, a, b) for f, a, b in zip(fs, xs, ys)]

        def at(s):
            return join_point(space, [p(s * p.length / length) for p in pieces])

        return Segment(space, x, y, length, at)
    raise AssertionError(kind)


@dataclass(frozen=True)
class BoundaryRay:
    """Closed-form unit-speed geodesic ray from the basepoint towards ``target``.

    Disc and ball rays are ``tanh(t/2) * xi``; polydisc rays move the
    coordinates in ``J`` in lockstep; real rays are ``b + t * u`` with
    ``u`` the signed indicator of ``J``.
    """

    space: Space
    target: BoundaryPoint

    extent = math.inf
    breakpoints = None

    @property
    def origin(self):
        return self.space.basepoint

    def __call__(self, t):
        if t < 0:
            raise ValueError("rays are parametrised on [0, inf)")
        kind = self.space.kind
        J, dirs = self.target.J, self.target.directions
        if kind == "disc":
            return math.tanh(t / 2) * dirs[0]
        if kind == "ball":
            return _readonly(math.tanh(t / 2) * np.asarray(dirs[0], dtype=complex))
        if kind == "polydisc":
            z = np.zeros(self.space.dim, dtype=complex)
            r = math.tanh(t / 2)
            for j, d in zip(J, dirs):
                z[j] = r * d
            return _readonly(z)
        if kind == "real_line":
            return self.origin + dirs[0] * t
        if kind == "sup_rn":
            u = np.zeros(self.space.dim)
            u[list(J)] = dirs
            return _readonly(self.origin + t * u)
        raise AssertionError(kind)

    def radius(self, t):
        return distance(self.space, self(t), self.origin)


def boundary_ray(space, xi):
    """Geodesic ray from the basepoint of ``space`` to the boundary point ``xi``.

    Raises
    ------
    UnsupportedSpace
        For the star graph and for products (use
        :func:`horolib.detour.product_busemann`), and for disc-type spaces
        whose basepoint is not the origin.
    """
    if space.kind in ("star", "product"):
        raise UnsupportedSpace(f"no closed-form boundary rays on {space}")
    validate_boundary(space, xi)
    if space.kind in ("disc", "ball", "polydisc") and np.any(np.asarray(space.basepoint) != 0):
        raise UnsupportedSpace("closed-form rays need the origin as basepoint")
    return BoundaryRay(space, xi)
