"""JSON forms of spaces, points, boundary points, horofunctions and results.

Spaces::

    {"kind": "disc"}                {"kind": "ball", "n": 2}
    {"kind": "polydisc", "n": 3}    {"kind": "sup_rn", "n": 2}
    {"kind": "real_line"}           {"kind": "star"}
    {"kind": "product", "factors": [...]}

with an optional ``"basepoint"`` on non-product kinds. Complex numbers
are ``[re, im]`` pairs, star-graph points ``{"edge": k, "offset": s}``
(exact rational offsets as ``"p/q"`` strings), product points lists of
factor points. Floats are written with ``repr``, so round trips are
lossless.
"""

import json
from fractions import Fraction

import numpy as np

from . import detour, horo
from . import spaces as sp
from .errors import HorolibError
from .geo import InducedRay
from .horo import LimitEstimate

_KIND_ALIASES = {
    "disc": "disc",
    "poincaredisc": "disc",
    "ball": "ball",
    "complexball": "ball",
    "polydisc": "polydisc",
    "sup_rn": "sup_rn",
    "suprn": "sup_rn",
    "real_line": "real_line",
    "realline": "real_line",
    "star": "star",
    "stargraph": "star",
    "product": "product",
}


class SchemaError(HorolibError, ValueError):
    """Malformed JSON document."""


def loads(text):
    """Parse JSON text, mapping syntax errors to :class:`SchemaError`."""
    if not isinstance(text, str):
        return text
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"malformed JSON: {e}")


def _need(obj, key):
    if not isinstance(obj, dict) or key not in obj:
        raise SchemaError(f"missing field {key!r} in {obj!r}")
    return obj[key]


# spaces


def space_from_json(obj):
    obj = loads(obj)
    kind = _KIND_ALIASES.get(str(_need(obj, "kind")).lower())
    if kind is None:
        raise SchemaError(f"unknown space kind {obj['kind']!r}")
    if kind == "product":
        factors = _need(obj, "factors")
        if not isinstance(factors, list) or not factors:
            raise SchemaError("product factors must be a non-empty list")
        space = sp.product(*(space_from_json(f) for f in factors))
        if "basepoint" in obj:
            space = sp.with_basepoint(space, point_from_json(space, obj["basepoint"]))
        return space
    if kind in ("ball", "polydisc", "sup_rn"):
        n = _need(obj, "n")
        if isinstance(n, bool) or not isinstance(n, int):
            raise SchemaError(f"dimension must be an integer, got {n!r}")
        space = {"ball": sp.ball, "polydisc": sp.polydisc, "sup_rn": sp.sup_rn}[kind](n)
    else:
        space = {"disc": sp.disc, "real_line": sp.real_line, "star": sp.star_graph}[kind]()
    if obj.get("basepoint") is not None:
        space = sp.with_basepoint(space, point_from_json(space, obj["basepoint"]))
    return space


def space_to_json(space):
    if space.kind == "product":
        return {"kind": "product", "factors": [space_to_json(f) for f in space.factors]}
    out = {"kind": space.kind}
    if space.kind in ("ball", "polydisc", "sup_rn"):
        out["n"] = space.dim
    if space.base is not None:
        out["basepoint"] = point_to_json(space, space.basepoint)
    return out


# points


def _complex_json(z):
    return [float(z.real), float(z.imag)]


def point_from_json(space, obj):
    obj = loads(obj)
    if space.kind == "star":
        if isinstance(obj, dict):
            obj = (_need(obj, "edge"), _need(obj, "offset"))
        if isinstance(obj, (list, tuple)) and len(obj) == 2 and isinstance(obj[1], str):
            try:
                obj = (obj[0], Fraction(obj[1]))
            except ValueError:
                raise SchemaError(f"bad rational offset {obj[1]!r}")
        return sp.as_point(space, tuple(obj) if isinstance(obj, list) else obj)
    if space.kind == "product":
        if not isinstance(obj, list) or len(obj) != len(space.factors):
            raise sp.DimensionMismatch(f"expected a list of {len(space.factors)} factor points")
        return tuple(point_from_json(f, o) for f, o in zip(space.factors, obj))
    return sp.as_point(space, obj)


def point_to_json(space, x):
    kind = space.kind
    if kind == "product":
        return [point_to_json(f, xj) for f, xj in zip(space.factors, x)]
    if kind == "real_line":
        return float(x)
    if kind == "sup_rn":
        return [float(c) for c in x]
    if kind == "disc":
        return _complex_json(x)
    if kind in ("ball", "polydisc"):
        return [_complex_json(c) for c in x]
    if kind == "star":
        s = x.offset
        return {"edge": x.edge, "offset": f"{s.numerator}/{s.denominator}" if isinstance(s, Fraction) else s}
    raise AssertionError(kind)


# boundary points


def boundary_from_json(space, obj):
    """Boundary point of ``space``.

    Disc: ``[re, im]``; ball: list of pairs; real line: ``1`` or ``-1``;
    sup-Rn: ``{"J": [...], "signs": [...]}``; polydisc:
    ``{"J": [...], "xis": [[re, im], ...]}``. Indices are 0-based.
    """
    obj = loads(obj)
    kind = space.kind
    if kind == "disc":
        xi = sp.disc_boundary(obj)
    elif kind == "ball":
        xi = sp.ball_boundary(obj)
    elif kind == "real_line":
        xi = sp.sign_boundary((0,), (obj,))
    elif kind == "sup_rn":
        xi = sp.sign_boundary(_need(obj, "J"), _need(obj, "signs"))
    elif kind == "polydisc":
        xi = sp.polydisc_boundary(_need(obj, "J"), _need(obj, "xis"))
    else:
        raise sp.UnsupportedSpace(f"no boundary points for {space}")
    sp.validate_boundary(space, xi)
    return xi


def boundary_to_json(space, xi):
    kind = space.kind
    if kind == "disc":
        return _complex_json(xi.directions[0])
    if kind == "ball":
        return [_complex_json(c) for c in xi.directions[0]]
    if kind == "real_line":
        return xi.directions[0]
    if kind == "sup_rn":
        return {"J": list(xi.J), "signs": list(xi.directions)}
    if kind == "polydisc":
        return {"J": list(xi.J), "xis": [_complex_json(c) for c in xi.directions]}
    raise sp.UnsupportedSpace(f"no boundary points for {space}")


# horofunctions


def horo_from_json(obj, space=None):
    """Horofunction from its tagged form ``{"type": ..., ...}``.

    ``space`` is used when the document has no ``"space"`` field.
    """
    obj = loads(obj)
    tag = _need(obj, "type")
    if "space" in obj:
        space = space_from_json(obj["space"])
    if tag == "disc_boundary":
        space = sp.disc() if space is None else space
        return horo.DiscBoundary(sp._complex_scalar(_need(obj, "xi")), space)
    if tag == "ball_boundary":
        return horo.BallBoundary(sp.ball_boundary(_need(obj, "xi")).directions[0], space)
    if tag == "rebased":
        inner = horo_from_json(_need(obj, "inner"))
        return horo.Rebased(inner, point_from_json(inner.space, _need(obj, "basepoint")))
    if space is None:
        raise SchemaError(f"horofunction {tag!r} needs a space")
    if tag == "internal_peak":
        return horo.InternalPeak(space, point_from_json(space, _need(obj, "y")))
    if tag == "sup_sign":
        return horo.SupSign(space, _need(obj, "J"), _need(obj, "signs"), obj.get("alpha"))
    if tag == "product_composite":
        fs = sp.factor_spaces(space)
        J = [int(j) for j in _need(obj, "J")]
        factors = _need(obj, "factors")
        if len(factors) != len(J) or any(j < 0 or j >= len(fs) for j in J):
            raise SchemaError("product_composite needs one factor per index in J, in range")
        hs = tuple(horo_from_json(f, fs[j]) for j, f in zip(J, factors))
        return horo.ProductComposite(space, tuple(J), hs, obj.get("alpha"))
    if tag == "sampled":
        return horo.SampledHorofunction(space, tuple(point_from_json(space, y) for y in _need(obj, "sequence")))
    raise SchemaError(f"unknown horofunction type {tag!r}")


def horo_to_json(h):
    if isinstance(h, horo.DiscBoundary):
        return {"type": "disc_boundary", "xi": _complex_json(h.xi), "space": space_to_json(h.space)}
    if isinstance(h, horo.BallBoundary):
        return {"type": "ball_boundary", "xi": [_complex_json(c) for c in h.xi], "space": space_to_json(h.space)}
    if isinstance(h, horo.Rebased):
        return {
            "type": "rebased",
            "inner": horo_to_json(h.inner),
            "basepoint": point_to_json(h.space, h.space.basepoint),
        }
    out = {"space": space_to_json(h.space)}
    if isinstance(h, horo.InternalPeak):
        out.update(type="internal_peak", y=point_to_json(h.space, h.peak))
    elif isinstance(h, horo.SupSign):
        out.update(type="sup_sign", J=list(h.J), signs=list(h.signs), alpha=list(h.alpha))
    elif isinstance(h, horo.ProductComposite):
        out.update(
            type="product_composite",
            J=list(h.J),
            factors=[horo_to_json(f) for f in h.factors],
            alpha=list(h.alpha),
        )
    elif isinstance(h, horo.SampledHorofunction):
        out.update(type="sampled", sequence=[point_to_json(h.space, y) for y in h.sequence])
    else:
        raise TypeError(f"cannot serialise {type(h).__name__}")
    return {"type": out.pop("type"), **out}


# rays and results


def ray_from_json(space, obj):
    """``{"boundary": XI}`` for a closed-form ray or ``{"anchors": [...]}`` for an induced one."""
    from .geo import induced_ray

    obj = loads(obj)
    if isinstance(obj, dict) and "anchors" in obj:
        return induced_ray(space, [point_from_json(space, y) for y in obj["anchors"]])
    return sp.boundary_ray(space, boundary_from_json(space, _need(obj, "boundary")))


def ray_to_json(ray):
    if isinstance(ray, InducedRay):
        return {"anchors": [point_to_json(ray.space, y) for y in ray.anchors]}
    return {"boundary": boundary_to_json(ray.space, ray.target)}


def _num(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    return float(x)


def limit_to_json(est):
    return {
        "value": _num(est.value),
        "spread": _num(est.spread),
        "converged": bool(est.converged),
        "tol": est.tol,
        "window": est.window,
        "values": [_num(v) for v in est.values],
    }


def limit_from_json(obj):
    obj = loads(obj)
    return LimitEstimate(
        obj["value"], obj["spread"], obj["converged"], obj["tol"], obj["window"], tuple(obj.get("values", ()))
    )


def detour_value_to_json(v):
    if isinstance(v, detour.ExceedsCutoff):
        return {"exceeds_cutoff": {"M": v.cutoff, "last_n": v.last_n}}
    out = {"finite": float(v.value)}
    d = v.diagnostics
    if isinstance(d, LimitEstimate):
        out["diagnostics"] = limit_to_json(d)
    elif isinstance(d, tuple):
        out["diagnostics"] = [limit_to_json(e) for e in d]
    return out


def detour_value_from_json(obj):
    obj = loads(obj)
    if "exceeds_cutoff" in obj:
        e = obj["exceeds_cutoff"]
        return detour.ExceedsCutoff(e["M"], e["last_n"])
    d = obj.get("diagnostics")
    if isinstance(d, list):
        d = tuple(limit_from_json(e) for e in d)
    elif d is not None:
        d = limit_from_json(d)
    return detour.Finite(_need(obj, "finite"), d)


def witness_to_json(wb):
    return {"h": horo_to_json(wb.h), "witness": [point_to_json(wb.space, z) for z in wb.witness]}


def witness_from_json(obj):
    obj = loads(obj)
    h = horo_from_json(_need(obj, "h"))
    return detour.WitnessedBusemann(h, tuple(point_from_json(h.space, z) for z in _need(obj, "witness")))


def dumps(obj):
    """Deterministic JSON text (sorted keys, ``repr`` floats)."""
    return json.dumps(obj, sort_keys=True, default=_default)


def _default(o):
    if isinstance(o, np.generic):
        return o.item()
    if isinstance(o, Fraction):
        return f"{o.numerator}/{o.denominator}"
    raise TypeError(f"{type(o).__name__} is not JSON serialisable")
