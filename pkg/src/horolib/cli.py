"""Command-line front end.

Every JSON-valued option takes inline JSON or ``@path`` to a file. Results
go to standard output as JSON with sorted keys; CSV goes to ``--out``.
Exit status: 0 on success, 1 on an error (with an error document on
standard output), 2 when ``verify`` finds a failing suite.
"""

import argparse
import csv
import io
import math
import os
import sys

import numpy as np

from . import detour, embeddings, geo, horo, verify
from . import serialize as se
from . import spaces as sp
from .errors import HorolibError, Undecided

ENV_TOL = "HOROLIB_TOL"
# digits that round-trip a double
CSV_DIGITS = 17


class UsageError(HorolibError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _default_tol():
    raw = os.environ.get(ENV_TOL)
    if raw is None:
        return horo.DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise UsageError(f"{ENV_TOL}={raw!r} is not a number")
    if not tol > 0:
        raise UsageError(f"{ENV_TOL} must be positive")
    return tol


def _json_arg(text):
    if text is None:
        return None
    if text.startswith("@"):
        try:
            with open(text[1:]) as f:
                text = f.read()
        except OSError as e:
            raise argparse.ArgumentTypeError(f"cannot read {text[1:]}: {e.strerror}")
    try:
        return se.loads(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _fmt(x):
    return f"{x:.{CSV_DIGITS}g}"


def _coord_columns(space, prefix=""):
    kind = space.kind
    if kind == "product":
        return [c for j, f in enumerate(space.factors) for c in _coord_columns(f, f"{prefix}f{j}_")]
    if kind == "disc":
        return [f"{prefix}re", f"{prefix}im"]
    if kind in ("ball", "polydisc"):
        return [f"{prefix}{p}{k}" for k in range(space.dim) for p in ("re", "im")]
    if kind == "real_line":
        return [f"{prefix}x"]
    if kind == "sup_rn":
        return [f"{prefix}x{k}" for k in range(space.dim)]
    if kind == "star":
        return [f"{prefix}edge", f"{prefix}offset"]
    raise AssertionError(kind)


def _coord_values(space, x):
    kind = space.kind
    if kind == "product":
        return [v for f, xj in zip(space.factors, x) for v in _coord_values(f, xj)]
    if kind == "disc":
        return [_fmt(x.real), _fmt(x.imag)]
    if kind in ("ball", "polydisc"):
        return [_fmt(v) for c in x for v in (c.real, c.imag)]
    if kind == "real_line":
        return [_fmt(x)]
    if kind == "sup_rn":
        return [_fmt(v) for v in x]
    if kind == "star":
        return [str(x.edge), _fmt(float(x.offset))]
    raise AssertionError(kind)


def _write_csv(path, header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    if path in (None, "-"):
        sys.stdout.write(buf.getvalue())
    else:
        with open(path, "w", newline="") as f:
            f.write(buf.getvalue())


# witnesses and embeddings


def _ray_entry(space, obj):
    if isinstance(obj, dict) and ("boundary" in obj or "anchors" in obj):
        return se.ray_from_json(space, obj)
    return sp.boundary_ray(space, se.boundary_from_json(space, obj))


def _witness(space, obj):
    """Witness from ``{"ray": XI, ...}``, ``{"product": {...}}`` or ``{"h": H, "witness": [...]}``."""
    if not isinstance(obj, dict):
        raise se.SchemaError("a witness must be a JSON object")
    if "h" in obj:
        return se.witness_from_json(obj)
    if space is None:
        raise UsageError("--space is required for constructed witnesses")
    if "ray" in obj:
        xi = se.boundary_from_json(space, obj["ray"])
        return detour.boundary_witness(space, xi, float(obj.get("t_max", 15.0)), float(obj.get("step", 1.0)))
    if "product" in obj:
        p = obj["product"]
        return _product_witness(space, p.get("J"), p.get("rays"), p.get("alpha"), p.get("n_max", 15), p.get("step", 1.0))
    raise se.SchemaError("witness needs one of 'ray', 'product' or 'h'")


def _product_witness(space, J, rays, alpha, n_max=15, step=1.0):
    if J is None or rays is None or alpha is None:
        raise se.SchemaError("product witnesses need 'J', 'rays' and 'alpha'")
    if len(J) != len(rays):
        raise se.SchemaError("one ray per index in J is required")
    fs = sp.factor_spaces(space)
    for j in J:
        if not isinstance(j, int) or not 0 <= j < len(fs):
            raise se.SchemaError(f"index {j!r} out of range for {space}")
    factor_rays = {j: _ray_entry(fs[j], r) for j, r in zip(J, rays)}
    return detour.product_busemann(space, factor_rays, alpha, n_max=int(n_max), step=float(step))


def _embedding(obj):
    kind = obj.get("kind") if isinstance(obj, dict) else None
    if kind == "identity":
        return embeddings.identity(se.space_from_json(obj["space"]))
    if kind == "diagonal":
        space = se.space_from_json(obj["space"]) if "space" in obj else None
        return embeddings.diagonal(int(obj.get("k", 2)), space)
    if kind == "factor_inclusion":
        extra = se.space_from_json(obj["extra"])
        c = se.point_from_json(extra, obj["c"]) if "c" in obj else None
        return embeddings.factor_inclusion(se.space_from_json(obj["space"]), extra, c)
    if kind == "unitary":
        U = np.array([[sp._complex_scalar(c) for c in row] for row in obj["U"]])
        return embeddings.unitary(U)
    if kind == "mobius":
        return embeddings.mobius(sp._complex_scalar(obj["a"]), float(obj.get("theta", 0.0)))
    raise se.SchemaError(f"unknown embedding {kind!r}")


def _part_key_json(key):
    ids = []
    for i in key.ids:
        if isinstance(i, detour.PartKey):
            ids.append(_part_key_json(i))
        else:
            tag, v = i
            if isinstance(v, complex):
                v = [v.real, v.imag]
            elif isinstance(v, tuple):
                v = [[c.real, c.imag] for c in v]
            ids.append([tag, v])
    return {"J": list(key.J), "ids": ids}


# commands


def cmd_dist(a):
    space = se.space_from_json(a.space)
    x, y = se.point_from_json(space, a.x), se.point_from_json(space, a.y)
    return {"distance": sp.distance(space, x, y)}


def cmd_horo_eval(a):
    space = se.space_from_json(a.space) if a.space is not None else None
    h = se.horo_from_json(a.horo, space)
    return {"value": float(horo.evaluate(h, se.point_from_json(h.space, a.x)))}


def cmd_horo_limit(a):
    space = se.space_from_json(a.space)
    seq = [se.point_from_json(space, y) for y in a.seq]
    est = horo.horofunction_limit_estimate(space, seq, se.point_from_json(space, a.z), a.tol, a.window)
    return {"estimate": se.limit_to_json(est)}


def cmd_defect(a):
    space = se.space_from_json(a.space)
    seq = [se.point_from_json(space, y) for y in a.seq]
    if a.m is not None or a.k is not None:
        if a.m is None or a.k is None:
            raise UsageError("--m and --k go together")
        return {"defect": geo.almost_geodesic_defect(space, seq, a.m, a.k)}
    rep = geo.is_almost_geodesic(space, seq, a.eps, a.N)
    return {
        "report": {
            "sup": rep.sup,
            "N": rep.N,
            "eps": rep.eps,
            "window": rep.window,
            "verdict": rep.verdict,
            "monotone": rep.monotone,
            "notes": list(rep.notes),
            "defects": [[m, k, v] for (m, k), v in sorted(rep.defects.items())],
        }
    }


def cmd_induced_ray(a):
    space = se.space_from_json(a.space)
    ray = geo.induced_ray(space, [se.point_from_json(space, y) for y in a.seq])
    ts = np.linspace(0.0, ray.extent, a.count)
    rows = []
    for t in ts:
        t = float(t)
        x = ray(t)
        rows.append([_fmt(t), _fmt(sp._dist(space, x, ray.origin))] + _coord_values(space, x))
    _write_csv(a.out, ["t", "radius"] + _coord_columns(space), rows)
    return {"breakpoints": list(ray.breakpoints), "extent": ray.extent, "samples": a.count, "csv": a.out}


def cmd_ray_at_radius(a):
    space = se.space_from_json(a.space)
    ray = _ray_entry(space, a.ray)
    t, x = geo.ray_point_at_radius(ray, a.beta)
    return {"t": t, "point": se.point_to_json(space, x), "radius": sp._dist(space, x, ray.origin)}


def cmd_detour(a):
    space = se.space_from_json(a.space) if a.space is not None else None
    wa, wb = _witness(space, a.a), _witness(space, a.b)
    if a.cost:
        value = detour.detour_cost(wa, wb.h, a.cutoff, a.tol, a.window)
    else:
        value = detour.detour_distance(wa, wb, a.cutoff, a.tol, a.window)
    return {"detour": se.detour_value_to_json(value)}


def cmd_part(a):
    space = se.space_from_json(a.space) if a.space is not None else None
    h = se.horo_from_json(a.horo, space)
    key = detour.part_key(h)
    out = {"J": list(key.J), "dimension": detour.part_dimension(h), "key": _part_key_json(key)}
    if a.other is not None:
        other = detour.part_key(se.horo_from_json(a.other, space))
        out["same_part"] = detour.same_part(key, other)
    return out


def cmd_construct_busemann(a):
    space = se.space_from_json(a.space)
    wb = _product_witness(space, a.J, a.rays, a.alpha, a.n_max, a.step)
    rep = wb.check()
    out = se.witness_to_json(wb)
    out["check"] = {"sup": rep.sup, "eps": rep.eps, "N": rep.N, "verdict": rep.verdict}
    return out


def cmd_transport(a):
    phi = _embedding(a.embedding)
    src = _witness(phi.source, a.witness)
    residual = phi.verify()
    out = se.witness_to_json(detour.transport_under_embedding(phi, src))
    out["embedding"] = {"name": phi.name, "probe_residual": residual}
    return out


def _level_point(h, r, centre, direction, to_point, s_max):
    """First crossing of h = r along centre + s * direction, s in (0, s_max)."""
    grid = np.linspace(0.0, s_max, 257)[1:]
    lo = 0.0
    for s in grid:
        if h(to_point(centre + s * direction)) >= r:
            hi = float(s)
            for _ in range(200):
                mid = 0.5 * (lo + hi)
                if mid <= lo or mid >= hi:
                    break
                if h(to_point(centre + mid * direction)) >= r:
                    hi = mid
                else:
                    lo = mid
            return to_point(centre + hi * direction)
        lo = float(s)
    return None


def cmd_horoball_csv(a):
    space = se.space_from_json(a.space) if a.space is not None else None
    h = se.horo_from_json(a.horo, space)
    space = h.space
    inner = h.inner if isinstance(h, horo.Rebased) else h
    axis = None
    if isinstance(inner, (horo.DiscBoundary, horo.BallBoundary)):
        axis = np.asarray(inner.xi, dtype=complex)
    elif isinstance(inner, horo.InternalPeak) and np.linalg.norm(inner.peak) > 0:
        axis = np.asarray(inner.peak, dtype=complex)
    if space.kind == "disc":
        # sample directly in the disc; the diameter points at the boundary point or peak
        u, d0 = None, (complex(axis) / abs(axis) if axis is not None else 1 + 0j)
        to_point = lambda w: w
    elif space.kind == "ball":
        # level set on the complex line through the origin towards the boundary point or peak (else e_1)
        u = axis if axis is not None else np.eye(space.dim, dtype=complex)[0]
        u = u / np.linalg.norm(u)
        d0 = 1 + 0j
        to_point = lambda w: w * u
    else:
        raise sp.UnsupportedSpace("horoball-csv samples level sets on the disc or the ball")
    # centre: midpoint of the sub-level interval along the diameter through d0
    ss = np.linspace(-1 + 1e-9, 1 - 1e-9, 4001)
    vals = np.array([h(to_point(float(s) * d0)) for s in ss])
    i0 = int(np.argmin(vals))
    if not vals[i0] < a.r:
        raise HorolibError(f"no point with h < {a.r} found on the sampled slice")
    lo = hi = i0
    while lo > 0 and vals[lo - 1] < a.r:
        lo -= 1
    while hi < len(ss) - 1 and vals[hi + 1] < a.r:
        hi += 1
    centre = 0.5 * float(ss[lo] + ss[hi]) * d0
    rows = []
    for i in range(a.count):
        th = 2 * math.pi * i / a.count
        d = complex(math.cos(th), math.sin(th))
        # distance from centre to the unit circle along d, kept inside the open disc
        b = (centre.conjugate() * d).real
        s_max = (-b + math.sqrt(b * b + 1 - abs(centre) ** 2)) * (1 - 1e-12)
        x = _level_point(h, a.r, centre, d, to_point, s_max)
        if x is not None:
            rows.append([_fmt(th)] + _coord_values(space, x))
    _write_csv(a.out, ["theta"] + _coord_columns(space), rows)
    return {"points": len(rows), "requested": a.count, "r": a.r, "csv": a.out}


def cmd_verify(a):
    if a.suite == "all":
        numbers = None
    else:
        try:
            numbers = [int(n) for n in a.suite.split(",")]
        except ValueError:
            raise UsageError(f"--suite takes 'all' or comma-separated criterion numbers, got {a.suite!r}")
        unknown = [n for n in numbers if n not in verify.SUITES]
        if unknown:
            raise UsageError(f"unknown suites {unknown}")
    report = verify.run(numbers, a.seed)
    # wall-clock goes to stderr so stdout stays byte-identical across runs
    for r in report.results:
        print(r.line(), file=sys.stderr)
    print(f"total {report.seconds:.2f} s (budget {verify.TOTAL_BUDGET:g} s)", file=sys.stderr)
    return report.to_json(timing=False), (0 if report.passed else 2)


def build_parser():
    p = _Parser(prog="horolib", description="Horofunctions, detour distances and parts of model metric spaces.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def add(name, fn, help):
        q = sub.add_parser(name, help=help)
        q.set_defaults(fn=fn)
        return q

    def tol_opts(q):
        q.add_argument("--tol", type=float, default=None, help=f"stabilisation tolerance (default: ${ENV_TOL} or 1e-6)")
        q.add_argument("--window", type=int, default=horo.DEFAULT_WINDOW, help="tail window K")

    q = add("dist", cmd_dist, "distance between two points")
    q.add_argument("--space", required=True, type=_json_arg)
    q.add_argument("--x", required=True, type=_json_arg)
    q.add_argument("--y", required=True, type=_json_arg)

    q = add("horo-eval", cmd_horo_eval, "evaluate a horofunction")
    q.add_argument("--horo", required=True, type=_json_arg)
    q.add_argument("--space", type=_json_arg)
    q.add_argument("--x", required=True, type=_json_arg)

    q = add("horo-limit", cmd_horo_limit, "estimate lim d(z, y^n) - d(b, y^n)")
    q.add_argument("--space", required=True, type=_json_arg)
    q.add_argument("--seq", required=True, type=_json_arg)
    q.add_argument("--z", required=True, type=_json_arg)
    tol_opts(q)

    q = add("defect", cmd_defect, "almost-geodesic defects of a sequence")
    q.add_argument("--space", required=True, type=_json_arg)
    q.add_argument("--seq", required=True, type=_json_arg)
    q.add_argument("--eps", type=float, default=1e-6)
    q.add_argument("--N", type=int, default=0)
    q.add_argument("--m", type=int)
    q.add_argument("--k", type=int)

    q = add("induced-ray", cmd_induced_ray, "ray induced by a sequence; radius profile as CSV")
    q.add_argument("--space", required=True, type=_json_arg)
    q.add_argument("--seq", required=True, type=_json_arg)
    q.add_argument("--count", type=int, default=200)
    q.add_argument("--out", default=None, help="CSV path (default: standard output)")

    q = add("ray-at-radius", cmd_ray_at_radius, "smallest t with d(ray(t), ray(0)) = beta")
    q.add_argument("--space", required=True, type=_json_arg)
    q.add_argument("--ray", required=True, type=_json_arg)
    q.add_argument("--beta", required=True, type=float)

    q = add("detour", cmd_detour, "detour distance (or cost with --cost) between witnessed Busemann points")
    q.add_argument("--space", type=_json_arg)
    q.add_argument("--a", required=True, type=_json_arg)
    q.add_argument("--b", required=True, type=_json_arg)
    q.add_argument("--cutoff", type=float, default=detour.DEFAULT_DETOUR_CUTOFF)
    q.add_argument("--cost", action="store_true", help="only H(a, b)")
    tol_opts(q)

    q = add("part", cmd_part, "part key and dimension of a boundary horofunction")
    q.add_argument("--horo", required=True, type=_json_arg)
    q.add_argument("--space", type=_json_arg)
    q.add_argument("--other", type=_json_arg, help="second horofunction to compare parts with")

    q = add("construct-busemann", cmd_construct_busemann, "product Busemann point with witness")
    q.add_argument("--space", required=True, type=_json_arg)
    q.add_argument("--J", required=True, type=_json_arg)
    q.add_argument("--rays", required=True, type=_json_arg)
    q.add_argument("--alpha", required=True, type=_json_arg)
    q.add_argument("--n-max", dest="n_max", type=int, default=15)
    q.add_argument("--step", type=float, default=1.0)

    q = add("transport", cmd_transport, "push a witnessed Busemann point through an embedding")
    q.add_argument("--embedding", required=True, type=_json_arg)
    q.add_argument("--witness", required=True, type=_json_arg)

    q = add("horoball-csv", cmd_horoball_csv, "sample the level set h = r on the disc or ball as CSV")
    q.add_argument("--horo", required=True, type=_json_arg)
    q.add_argument("--space", type=_json_arg)
    q.add_argument("--r", type=float, default=0.0)
    q.add_argument("--count", type=int, default=360)
    q.add_argument("--out", default=None, help="CSV path (default: standard output)")

    q = add("verify", cmd_verify, "run the acceptance suites")
    q.add_argument("--suite", default="all")
    q.add_argument("--seed", type=int, default=verify.DEFAULT_SEED)
    return p


def _error(e):
    doc = {"error": {"type": type(e).__name__, "message": str(e)}}
    if isinstance(e, Undecided) and e.values:
        doc["error"]["values"] = [float(v) for v in e.values if not isinstance(v, list)]
    return doc


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        if hasattr(args, "tol") and args.tol is None:
            args.tol = _default_tol()
        result = args.fn(args)
        code = 0
        if isinstance(result, tuple):
            result, code = result
    except (HorolibError, ValueError, TypeError, KeyError, IndexError) as e:
        print(se.dumps(_error(e)))
        return 1
    print(se.dumps(result))
    return code


if __name__ == "__main__":
    sys.exit(main())
