"""Seeded verification suites, one per acceptance criterion.

Each suite returns a :class:`SuiteResult` with its worst residual, sample
count and wall-clock time; :func:`run` collects them into a
:class:`VerifyReport`.
"""

import math
import time
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from . import detour, embeddings, geo, horo, sampling
from . import spaces as sp
from .detour import ExceedsCutoff, Finite

DEFAULT_SEED = 7


@dataclass(frozen=True)
class SuiteResult:
    number: int
    name: str
    passed: bool
    worst: float
    tol: float
    count: int
    seconds: float
    budget: float = None
    detail: str = ""

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        budget = "" if self.budget is None else f" (budget {self.budget:g} s)"
        text = (
            f"criterion {self.number:2d} [{status}] {self.name}: worst={self.worst:.3e} "
            f"tol={self.tol:.0e} n={self.count} time={self.seconds:.2f} s{budget}"
        )
        return text + (f" | {self.detail}" if self.detail else "")

    def to_json(self, timing=True):
        out = {
            "criterion": self.number,
            "name": self.name,
            "passed": self.passed,
            "worst": self.worst,
            "tol": self.tol,
            "count": self.count,
            "detail": self.detail,
        }
        if timing:
            out["seconds"] = self.seconds
            out["budget"] = self.budget
        return out


@dataclass(frozen=True)
class VerifyReport:
    seed: int
    results: tuple
    seconds: float

    @property
    def passed(self):
        return all(r.passed for r in self.results)

    def to_json(self, timing=True):
        out = {
            "seed": self.seed,
            "passed": self.passed,
            "suites": [r.to_json(timing) for r in self.results],
        }
        if timing:
            out["seconds"] = self.seconds
        return out


def _finish(number, name, worst, tol, count, t0, budget=None, ok=True, detail=""):
    seconds = time.perf_counter() - t0
    passed = bool(ok and worst <= tol and (budget is None or seconds < budget))
    if budget is not None and seconds >= budget:
        detail = (detail + "; " if detail else "") + "over time budget"
    return SuiteResult(number, name, passed, float(worst), tol, count, seconds, budget, detail)


def _gauged(rng, size, top=3.0):
    a = rng.uniform(0, top, size=size)
    a[rng.integers(size)] = 0.0
    return tuple(float(x) for x in a - a.min())


def _random_J(rng, p):
    size = int(rng.integers(1, p + 1))
    return tuple(sorted(rng.choice(p, size=size, replace=False).tolist()))


AXIOM_SPACES = (
    sp.real_line(),
    sp.sup_rn(3),
    sp.disc(),
    sp.ball(2),
    sp.polydisc(2),
    sp.star_graph(),
    sp.product(sp.disc(), sp.ball(2), sp.real_line()),
)


def metric_axioms(seed=DEFAULT_SEED, count=10_000):
    """Symmetry (exact), triangle inequality (1e-12) and d(x, x) = 0 per space kind."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    worst, asym, self_d = 0.0, 0.0, 0.0
    for space in AXIOM_SPACES:
        X, Y, Z = (sampling.random_batch(space, rng, count) for _ in range(3))
        dxy = sp.distance_batch(space, X, Y)
        dyz = sp.distance_batch(space, Y, Z)
        dxz = sp.distance_batch(space, X, Z)
        asym = max(asym, float(np.max(np.abs(dxy - sp.distance_batch(space, Y, X)))))
        self_d = max(self_d, float(np.max(np.abs(sp.distance_batch(space, X, X)))))
        worst = max(worst, float(np.max(dxz - dxy - dyz)))
    detail = f"asymmetry={asym:.1e} self-distance={self_d:.1e} over {len(AXIOM_SPACES)} kinds"
    return _finish(
        1, "metric axioms", max(worst, 0.0), 1e-12, count * len(AXIOM_SPACES), t0, 2.0,
        ok=asym == 0 and self_d == 0, detail=detail,
    )


def _mpc(z):
    return mpmath.mpc(float(z.real), float(z.imag))


def _line_rho(x, y, v):
    """High-precision rho between the coordinates of x and y along the unit vector v / ||v||."""
    V = [_mpc(c) for c in v]
    norm = mpmath.sqrt(sum(abs(c) ** 2 for c in V))
    a = sum(_mpc(p) * mpmath.conj(c) for p, c in zip(x, V)) / norm
    b = sum(_mpc(p) * mpmath.conj(c) for p, c in zip(y, V)) / norm
    u = abs(b - a) / abs(1 - mpmath.conj(a) * b)
    return float(mpmath.log((1 + u) / (1 - u)))


def formula_checks(seed=DEFAULT_SEED, count=10_000):
    """Both disc forms, ball-on-a-line versus disc, product versus factor max."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    D, B = sp.disc(), sp.ball(2)
    forms = 0.0
    for _ in range(count):
        z, w = sampling.random_point(D, rng), sampling.random_point(D, rng)
        forms = max(forms, abs(sp.rho_log_form(z, w) - sp.rho_atanh_form(z, w)))
    # the rounded points lam * v sit at line coordinates slightly off lam and mu,
    # so the reference is rho at their exact coordinates along v / ||v||
    line = 0.0
    with mpmath.workdps(40):
        for _ in range(count):
            v = np.asarray(sampling.random_boundary(B, rng).directions[0])
            lam, mu = sampling.random_point(D, rng), sampling.random_point(D, rng)
            x, y = sp.as_point(B, lam * v), sp.as_point(B, mu * v)
            line = max(line, abs(sp.distance(B, x, y) - _line_rho(x, y, v)))
    P = sp.product(D, B, sp.polydisc(2))
    exact = True
    for _ in range(count // 10):
        x, y = sampling.random_point(P, rng), sampling.random_point(P, rng)
        parts = [sp.distance(f, a, b) for f, a, b in zip(P.factors, x, y)]
        exact &= sp.distance(P, x, y) == max(parts)
    detail = f"forms={forms:.1e} complex-line={line:.1e} product-max-exact={exact}"
    return _finish(2, "formula cross-checks", max(forms, line), 1e-12, 2 * count + count // 10, t0, ok=exact, detail=detail)


def horo_limit_law(seed=DEFAULT_SEED, count=100):
    """h_{(1-10^-k) xi}(z), k = 1..7, against the closed ball horofunction."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    B = sp.ball(2)
    worst = 0.0
    for _ in range(count):
        xi = sampling.random_boundary(B, rng)
        z = sampling.random_point(B, rng)
        v = np.asarray(xi.directions[0])
        seq = [(1 - 10.0**-k) * v for k in range(1, 8)]
        est = horo.horofunction_limit_estimate(B, seq, z)
        worst = max(worst, abs(est.value - horo.BallBoundary(v)(z)))
    return _finish(3, "ball horofunction limit law", worst, 1e-6, count, t0, 1.0)


def busemann_ray_identity(seed=DEFAULT_SEED, count=20, t_max=20.0):
    """h_xi(gamma_xi(t)) = -t on t = 0, 0.5, ..., t_max."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    B = sp.ball(2)
    ts = np.arange(0.0, t_max + 0.25, 0.5)
    per_t = np.zeros(len(ts))
    for _ in range(count):
        ray = sp.boundary_ray(B, sampling.random_boundary(B, rng))
        h = horo.ray_horofunction(ray)
        for i, t in enumerate(ts):
            per_t[i] = max(per_t[i], abs(h(ray(float(t))) + t))
    bad = np.nonzero(per_t > 1e-9)[0]
    reach = ts[-1] if not len(bad) else ts[bad[0] - 1] if bad[0] else None
    detail = f"within tolerance for t <= {reach:g}" if reach is not None else "fails at t = 0"
    return _finish(4, "Busemann ray identity", float(per_t.max()), 1e-9, count * len(ts), t0, detail=detail)


def _construction(rng):
    """Random product space, index set, rays and gauged offsets."""
    if rng.uniform() < 0.25:
        space = sp.product(sp.ball(2), sp.disc())
    else:
        space = sp.polydisc(int(rng.integers(1, 5)))
    fs = sp.factor_spaces(space)
    J = _random_J(rng, len(fs))
    rays = {j: sp.boundary_ray(fs[j], sampling.random_boundary(fs[j], rng)) for j in J}
    return space, rays, _gauged(rng, len(J))


def decomposition_roundtrip(seed=DEFAULT_SEED, count=50):
    """decompose(product_busemann(J, alpha).witness) recovers J and alpha."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    worst, ok = 0.0, True
    for _ in range(count):
        space, rays, alpha = _construction(rng)
        wb = detour.product_busemann(space, rays, alpha)
        dec = horo.decompose_product_horofunction(space, wb.witness)
        ok &= dec.J == wb.h.J
        if dec.J == wb.h.J:
            worst = max(worst, float(np.max(np.abs(np.subtract(dec.alpha, alpha)))))
    return _finish(5, "product decomposition round trip", worst, 1e-6, count, t0, ok=ok, detail=f"J recovered={ok}")


def witness_quality(seed=DEFAULT_SEED, count=50):
    """Product Busemann witnesses: tail defect and radius identities at 1e-9."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    defect, ident = 0.0, 0.0
    for _ in range(count):
        space, rays, alpha = _construction(rng)
        wb = detour.product_busemann(space, rays, alpha)
        rep = wb.check(eps=1e-9)
        defect = max(defect, rep.sup)
        fs = sp.factor_spaces(space)
        y0 = sp.split_point(space, wb.witness[0])
        for z in wb.witness[1:]:
            zs = sp.split_point(space, z)
            dinf = sp._dist(space, z, wb.witness[0])
            for j, a in zip(wb.h.J, alpha):
                ident = max(ident, abs(dinf - sp._dist(fs[j], zs[j], y0[j]) - a))
    detail = f"tail defect={defect:.1e} radius identity={ident:.1e}"
    return _finish(6, "product Busemann witness quality", max(defect, ident), 1e-9, count, t0, detail=detail)


def variation_law(seed=DEFAULT_SEED, count=100):
    """delta between composites with offsets alpha, beta equals ||alpha - beta||_var."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    worst, ok = 0.0, True
    for _ in range(count):
        p = int(rng.integers(1, 5))
        space = sp.polydisc(p)
        J = _random_J(rng, p)
        rays = {j: sp.boundary_ray(sp.disc(), sampling.random_boundary(sp.disc(), rng)) for j in J}
        alpha, beta = _gauged(rng, len(J)), _gauged(rng, len(J))
        a = detour.product_busemann(space, rays, alpha)
        b = detour.product_busemann(space, rays, beta)
        d = detour.detour_distance(a, b)
        if not isinstance(d, Finite):
            ok = False
            continue
        worst = max(worst, abs(d.value - detour.variation_norm(np.subtract(alpha, beta))))
    return _finish(7, "detour distance equals variation norm", worst, 1e-5, count, t0, 10.0, ok=ok)


# witness length for divergence certificates: tanh(t/2) stays below 1 - 1e-10
DIVERGENCE_T_MAX = 23.0


def ball_singletons(seed=DEFAULT_SEED, count=50, min_angle=1e-3):
    """Distinct ball boundary points: delta exceeds M = 20; H(h, h) = 0 within 1e-9."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    B = sp.ball(2)
    exceeded, zero = 0, 0.0
    for _ in range(count):
        while True:
            xi, eta = sampling.random_boundary(B, rng), sampling.random_boundary(B, rng)
            c = np.vdot(np.asarray(xi.directions[0]), np.asarray(eta.directions[0])).real
            if math.acos(min(1.0, c)) >= min_angle:
                break
        a = detour.boundary_witness(B, xi, t_max=DIVERGENCE_T_MAX)
        b = detour.boundary_witness(B, eta, t_max=DIVERGENCE_T_MAX)
        d = detour.detour_distance(a, b, cutoff=20.0)
        exceeded += isinstance(d, ExceedsCutoff)
        w = detour.boundary_witness(B, xi)
        h = detour.detour_cost(w, w.h)
        zero = max(zero, abs(h.value) if isinstance(h, Finite) else math.inf)
    detail = f"ExceedsCutoff {exceeded}/{count}; |H(h,h)|={zero:.1e}"
    return _finish(8, "distinct ball points at infinite detour distance", zero, 1e-9, count, t0, ok=exceeded == count, detail=detail)


def _delta_matches(d1, d2, tol):
    if isinstance(d1, ExceedsCutoff) and isinstance(d2, ExceedsCutoff):
        return 0.0
    if isinstance(d1, Finite) and isinstance(d2, Finite):
        return abs(d1.value - d2.value)
    return math.inf


def transport(seed=DEFAULT_SEED, count=20):
    """Diagonal disc -> bidisc and unitary ball maps preserve delta."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    D, B = sp.disc(), sp.ball(2)
    diag = embeddings.diagonal(2)
    worst = 0.0
    for i in range(count):
        xi = sampling.random_boundary(D, rng)
        eta = xi if i % 4 == 0 else sampling.random_boundary(D, rng)
        a, b = detour.boundary_witness(D, xi), detour.boundary_witness(D, eta)
        ta, tb = detour.transport_under_embedding(diag, a), detour.transport_under_embedding(diag, b)
        worst = max(worst, _delta_matches(detour.detour_distance(a, b), detour.detour_distance(ta, tb), 2e-6))
    for i in range(count):
        q, _ = np.linalg.qr(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
        U = embeddings.unitary(q)
        xi = sampling.random_boundary(B, rng)
        eta = xi if i % 4 == 0 else sampling.random_boundary(B, rng)
        a, b = detour.boundary_witness(B, xi), detour.boundary_witness(B, eta)
        ta, tb = detour.transport_under_embedding(U, a), detour.transport_under_embedding(U, b)
        worst = max(worst, _delta_matches(detour.detour_distance(a, b), detour.detour_distance(ta, tb), 2e-6))
    return _finish(9, "embedding transport preserves delta", worst, 2e-6, 2 * count, t0)


def star_caveat(seed=DEFAULT_SEED, count=20, tips=40):
    """Tip sequence on the star graph: the limit is h_b, exactly in rationals."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    S = sp.star_graph()
    seq = [sp.StarPoint(n, Fraction(n)) for n in range(1, tips + 1)]
    h_b = horo.InternalPeak(S, S.basepoint)
    worst = Fraction(0)
    for _ in range(count):
        k = int(rng.integers(1, 21))
        z = sp.StarPoint(k, Fraction(int(rng.integers(0, 8 * k + 1)), 8))
        est = horo.horofunction_limit_estimate(S, seq, z, tol=0)
        worst = max(worst, abs(est.value - h_b(z)), est.spread)
    return _finish(10, "star graph tip sequence converges to h_b", float(worst), 0.0, count, t0, ok=worst == 0)


def radius_inversion(seed=DEFAULT_SEED, count=100, beta_max=12.0):
    """Radius inversion on disc, ball and product rays; t increases with beta."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    D, B = sp.disc(), sp.ball(2)
    P = sp.product(D, B)
    pw = detour.product_busemann(
        P,
        {0: sp.boundary_ray(D, sampling.random_boundary(D, rng)), 1: sp.boundary_ray(B, sampling.random_boundary(B, rng))},
        (0.0, 1.0),
    )
    rays = (
        sp.boundary_ray(D, sampling.random_boundary(D, rng)),
        sp.boundary_ray(B, sampling.random_boundary(B, rng)),
        geo.induced_ray(P, pw.witness),
    )
    worst, monotone = 0.0, True
    per_ray = [count // 3 + (1 if i < count % 3 else 0) for i in range(3)]
    for ray, m in zip(rays, per_ray):
        betas = np.sort(rng.uniform(0, beta_max, size=m))
        ts = []
        for beta in betas:
            t, _ = geo.ray_point_at_radius(ray, float(beta))
            worst = max(worst, abs(ray.radius(t) - beta))
            ts.append(t)
        monotone &= all(a < b for a, b in zip(ts, ts[1:]))
    return _finish(11, "radius inversion", worst, 1e-10, count, t0, ok=monotone, detail=f"t monotone={monotone}")


SUITES = {
    1: metric_axioms,
    2: formula_checks,
    3: horo_limit_law,
    4: busemann_ray_identity,
    5: decomposition_roundtrip,
    6: witness_quality,
    7: variation_law,
    8: ball_singletons,
    9: transport,
    10: star_caveat,
    11: radius_inversion,
}

TOTAL_BUDGET = 60.0


def run(suites=None, seed=DEFAULT_SEED):
    """Run the selected suites (default: all) and collect a :class:`VerifyReport`."""
    t0 = time.perf_counter()
    numbers = sorted(SUITES) if suites is None else list(suites)
    results = tuple(SUITES[n](seed) for n in numbers)
    return VerifyReport(seed, results, time.perf_counter() - t0)
