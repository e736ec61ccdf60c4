"""Independent high-precision reference formulas (mpmath, 50 digits).

These never import horolib; tests compare the library against them.
"""

import mpmath as mp

mp.mp.dps = 50


def _c(z):
    return mp.mpc(complex(z))


def disc_distance(z, w):
    z, w = _c(z), _c(w)
    return 2 * mp.atanh(abs(z - w) / abs(1 - mp.conj(z) * w))


def _inner(z, w):
    return mp.fsum(_c(a) * mp.conj(_c(b)) for a, b in zip(z, w))


def ball_distance(z, w):
    q = (1 - _inner(z, z).real) * (1 - _inner(w, w).real) / abs(1 - _inner(z, w)) ** 2
    return 2 * mp.atanh(mp.sqrt(1 - q))


def disc_horofunction(xi, z):
    xi, z = _c(xi), _c(z)
    return mp.log(abs(xi - z) ** 2 / (1 - abs(z) ** 2))


def ball_horofunction(xi, z):
    n = mp.sqrt(_inner(xi, xi).real)
    xi = [_c(c) / n for c in xi]
    return mp.log(abs(1 - _inner(z, xi)) ** 2 / (1 - _inner(z, z).real))


def polydisc_distance(z, w):
    return max(disc_distance(a, b) for a, b in zip(z, w))


def star_distance(p, q):
    (k, s), (m, t) = p, q
    return abs(s - t) if k == m or s == 0 or t == 0 else s + t


def variation_norm(x):
    return max(x) - min(x)


def disc_ray(xi, t):
    return mp.tanh(mp.mpf(t) / 2) * _c(xi)
