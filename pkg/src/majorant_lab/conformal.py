"""Christoffel-Schwarz map of the upper half-plane onto the complement of a half-strip.

The target is ``Delta = C minus {Re w >= 0, -2 <= Im w <= 0}``.  The map

    eta(z) = a2 * int_0^z zeta^(1/2) (zeta + a)^(1/2) d zeta

sends ``0`` to the corner ``0`` and the pre-vertex ``-a`` to the corner
``-2i``.  Keeping the domain on the left while the real line runs from
``-inf`` to ``+inf`` forces the boundary order: lower edge ``Im w = -2``
(for ``t < -a``), the segment ``[-2i, 0]`` (for ``-a <= t <= 0``), then
the upper edge ``Im w = 0`` (for ``t > 0``).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

__all__ = [
    "ConformalMapParams",
    "QuadratureTolerance",
    "NotInDomain",
    "NewtonNonconvergence",
    "fit_eta_params",
    "eta",
    "eta_prime",
    "eta_inverse",
    "in_delta",
    "boundary_distance",
]

SLIT_DEPTH = 2.0
DETOUR_GAP = 0.05


class QuadratureTolerance(RuntimeError):
    pass


class NotInDomain(ValueError):
    """The point lies inside the removed half-strip."""


class NewtonNonconvergence(RuntimeError):
    def __init__(self, msg, z=None, residual=None):
        super().__init__(msg)
        self.z = z
        self.residual = residual


@dataclass(frozen=True)
class ConformalMapParams:
    """``eta(z) = a1 + a2 int_{z0}^z zeta^(1/2) (zeta + a)^(1/2) d zeta``."""

    a1: complex
    a2: float
    a: float
    z0: complex

    def __post_init__(self):
        if not self.a2 > 0 or not self.a > 0:
            raise ValueError("a2 and a must be positive")

    @property
    def vertex(self) -> float:
        """Pre-image of the corner ``-2i``."""
        return -self.a


def _quad(f, a, b, **kw):
    # full_output keeps quad quiet without global warning filters
    return integrate.quad(f, a, b, epsabs=1e-14, epsrel=1e-13, limit=400, full_output=1, **kw)[:2]


def fit_eta_params() -> ConformalMapParams:
    """Fix ``z0 = 0``, ``a1 = 0``, ``a = 1`` and the scale ``a2``.

    ``a2 = 2 / int_0^1 t^(1/2) (1-t)^(1/2) dt`` makes the segment between
    the two corners have length 2; the integral is evaluated with the
    algebraic endpoint weight.
    """
    length, _ = _quad(lambda t: 1.0, 0.0, 1.0, weight="alg", wvar=(0.5, 0.5))
    return ConformalMapParams(0j, 2.0 / length, 1.0, 0j)


def eta_prime(params: ConformalMapParams, z):
    z = np.asarray(z, dtype=complex)
    return params.a2 * np.sqrt(z) * np.sqrt(z + params.a)


def _seg_point_dist(p, a, b):
    d = b - a
    if d == 0:
        return abs(p - a)
    u = ((p - a) * d.conjugate()).real / abs(d) ** 2
    u = min(1.0, max(0.0, u))
    return abs(p - (a + u * d))


def _seg_seg_dist(a, b, c, d):
    # closest approach of segments [a, b] and [c, d]; zero if they cross
    def cross(o, p, q):
        return ((p - o) * (q - o).conjugate()).imag

    d1, d2 = cross(c, d, a), cross(c, d, b)
    d3, d4 = cross(a, b, c), cross(a, b, d)
    if d1 * d2 < 0 and d3 * d4 < 0:
        return 0.0
    return min(_seg_point_dist(a, c, d), _seg_point_dist(b, c, d), _seg_point_dist(c, a, b), _seg_point_dist(d, a, b))


def _path(params, z: complex):
    """Straight segment ``0 -> z`` or the detour through ``i(1 + |z|)``."""
    lo = complex(-params.a, 0.0)
    hi = complex(-DETOUR_GAP, 0.0)
    if abs(z) > DETOUR_GAP and z.real < 0 and _seg_point_dist(z, lo, hi) >= DETOUR_GAP:
        if _seg_seg_dist(0j, z, lo, hi) < DETOUR_GAP:
            top = 1j * (1.0 + abs(z))
            return [(0j, top), (top, z)]
    return [(0j, z)]


def _segment(params, p: complex, q: complex):
    d = q - p
    a = params.a

    def g(u):
        zeta = p + u * d
        return cmath.sqrt(zeta) * cmath.sqrt(zeta + a) * d

    # singular parameters: zeta = 0 or zeta = -a on the segment
    sing = []
    for s in (0j, complex(-a, 0)):
        if d != 0:
            u = ((s - p) * d.conjugate()).real / abs(d) ** 2
            if 0 < u < 1 and abs(p + u * d - s) < 1e-14 * (1 + abs(s)):
                sing.append(u)
    parts = [0.0] + sorted(sing) + [1.0]
    val_re = val_im = err = 0.0
    for lo, hi in zip(parts[:-1], parts[1:]):
        if lo == 0.0 and abs(p) == 0.0:
            # sqrt(zeta) ~ sqrt(u) at the start: fold it into the weight
            base = cmath.sqrt(d)
            h = lambda u, b=base: (b * cmath.sqrt(p + u * d + a) * d)  # noqa: E731
            w = dict(weight="alg", wvar=(0.5, 0.0))
            if hi < 1.0:
                w = None
            if w:
                r, er = _quad(lambda u: h(u).real, lo, hi, **w)
                i, ei = _quad(lambda u: h(u).imag, lo, hi, **w)
            else:
                r, er = _quad(lambda u: g(u).real, lo, hi)
                i, ei = _quad(lambda u: g(u).imag, lo, hi)
        else:
            r, er = _quad(lambda u: g(u).real, lo, hi)
            i, ei = _quad(lambda u: g(u).imag, lo, hi)
        val_re += r
        val_im += i
        err += er + ei
    return complex(val_re, val_im), err


def _eta_point(params, z: complex, tol: float):
    if z.imag < 0:
        raise ValueError("eta is defined for Im z >= 0")
    if z == 0:
        return params.a1, 0.0
    total = 0j
    err = 0.0
    for p, q in _path(params, z):
        v, e = _segment(params, p, q)
        total += v
        err += e
    err *= params.a2
    if err > tol * (1.0 + abs(total) * params.a2):
        raise QuadratureTolerance(f"eta quadrature error {err:.3g} at z={z}")
    return params.a1 + params.a2 * total, err


def eta(params: ConformalMapParams, z, *, tol: float = 1e-10, with_error: bool = False):
    """``eta(z)`` for ``Im z >= 0`` by adaptive quadrature along a pole-free path."""
    z = np.asarray(z, dtype=complex)
    res = [_eta_point(params, complex(v), tol) for v in z.ravel()]
    vals = np.array([r[0] for r in res], dtype=complex).reshape(z.shape)
    errs = np.array([r[1] for r in res]).reshape(z.shape)
    if z.ndim == 0:
        vals, errs = complex(vals), float(errs)
    return (vals, errs) if with_error else vals


def in_delta(w, *, closed: bool = True) -> np.ndarray:
    """Membership in ``Delta``; ``closed`` admits the boundary."""
    w = np.asarray(w, dtype=complex)
    if closed:
        inside_strip = (w.real > 0) & (w.imag < 0) & (w.imag > -SLIT_DEPTH)
    else:
        inside_strip = (w.real >= 0) & (w.imag <= 0) & (w.imag >= -SLIT_DEPTH)
    return ~inside_strip


def boundary_distance(w) -> np.ndarray:
    """Distance from ``w`` to the boundary of ``Delta``."""
    w = np.asarray(w, dtype=complex)
    x, y = w.real, w.imag
    top = np.hypot(np.minimum(x, 0.0), y)
    bottom = np.hypot(np.minimum(x, 0.0), y + SLIT_DEPTH)
    side = np.hypot(x, np.maximum(np.maximum(y, -y - SLIT_DEPTH), 0.0))
    return np.minimum(np.minimum(top, bottom), side)


def _upper_roots(v: complex, power: float):
    """Solutions ``r`` of ``r**(1/power) = v`` in the closed upper half-plane."""
    out = []
    for k in range(3):
        r = abs(v) ** power * cmath.exp(1j * power * (cmath.phase(v) + 2 * math.pi * k))
        if r.imag >= -1e-12:
            out.append(complex(r.real, max(r.imag, 0.0)))
    return out


def eta_inverse(params: ConformalMapParams, w, *, rtol: float = 1e-9, max_iter: int = 80):
    """Solve ``eta(z) = w`` by damped Newton iteration.

    Seeds: the asymptotic ``sqrt(2 w / a2)`` and the local inverses at the
    two corners, where ``eta`` behaves like a 3/2 power.  Converged when
    ``|eta(z) - w| <= rtol (1 + |w|)``.
    """
    w = np.asarray(w, dtype=complex)
    if not np.all(in_delta(w)):
        raise NotInDomain("point inside the removed half-strip")
    out = np.array([_invert(params, complex(v), rtol, max_iter) for v in w.ravel()], dtype=complex)
    return complex(out[0]) if w.ndim == 0 else out.reshape(w.shape)


def _invert(params, w, rtol, max_iter):
    if w == params.a1:
        return 0j
    a2, a = params.a2, params.a
    v = w - params.a1
    seeds = []
    s = cmath.sqrt(2 * v / a2)
    seeds.append(s if s.imag >= 0 else -s)
    seeds += _upper_roots(1.5 * v / a2 / math.sqrt(a), 2.0 / 3.0)
    lo = -SLIT_DEPTH * 1j
    seeds += [complex(-a) + r for r in _upper_roots(1.5 * (v - lo) / (1j * a2 * math.sqrt(a)), 2.0 / 3.0)]
    target = rtol * (1.0 + abs(w))
    best = (math.inf, None)
    for z in seeds:
        z = complex(z.real, max(z.imag, 0.0))
        res = abs(complex(eta(params, z)) - w)
        for _ in range(max_iter):
            if res <= 1e-3 * target:
                break
            d = complex(eta_prime(params, z))
            if d == 0:
                z = z + 1e-6j
                d = complex(eta_prime(params, z))
            step = (complex(eta(params, z)) - w) / d
            lam = 1.0
            while lam > 1e-6:
                zn = z - lam * step
                if zn.imag < 0:
                    zn = complex(zn.real, 0.0)
                rn = abs(complex(eta(params, zn)) - w)
                if rn < res:
                    break
                lam *= 0.5
            else:
                break
            z, res = zn, rn
        if res < best[0]:
            best = (res, z)
        if res <= target:
            return z
    res, z = best
    raise NewtonNonconvergence(f"Newton residual {res:.3g} above {target:.3g}", z, res)
