"""Sums of a kernel over a zero set: explicit part plus an integral tail.

A zero set is described by explicit zeros ``x_n + i h_n`` and a list of
tail branches.  A branch holds the zeros ``sign * scale * s**power +
i height(s)`` for integer ``s >= start``; its sum is replaced by the
midpoint-shifted integral over ``[start - 1/2, inf)``, whose error is
controlled by the second derivative of the summand in ``s``.

Kernels are vectorised callables ``kernel(z, x, h)`` broadcasting a
column of evaluation points ``z`` against rows of zeros.  ``z`` may be
complex; ``Re z`` decides which zeros are "near".
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from numpy.polynomial import chebyshev as cheb

Kernel = Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray]

EPS = np.finfo(float).eps
_DIRECT_BUDGET = 2.5e7  # entries per direct block before switching to near/far
_threads = 1


def set_threads(n: int) -> None:
    """Number of worker threads used for per-point tail quadratures."""
    global _threads
    _threads = max(1, int(n))


@dataclass(frozen=True)
class TailBranch:
    """Zeros ``sign*scale*s**power + i*height(s)`` for integers ``s >= start``."""

    sign: int
    scale: float
    power: float
    start: int
    height: float | Callable[[np.ndarray], np.ndarray] = 1.0

    def position(self, s):
        return self.sign * self.scale * np.power(s, self.power)

    def heights(self, s):
        if callable(self.height):
            return np.asarray(self.height(s), dtype=float)
        return np.full_like(np.asarray(s, dtype=float), float(self.height))

    def spacing(self, s):
        """|dx/ds| at index ``s``."""
        return self.scale * self.power * np.power(s, self.power - 1.0)

    def index_of(self, x):
        """Continuous index whose zero has real part ``x`` (nan if none)."""
        u = self.sign * np.asarray(x, dtype=float) / self.scale
        with np.errstate(invalid="ignore"):
            return np.where(u > 0, np.power(np.abs(u), 1.0 / self.power), np.nan)

    @property
    def edge(self) -> float:
        """Real part of the first tail position ``start - 1/2``."""
        return float(self.position(self.start - 0.5))


# --------------------------------------------------------------------------
# explicit part


def _direct(kernel, z, xs, hs):
    out = np.zeros(z.shape, dtype=float)
    mass = np.zeros(z.shape, dtype=float)
    if xs.size == 0 or z.size == 0:
        return out, mass
    rows = max(1, int(_DIRECT_BUDGET // max(xs.size, 1)))
    for i in range(0, z.size, rows):
        zz = z[i : i + rows, None]
        for j in range(0, xs.size, 1 << 20):
            terms = kernel(zz, xs[None, j : j + (1 << 20)], hs[None, j : j + (1 << 20)])
            out[i : i + rows] += terms.sum(axis=1)
            mass[i : i + rows] += np.abs(terms).sum(axis=1)
    return out, mass


def _near_far(kernel, t, xs, hs, width=256.0, degree=28):
    """Explicit sum at many sorted real points.

    Points are cut into chunks of length ``width``; zeros within ``2*width``
    of a chunk are summed directly and the rest are interpolated from
    Chebyshev nodes.  The far field is analytic in an ellipse with
    parameter about 10, so ``degree`` 28 is far below double rounding.
    """
    order = np.argsort(t)
    ts = t[order]
    out = np.empty_like(ts)
    mass = np.empty_like(ts)
    i = 0
    n = ts.size
    while i < n:
        j = int(np.searchsorted(ts, ts[i] + width, side="right"))
        chunk = ts[i:j]
        if chunk.size < 4 * degree:
            v, m = _direct(kernel, chunk, xs, hs)
        else:
            a, b = chunk[0], chunk[-1]
            reach = 2.0 * max(b - a, 1.0)
            lo = int(np.searchsorted(xs, a - reach, side="left"))
            hi = int(np.searchsorted(xs, b + reach, side="right"))
            v, m = _direct(kernel, chunk, xs[lo:hi], hs[lo:hi])
            far_x = np.concatenate([xs[:lo], xs[hi:]])
            far_h = np.concatenate([hs[:lo], hs[hi:]])
            if far_x.size:
                mid, half = 0.5 * (a + b), 0.5 * (b - a)
                nodes = np.cos(np.pi * (np.arange(degree + 1) + 0.5) / (degree + 1))
                fv, fm = _direct(kernel, mid + half * nodes, far_x, far_h)
                coef = cheb.chebfit(nodes, fv, degree)
                u = (chunk - mid) / half if half > 0 else np.zeros_like(chunk)
                v = v + cheb.chebval(u, coef)
                m = m + np.max(fm)
        out[i:j] = v
        mass[i:j] = m
        i = j
    res = np.empty_like(out)
    res[order] = out
    mres = np.empty_like(mass)
    mres[order] = mass
    return res, mres


def explicit_sum(kernel: Kernel, z, xs, hs):
    """Sum over explicit zeros; returns (values, rounding error bound)."""
    z = np.asarray(z)
    xs = np.asarray(xs, dtype=float)
    hs = np.asarray(hs, dtype=float)
    if np.isrealobj(z) and z.size * xs.size > 4 * _DIRECT_BUDGET and z.size > 512:
        v, m = _near_far(kernel, z.astype(float), xs, hs)
    else:
        v, m = _direct(kernel, z, xs, hs)
    return v, 8 * EPS * m * math.sqrt(max(xs.size, 1)) + 1e-15 * np.abs(v)


# --------------------------------------------------------------------------
# tails


_GL_LO = np.polynomial.legendre.leggauss(24)
_GL_HI = np.polynomial.legendre.leggauss(48)


def _gauss(f, lo, hi, rule):
    x, w = rule
    mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
    s = mid[:, None] + half[:, None] * x[None, :]
    vals = f(s.ravel()).reshape(s.shape)
    return half * (vals @ w)


def integrate_panels(f, edges, tol_abs, rel=1e-13, max_iter=60, cap=4096):
    """Sum of integrals of a vectorised ``f`` over consecutive panels.

    All panels are refined together by bisection; a subinterval is
    accepted once its 24- and 48-point Gauss-Legendre values agree to its
    share of the tolerance (or to the rounding floor), and the difference
    of the two rules is the error reported.
    """
    edges = np.asarray(edges, dtype=float)
    lo, hi = edges[:-1].copy(), edges[1:].copy()
    keep = hi > lo
    lo, hi = lo[keep], hi[keep]
    length = float(np.sum(hi - lo)) if lo.size else 0.0
    cap = max(cap, 4 * lo.size)
    total = 0.0
    err = 0.0
    for _ in range(max_iter):
        if lo.size == 0:
            break
        g1 = _gauss(f, lo, hi, _GL_LO)
        g2 = _gauss(f, lo, hi, _GL_HI)
        diff = np.abs(g2 - g1)
        scale = abs(total) + float(np.sum(np.abs(g2)))
        lim = max(tol_abs, rel * scale) * (hi - lo) / max(length, 1e-300)
        # roundoff floor: the magnitude of the integrand over the interval
        g_abs = _gauss(lambda t: np.abs(f(t)), lo, hi, _GL_LO)
        ok = diff <= np.maximum(lim, 4096 * EPS * g_abs)
        if lo.size > cap:
            ok[:] = True
        total += float(np.sum(g2[ok]))
        err += float(np.sum(diff[ok]))
        mid = 0.5 * (lo[~ok] + hi[~ok])
        lo, hi = np.concatenate([lo[~ok], mid]), np.concatenate([mid, hi[~ok]])
    if lo.size:
        g2 = _gauss(f, lo, hi, _GL_HI)
        g1 = _gauss(f, lo, hi, _GL_LO)
        total += float(np.sum(g2))
        err += float(np.sum(np.abs(g2 - g1))) * 10.0
    return total, err


def _adaptive(f, a, b, tol_abs, rel=1e-13, max_iter=60, cap=4096):
    """Integral of a vectorised ``f`` over finite ``[a, b]`` by bisection."""
    return integrate_panels(f, [a, b], tol_abs, rel, max_iter, cap)


def _integrate(f, a, b, tol_abs=1e-16, rel=1e-13, cap=4096):
    """``int_a^b f`` with ``b`` possibly infinite: returns (value, error).

    The half-line is cut into pieces ``[a 2^k, a 2^(k+1)]``; once the piece
    values shrink geometrically the rest is summed as a geometric series,
    which is exact for power-law integrands and an overestimate for faster
    decay.
    """
    if b <= a:
        return 0.0, 0.0
    if math.isfinite(b):
        cuts = [a]
        while cuts[-1] > 0 and 2.0 * cuts[-1] < b and len(cuts) < 200:
            cuts.append(2.0 * cuts[-1])
        cuts.append(b)
        val = err = 0.0
        for lo, hi in zip(cuts[:-1], cuts[1:]):
            v, e = _adaptive(f, lo, hi, tol_abs, rel, cap=cap)
            val += v
            err += e
        return val, err
    start = max(a, 1.0)
    val, err = _integrate(f, a, start, tol_abs, rel, cap) if start > a else (0.0, 0.0)
    prev = None
    lo = start
    for _ in range(1200):
        v, e = _adaptive(f, lo, 2.0 * lo, tol_abs, rel, cap=cap)
        val += v
        err += e
        lo *= 2.0
        if prev is not None and prev != 0.0:
            r = v / prev
            if 0.0 <= r < 0.9 and abs(v) * r / (1.0 - r) < max(tol_abs, min(rel, 1e-3) * 1e-3 * abs(val)):
                rest = v * r / (1.0 - r)
                return val + rest, err + abs(rest)
        if v == 0.0 and prev == 0.0:
            return val, err
        prev = v
    raise RuntimeError("tail integral did not settle")


def _tail_point(kernel, zk, br: TailBranch):
    """Tail of one branch at one point; returns (value, error)."""
    s0 = br.start - 0.5
    pos = float(np.real(zk))
    zz = np.asarray([[zk]])

    def f(s):
        s = np.asarray(s, dtype=float)
        return kernel(zz, br.position(s)[None, :], br.heights(s)[None, :])[0]

    def d2(s):
        s = np.asarray(s, dtype=float)
        return np.abs(f(s + 0.5) - 2.0 * f(s) + f(s - 0.5))

    s_t = float(br.index_of(pos))
    value = 0.0
    err = 0.0
    if np.isfinite(s_t) and s_t > s0 - 1.0:
        # the point sits among the tail zeros: sum a window of them exactly
        h_t = float(br.heights(np.asarray(max(s_t, 1.0))))
        gap = float(br.spacing(max(s_t, 1.0)))
        half = int(min(2e6, math.ceil(40.0 * max(h_t, 1e-3) / max(gap, 1e-300)) + 2))
        lo = max(br.start, int(math.floor(s_t)) - half)
        hi = int(math.ceil(s_t)) + half
        idx = np.arange(lo, hi + 1, dtype=float)
        win, wmass = explicit_sum(kernel, np.asarray([zk]), br.position(idx), br.heights(idx))
        value += float(win[0])
        err += float(wmass[0])
        intervals = [(s0, lo - 0.5)] if lo - 0.5 > s0 else []
        intervals.append((hi + 0.5, math.inf))
        for a, b in intervals:
            v, e = _integrate(f, a, b)
            # Euler-Maclaurin: (1/24) int |f''| <= (1/24) int |second difference|
            # over unit steps scaled by 4; taken with a factor 2 margin
            em, _ = _integrate(d2, max(a, 1.0), b, tol_abs=1e-13, rel=1e-3, cap=64)
            em *= 1.01
            value += v
            err += e + em / 3.0
    else:
        v, e = _integrate(f, s0, math.inf)
        value += v
        err += e + abs(float(f([s0 + 0.5])[0]) - float(f([s0 - 0.5])[0])) / 12.0
    return value, err


def _tail_global(kernel, t, br: TailBranch, degree):
    """Tail on a real interval far from the branch, by Chebyshev nodes."""
    a, b = float(np.min(t)), float(np.max(t))
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    nodes = np.cos(np.pi * (np.arange(degree + 1) + 0.5) / (degree + 1))
    vals = np.empty(degree + 1)
    errs = np.empty(degree + 1)
    for k, u in enumerate(nodes):
        vals[k], errs[k] = _tail_point(kernel, mid + half * u, br)
    coef = cheb.chebfit(nodes, vals, degree)
    u = (t - mid) / half
    trunc = float(np.max(np.abs(coef[-3:])))
    return cheb.chebval(u, coef), np.full(t.shape, np.max(errs) + trunc)


def tail_sum(kernel: Kernel, z, br: TailBranch):
    """Tail contribution of ``br`` at every point of ``z``."""
    z = np.asarray(z)
    if z.size == 0:
        return np.zeros(0), np.zeros(0)
    if np.isrealobj(z) and z.size > 64:
        t = z.astype(float)
        a, b = float(np.min(t)), float(np.max(t))
        edge = br.edge
        dist = (edge - b) if br.sign > 0 else (a - edge)
        if dist > 0 and b > a:
            u = 1.0 + 2.0 * dist / (b - a)
            rho = u + math.sqrt(u * u - 1.0)
            degree = int(math.ceil(40.0 / math.log(rho))) + 2
            if degree <= 96 and degree < z.size:
                return _tail_global(kernel, t, br, degree)
    flat = z.ravel()
    if _threads > 1 and flat.size > 8:
        with ThreadPoolExecutor(_threads) as ex:
            res = list(ex.map(lambda zk: _tail_point(kernel, zk, br), flat))
    else:
        res = [_tail_point(kernel, zk, br) for zk in flat]
    vals = np.array([r[0] for r in res]).reshape(z.shape)
    errs = np.array([r[1] for r in res]).reshape(z.shape)
    return vals, errs


def zero_sum(kernel: Kernel, z, xs, hs, tails: Sequence[TailBranch] = ()):
    """Full sum over explicit zeros and tail branches: (values, error)."""
    z = np.asarray(z)
    v, e = explicit_sum(kernel, z, xs, hs)
    for br in tails:
        tv, te = tail_sum(kernel, z, br)
        v = v + tv
        e = e + te
    return v, e
