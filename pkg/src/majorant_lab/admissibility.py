"""Decision procedures for admissibility.

Verdicts produced here are one-directional: a ``True`` from a sufficiency
check certifies admissibility, a ``False`` only means the check did not
certify anything.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Callable

import numpy as np
from scipy.integrate import trapezoid

from ._lp import simplex
from .blaschke import phase
from .fitting import slope_fit
from .transforms import MajorantProfile, hilbert, log_integral
from .zeros import NonMonotoneLaw, Y_LAWS, ZeroSequence

__all__ = [
    "InsufficientResolution",
    "InvalidExponent",
    "TailUndetermined",
    "MainlyIncreasingReport",
    "mainly_increasing_check",
    "SufficiencyReport",
    "sufficiency_pipeline",
    "inclusion_check",
    "inclusion_report",
    "ExponentVerdict",
    "limit_exponents",
    "TangentialVerdict",
    "tangential_classify",
    "CarlemanResult",
    "moment_bounds_from_heights",
    "carleman_test",
    "carleman_log_T",
    "WstarBound",
    "wstar_lower_bound",
    "wstar_bound",
    "DensityReport",
    "density_constants",
]

DEFAULT_C_LOW = 0.5
DEFAULT_C_HIGH = 4.0
DEFAULT_WINDOW = (-1e4, 1e4)


class InsufficientResolution(RuntimeError):
    """Halving the sample density moves the oscillation estimates too much."""


class InvalidExponent(ValueError):
    pass


class TailUndetermined(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# mainly increasing functions


@dataclass(frozen=True)
class MainlyIncreasingReport:
    verdict: bool
    d_points: np.ndarray = field(repr=False)
    increments: np.ndarray = field(repr=False)
    osc_f: np.ndarray = field(repr=False)
    osc_fprime: np.ndarray = field(repr=False)
    violated: str | None
    c: float = DEFAULT_C_LOW
    C: float = DEFAULT_C_HIGH
    window: tuple[float, float] = DEFAULT_WINDOW

    def witness(self) -> str:
        if self.violated:
            return self.violated
        return f"{self.d_points.size} points, max osc {self.max_osc:.3g}"

    @property
    def max_osc(self) -> float:
        parts = [a.max() for a in (self.osc_f, self.osc_fprime) if a.size]
        return float(max(parts)) if parts else 0.0


def _unit_crossings(t, v):
    """Greedy level crossings ``f(d_k) = f(t_0) + k``.

    Each ``d_k`` is the first point after ``d_{k-1}`` where the linear
    interpolant of the samples reaches the next level.  Returns the
    positions, the levels and ``seg``: ``d_k`` lies in
    ``(t[seg_k - 1], t[seg_k]]``.
    """
    n = v.size
    pos, lev, seg = [t[0]], [v[0]], [0]
    i = 0
    level = v[0] + 1.0
    while True:
        # forward scan in doubling chunks: linear in the gap length
        start, width, j = i, 64, -1
        while start < n:
            hits = np.flatnonzero(v[start : start + width] >= level)
            if hits.size:
                j = start + int(hits[0])
                break
            start += width
            width *= 2
        if j <= 0:
            break
        a, b = v[j - 1], v[j]
        frac = 1.0 if b == a else min(1.0, max(0.0, (level - a) / (b - a)))
        pos.append(t[j - 1] + frac * (t[j] - t[j - 1]))
        lev.append(level)
        seg.append(j)
        i = j
        level += 1.0
    return np.asarray(pos), np.asarray(lev), np.asarray(seg, dtype=int)


def _oscillations(t, v, pos, ends, seg):
    """Oscillation on each ``[d_k, d_{k+1}]`` from interior samples and end values."""
    if pos.size < 2:
        return np.zeros(0)
    lo_end = np.minimum(ends[:-1], ends[1:])
    hi_end = np.maximum(ends[:-1], ends[1:])
    first, last = seg[:-1], seg[1:]
    nonempty = last > first
    hi, lo = hi_end.copy(), lo_end.copy()
    if np.any(nonempty):
        starts = first[nonempty]
        stops = last[nonempty]
        # reduceat over [start, next start); build contiguous index ranges
        idx = np.concatenate([np.arange(a, b) for a, b in zip(starts, stops)])
        offs = np.concatenate([[0], np.cumsum(stops - starts)[:-1]])
        hi[nonempty] = np.maximum(hi[nonempty], np.maximum.reduceat(v[idx], offs))
        lo[nonempty] = np.minimum(lo[nonempty], np.minimum.reduceat(v[idx], offs))
    return hi - lo


def _analyse(t, v, dv, c, C):
    pos, lev, seg = _unit_crossings(t, v)
    inc = np.diff(lev)
    osc_f = _oscillations(t, v, pos, lev, seg)
    dv_ends = np.interp(pos, t, dv)
    osc_d = _oscillations(t, dv, pos, dv_ends, seg)
    violated = None
    if pos.size < 3:
        violated = "no unbounded increasing sequence with unit increments"
    else:
        gaps = np.diff(pos)
        if t[-1] - pos[-1] > 2.0 * gaps.max():
            violated = "sequence stalls before the end of the window"
        elif np.any(inc < c) or np.any(inc > C):
            violated = "increment outside [c, C]"
        elif np.any(osc_f > C):
            violated = "oscillation of f above C"
        elif np.any(osc_d > C):
            violated = "oscillation of f' above C"
    return pos, inc, osc_f, osc_d, violated


def _samples(f, window, samples, fprime):
    if callable(f):
        t = np.linspace(window[0], window[1], samples)
        v = np.asarray(f(t), dtype=float)
        dv = None if fprime is None else np.asarray(fprime(t), dtype=float)
    else:
        t, v = (np.asarray(a, dtype=float) for a in f)
        keep = (t >= window[0]) & (t <= window[1])
        t, v = t[keep], v[keep]
        dv = None if fprime is None else np.asarray(fprime, dtype=float)[keep]
    if t.size < 5 or np.any(np.diff(t) <= 0):
        raise ValueError("need at least five strictly increasing samples")
    if dv is None:
        dv = np.gradient(v, t, edge_order=2)
    return t, v, dv


def mainly_increasing_check(
    f,
    window: tuple[float, float] = DEFAULT_WINDOW,
    c: float = DEFAULT_C_LOW,
    C: float = DEFAULT_C_HIGH,
    *,
    samples: int = 200_001,
    fprime=None,
) -> MainlyIncreasingReport:
    """Decide whether ``f`` is mainly increasing on the window.

    ``f`` is a vectorised callable (sampled uniformly) or a pair
    ``(t, values)``.  ``fprime`` optionally supplies the exact derivative
    (callable or samples); otherwise finite differences are used.

    The witness ``d_n`` is built greedily: ``d_{n+1}`` is the first sample
    where ``f`` has risen by one unit over ``f(d_n)``.  The verdict needs
    unit-order increments, oscillation of ``f`` and ``f'`` at most ``C`` on
    each ``[d_n, d_{n+1}]``, and the sequence must reach the end of the
    window.  The same analysis on every other sample must reproduce the
    maximal oscillations, otherwise :class:`InsufficientResolution`.
    """
    if not (0 < c <= 1 <= C):
        raise ValueError("need 0 < c <= 1 <= C")
    t, v, dv = _samples(f, window, samples, fprime)
    full = _analyse(t, v, dv, c, C)
    half = _analyse(t[::2], v[::2], dv[::2], c, C)
    for a, b in ((full[2], half[2]), (full[3], half[3])):
        ma = a.max() if a.size else 0.0
        mb = b.max() if b.size else 0.0
        if abs(ma - mb) > 0.05 * max(ma, mb) + 0.01 * C:
            raise InsufficientResolution(
                f"oscillation estimate moved from {mb:.4g} to {ma:.4g} under refinement"
            )
    d, inc, osc_f, osc_d, violated = full
    return MainlyIncreasingReport(violated is None, d, inc, osc_f, osc_d, violated, c, C, tuple(window))


@dataclass(frozen=True)
class SufficiencyReport:
    sufficient: bool
    log_integral: float
    check: MainlyIncreasingReport

    def __iter__(self):
        return iter((self.sufficient, self))


def sufficiency_pipeline(
    seq: ZeroSequence,
    w: MajorantProfile,
    *,
    window: tuple[float, float] = (-200.0, 200.0),
    samples: int = 40_001,
    hilbert_nodes: int = 161,
    c: float = DEFAULT_C_LOW,
    C: float = DEFAULT_C_HIGH,
) -> SufficiencyReport:
    """Certify admissibility of ``w`` when ``phi + 2 H[Omega]`` is mainly increasing.

    The conjugate ``H[Omega]`` is computed at ``hilbert_nodes`` points,
    denser near the origin, and interpolated by a cubic spline.
    """
    from scipy.interpolate import CubicSpline

    L = log_integral(w)
    if not L.finite:
        raise ValueError("log integral of w diverges; no admissible majorant below it")
    t = np.linspace(window[0], window[1], samples)
    phi, dphi, _ = phase(seq, t)
    if w.bounds == (0.0, 0.0):
        f, df = phi, dphi
    else:
        span = max(abs(window[0]), abs(window[1]))
        u = np.linspace(-1.0, 1.0, hilbert_nodes)
        nodes = np.unique(np.clip(span * np.sinh(4 * u) / np.sinh(4.0), window[0], window[1]))
        spline = CubicSpline(nodes, hilbert(w, nodes))
        f = phi + 2.0 * spline(t)
        df = dphi + 2.0 * spline(t, 1)
    rep = mainly_increasing_check((t, f), window, c, C, fprime=df)
    return SufficiencyReport(rep.verdict, L.value, rep)


def inclusion_check(
    seqA: ZeroSequence,
    seqB: ZeroSequence,
    window: tuple[float, float] = (1.0, 1e4),
    *,
    samples: int = 200_001,
    c: float = DEFAULT_C_LOW,
    C: float = DEFAULT_C_HIGH,
) -> bool:
    """``True`` certifies that every majorant admissible for B is admissible for A.

    The certificate is that ``phi_A - phi_B`` is mainly increasing on the window.
    """
    return inclusion_report(seqA, seqB, window, samples=samples, c=c, C=C).verdict


def inclusion_report(seqA, seqB, window=(1.0, 1e4), *, samples=200_001, c=DEFAULT_C_LOW, C=DEFAULT_C_HIGH):
    t = np.linspace(window[0], window[1], samples)
    pa, da, _ = phase(seqA, t)
    pb, db, _ = phase(seqB, t)
    return mainly_increasing_check((t, pa - pb), window, c, C, fprime=da - db)


# ---------------------------------------------------------------------------
# limit exponents


@dataclass(frozen=True)
class ExponentVerdict:
    """Critical exponents of ``exp(-|x|^alpha)`` majorants.

    For two-sided sequences only ``alpha`` is determined; the one-sided
    entries are ``None`` there.
    """

    alpha: float | Fraction
    alpha_plus: float | Fraction | None
    alpha_minus: float | Fraction | None
    beta: float | Fraction
    gamma: float | Fraction | None = None

    def as_row(self):
        return [self.beta, self.gamma, self.alpha, self.alpha_plus, self.alpha_minus]


def _num(v):
    if isinstance(v, Rational):
        return Fraction(v)
    v = float(v)
    if not math.isfinite(v):
        raise InvalidExponent("exponent must be finite")
    return v


def _alpha_two_sided_table(beta):
    one = type(beta)(1)
    if beta > 2:
        return one / beta
    if beta >= Fraction(2, 3):
        return one / 2
    return -one + one / beta


def _alpha_minus_table(beta):
    one = type(beta)(1)
    if beta > 2:
        return one / beta
    if beta >= 1:
        return one / 2
    return one


def limit_exponents(beta, gamma=None) -> ExponentVerdict:
    """Closed-form exponent tables for power zeros ``n^beta + i``.

    One-sided: ``alpha = alpha_+`` equals ``1/beta`` (beta > 2), ``1/2``
    (2/3 <= beta <= 2), ``1/beta - 1`` (1/2 < beta < 2/3); ``alpha_-`` equals
    ``1/beta`` (beta > 2), ``1/2`` (1 <= beta <= 2), ``1`` (beta < 1).
    Two-sided with growth ``gamma <= beta`` on the negative side:
    ``1`` if ``beta <= 1``, else ``max(1/beta, alpha(gamma))``.

    Fractions in, Fractions out.
    """
    beta = _num(beta)
    if not beta > Fraction(1, 2):
        raise InvalidExponent("beta must exceed 1/2")
    if gamma is None:
        a = _alpha_two_sided_table(beta)
        return ExponentVerdict(a, a, _alpha_minus_table(beta), beta)
    gamma = _num(gamma)
    if not gamma > Fraction(1, 2):
        raise InvalidExponent("gamma must exceed 1/2")
    if gamma > beta:
        raise InvalidExponent("two-sided tables need beta >= gamma")
    one = type(beta)(1)
    if beta <= 1:
        a = one
    else:
        a = max(one / beta, _alpha_two_sided_table(gamma))
    return ExponentVerdict(a, None, None, beta, gamma)


# ---------------------------------------------------------------------------
# tangential zeros


ADMISSIBLE = "admissible-regime"
QUASIANALYTIC = "quasianalytic-regime"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class TangentialVerdict:
    regime: str
    series_exponent: float
    summand_slope: float | None
    convex: bool | None
    partial_sum: float

    def __str__(self):
        return self.regime


def _resolve_law(y_law) -> Callable:
    if isinstance(y_law, str):
        return Y_LAWS[y_law]
    return y_law


def _convex_log_scale(Y, lo=-8.0, hi=None, n_max=1e6, points=2001) -> bool:
    hi = math.log(n_max) if hi is None else hi
    x = np.linspace(lo, hi, points)
    v = Y(np.exp(x))
    d2 = v[2:] - 2 * v[1:-1] + v[:-2]
    scale = np.abs(v[2:]) + np.abs(v[1:-1]) + np.abs(v[:-2]) + 1.0
    return bool(np.all(d2 >= -1e-9 * scale))


def tangential_classify(
    y_law,
    superpolynomial: bool = True,
    one_sided: bool = False,
    *,
    n_max: float = 1e6,
) -> TangentialVerdict:
    """Which regime zeros ``n + i y_n`` fall into.

    The series ``sum n^{-p} log(1/y_n)`` (``p = 2``, or ``3/2`` for one-sided
    zeros) is judged by the log-log slope of its summand on
    ``[n_max/1000, n_max]``: below ``-1.15`` it converges, above ``-1.02``
    it diverges, in between nothing is claimed.  Divergence leads to the
    quasianalytic regime for superpolynomially decaying majorants when
    ``Y(e^x)``, ``Y = -log y``, is convex.
    """
    law = _resolve_law(y_law)
    p = 1.5 if one_sided else 2.0
    n = np.unique(np.round(np.geomspace(1, n_max, 4001)))
    with np.errstate(under="ignore"):
        y = np.asarray(law(n), dtype=float)
    if np.any(~(y >= 0)) or np.any(y > 1.0 + 1e-12):
        raise NonMonotoneLaw("heights must lie in (0, 1]")
    if np.any(np.diff(y) > 1e-12 * y[1:]):
        raise NonMonotoneLaw("heights must be nonincreasing")
    # floating point underflow ends the usable range
    keep = y > 0
    if not keep[0]:
        raise NonMonotoneLaw("heights must be positive")
    n, y = n[keep], y[keep]
    top = float(n[-1])
    Y = lambda t: -np.log(np.asarray(law(t), dtype=float))  # noqa: E731
    dense = np.arange(1.0, min(top, 1e5) + 1)
    partial = float(np.sum(dense ** (-p) * Y(dense)))
    terms = n ** (-p) * -np.log(y)
    sel = (n >= top / 1000) & (terms > 0)
    if sel.sum() < 10:
        # log(1/y) vanishes on the tail: the series is a finite sum
        return TangentialVerdict(ADMISSIBLE, p, None, None, partial)
    fit = slope_fit(n[sel], terms[sel])
    slope = fit.exponent
    if slope < -1.15:
        return TangentialVerdict(ADMISSIBLE, p, slope, None, partial)
    if slope <= -1.02:
        return TangentialVerdict(INCONCLUSIVE, p, slope, None, partial)
    convex = _convex_log_scale(Y, n_max=top)
    regime = QUASIANALYTIC if (convex and superpolynomial) else INCONCLUSIVE
    return TangentialVerdict(regime, p, slope, convex, partial)


# ---------------------------------------------------------------------------
# quasianalyticity


@dataclass(frozen=True)
class CarlemanResult:
    divergent: bool
    integral_estimate: float
    exponent: float
    r_max: float

    def __iter__(self):
        return iter((self.divergent, self.integral_estimate))


def moment_bounds_from_heights(y_law, K: int, *, n_max: int = 10**6) -> np.ndarray:
    """``log A_k`` for ``A_k = sup_n sqrt(y_n) (e n)^k``, ``k = 0..K``."""
    law = _resolve_law(y_law)
    n = np.arange(1, n_max + 1, dtype=float)
    with np.errstate(divide="ignore", under="ignore"):
        half_log_y = 0.5 * np.log(np.asarray(law(n), dtype=float))
    log_en = 1.0 + np.log(n)
    k = np.arange(K + 1, dtype=float)
    out = np.empty(K + 1)
    for i in range(0, K + 1, 64):
        kk = k[i : i + 64, None]
        out[i : i + 64] = (half_log_y[None, :] + kk * log_en[None, :]).max(axis=1)
    return out


def _lower_hull(k, g):
    """Indices of the vertices of the greatest convex minorant."""
    hull = []
    for i in range(k.size):
        while len(hull) >= 2:
            a, b = hull[-2], hull[-1]
            if (g[b] - g[a]) * (k[i] - k[a]) >= (g[i] - g[a]) * (k[b] - k[a]):
                hull.pop()
            else:
                break
        hull.append(i)
    return np.asarray(hull)


def carleman_log_T(log_A, r):
    """``log T(r) = max_k (k log r - log A_k)`` over the given ``k``."""
    g = np.asarray(log_A, dtype=float)
    k = np.arange(g.size, dtype=float)
    hull = _lower_hull(k, g)
    s = np.log(np.atleast_1d(np.asarray(r, dtype=float)))
    out = np.max(s[:, None] * k[hull][None, :] - g[hull][None, :], axis=1)
    return float(out[0]) if np.ndim(r) == 0 else out


def carleman_test(A=None, *, log_A=None, points: int = 400, threshold: float = 0.95) -> CarlemanResult:
    """Denjoy-Carleman test: does ``int_1^inf r^{-2} log T(r) dr`` diverge?

    ``T(r) = sup_k r^k / A_k``; ``log T`` is the Legendre transform of the
    convex minorant of ``k -> log A_k`` at ``log r``.  It is trusted up to
    the last hull slope, where the finite list stops controlling the sup.
    A power law fitted to ``log T`` on the upper part of that range decides:
    an exponent of at least ``threshold`` means divergence (the exact
    dividing line is 1; ``k!`` itself gives exponent ``1 - O(log r / r)``).
    Otherwise the tail beyond ``r_max`` is added from the fit.
    """
    if log_A is None:
        A = np.asarray(A, dtype=float)
        if np.any(~(A > 0)):
            raise ValueError("A_k must be positive")
        log_A = np.log(A)
    g = np.asarray(log_A, dtype=float)
    if g.size < 20 or np.any(~np.isfinite(g)):
        raise TailUndetermined("need at least 20 finite values of log A_k")
    k = np.arange(g.size, dtype=float)
    hull = _lower_hull(k, g)
    kh, gh = k[hull], g[hull]
    slopes = np.diff(gh) / np.diff(kh)
    s_max = float(slopes[-1])
    if s_max <= 0:
        raise TailUndetermined("log A_k does not grow; T(r) is unbounded")
    s = np.linspace(0.0, s_max, points)
    # Legendre transform on the hull vertices
    logT = np.max(s[:, None] * kh[None, :] - gh[None, :], axis=1)
    r = np.exp(s)
    # r^{-2} log T dr = e^{-s} log T ds
    body = float(trapezoid(np.exp(-s) * logT, s))
    usable = (logT > 0) & (s >= 0.5 * s_max)
    if usable.sum() < 10 or r[usable][-1] / r[usable][0] < 10:
        raise TailUndetermined("range of r too short to fit log T")
    fit = slope_fit(r[usable], logT[usable])
    if fit.residual > 0.2:
        raise TailUndetermined(f"log T is not a power law (rms {fit.residual:.3g})")
    p = fit.exponent
    if p >= threshold:
        return CarlemanResult(True, math.inf, p, float(r[-1]))
    c = math.exp(fit.intercept)
    R = float(r[-1])
    tail = c * R ** (p - 1.0) / (1.0 - p)
    return CarlemanResult(False, body + tail, p, R)


# ---------------------------------------------------------------------------
# polynomial majorant bound


@dataclass(frozen=True)
class WstarBound:
    """LP outcome for ``sup p(z)`` under ``|p(n) w(n)| <= 1``.

    ``lp_value`` keeps the constraints at the nodes only.  The optimal
    polynomial is then checked on ``n <= scan``; dividing by its worst
    ratio there gives ``value``, a genuine lower bound whenever ``certified``.
    """

    value: float
    lp_value: float
    scale: float
    certified: bool
    coefficients: np.ndarray = field(repr=False)
    degree: int = 0
    nodes: int = 0


def _cheb_matrix(x, N, degree):
    u = 2.0 * np.asarray(x, dtype=float) / max(N, 1) - 1.0
    return np.polynomial.chebyshev.chebvander(u, degree)


def _profile_w(w, n):
    if isinstance(w, MajorantProfile):
        return w.w(n)
    if callable(w):
        return np.asarray(w(n), dtype=float)
    arr = np.asarray(w, dtype=float)
    return arr[n.astype(int)]


def wstar_bound(w, z: float, degree: int, nodes: int, *, scan: int | None = None) -> WstarBound:
    if degree < 0 or degree > nodes - 1:
        raise ValueError("need 0 <= degree <= nodes - 1")
    if degree > 30:
        import warnings

        warnings.warn("degree above 30: LP conditioning degrades", RuntimeWarning, stacklevel=2)
    n = np.arange(nodes + 1, dtype=float)
    wn = _profile_w(w, n)
    if np.any(~(wn > 0)):
        raise ValueError("w must be positive on the nodes")
    u = 1.0 / wn
    A = _cheb_matrix(n, nodes, degree)
    b = _cheb_matrix([z], nodes, degree)[0]
    # dual in standard form with y = u * multiplier, so every cost is one
    cols = (A / u[:, None]).T
    M = np.hstack([cols, -cols])
    res = simplex(np.ones(M.shape[1]), M, b)
    coef = res.duals
    lp_value = float(b @ coef)
    # scan beyond the nodes
    scan = int(scan if scan is not None else max(20 * nodes, 2000))
    if isinstance(w, np.ndarray) or (not callable(w) and not isinstance(w, MajorantProfile)):
        scan = nodes
    m = np.arange(scan + 1, dtype=float)
    pm = _cheb_matrix(m, nodes, degree) @ coef
    ratio = np.abs(pm) * _profile_w(w, m)
    worst = float(ratio.max())
    scale = max(1.0, worst)
    tail_small = scan == nodes or ratio[-max(10, scan // 20) :].max() < 1e-3 * max(worst, 1.0)
    certified = bool(tail_small)
    return WstarBound(lp_value / scale, lp_value, scale, certified, coef, degree, nodes)


def wstar_lower_bound(w, z: float, degree: int, nodes: int) -> float:
    """Lower bound for ``w_*(z) = sup{p(z): |p(n) w(n)| <= 1, n >= 0}``.

    Solved as a linear program over Chebyshev coefficients with the
    in-repo simplex; see :func:`wstar_bound` for the certificate.
    """
    return wstar_bound(w, z, degree, nodes).value


# ---------------------------------------------------------------------------
# density in a half-strip


@dataclass(frozen=True)
class DensityReport:
    c: float
    C: float
    delta: float
    M: float
    r0: float
    in_half_strip: bool


def density_constants(seq: ZeroSequence, r0: float, *, x_max: float | None = None, windows: int = 400) -> DensityReport:
    """Empirical ``c <= card{Re z_n in [x, x+r]} / r <= C`` for ``r > r0``, ``x > 0``.

    Counts explicit zeros only, on ``x`` up to ``x_max - r`` (default: the
    last explicit abscissa).  Constants are reported, not judged.
    """
    xs = np.sort(seq.x)
    hs = seq.h
    top = float(xs[-1]) if x_max is None else float(x_max)
    if top <= 2 * r0:
        raise ValueError("window too short for the requested r0")
    rs = np.geomspace(r0 * 1.0001, top / 2, 12)
    lo_ratio, hi_ratio = math.inf, 0.0
    for r in rs:
        x = np.linspace(0.0, top - r, windows)
        cnt = np.searchsorted(xs, x + r, side="right") - np.searchsorted(xs, x, side="left")
        q = cnt / r
        lo_ratio = min(lo_ratio, float(q.min()))
        hi_ratio = max(hi_ratio, float(q.max()))
    delta, M = float(hs.min()), float(hs.max())
    return DensityReport(lo_ratio, hi_ratio, delta, M, float(r0), bool(np.all(seq.x >= 0) and delta > 0))
