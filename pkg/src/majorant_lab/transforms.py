"""Integral transforms of log-majorants.

A majorant ``w`` is carried through its exponent ``Omega = -log w``.
This module computes the logarithmic and half-line integrals, the
Poisson-regularised Hilbert transform, the log-smoothing operators, the
one-sided smoothing profiles and the Legendre transform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy import integrate
from scipy.interpolate import CubicHermiteSpline

__all__ = [
    "MajorantProfile",
    "IntegralResult",
    "ConvexConjugate",
    "OneSidedSmoothing",
    "NonMonotoneProfile",
    "NotPoissonIntegrable",
    "NonConvexInput",
    "check_regular",
    "log_integral",
    "halfline_integral",
    "hilbert",
    "hilbert_derivative",
    "smooth_log",
    "one_sided_smooth",
    "legendre",
]

CONVEXITY_TOL = 1e-10
PV_WINDOW = 1e-3


class NonMonotoneProfile(ValueError):
    """Smoothing needs ``Omega`` nondecreasing on ``[0, inf)``."""


class NotPoissonIntegrable(ValueError):
    """``int |Omega| dt/(1+t^2)`` diverges, so the Hilbert transform does not exist."""


class NonConvexInput(ValueError):
    """A second difference fell below the convexity tolerance."""


# ---------------------------------------------------------------------------
# profiles


@dataclass(frozen=True)
class MajorantProfile:
    """A majorant ``w = exp(-Omega)`` on the line.

    Parameters
    ----------
    omega : callable
        Vectorised ``Omega(x)``.
    form : str
        ``w_alpha``, ``W_A``, ``constant``, ``indicator``, ``log_plus``,
        ``sampled``, ``smoothed``, ``one_sided`` or ``custom``.
    params : dict
        Parameters of the closed forms (used for key=value output).
    even : bool
        ``Omega(-x) = Omega(x)``.
    tail_exponent : float or None
        ``p`` with ``Omega(t) = O(|t|^p)`` for large ``|t|``, when known.
        ``None`` means no tail metadata.
    bounds : (lo, hi) or None
        ``Omega`` vanishes outside ``[lo, hi]``.
    breakpoints : tuple
        Abscissae where ``Omega`` or its derivative jumps.
    support : str
        ``full`` or ``half`` (defined on ``[0, inf)`` only).
    """

    omega: Callable[[np.ndarray], np.ndarray] = field(repr=False, compare=False)
    form: str = "custom"
    params: dict = field(default_factory=dict)
    even: bool = True
    tail_exponent: float | None = None
    bounds: tuple[float, float] | None = None
    breakpoints: tuple[float, ...] = ()
    support: str = "full"
    regular: bool | None = None

    def __post_init__(self):
        if self.support not in ("full", "half"):
            raise ValueError("support must be 'full' or 'half'")
        if self.regular is None:
            object.__setattr__(self, "regular", check_regular(self))

    # constructors -------------------------------------------------------

    @classmethod
    def power(cls, alpha: float, scale: float = 1.0) -> "MajorantProfile":
        """``w_alpha(x) = exp(-scale |x|^alpha)``."""
        alpha = float(alpha)
        if alpha <= 0:
            raise ValueError("alpha must be positive")
        return cls(
            lambda x: scale * np.abs(np.asarray(x, dtype=float)) ** alpha,
            form="w_alpha",
            params={"alpha": alpha, "scale": float(scale)},
            tail_exponent=alpha,
            breakpoints=(0.0,),
        )

    @classmethod
    def root(cls, A: float = 1.0) -> "MajorantProfile":
        """``W_A(t) = exp(-A |t|^{1/2})``."""
        p = cls.power(0.5, A)
        return cls(p.omega, form="W_A", params={"A": float(A)}, tail_exponent=0.5, breakpoints=(0.0,))

    @classmethod
    def constant(cls, c: float = 0.0) -> "MajorantProfile":
        c = float(c)
        return cls(
            lambda x: np.full(np.shape(x), c, dtype=float),
            form="constant",
            params={"c": c},
            tail_exponent=0.0,
            bounds=(0.0, 0.0) if c == 0 else None,
        )

    @classmethod
    def indicator(cls, a: float, b: float, height: float = 1.0) -> "MajorantProfile":
        """``Omega = height`` on ``[a, b]`` and zero elsewhere."""
        a, b = float(a), float(b)
        if not a < b:
            raise ValueError("need a < b")

        def om(x):
            x = np.asarray(x, dtype=float)
            return np.where((x >= a) & (x <= b), height, 0.0)

        return cls(
            om,
            form="indicator",
            params={"a": a, "b": b, "height": float(height)},
            even=(a == -b),
            bounds=(a, b),
            breakpoints=(a, b),
            regular=False if a != -b else None,
        )

    @classmethod
    def log_plus(cls) -> "MajorantProfile":
        """``Omega(t) = log+ |t|``."""

        def om(x):
            with np.errstate(divide="ignore"):
                return np.maximum(np.log(np.abs(np.asarray(x, dtype=float))), 0.0)

        return cls(om, form="log_plus", tail_exponent=0.0, breakpoints=(-1.0, 1.0))

    @classmethod
    def sampled(cls, x, omega, *, even: bool = True, tail_exponent: float | None = None) -> "MajorantProfile":
        """Profile from samples of ``Omega`` at ``|x|`` (even) or ``x``.

        Between nodes ``log Omega`` is interpolated linearly in ``log |x|``
        (exact for powers); where a node value vanishes the interpolation
        falls back to linear in ``log |x|``.  Outside the sampled range the
        end values are held constant.
        """
        x = np.asarray(x, dtype=float)
        om = np.asarray(omega, dtype=float)
        if x.ndim != 1 or x.shape != om.shape or x.size < 2:
            raise ValueError("need matching 1-d arrays of at least two samples")
        if np.any(np.diff(x) <= 0):
            raise ValueError("sampled grids must be strictly increasing")
        if even and np.any(x <= 0):
            raise ValueError("even sampled profiles take samples at x > 0")
        xs, oms = x.copy(), om.copy()

        def interp_log_log(ax):
            lx = np.log(np.maximum(ax, xs[0]))
            lxs = np.log(np.abs(xs)) if even else None
            if lxs is None:
                return np.interp(ax, xs, oms)
            pos = np.all(oms > 0)
            if pos:
                return np.exp(np.interp(lx, lxs, np.log(oms)))
            return np.interp(lx, lxs, oms)

        def om_fn(t):
            t = np.asarray(t, dtype=float)
            if even:
                return interp_log_log(np.abs(t))
            return np.interp(t, xs, oms)

        return cls(
            om_fn,
            form="sampled",
            params={"n": int(xs.size)},
            even=even,
            tail_exponent=tail_exponent,
            breakpoints=tuple(float(v) for v in xs) if xs.size <= 64 else (),
        )

    @classmethod
    def from_function(cls, omega, **kw) -> "MajorantProfile":
        return cls(omega, **kw)

    # accessors ----------------------------------------------------------

    def w(self, x):
        return np.exp(-self.omega(x))

    def G(self, s):
        """``G(s) = Omega(e^s)``."""
        return self.omega(np.exp(np.asarray(s, dtype=float)))

    def to_kv(self) -> dict:
        if self.form in ("sampled", "custom", "smoothed", "one_sided"):
            raise ValueError(f"{self.form} profiles are serialised as CSV, not key=value")
        return {"form": self.form, **self.params}

    def to_csv(self, path, x=None) -> None:
        from .serialize import write_csv

        if x is None:
            x = np.geomspace(1e-2, 1e6, 161)
            if not self.even:
                x = np.concatenate([-x[::-1], [0.0], x])
        x = np.asarray(x, dtype=float)
        om = self.omega(x)
        write_csv(path, ["x", "omega", "w"], zip(x, om, np.exp(-om)))


def check_regular(profile: MajorantProfile, *, points: int = 801) -> bool:
    """Regularity on a test grid.

    Checks ``0 < w <= 1``, evenness, ``Omega`` nondecreasing on
    ``[0, inf)`` and convexity of ``G(s) = Omega(e^s)`` by second
    differences.
    """
    x = np.geomspace(1e-4, 1e12, points)
    with np.errstate(all="ignore"):
        om = np.asarray(profile.omega(x), dtype=float)
        if not np.all(np.isfinite(om)) or np.any(om < 0):
            return False
        if not profile.even:
            om_neg = np.asarray(profile.omega(-x), dtype=float)
            if not np.allclose(om_neg, om, rtol=1e-12, atol=1e-300):
                return False
        scale = 1.0 + np.abs(om)
        if np.any(np.diff(om) < -CONVEXITY_TOL * scale[1:]):
            return False
        # x is geometric, so s = log x is uniform and second differences
        # of om are second differences of G
        d2 = om[2:] - 2 * om[1:-1] + om[:-2]
        return bool(np.all(d2 >= -CONVEXITY_TOL * scale[1:-1]))


# ---------------------------------------------------------------------------
# logarithmic integrals


@dataclass(frozen=True)
class IntegralResult:
    """``value`` (``inf`` when divergent, ``None`` when undecidable)."""

    value: float | None
    finite: bool | None
    err: float = 0.0

    def __iter__(self):
        return iter((self.value, self.finite))


def _quad(f, a, b, **kw):
    # full_output silences quad's warnings without touching the global
    # filters, which is not thread-safe; the error estimate is returned anyway
    opts = dict(epsabs=1e-13, epsrel=1e-12, limit=500)
    opts.update(kw)
    return integrate.quad(f, a, b, full_output=1, **opts)[:2]


def _scalar(profile):
    return lambda t: float(profile.omega(np.asarray([t]))[0])


def _half_line_log(g, U0=0.0, span=80.0):
    """``int_{U0}^inf g(u) du`` for ``g`` decaying like ``exp(-c u)``.

    Quadrature on ``[U0, U0+span]``; the rest is extrapolated from the
    local decay rate at the end, whose change over the last unit step is
    the error reported for the extrapolation.
    """
    U1 = U0 + span
    pieces = np.linspace(U0, U1, 17)
    val = err = 0.0
    for a, b in zip(pieces[:-1], pieces[1:]):
        v, e = _quad(g, a, b)
        val += v
        err += e
    g1, g2, g3 = g(U1 - 2.0), g(U1 - 1.0), g(U1)
    if g3 == 0.0:
        return val, err
    if g2 == 0.0 or g1 == 0.0 or g3 / g2 <= 0 or g2 / g1 <= 0:
        return val, err + abs(g3) * span
    c = -math.log(g3 / g2)
    c_prev = -math.log(g2 / g1)
    if c <= 0:
        return math.inf, 0.0
    rest = g3 / c
    alt = g3 / c_prev if c_prev > 0 else rest
    return val + rest, err + abs(rest - alt) + 1e-12 * abs(rest)


def _finite_by_tail(profile, threshold) -> bool | None:
    if profile.bounds is not None:
        return True
    if profile.tail_exponent is None:
        return None
    return profile.tail_exponent < threshold


def log_integral(w: MajorantProfile) -> IntegralResult:
    """``L(w) = int log+(1/w(x)) dx/(1+x^2)``.

    Finiteness is decided by the tail exponent (``Omega = O(|x|^p)`` with
    ``p < 1``); profiles without tail metadata return ``finite=None``.
    """
    finite = _finite_by_tail(w, 1.0)
    if finite is None:
        return IntegralResult(None, None, math.nan)
    if finite is False:
        return IntegralResult(math.inf, False, 0.0)
    om = _scalar(w)

    def side(sign):
        # [0, 1] directly, [1, inf) with t = e^u
        v1, e1 = _quad(lambda t: max(om(sign * t), 0.0) / (1 + t * t), 0.0, 1.0, points=_pts(w, sign, 0, 1))
        g = lambda u: max(om(sign * math.exp(u)), 0.0) * math.exp(u) / (1 + math.exp(2 * u))  # noqa: E731
        if w.bounds is not None:
            hi = max(abs(w.bounds[0]), abs(w.bounds[1]))
            if hi <= 1:
                return v1, e1
            v2, e2 = _quad(g, 0.0, math.log(hi), points=_log_pts(w, sign))
            return v1 + v2, e1 + e2
        v2, e2 = _half_line_log(g)
        return v1 + v2, e1 + e2

    vp, ep = side(1.0)
    if w.even:
        return IntegralResult(2 * vp, True, 2 * ep)
    vm, em = side(-1.0)
    return IntegralResult(vp + vm, True, ep + em)


def _pts(profile, sign, a, b):
    pts = [sign * p for p in profile.breakpoints if a < sign * p < b]
    return pts or None


def _log_pts(profile, sign):
    pts = [math.log(sign * p) for p in profile.breakpoints if sign * p > 1]
    return pts or None


def halfline_integral(w: MajorantProfile) -> IntegralResult:
    """``int_1^inf t^{-3/2} Omega(t) dt``; finite iff the tail exponent is below 1/2."""
    finite = _finite_by_tail(w, 0.5)
    if finite is None:
        return IntegralResult(None, None, math.nan)
    if finite is False:
        return IntegralResult(math.inf, False, 0.0)
    om = _scalar(w)
    g = lambda u: om(math.exp(u)) * math.exp(-0.5 * u)  # noqa: E731
    if w.bounds is not None:
        hi = max(w.bounds[1], 1.0)
        v, e = _quad(g, 0.0, math.log(hi), points=_log_pts(w, 1.0)) if hi > 1 else (0.0, 0.0)
        return IntegralResult(v, True, e)
    # exp(u) overflows past u ~ 709; the geometric tail extrapolation covers the rest
    span = min(700.0, max(80.0, 40.0 / max(0.5 - (w.tail_exponent or 0.0), 1e-3)))
    v, e = _half_line_log(g, span=span)
    return IntegralResult(v, True, e)


# ---------------------------------------------------------------------------
# Hilbert transform


def _kernel(x, t):
    # 1/(x - t) + t/(1 + t^2) combined, so the decay -x/t^2 is explicit
    return (1.0 + x * t) / ((x - t) * (1.0 + t * t))


def _hilbert_point(profile: MajorantProfile, x: float):
    om = _scalar(profile)
    delta = PV_WINDOW * (1.0 + abs(x))
    val = err = 0.0
    # principal value: odd reflection about x on the window
    inner = sorted({abs(b - x) for b in profile.breakpoints if 0 < abs(b - x) < delta})
    v, e = _quad(lambda u: (om(x - u) - om(x + u)) / u, 0.0, delta, points=inner or None)
    val += v
    err += e
    cuts_in = sorted({b for b in profile.breakpoints if x - delta < b < x + delta})
    v, e = _quad(lambda t: om(t) * t / (1 + t * t), x - delta, x + delta, points=cuts_in or None)
    val += v
    err += e
    # outside the window
    R = 10.0 * (1.0 + abs(x))
    if profile.bounds is not None:
        R = max(R, abs(profile.bounds[0]) + 1.0, abs(profile.bounds[1]) + 1.0)
    else:
        finite_bps = [abs(b) for b in profile.breakpoints if abs(b) < 1e6]
        if finite_bps:
            R = max(R, max(finite_bps) + 1.0)
    cuts = {-R, R, x - delta, x + delta, 0.0, -1.0, 1.0}
    cuts.update(b for b in profile.breakpoints if -R < b < R)
    edges = sorted(c for c in cuts if -R <= c <= R)
    g = lambda t: om(t) * _kernel(x, t)  # noqa: E731
    for a, b in zip(edges[:-1], edges[1:]):
        if a >= x - delta and b <= x + delta:
            continue
        if profile.bounds is not None and (b <= profile.bounds[0] or a >= profile.bounds[1]):
            continue
        v, e = _quad(g, a, b)
        val += v
        err += e
    if profile.bounds is None:
        for sign in (1.0, -1.0):
            if profile.support == "half" and sign < 0:
                continue
            gl = lambda u, s=sign: g(s * math.exp(u)) * math.exp(u)  # noqa: E731
            v, e = _half_line_log(gl, math.log(R), span=200.0)
            val += v
            err += e
    return val / math.pi, err / math.pi


def _check_poisson(profile):
    if profile.bounds is not None:
        return
    p = profile.tail_exponent
    if p is not None and p >= 1:
        raise NotPoissonIntegrable(f"Omega grows like |t|^{p}; Hilbert transform undefined")


def hilbert(omega: MajorantProfile, x, *, with_error: bool = False, threads: int = 1):
    """Poisson-regularised Hilbert transform

    ``(1/pi) p.v. int Omega(t) (1/(x-t) + t/(1+t^2)) dt``.

    The singular part on ``[x - delta, x + delta]``, ``delta = 1e-3
    (1+|x|)``, is folded into ``int_0^delta (Omega(x-u) - Omega(x+u))/u
    du``; the rest is adaptive quadrature with the far field on a log
    scale.
    """
    _check_poisson(omega)
    xs = np.asarray(x, dtype=float)
    flat = xs.ravel()
    if threads > 1 and flat.size > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(threads) as ex:
            res = list(ex.map(lambda v: _hilbert_point(omega, float(v)), flat))
    else:
        res = [_hilbert_point(omega, float(v)) for v in flat]
    vals = np.array([r[0] for r in res]).reshape(xs.shape)
    errs = np.array([r[1] for r in res]).reshape(xs.shape)
    if xs.ndim == 0:
        vals, errs = float(vals), float(errs)
    return (vals, errs) if with_error else vals


def hilbert_derivative(omega: MajorantProfile, x, *, rel_step: float = 1e-2, threads: int = 1):
    """``d/dx`` of the Hilbert transform by a fourth-order central difference."""
    x = np.asarray(x, dtype=float)
    h = rel_step * np.maximum(np.abs(x), 1.0)
    pts = np.stack([x - 2 * h, x - h, x + h, x + 2 * h])
    v = hilbert(omega, pts, threads=threads)
    return (v[0] - 8 * v[1] + 8 * v[2] - v[3]) / (12 * h)


# ---------------------------------------------------------------------------
# log smoothing

_CELL = 1.0 / 64.0
_S_MAX = 320.0  # covers the log-scale far field of the Hilbert quadrature
_GL = np.polynomial.legendre.leggauss(8)


def _cumulative(G, s_grid):
    """``int_{s_grid[0]}^{s} G`` at every grid point (composite Gauss)."""
    x, wts = _GL
    a, b = s_grid[:-1], s_grid[1:]
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    nodes = mid[:, None] + half[:, None] * x[None, :]
    vals = G(nodes.ravel()).reshape(nodes.shape)
    cell = half * (vals @ wts)
    return np.concatenate([[0.0], np.cumsum(cell)])


class _LogSmoothed:
    """``x -> int_0^{log|x| + 1} H(u) du`` with ``H`` given on ``u >= 0``.

    ``H`` is tabulated, integrated cell by cell and interpolated by a cubic
    Hermite spline whose slopes are the exact derivative ``H(s + 1)``.
    """

    def __init__(self, H):
        s = np.arange(-1.0, _S_MAX + _CELL / 2, _CELL)
        u = s + 1.0  # upper limit
        Hc = lambda v: np.where(v > 0, H(np.maximum(v, 0.0)), 0.0)  # noqa: E731
        vals = _cumulative(Hc, u)
        self.s = s
        self.spline = CubicHermiteSpline(s, vals, Hc(u))
        self.H = Hc

    def of_log(self, s):
        s = np.asarray(s, dtype=float)
        out = np.where(s <= -1.0, 0.0, self.spline(np.clip(s, -1.0, _S_MAX)))
        over = s > _S_MAX
        if np.any(over):
            # beyond the table integrate the remaining stretch directly
            extra = np.array([_quad(lambda v: float(self.H(np.asarray([v]))[0]), _S_MAX + 1, si + 1)[0] for si in s[over]])
            out = out.astype(float)
            out[over] = float(self.spline(_S_MAX)) + extra
        return out

    def __call__(self, x):
        x = np.abs(np.asarray(x, dtype=float))
        with np.errstate(divide="ignore"):
            s = np.log(x)
        return np.where(x > 0, self.of_log(np.where(x > 0, s, -2.0)), 0.0)


def _check_nondecreasing(profile):
    x = np.concatenate([[0.0], np.geomspace(1e-4, 1e12, 1601)])
    om = profile.omega(x)
    scale = 1.0 + np.abs(om)
    if np.any(np.diff(om) < -CONVEXITY_TOL * scale[1:]):
        raise NonMonotoneProfile("Omega must be nondecreasing on [0, inf)")


def smooth_log(omega: MajorantProfile, order: int = 1) -> MajorantProfile:
    """Regular minorant of ``w``: ``Omega_1(x) = int_0^{e|x|} Omega(t) dt/t``.

    ``Omega`` is first set to zero on ``[0, 1]``.  ``order=2`` applies the
    operation twice.  The result is even, dominates ``Omega`` and has
    ``G(s) = Omega_1(e^s)`` convex.
    """
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    _check_nondecreasing(omega)
    G = lambda u: omega.omega(np.exp(u))  # noqa: E731
    first = _LogSmoothed(G)
    if order == 2:
        second = _LogSmoothed(first.of_log)
        fn = second
    else:
        fn = first
    return MajorantProfile(
        fn,
        form="smoothed",
        params={"order": order, "source": omega.form},
        tail_exponent=omega.tail_exponent,
        breakpoints=(-math.exp(-1.0), 0.0, math.exp(-1.0)) if order == 1 else (-math.exp(-2.0), 0.0, math.exp(-2.0)),
        bounds=(0.0, 0.0) if omega.bounds == (0.0, 0.0) else None,
    )


# ---------------------------------------------------------------------------
# one-sided smoothing


@dataclass(frozen=True)
class OneSidedSmoothing:
    """``U2``, ``V2`` and the balancing constants ``K``, ``M``.

    ``K U2 + M V2`` grows like ``|t|^alpha`` on the negative axis; the
    two kernel integrals are kept for inspection.
    """

    alpha: float
    U2: MajorantProfile
    V2: MajorantProfile
    K: float
    M: float
    kernel_abs_log: float
    kernel_log_ratio: float

    def __iter__(self):
        return iter((self.U2, self.V2, self.K, self.M))

    def combined(self) -> MajorantProfile:
        K, M, U, V = self.K, self.M, self.U2.omega, self.V2.omega
        return MajorantProfile(
            lambda x: K * U(x) + M * V(x),
            form="one_sided",
            params={"alpha": self.alpha, "K": K, "M": M},
            even=False,
            tail_exponent=self.alpha,
            breakpoints=(-1.0, 1.0),
            regular=False,
        )


def _iterated_power(alpha):
    # int_0^r int_0^v (e^{alpha u} - 1) du dv with r = log|x|, zero for |x| <= 1
    def f(x):
        ax = np.abs(np.asarray(x, dtype=float))
        with np.errstate(divide="ignore"):
            r = np.where(ax > 1, np.log(np.maximum(ax, 1.0)), 0.0)
        return np.expm1(alpha * r) / alpha**2 - r / alpha - 0.5 * r * r

    return f


def _kernel_integrals(alpha):
    def abs_log(t):
        return math.log(abs((1 + t) / (1 - t))) * t ** (alpha - 1)

    def log_ratio(t):
        return math.log1p(1.0 / t) * t ** (alpha - 1)

    # t^{alpha-1} at 0 is handled by quad's algebraic weight
    i1a, _ = _quad(lambda t: math.log(abs((1 + t) / (1 - t))) if t != 1 else 0.0, 0.0, 1.0, weight="alg", wvar=(alpha - 1, 0.0))
    i1b, _ = _quad(abs_log, 1.0, 2.0)
    i1c, _ = _quad(lambda u: abs_log(1.0 / u) / u**2, 0.0, 0.5)
    i2a, _ = _quad(lambda t: math.log1p(t) - math.log(t) if t > 0 else 0.0, 0.0, 1.0, weight="alg", wvar=(alpha - 1, 0.0))
    i2b, _ = _quad(lambda u: log_ratio(1.0 / u) / u**2, 0.0, 1.0)
    return i1a + i1b + i1c, i2a + i2b


def one_sided_smooth(alpha: float) -> OneSidedSmoothing:
    """Iterated integrals of ``U = |t|^alpha - 1`` and ``V = 1 - t^alpha``.

    ``U2(x) = int_0^|x| U1(t) dt/t`` with ``U1(x) = int_0^|x| U(t) dt/t``
    (both vanish for ``|x| <= 1``); ``V2`` is the same construction on
    ``x > 0`` and zero for ``x <= 0``.  ``K = 1`` and ``M`` balances the
    two kernel integrals.
    """
    alpha = float(alpha)
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie in (0, 1)")
    u2 = _iterated_power(alpha)

    def v2(x):
        x = np.asarray(x, dtype=float)
        return np.where(x > 1, -u2(x), 0.0)

    U2 = MajorantProfile(u2, form="one_sided", params={"alpha": alpha, "part": "U2"}, tail_exponent=alpha, breakpoints=(-1.0, 1.0))
    V2 = MajorantProfile(
        v2, form="one_sided", params={"alpha": alpha, "part": "V2"}, even=False, tail_exponent=alpha, breakpoints=(1.0,), regular=False
    )
    i1, i2 = _kernel_integrals(alpha)
    return OneSidedSmoothing(alpha, U2, V2, 1.0, i1 / i2, i1, i2)


# ---------------------------------------------------------------------------
# Legendre transform


class ConvexConjugate:
    """``G^#(x) = sup_i (x t_i - G_i)`` for a convex sample ``(t_i, G_i)``.

    This is the exact conjugate of the piecewise-linear interpolant on
    ``[t_0, t_n]``: piecewise linear in ``x`` with vertices at the chord
    slopes of the sample.
    """

    def __init__(self, t: np.ndarray, g: np.ndarray):
        self.t = t
        self.g = g
        self.slopes = np.diff(g) / np.diff(t)

    def argmax(self, x):
        """Index of the maximising ``t_i``; nondecreasing in ``x``."""
        return np.searchsorted(self.slopes, np.asarray(x, dtype=float), side="left")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        k = self.argmax(x)
        return x * self.t[k] - self.g[k]

    def vertices(self):
        """Chord slopes and the conjugate's values there."""
        m = self.slopes
        return m, m * self.t[:-1] - self.g[:-1]

    def sweep(self, x):
        """Monotone argmax sweep over sorted ``x``: values and indices."""
        x = np.asarray(x, dtype=float)
        if np.any(np.diff(x) < 0):
            raise ValueError("sweep needs sorted abscissae")
        idx = np.empty(x.size, dtype=int)
        k = 0
        n = self.t.size
        for j, xv in enumerate(x):
            while k < n - 1 and xv * self.t[k + 1] - self.g[k + 1] >= xv * self.t[k] - self.g[k]:
                k += 1
            idx[j] = k
        return x * self.t[idx] - self.g[idx], idx


def legendre(t, g, x=None, *, tol: float = CONVEXITY_TOL):
    """Legendre transform of a convex sampled function.

    Returns a :class:`ConvexConjugate`, or its values at ``x`` when given.
    Raises :class:`NonConvexInput` if a chord slope decreases by more than
    ``tol`` times the slope scale.
    """
    t = np.asarray(t, dtype=float)
    g = np.asarray(g, dtype=float)
    if t.ndim != 1 or t.shape != g.shape or t.size < 2:
        raise ValueError("need matching 1-d samples (at least two)")
    if np.any(np.diff(t) <= 0):
        raise ValueError("grid must be strictly increasing")
    m = np.diff(g) / np.diff(t)
    scale = 1.0 + np.max(np.abs(m))
    if np.any(np.diff(m) < -tol * scale):
        raise NonConvexInput("sample is not convex")
    conj = ConvexConjugate(t, g)
    if np.any(np.diff(m) < 0):
        # tiny violations inside the tolerance: use the convex hull slopes
        conj.slopes = np.maximum.accumulate(m)
    return conj if x is None else conj(x)


def conjugate_samples(conj: ConvexConjugate) -> tuple[np.ndarray, np.ndarray]:
    """Vertices of ``G^#`` as a convex sample (input for a second transform)."""
    return conj.vertices()
