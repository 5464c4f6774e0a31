"""Explicit elements of model spaces and explicit majorants.

Series of Cauchy kernels on a zero sequence, moment-vanishing
coefficients, the Legendre decay bound for regular majorants, canonical
products with their asymptotics, the square-integrability test behind
the minimal majorant dichotomy, and products of two model-space
functions.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from numbers import Rational
from typing import Callable, Sequence

import numpy as np

from ._sums import TailBranch, integrate_panels, zero_sum
from .blaschke import PoleProximity, ToleranceUnreachable
from .transforms import MajorantProfile, legendre
from .zeros import ZeroSequence

__all__ = [
    "CoefficientSequence",
    "CanonicalProductSpec",
    "DecayBound",
    "ProductValue",
    "MajorantL2Report",
    "NotRegular",
    "TailUndetermined",
    "UnboundedFactor",
    "kb_series_eval",
    "moment_vanishing",
    "legendre_decay_bound",
    "canonical_product",
    "e_circle_closed_form",
    "minimal_majorant_check",
    "product_function",
    "product_poles",
]

EPS = np.finfo(float).eps
EXACT_SUPPORT = 64
POLE_CUTOFF = 1e-12


class NotRegular(ValueError):
    """The majorant is not regular (see ``transforms.check_regular``)."""


class TailUndetermined(RuntimeError):
    """Window doubling neither settles nor grows consistently."""


class UnboundedFactor(ValueError):
    """A factor of a product failed its boundedness check on the line."""


# ---------------------------------------------------------------------------
# coefficient sequences


@dataclass(frozen=True)
class CoefficientSequence:
    """Coefficients ``c_n`` on the indices ``support`` of a zero sequence.

    ``values`` keeps the numbers as given (ints and Fractions stay exact).
    With ``weight_convention="riesz"`` each term carries the extra factor
    ``sqrt(Im z_n)``.  An infinite law is truncated; ``tail_bound(n)``
    then bounds ``|c_n|`` for ``n`` beyond the last support index.
    """

    support: tuple[int, ...]
    values: tuple
    weight_convention: str = "plain"
    tail_bound: Callable[[np.ndarray], np.ndarray] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if len(self.support) != len(self.values):
            raise ValueError("support and values differ in length")
        if len(set(self.support)) != len(self.support):
            raise ValueError("support indices must be distinct")
        if self.weight_convention not in ("plain", "riesz"):
            raise ValueError("weight_convention is 'plain' or 'riesz'")

    @classmethod
    def of(cls, values, start: int = 1, **kw) -> "CoefficientSequence":
        values = tuple(values)
        return cls(tuple(range(start, start + len(values))), values, **kw)

    @property
    def array(self) -> np.ndarray:
        return np.array([complex(v) for v in self.values], dtype=complex)

    def moment(self, k: int):
        """``sum c_n n^k``, exact for integer or Fraction values."""
        return sum(v * n**k for n, v in zip(self.support, self.values))

    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.array) ** 2))

    def rows(self):
        return [(n, complex(v).real, complex(v).imag) for n, v in zip(self.support, self.values)]

    def to_csv(self, path) -> None:
        from .serialize import write_csv

        write_csv(path, ["n", "re", "im"], self.rows())


def moment_vanishing(K: int, support_size: int | None = None) -> CoefficientSequence:
    """``c_n = (-1)^(n-1) binom(K, n-1)`` on ``1..K+1``.

    The K-th finite difference annihilates polynomials of degree below
    ``K``, so ``sum c_n n^k = 0`` for ``k < K`` in exact integer
    arithmetic.  A larger ``support_size`` pads with zero coefficients.
    """
    K = int(K)
    if K < 0:
        raise ValueError("K must be nonnegative")
    size = K + 1 if support_size is None else int(support_size)
    if size < K + 1:
        raise ValueError("support_size must be at least K + 1")
    vals = [(-1) ** (n - 1) * comb(K, n - 1) for n in range(1, K + 2)] + [0] * (size - K - 1)
    return CoefficientSequence.of(vals)


# exact rational assembly -------------------------------------------------


def _gauss(z) -> tuple[Fraction, Fraction]:
    if isinstance(z, Rational):
        return Fraction(z), Fraction(0)
    z = complex(z)
    return Fraction(z.real), Fraction(z.imag)


def _gmul(a, b):
    return a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0]


def _rational_form(poles, coeffs):
    """Exact numerator of ``sum c_n / (z - p_n)`` over ``prod (z - p_n)``.

    Returns the numerator coefficients (low degree first, leading zeros
    stripped) as Gaussian rationals.
    """
    S = len(poles)
    q = [(Fraction(1), Fraction(0))]
    for p in poles:
        nq = [(Fraction(0), Fraction(0))] * (len(q) + 1)
        for i, c in enumerate(q):
            nq[i + 1] = (nq[i + 1][0] + c[0], nq[i + 1][1] + c[1])
            m = _gmul(c, p)
            nq[i] = (nq[i][0] - m[0], nq[i][1] - m[1])
        q = nq
    num = [(Fraction(0), Fraction(0))] * S
    for p, c in zip(poles, coeffs):
        if c == (0, 0):
            continue
        # synthetic division q / (z - p), high degree first
        r = q[-1]
        quot = [None] * S
        quot[S - 1] = r
        for i in range(S - 1, 0, -1):
            m = _gmul(r, p)
            r = (q[i][0] + m[0], q[i][1] + m[1])
            quot[i - 1] = r
        for i in range(S):
            m = _gmul(c, quot[i])
            num[i] = (num[i][0] + m[0], num[i][1] + m[1])
    while num and num[-1] == (0, 0):
        num.pop()
    return num


def _pole_data(seq: ZeroSequence, coeffs: CoefficientSequence):
    zs = np.asarray(seq.zero(np.asarray(coeffs.support)), dtype=complex).ravel()
    eff = coeffs.array
    if coeffs.weight_convention == "riesz":
        eff = eff * np.sqrt(zs.imag)
    return zs, np.conj(zs), eff


def kb_series_eval(
    seq: ZeroSequence, coeffs: CoefficientSequence, z, tol: float | None = None, *, with_error: bool = False
):
    """``f(z) = sum c_n / (z - conj z_n)`` (times ``sqrt(Im z_n)`` for Riesz weights).

    For supports up to 64 points the numerator of the rational function
    is assembled in exact Gaussian-rational arithmetic, so cancellations
    forced by vanishing moments are exact; each point then uses whichever
    of the rational form and the direct sum has the smaller rounding
    bound.  Truncated infinite laws add ``sum_{n>N} |c_n| / |z - conj z_n|``
    to the error.
    """
    z = np.asarray(z, dtype=complex)
    scalar = z.ndim == 0
    zf = np.atleast_1d(z).ravel()
    zs, poles, eff = _pole_data(seq, coeffs)
    if poles.size:
        for i in range(0, zf.size, 4096):
            d = np.abs(zf[i : i + 4096, None] - poles[None, :]).min(axis=1)
            if np.any(d < POLE_CUTOFF):
                raise PoleProximity("evaluation point within 1e-12 of a pole")
    if poles.size == 0:
        val = np.zeros(zf.shape, dtype=complex)
        err = np.zeros(zf.shape)
    else:
        terms = eff[None, :] / (zf[:, None] - poles[None, :])
        direct = terms.sum(axis=1)
        d_err = 4 * EPS * np.abs(terms).sum(axis=1) * math.sqrt(poles.size)
        val, err = direct, d_err
        if poles.size <= EXACT_SUPPORT and np.all(np.isfinite(eff)):
            gp = [_gauss(complex(p)) for p in poles]
            if coeffs.weight_convention == "plain":
                gc = [_gauss(v) for v in coeffs.values]
            else:
                gc = [_gauss(complex(v)) for v in eff]
            num = _rational_form(gp, gc)
            if not num:
                val = np.zeros(zf.shape, dtype=complex)
                err = np.zeros(zf.shape)
            else:
                pc = np.array([complex(float(a), float(b)) for a, b in num])
                P = np.zeros(zf.shape, dtype=complex)
                Pabs = np.zeros(zf.shape)
                for c in pc[::-1]:
                    P = P * zf + c
                    Pabs = Pabs * np.abs(zf) + abs(c)
                Qlog = np.sum(np.log(np.abs(zf[:, None] - poles[None, :])), axis=1)
                Qarg = np.sum(np.angle(zf[:, None] - poles[None, :]), axis=1)
                with np.errstate(over="ignore", under="ignore"):
                    inv_q = np.exp(-Qlog - 1j * Qarg)
                    rat = P * inv_q
                    r_err = 4 * EPS * (len(pc) + poles.size) * (np.abs(rat) + Pabs * np.abs(inv_q))
                use = r_err < d_err
                val = np.where(use, rat, direct)
                err = np.where(use, r_err, d_err)
    if coeffs.tail_bound is not None and coeffs.support:
        err = err + _series_tail(seq, coeffs, zf)
    if tol is not None and np.any(err > tol):
        raise ToleranceUnreachable(f"series error bound {np.max(err):.3g} above tol {tol:.3g}", val, err)
    if scalar:
        val, err = complex(val[0]), float(err[0])
    else:
        val, err = val.reshape(z.shape), err.reshape(z.shape)
    return (val, err) if with_error else val


def _series_tail(seq, coeffs, zf, extra: int = 1 << 16):
    """``sum_{n>N} b(n)/|z - conj z_n|`` with ``b`` the coefficient bound."""
    N = max(coeffs.support)
    n = np.arange(N + 1, N + 1 + extra)
    b = np.asarray(coeffs.tail_bound(n.astype(float)), dtype=float)
    p = np.conj(np.asarray(seq.zero(n), dtype=complex))
    if coeffs.weight_convention == "riesz":
        b = b * np.sqrt(-p.imag)
    near = np.zeros(zf.shape)
    for i in range(0, zf.size, 256):
        near[i : i + 256] = (b[None, :] / np.abs(zf[i : i + 256, None] - p[None, :])).sum(axis=1)
    # beyond the block: |z - conj z_n| >= Im z + min height, b decreasing
    h_min = float(np.min(seq.h)) if len(seq) else 1.0
    rest = float(b[-1]) * extra  # crude but valid once b decays faster than 1/n
    s = float(np.sum(b))
    rest = min(rest, s) if b[-1] < b[0] * 1e-3 else math.inf
    return near + rest / (np.maximum(zf.imag, 0.0) + h_min)


# ---------------------------------------------------------------------------
# Legendre decay bound


@dataclass(frozen=True)
class DecayBound:
    """Integer-``k`` bound, relaxed real-``p`` bound and the optimal ``k``."""

    integer: float
    relaxed: float
    k_opt: int
    t: float


def _log_sup_integer(omega, logn, k):
    vals = -omega + (k - 1) * logn
    j = int(np.argmax(vals))
    if j == vals.size - 1 and vals[-1] > vals[-2]:
        return math.inf
    return float(vals[j])


def legendre_decay_bound(w: MajorantProfile, t: float, *, n_max: int = 2_000_000, grid: int = 20001) -> DecayBound:
    """Bounds for ``|f(t)|`` from coefficients ``|c_n| <= n^-3 w(n)`` with vanishing moments.

    ``integer = inf_k |t|^-k sup_n w(n) n^(k-1)`` over ``k >= 0`` and
    ``n = 1..n_max``; ``relaxed = exp(-(G^#)^#(log|t|))`` with ``G(s) =
    Omega(e^s)`` on ``s >= 0``, computed by two discrete Legendre
    transforms.  The integer bound never exceeds the relaxed one.
    """
    if not w.regular:
        raise NotRegular("legendre_decay_bound needs a regular majorant")
    t = abs(float(t))
    if t < 1:
        raise ValueError("need |t| >= 1")
    L = math.log(t)
    n = np.arange(1, n_max + 1, dtype=float)
    logn = np.log(n)
    om = np.asarray(w.omega(n), dtype=float)
    best, k_opt = math.inf, 0
    k = 0
    while True:
        v = _log_sup_integer(om, logn, k)
        total = -k * L + v
        if total < best:
            best, k_opt = total, k
        elif total > best + 1.0 or not math.isfinite(total):
            break
        k += 1
        if k > 10_000:
            break
    integer = math.exp(best)
    # relaxed bound through the Legendre involution
    S = max(2.0 * L + 10.0, L + 40.0)
    s = np.union1d(np.linspace(0.0, S, grid), [L])
    G = np.asarray(w.G(s), dtype=float)
    conj = legendre(s, G)
    p, gp = conj.vertices()
    keep = p >= 0
    p = np.concatenate([[0.0], p[keep]])
    gp = np.concatenate([[-G[0]], gp[keep]])
    p, idx = np.unique(p, return_index=True)
    gp = gp[idx]
    if p.size >= 2:
        back = float(legendre(p, gp, np.asarray([L]))[0])
    else:
        back = -float(gp[0])
    return DecayBound(integer, math.exp(-back), k_opt, t)


# ---------------------------------------------------------------------------
# canonical products


@dataclass(frozen=True)
class CanonicalProductSpec:
    """``E_beta`` = prod (1 - z/(n^beta - i)), or the circle product.

    ``E_circle`` = prod (1 - z/((rho n)^2 - i)); ``E_circle_full`` is
    ``(z + i)(z + 1 + i) E_circle``.
    """

    family: str
    beta: float | None = None
    rho: float | None = None
    N: int = 20000

    def __post_init__(self):
        if self.family == "E_beta":
            if self.beta is None or not self.beta > 1:
                raise ValueError("E_beta needs beta > 1 (asymptotic claims need beta > 2)")
        elif self.family in ("E_circle", "E_circle_full"):
            if self.rho is None or not self.rho > 0:
                raise ValueError("circle products need rho > 0")
        else:
            raise ValueError(f"unknown family {self.family!r}")
        if int(self.N) < 1:
            raise ValueError("N must be positive")

    def zeros_layout(self):
        """Positions ``scale * n**power`` at height 1; explicit arrays and tail."""
        if self.family == "E_beta":
            scale, power = 1.0, float(self.beta)
        else:
            scale, power = float(self.rho) ** 2, 2.0
        n = np.arange(1, self.N + 1, dtype=float)
        return scale * n**power, np.ones(self.N), TailBranch(1, scale, power, self.N + 1, 1.0)


def _product_kernel(t, x, h):
    # log |1 - t/(x - ih)| = (1/2) log(((x-t)^2 + h^2)/(x^2 + h^2))
    d = x - t
    den = x * x + h * h
    ratio = (t * t - 2.0 * t * x) / den
    with np.errstate(divide="ignore", invalid="ignore"):
        near = np.log((d * d + h * h) / den)
        far = np.log1p(ratio)
    return 0.5 * np.where(ratio < -0.5, near, far)


def _log_abs_sin(w):
    w = np.asarray(w, dtype=complex)
    b = np.abs(w.imag)
    big = b > 20
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        small = np.log(np.abs(np.sin(np.where(big, 0.0, w))))
        # |sin w| = e^{|b|}/2 |1 - e^{2i a s} e^{-2|b|}| with s the sign of b
        a = w.real * np.sign(w.imag)
        large = b - math.log(2.0) + np.log(np.abs(1.0 - np.exp(2j * a - 2.0 * b)))
    return np.where(big, large, small)


def e_circle_closed_form(z, rho: float = 1.0):
    """``log|E(z)|`` for ``E = c sin(pi sqrt(z+i)/rho)/sqrt(z+i)``.

    ``c = sqrt(i)/sin(pi sqrt(i)/rho)`` makes ``E(0) = 1``, which is the
    value of the product at 0.  Principal branches throughout.
    """
    z = np.asarray(z, dtype=complex)
    s = np.sqrt(z + 1j)
    c_log = math.log(abs(cmath.sqrt(1j) / cmath.sin(math.pi * cmath.sqrt(1j) / rho)))
    with np.errstate(divide="ignore"):
        return c_log + _log_abs_sin(np.pi * s / rho) - np.log(np.abs(s))


def canonical_product(spec: CanonicalProductSpec, x, tol: float | None = None, *, closed_form: bool | None = None):
    """``log|E(x)|`` at real ``x`` with an error bound.

    ``E_beta`` and the circle product are summed factor by factor through
    the zero-sum engine (explicit ``n <= N`` plus integral tail).  For the
    circle families ``closed_form=True`` uses the sine formula instead;
    by default it is used only where the product is not cheaper.
    Returns ``(log_modulus, err)``.
    """
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    xf = np.atleast_1d(x).ravel()
    circle = spec.family in ("E_circle", "E_circle_full")
    if closed_form and not circle:
        raise ValueError("closed form exists only for the circle products")
    if closed_form:
        val = e_circle_closed_form(xf, spec.rho)
        err = 64 * EPS * (1.0 + np.abs(val) + np.sqrt(np.abs(xf)))
    else:
        xs, hs, tail = spec.zeros_layout()
        val, err = zero_sum(_product_kernel, xf, xs, hs, [tail])
    if spec.family == "E_circle_full":
        val = val + 0.5 * np.log1p(xf * xf) + 0.5 * np.log((xf + 1.0) ** 2 + 1.0)
    if tol is not None and np.any(err > tol):
        raise ToleranceUnreachable(f"product error bound {np.max(err):.3g} above tol {tol:.3g}; raise N", val, err)
    if scalar:
        return float(val[0]), float(err[0])
    return val.reshape(x.shape), err.reshape(x.shape)


# ---------------------------------------------------------------------------
# square integrability of 1/E


@dataclass(frozen=True)
class MajorantL2Report:
    """Integrals of ``|E|^-2`` on doubling windows ``[-W_j, W_j]``."""

    in_L2: bool
    windows: tuple[float, ...]
    integrals: tuple[float, ...]
    errors: tuple[float, ...]
    relative_change: float

    def __iter__(self):
        return iter((self.in_L2, self))


def _inv_sq(spec, closed):
    def f(x):
        lm, _ = canonical_product(spec, x, closed_form=closed)
        with np.errstate(under="ignore", over="ignore"):
            return np.exp(-2.0 * np.asarray(lm))

    return f


def _panel_integral(f, edges, tol_abs):
    return integrate_panels(f, edges, tol_abs, rel=1e-10, max_iter=40)


def _edges_positive(spec, a, b):
    """Panel edges on ``[a, b]``, ``0 <= a``: zero abscissae and midpoints."""
    if spec.family == "E_beta":
        scale, power = 1.0, spec.beta
    else:
        scale, power = spec.rho**2, 2.0
    n_hi = int((b / scale) ** (1.0 / power)) + 2
    n = np.arange(1, n_hi + 1, dtype=float)
    pos = scale * n**power
    mids = scale * (n + 0.5) ** power
    pts = np.concatenate([pos - 1.0, pos, pos + 1.0, mids])
    pts = pts[(pts > a) & (pts < b)]
    geo = np.geomspace(max(a, 1.0), b, 64) if b > max(a, 1.0) else np.array([])
    return np.unique(np.concatenate([[a, b], pts, geo[(geo > a) & (geo < b)]]))


def minimal_majorant_check(
    spec: CanonicalProductSpec, *, W0: float = 1.25e5, doublings: int = 4, rel_tol: float = 1e-2
) -> MajorantL2Report:
    """Decide ``1/E in L^2(R)`` by window doubling.

    ``int_{-W}^{W} |E|^-2`` is computed on composite Gauss-Legendre panels
    cut at every zero abscissa for ``W = W0 2^j``.  Square integrable when
    the last doubling changes the value by less than ``rel_tol`` and the
    increments shrink; not square integrable when the increments do not
    decrease.  Anything else raises :class:`TailUndetermined`.
    """
    closed = spec.family != "E_beta"
    f = _inv_sq(spec, closed)
    windows = [W0 * 2.0**j for j in range(doublings + 1)]
    integrals, errors = [], []
    total = err = 0.0
    prev_w = 0.0
    for W in windows:
        edges_p = _edges_positive(spec, prev_w, W)
        neg = -np.geomspace(max(prev_w, 1.0), W, 64)[::-1]
        edges_n = np.unique(np.concatenate([[-W], neg, [-prev_w]]))
        vp, ep = _panel_integral(f, edges_p, 1e-300)
        vn, en = _panel_integral(f, edges_n, 1e-300)
        total += vp + vn
        err += ep + en
        integrals.append(total)
        errors.append(err)
        prev_w = W
    inc = np.diff(integrals)
    change = float(inc[-1] / integrals[-1]) if integrals[-1] > 0 else 0.0
    shrinking = bool(np.all(inc[1:] <= inc[:-1] * (1 + 1e-9) + 1e-300))
    increasing = bool(np.all(inc[1:] >= inc[:-1] * (1 - 1e-9)))
    if change < rel_tol and shrinking:
        verdict = True
    elif increasing and change >= rel_tol:
        verdict = False
    else:
        raise TailUndetermined(f"window doubling inconclusive (last change {change:.3g})")
    return MajorantL2Report(verdict, tuple(windows), tuple(integrals), tuple(errors), change)


# ---------------------------------------------------------------------------
# products


Factor = "tuple[ZeroSequence, CoefficientSequence] | Callable"


def _factor_eval(fac, z):
    if callable(fac):
        return np.asarray(fac(z), dtype=complex)
    seq, coeffs = fac
    return np.asarray(kb_series_eval(seq, coeffs, z), dtype=complex)


def _factor_poles(fac):
    if callable(fac):
        return np.asarray(getattr(fac, "poles", ()), dtype=complex)
    seq, coeffs = fac
    vals = coeffs.array
    zs = np.asarray(seq.zero(np.asarray(coeffs.support)), dtype=complex).ravel()
    return np.conj(zs[vals != 0])


def product_poles(fA, fB) -> np.ndarray:
    """Union of the pole sets of both factors (a pole shared by both is listed once)."""
    p = np.concatenate([_factor_poles(fA), _factor_poles(fB)])
    return np.unique(np.round(p, 12)) if p.size else p


@dataclass(frozen=True)
class ProductValue:
    """``f g`` at the points, with envelopes on each semi-axis."""

    value: np.ndarray
    poles: np.ndarray
    envelope_negative: float | None
    envelope_positive: float | None


def product_function(fA, fB, z, *, check: bool = True, check_points=None) -> ProductValue:
    """Pointwise product of two model-space functions.

    A factor is a pair ``(seq, coeffs)`` or a vectorised callable (which
    may carry a ``poles`` attribute).  With ``check=True`` pair factors go
    through ``pointwise_bound_check`` and callables are sampled for
    boundedness on ``check_points``; failures raise
    :class:`UnboundedFactor`.
    """
    from .blaschke import pointwise_bound_check

    z = np.asarray(z, dtype=complex)
    if check:
        pts = np.linspace(-50.0, 50.0, 201) if check_points is None else np.asarray(check_points, dtype=float)
        for fac in (fA, fB):
            if callable(fac):
                vals = np.abs(_factor_eval(fac, pts.astype(complex)))
                if not np.all(np.isfinite(vals)):
                    raise UnboundedFactor("callable factor is not finite on the check grid")
            else:
                seq, coeffs = fac
                if coeffs.array.size and np.any(coeffs.array != 0):
                    rep = pointwise_bound_check(seq, coeffs, pts)
                    if not rep.holds or not math.isfinite(rep.norm):
                        raise UnboundedFactor("factor fails the pointwise bound")
    value = _factor_eval(fA, z) * _factor_eval(fB, z)
    real = np.isclose(z.imag, 0.0)
    neg = np.abs(value[(z.real < 0) & real])
    pos = np.abs(value[(z.real > 0) & real])
    return ProductValue(
        value,
        product_poles(fA, fB),
        float(neg.max()) if neg.size else None,
        float(pos.max()) if pos.size else None,
    )
