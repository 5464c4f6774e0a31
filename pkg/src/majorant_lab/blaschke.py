"""Blaschke products: values, phase, kernel norms and pointwise bounds.

All sums run through the zero-sum engine, so each returned quantity
carries an error bound that includes the analytic tail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from ._sums import zero_sum
from .zeros import ZeroSequence

__all__ = [
    "PhaseGrid",
    "BoundReport",
    "ToleranceUnreachable",
    "PoleProximity",
    "QuadratureNonconvergent",
    "blaschke_eval",
    "phase",
    "phase_grid",
    "kernel_norm_sq",
    "log_modulus_lower_half",
    "lower_half_envelope_exponent",
    "pointwise_bound_check",
]

POLE_CUTOFF = 1e-12


class ToleranceUnreachable(RuntimeError):
    """The error bound at the current truncation exceeds the tolerance."""

    def __init__(self, msg, value=None, err=None):
        super().__init__(msg)
        self.value = value
        self.err = err


class PoleProximity(ValueError):
    """Evaluation point within ``POLE_CUTOFF`` of a reflected zero."""


class QuadratureNonconvergent(RuntimeError):
    pass


# kernels ------------------------------------------------------------------


def _dphi_kernel(t, x, h):
    d = t - x
    return 2.0 * h / (d * d + h * h)


def _phi_kernel(t, x, h):
    # increment of the argument of one factor between 0 and t:
    # 2 (atan(x/h) - atan((x-t)/h)) written without cancellation
    return 2.0 * np.arctan2(t * h, h * h + x * (x - t))


def _blaschke_re(z, x, h):
    # log|b(z)| = (1/2) log(1 - 4 h Im z / |z - conj z_n|^2)
    d = np.real(z) - x
    y = np.imag(z)
    with np.errstate(divide="ignore"):
        return 0.5 * np.log1p(-4.0 * h * y / (d * d + (y + h) ** 2))


def _arg_factor(z, x, h):
    # arg of b(z) = 1 + w with w = -2ih/(z - x + ih)
    w = -2j * h / (z - x + 1j * h)
    return np.arctan2(w.imag, 1.0 + w.real)


def _blaschke_im(z, x, h):
    # subtract arg b(i) so that each normalised factor is positive at i;
    # a zero sitting at i keeps its plain factor
    with np.errstate(divide="ignore", invalid="ignore"):
        fix = np.where((x == 0) & (h == 1.0), 0.0, _arg_factor(1j, x, h))
        return _arg_factor(z, x, h) - fix


def _lower_kernel(y):
    def k(t, x, h):
        d = np.real(t) - x
        return 0.5 * np.log1p(4.0 * y * h / (d * d + (h - y) ** 2))

    return k


def _sum(seq: ZeroSequence, kernel, z):
    return zero_sum(kernel, z, seq.x, seq.h, seq.tails)


# operations -----------------------------------------------------------------


def blaschke_eval(seq: ZeroSequence, z, tol: float = 1e-8):
    """Value of the Blaschke product at ``z`` (``Im z >= 0``).

    Each factor ``(z - z_n)/(z - conj z_n)`` is rotated to be positive at
    ``i``.  Returns ``(value, err)``; raises :class:`ToleranceUnreachable`
    if ``err > tol`` anywhere.
    """
    z = np.asarray(z, dtype=complex)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    if np.any(z.imag < 0):
        raise ValueError("blaschke_eval needs Im z >= 0; use log_modulus_lower_half")
    zr = z.real.copy() if np.all(z.imag == 0) else z
    re, e_re = _sum(seq, _blaschke_re, zr)
    im, e_im = _sum(seq, _blaschke_im, zr)
    with np.errstate(under="ignore"):
        value = np.exp(re + 1j * im)
    mod = np.abs(value)
    with np.errstate(invalid="ignore", over="ignore"):  # 0 * inf at an exact zero
        err = mod * (np.expm1(e_re + e_im))
    err = np.where(np.isfinite(err), err, 0.0)
    if scalar:
        value, err = value[0], float(err[0])
    if np.any(np.asarray(err) > tol):
        raise ToleranceUnreachable(
            f"error bound {np.max(err):.3g} above tol {tol:.3g}; raise N", value, err
        )
    return value, err


def phase(seq: ZeroSequence, t):
    """Phase ``phi`` (anchored at ``phi(0) = 0``), derivative and error.

    ``dphi = 2 sum Im z_n / |t - z_n|^2`` and ``phi`` is its integral from
    0, summed factor by factor in closed form.
    """
    t = np.asarray(t, dtype=float)
    scalar = t.ndim == 0
    t = np.atleast_1d(t)
    dphi, e1 = _sum(seq, _dphi_kernel, t)
    phi, e2 = _sum(seq, _phi_kernel, t)
    err = np.maximum(e1, e2)
    if scalar:
        return float(phi[0]), float(dphi[0]), float(err[0])
    return phi, dphi, err


@dataclass(frozen=True)
class PhaseGrid:
    """Sampled phase on an increasing grid."""

    points: np.ndarray
    phi: np.ndarray
    dphi: np.ndarray
    err: np.ndarray

    def __post_init__(self):
        if np.any(np.diff(self.points) <= 0):
            raise ValueError("points must be strictly increasing")
        if np.any(self.dphi <= 0):
            raise ValueError("phase derivative must be positive")
        if np.any(~np.isfinite(self.err)):
            raise ValueError("error bounds must be finite")

    def to_csv(self, path) -> None:
        from .serialize import write_csv

        write_csv(path, ["t", "phi", "dphi", "err"], zip(self.points, self.phi, self.dphi, self.err))


def phase_grid(seq: ZeroSequence, points) -> PhaseGrid:
    pts = np.asarray(points, dtype=float)
    phi, dphi, err = phase(seq, pts)
    return PhaseGrid(pts, phi, dphi, err)


def kernel_norm_sq(seq: ZeroSequence, x):
    """``||k_x||^2 = phi'(x) / (2 pi)`` for real ``x``."""
    x = np.asarray(x, dtype=float)
    d, _ = _sum(seq, _dphi_kernel, np.atleast_1d(x))
    out = d / (2.0 * math.pi)
    return float(out[0]) if x.ndim == 0 else out


def lower_half_envelope_exponent(beta: float) -> float:
    """Growth exponent of ``log|B|`` below the axis for power zeros.

    0 (bounded) for ``beta >= 1``; ``-1 + 1/beta`` for ``1/2 < beta < 1``.
    """
    return 0.0 if beta >= 1 else -1.0 + 1.0 / beta


def log_modulus_lower_half(seq: ZeroSequence, z, with_error: bool = False):
    """``log|B(z)|`` for ``Im z < 0``, nonnegative.

    Uses ``2 log|B(x - iy)| = sum log(1 + 4 y Im z_n / |z - conj z_n|^2)``.
    The points are grouped by their imaginary part so the engine can treat
    each group as a real grid.
    """
    z = np.asarray(z, dtype=complex)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    if np.any(z.imag >= 0):
        raise ValueError("log_modulus_lower_half needs Im z < 0")
    if seq.x.size:
        for i in range(0, z.size, 2048):
            zz = z[i : i + 2048, None]
            d = np.abs(zz - (seq.x - 1j * seq.h)[None, :]).min(axis=1)
            if np.any(d < POLE_CUTOFF):
                raise PoleProximity("point within 1e-12 of a reflected zero")
    for br in seq.tails:
        s = np.round(br.index_of(z.real))
        ok = np.isfinite(s) & (s >= br.start)
        if np.any(ok):
            s = s[ok]
            poles = br.position(s) - 1j * br.heights(s)
            if np.any(np.abs(z[ok] - poles) < POLE_CUTOFF):
                raise PoleProximity("point within 1e-12 of a reflected tail zero")
    vals = np.empty(z.size)
    errs = np.empty(z.size)
    for y in np.unique(-z.imag):
        sel = -z.imag == y
        v, e = _sum(seq, _lower_kernel(float(y)), z.real[sel])
        vals[sel] = v
        errs[sel] = e
    if scalar:
        vals, errs = float(vals[0]), float(errs[0])
    return (vals, errs) if with_error else vals


# pointwise bounds -------------------------------------------------------------


@dataclass(frozen=True)
class BoundReport:
    norm: float
    norm_err: float
    real_slack: float
    lower_slack: float | None
    holds: bool
    worst_point: float | complex | None

    def as_row(self):
        return dict(
            norm=self.norm,
            real_slack=self.real_slack,
            lower_slack=self.lower_slack,
            holds=self.holds,
        )


def l2_norm(f, poles_x, *, tol: float = 1e-10):
    """``||f||_2`` on the line by adaptive quadrature split at pole abscissae."""
    cuts = sorted(set(float(p) for p in poles_x))
    edges = [-math.inf] + cuts + [math.inf]
    if not cuts:
        edges = [-math.inf, 0.0, math.inf]
    total = 0.0
    err = 0.0

    def g(t):
        return float(np.abs(f(np.asarray([t]))[0]) ** 2)

    for a, b in zip(edges[:-1], edges[1:]):
        v, e = integrate.quad(g, a, b, epsabs=1e-15, epsrel=1e-12, limit=400)
        total += v
        err += e
    if err > tol * max(total, 1e-300) + 1e-15:
        raise QuadratureNonconvergent(f"norm quadrature error {err:.3g}")
    return math.sqrt(total), err / (2 * math.sqrt(total)) if total > 0 else 0.0


def pointwise_bound_check(seq: ZeroSequence, coeffs, real_points, lower_points=()) -> BoundReport:
    """Check ``|f(x)| <= ||f|| (phi'(x)/2pi)^{1/2}`` and its lower half-plane form.

    Below the axis the bound is ``||f|| |B(z)| (phi'(Re z)/2pi)^{1/2}``.
    ``f`` is the series with coefficients ``coeffs`` on the zeros of
    ``seq``.  Slack is the minimum of bound minus ``|f|``.
    """
    from .constructions import kb_series_eval

    real_points = np.asarray(real_points, dtype=float)
    lower_points = np.asarray(lower_points, dtype=complex)
    poles = np.asarray(seq.zero(np.asarray(coeffs.support)), dtype=complex)
    if np.all(np.asarray(coeffs.values) == 0):
        norm, nerr = 0.0, 0.0
    else:
        norm, nerr = l2_norm(lambda t: kb_series_eval(seq, coeffs, t), poles.real)
    fx = np.abs(kb_series_eval(seq, coeffs, real_points))
    kx = np.sqrt(kernel_norm_sq(seq, real_points))
    slack = norm * kx - fx
    k = int(np.argmin(slack)) if slack.size else 0
    real_slack = float(slack[k]) if slack.size else math.inf
    worst = float(real_points[k]) if slack.size else None
    lower_slack = None
    if lower_points.size:
        fz = np.abs(kb_series_eval(seq, coeffs, lower_points))
        logb = log_modulus_lower_half(seq, lower_points)
        kz = np.sqrt(kernel_norm_sq(seq, lower_points.real))
        lslack = norm * np.exp(logb) * kz - fz
        lower_slack = float(np.min(lslack))
        if lower_slack < real_slack:
            worst = complex(lower_points[int(np.argmin(lslack))])
    tol = 1e-12 * max(norm, 1.0)
    holds = real_slack >= -tol and (lower_slack is None or lower_slack >= -tol)
    return BoundReport(norm, nerr, real_slack, lower_slack, holds, worst)
