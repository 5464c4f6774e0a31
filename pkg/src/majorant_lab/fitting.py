"""Least-squares power-law exponents on log-log data."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["SlopeFit", "DegenerateSpread", "slope_fit"]

MIN_POINTS = 10


class DegenerateSpread(ValueError):
    """Abscissae span less than a decade, or too few points."""


@dataclass(frozen=True)
class SlopeFit:
    """``y ~ exp(intercept) * x**exponent`` with RMS log residual."""

    exponent: float
    intercept: float
    residual: float
    window: tuple[float, float]
    points: int

    def predict(self, x):
        return np.exp(self.intercept) * np.asarray(x, dtype=float) ** self.exponent


def slope_fit(xs, ys) -> SlopeFit:
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if xs.shape != ys.shape or xs.ndim != 1:
        raise ValueError("xs and ys must be 1-d arrays of equal length")
    if xs.size < MIN_POINTS:
        raise DegenerateSpread(f"need at least {MIN_POINTS} points, got {xs.size}")
    if np.any(xs <= 0) or np.any(ys <= 0):
        raise ValueError("slope_fit needs positive xs and ys")
    if np.any(np.diff(xs) <= 0):
        raise ValueError("xs must be strictly increasing")
    if xs[-1] / xs[0] < 10:
        raise DegenerateSpread("abscissae span less than one decade")
    lx, ly = np.log(xs), np.log(ys)
    A = np.column_stack([lx, np.ones_like(lx)])
    (p, c), *_ = np.linalg.lstsq(A, ly, rcond=None)
    r = ly - (p * lx + c)
    return SlopeFit(float(p), float(c), float(np.sqrt(np.mean(r * r))), (float(xs[0]), float(xs[-1])), int(xs.size))
