"""Zero sequences of Blaschke products in the upper half-plane.

Every sequence is an explicit finite block of zeros (indices up to the
truncation ``N``) together with :class:`~majorant_lab._sums.TailBranch`
descriptions of the remaining zeros, so that sums over the whole
sequence can be completed analytically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Mapping

import numpy as np

from ._sums import TailBranch, zero_sum

__all__ = [
    "Kind",
    "ZeroSequence",
    "CarlesonResult",
    "InvalidParameter",
    "NonMonotoneLaw",
    "TailBoundUnavailable",
    "Y_LAWS",
    "make_sequence",
    "carleson_constant",
    "sequence_from_kv",
]

DEFAULT_DELTA = 1e-6


class InvalidParameter(ValueError):
    """Parameters violate the constraints of the requested kind."""


class NonMonotoneLaw(InvalidParameter):
    """A height law that is not even, nonincreasing and within (0, 1]."""


class TailBoundUnavailable(ValueError):
    """No analytic tail information for an incomplete sequence."""


class Kind(str, Enum):
    UNIT_HALF_LATTICE = "unit-half-lattice"
    FULL_LATTICE = "full-lattice"
    POWER_ONE_SIDED = "power-one-sided"
    POWER_TWO_SIDED = "power-two-sided"
    SCALED_SQUARE = "scaled-square"
    TANGENTIAL = "tangential"
    EXPLICIT_LIST = "explicit-list"


def _inverse_square(t):
    return 1.0 / (1.0 + np.asarray(t, dtype=float) ** 2)


def _exp_abs(t):
    return np.exp(-np.abs(np.asarray(t, dtype=float)))


def _exp_sqrt(t):
    return np.exp(-np.sqrt(np.abs(np.asarray(t, dtype=float))))


#: named height laws usable from key=value configs
Y_LAWS: dict[str, Callable[[np.ndarray], np.ndarray]] = {
    "inverse-square": _inverse_square,
    "exp": _exp_abs,
    "exp-sqrt": _exp_sqrt,
}


@dataclass(frozen=True)
class ZeroSequence:
    """Validated zero set with explicit block and analytic tail branches.

    Attributes
    ----------
    kind : Kind
    params : mapping
        The numeric parameters (beta, gamma, rho, tau, h) in use.
    truncation : int
        Explicit index bound ``N``.
    x, h : ndarray
        Real and imaginary parts of the explicit zeros, sorted by ``x``.
    tails : tuple of TailBranch
    y_law : callable or None
        Height law of the tangential kind.
    complete : bool
        False when the explicit list stands for an infinite set without
        tail metadata.
    """

    kind: Kind
    params: Mapping[str, float]
    truncation: int
    x: np.ndarray = field(repr=False, compare=False)
    h: np.ndarray = field(repr=False, compare=False)
    tails: tuple[TailBranch, ...] = ()
    y_law: Callable | None = field(default=None, repr=False, compare=False)
    y_name: str | None = None
    complete: bool = True

    @property
    def zeros(self) -> np.ndarray:
        return self.x + 1j * self.h

    def __len__(self) -> int:
        return int(self.x.size)

    @property
    def tail_law(self) -> dict:
        """Readable description of how the sequence continues past ``N``."""
        return {
            "branches": [
                dict(sign=b.sign, scale=b.scale, power=b.power, start=b.start)
                for b in self.tails
            ]
        }

    def zero(self, n):
        """Zero carrying index ``n`` (the coefficient-indexing convention).

        Lattice and power kinds use the natural index (signed for two-sided
        kinds); scaled-square uses ``-1 -> -1+i``, ``0 -> i``, ``n >= 1 ->
        (rho n)^2 + i``; explicit lists are indexed from 1.
        """
        n = np.asarray(n)
        p = self.params
        k = self.kind
        if k in (Kind.UNIT_HALF_LATTICE, Kind.FULL_LATTICE):
            if k is Kind.UNIT_HALF_LATTICE and np.any(n < 1):
                raise IndexError("unit-half-lattice indices start at 1")
            return p["tau"] * n + 1j * p["h"]
        if k is Kind.POWER_ONE_SIDED:
            if np.any(n < 1):
                raise IndexError("indices start at 1")
            return np.power(n, p["beta"]) + 1j * p["h"]
        if k is Kind.POWER_TWO_SIDED:
            if np.any(n == 0):
                raise IndexError("index 0 is omitted")
            pos = np.power(np.abs(n), p["beta"])
            neg = -np.power(np.abs(n), p["gamma"])
            return np.where(n > 0, pos, neg) + 1j * p["h"]
        if k is Kind.SCALED_SQUARE:
            rho = p["rho"]
            if np.any(n < -1):
                raise IndexError("scaled-square indices start at -1")
            return np.where(n == -1, -1.0, np.where(n == 0, 0.0, (rho * n) ** 2)) + 1j
        if k is Kind.TANGENTIAL:
            return n + 1j * np.asarray(self.y_law(n), dtype=float)
        # explicit list, 1-based in the original order
        zs = self.params_list
        return np.asarray(zs)[np.asarray(n) - 1]

    @property
    def params_list(self):
        return object.__getattribute__(self, "_original")

    def to_kv(self) -> dict:
        """Key=value description (explicit lists are not serialisable)."""
        out: dict = {"kind": self.kind.value, "N": self.truncation}
        for key, val in self.params.items():
            out[key] = val
        if self.kind is Kind.TANGENTIAL:
            if self.y_name is None:
                raise ValueError("only named height laws can be serialised")
            out["y_law"] = self.y_name
        if self.kind is Kind.EXPLICIT_LIST:
            raise ValueError("explicit lists are not serialisable as key=value")
        return out


def _check_power(name: str, value: float) -> float:
    value = float(value)
    if not value > 0.5:
        raise InvalidParameter(
            f"{name}={value}: power kinds need exponent > 1/2 for the Blaschke condition"
        )
    return value


def _check_positive(name: str, value: float) -> float:
    value = float(value)
    if not value > 0:
        raise InvalidParameter(f"{name} must be positive, got {value}")
    return value


def _check_y_law(y_law, N: int, two_sided: bool) -> None:
    n = np.arange(0, min(N, 10**6) + 1, dtype=float)
    y = np.asarray(y_law(n), dtype=float)
    if np.any(~np.isfinite(y)) or np.any(y <= 0) or np.any(y > 1.0 + 1e-15):
        raise NonMonotoneLaw("height law must take values in (0, 1]")
    if np.any(np.diff(y) > 1e-15 * np.maximum(y[:-1], 1e-300)):
        raise NonMonotoneLaw("height law must be nonincreasing for n >= 0")
    if two_sided:
        ym = np.asarray(y_law(-n), dtype=float)
        if not np.allclose(ym, y, rtol=1e-12, atol=0):
            raise NonMonotoneLaw("height law must be even")


def _finish(kind, params, N, zs, tails, **extra) -> ZeroSequence:
    zs = np.asarray(zs, dtype=complex).ravel()
    if zs.size and np.any(zs.imag <= 0):
        raise InvalidParameter("every zero needs a strictly positive imaginary part")
    order = np.argsort(zs.real, kind="stable")
    seq = ZeroSequence(
        kind=kind,
        params=dict(params),
        truncation=int(N),
        x=np.ascontiguousarray(zs.real[order]),
        h=np.ascontiguousarray(zs.imag[order]),
        tails=tuple(tails),
        **extra,
    )
    object.__setattr__(seq, "_original", zs)
    return seq


def make_sequence(
    kind: str | Kind,
    *,
    N: int = 20000,
    beta: float | None = None,
    gamma: float | None = None,
    rho: float | None = None,
    tau: float = 1.0,
    h: float = 1.0,
    y_law: Callable | str | None = None,
    one_sided: bool = False,
    zeros=None,
    complete: bool = True,
) -> ZeroSequence:
    """Build and validate a zero sequence.

    Parameters
    ----------
    kind : str or Kind
        One of the :class:`Kind` values.
    N : int
        Explicit indices ``|n| <= N``; the rest is an analytic tail.
    beta, gamma : float
        Growth exponents of the power kinds (``gamma`` for ``n < 0``).
    rho : float
        Scale of the scaled-square kind.
    tau, h : float
        Spacing and height of the lattice kinds (``h`` also for power kinds).
    y_law : callable or str
        Height law ``y(n)`` of the tangential kind, or a name from ``Y_LAWS``.
    one_sided : bool
        Tangential zeros only for ``n >= 1`` instead of ``n in Z``.
    zeros : array_like
        Zeros of the explicit-list kind.
    complete : bool
        For explicit lists: whether the list is the whole sequence.
    """
    kind = Kind(kind)
    N = int(N)
    if N < 1 and kind is not Kind.EXPLICIT_LIST:
        raise InvalidParameter("truncation N must be >= 1")
    if kind in (Kind.UNIT_HALF_LATTICE, Kind.FULL_LATTICE):
        tau = _check_positive("tau", tau)
        h = _check_positive("h", h)
        if kind is Kind.UNIT_HALF_LATTICE:
            n = np.arange(1, N + 1)
            tails = [TailBranch(1, tau, 1.0, N + 1, h)]
        else:
            n = np.arange(-N, N + 1)
            tails = [TailBranch(1, tau, 1.0, N + 1, h), TailBranch(-1, tau, 1.0, N + 1, h)]
        return _finish(kind, {"tau": tau, "h": h}, N, tau * n + 1j * h, tails)
    if kind is Kind.POWER_ONE_SIDED:
        if beta is None:
            raise InvalidParameter("power-one-sided needs beta")
        beta = _check_power("beta", beta)
        h = _check_positive("h", h)
        n = np.arange(1, N + 1, dtype=float)
        return _finish(
            kind, {"beta": beta, "h": h}, N, n**beta + 1j * h, [TailBranch(1, 1.0, beta, N + 1, h)]
        )
    if kind is Kind.POWER_TWO_SIDED:
        if beta is None or gamma is None:
            raise InvalidParameter("power-two-sided needs beta and gamma")
        beta = _check_power("beta", beta)
        gamma = _check_power("gamma", gamma)
        h = _check_positive("h", h)
        n = np.arange(1, N + 1, dtype=float)
        zs = np.concatenate([-(n**gamma) + 1j * h, n**beta + 1j * h])
        tails = [TailBranch(1, 1.0, beta, N + 1, h), TailBranch(-1, 1.0, gamma, N + 1, h)]
        return _finish(kind, {"beta": beta, "gamma": gamma, "h": h}, N, zs, tails)
    if kind is Kind.SCALED_SQUARE:
        if rho is None:
            raise InvalidParameter("scaled-square needs rho")
        rho = _check_positive("rho", rho)
        n = np.arange(1, N + 1, dtype=float)
        zs = np.concatenate([[-1 + 1j, 1j], (rho * n) ** 2 + 1j])
        return _finish(kind, {"rho": rho}, N, zs, [TailBranch(1, rho * rho, 2.0, N + 1, 1.0)])
    if kind is Kind.TANGENTIAL:
        name = None
        if isinstance(y_law, str):
            name = y_law
            try:
                y_law = Y_LAWS[y_law]
            except KeyError as exc:
                raise InvalidParameter(f"unknown height law {name!r}") from exc
        if y_law is None:
            raise InvalidParameter("tangential kind needs a height law")
        _check_y_law(y_law, N, two_sided=not one_sided)
        yl = y_law
        n = np.arange(1, N + 1) if one_sided else np.arange(-N, N + 1)
        height = lambda s: np.asarray(yl(s), dtype=float)  # noqa: E731
        tails = [TailBranch(1, 1.0, 1.0, N + 1, height)]
        if not one_sided:
            tails.append(TailBranch(-1, 1.0, 1.0, N + 1, height))
        params = {"one_sided": 1.0 if one_sided else 0.0}
        zs = n + 1j * np.asarray(yl(n.astype(float)), dtype=float)
        return _finish(kind, params, N, zs, tails, y_law=yl, y_name=name)
    # explicit list
    if zeros is None:
        raise InvalidParameter("explicit-list needs zeros")
    zs = np.atleast_1d(np.asarray(zeros, dtype=complex))
    return _finish(kind, {}, zs.size, zs, [], complete=bool(complete))


def sequence_from_kv(kv: Mapping[str, str]) -> ZeroSequence:
    """Inverse of :meth:`ZeroSequence.to_kv` (values may be strings)."""
    kv = dict(kv)
    kind = kv.pop("kind")
    args: dict = {}
    for key, val in kv.items():
        if key == "N":
            args["N"] = int(float(val))
        elif key == "y_law":
            args["y_law"] = str(val)
        elif key == "one_sided":
            args["one_sided"] = bool(float(val))
        elif key in ("beta", "gamma", "rho", "tau", "h"):
            args[key] = float(val)
        else:
            raise InvalidParameter(f"unknown sequence key {key!r}")
    return make_sequence(kind, **args)


# --------------------------------------------------------------------------
# Carleson constant


@dataclass(frozen=True)
class CarlesonResult:
    """inf over n <= N of the Carleson product, with its tail bound."""

    value: float
    interpolating: bool
    tail_bound: float
    argmin: int
    limit: float | None = None

    def __iter__(self):
        return iter((self.value, self.interpolating))


def _lattice_tail(N: int, a: float):
    """Tail of sum_{m>N} (1/2) log(m^2/(m^2+a^2)) with two-sided bounds.

    The summand increases to 0, so the integral from N undershoots and the
    one from N+1 overshoots; the midpoint integral is the estimate.
    """

    def integral(M):
        M = float(M)
        return 0.5 * (-a * math.pi - M * math.log(M * M / (M * M + a * a)) + 2 * a * math.atan(M / a))

    lo, hi = integral(N), integral(N + 1)
    return integral(N + 0.5), 0.5 * abs(hi - lo)


def _pair_kernel(z, x, h):
    # (1/2) log |z - (x+ih)|^2 / |z - (x-ih)|^2
    dx = np.real(z) - x
    y = np.imag(z)
    return 0.5 * np.log1p(-4.0 * y * h / (dx * dx + (y + h) ** 2))


def carleson_constant(
    seq: ZeroSequence, *, delta: float = DEFAULT_DELTA, max_direct: int = 4000
) -> CarlesonResult:
    """inf_n prod_{k != n} |(z_n - z_k)/(z_n - conj z_k)| over explicit n.

    Lattice kinds use translation invariance: the log-product at index n
    is a partial sum of one fixed series, completed by a closed-form tail.
    Other kinds form the pairwise products directly (at most
    ``max_direct`` explicit zeros) and add each row's tail by quadrature.
    """
    if len(seq) <= 1 and not seq.tails:
        if not seq.complete:
            raise TailBoundUnavailable("incomplete explicit list without tail metadata")
        return CarlesonResult(1.0, 1.0 > delta, 0.0, 0, 1.0)
    if seq.kind in (Kind.UNIT_HALF_LATTICE, Kind.FULL_LATTICE):
        tau, h = seq.params["tau"], seq.params["h"]
        a = 2.0 * h / tau
        N = seq.truncation
        m = np.arange(1, N + 1, dtype=float)
        ell = 0.5 * np.log1p(-(a * a) / (m * m + a * a))
        S = np.concatenate([[0.0], np.cumsum(ell)])  # S[k] = sum_{m<=k}
        tail, tail_err = _lattice_tail(N, a)
        s_inf = S[N] + tail
        if seq.kind is Kind.FULL_LATTICE:
            val = math.exp(2 * s_inf)
            return CarlesonResult(val, val > delta, 2 * val * tail_err, 0, val)
        # index n (1..N): S[n-1] + S(inf); decreasing in n, inf at n = N
        val = math.exp(S[N - 1] + s_inf)
        return CarlesonResult(val, val > delta, val * tail_err, N, math.exp(2 * s_inf))
    if not seq.complete:
        raise TailBoundUnavailable("incomplete explicit list without tail metadata")
    zs = seq.zeros
    if zs.size > max_direct:
        raise InvalidParameter(
            f"{zs.size} explicit zeros exceed max_direct={max_direct}; lower N"
        )
    logs = np.empty(zs.size)
    for i in range(0, zs.size, 512):
        zi = zs[i : i + 512, None]
        with np.errstate(divide="ignore"):
            terms = np.log(np.abs((zi - zs[None, :]) / (zi - np.conj(zs)[None, :])))
        rows = np.arange(i, min(i + 512, zs.size))
        terms[rows - i, rows] = 0.0
        logs[i : i + 512] = terms.sum(axis=1)
    tail_err = np.zeros(zs.size)
    if seq.tails:
        for br in seq.tails:
            tv, te = zero_sum(_pair_kernel, zs, np.zeros(0), np.zeros(0), [br])
            logs += tv
            tail_err += te
    k = int(np.argmin(logs))
    val = float(np.exp(logs[k]))
    return CarlesonResult(val, val > delta, float(val * tail_err[k]), k)
