"""Acceptance suite: sixteen end-to-end criteria at their stated tolerances.

Each criterion is one function returning ``(passed, detail)``.  Under
pytest every criterion is a separate test and the PASS/FAIL lines are
printed in the terminal summary (see ``conftest.py``).  Run directly
with ``python tests/test_acceptance.py`` for the same lines on stdout.
"""

from __future__ import annotations

import math
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

import frozen  # noqa: E402

from majorant_lab import admissibility as adm  # noqa: E402
from majorant_lab import blaschke, conformal, constructions, transforms, zeros  # noqa: E402
from majorant_lab.experiments import circle_decay_constants, exponent_table_rows  # noqa: E402
from majorant_lab.fitting import slope_fit  # noqa: E402

RESULTS: dict[int, tuple[bool, str, float]] = {}
CRITERIA = {}


def criterion(number, title):
    def deco(fn):
        CRITERIA[number] = (title, fn)
        return fn

    return deco


@criterion(1, "unimodularity on the real line")
def c01():
    seq = zeros.make_sequence("unit-half-lattice")
    x = np.linspace(-500.0, 500.0, 1000)
    val, err = blaschke.blaschke_eval(seq, x)
    dev = np.abs(np.abs(val) - 1.0)
    ok = bool(np.all(dev < 1e-8 + err))
    return ok, f"max ||B|-1| = {dev.max():.3g}, max err = {np.max(err):.3g}"


@criterion(2, "phase-derivative slopes on both semiaxes")
def c02():
    x = np.geomspace(1e3, 1e6, 40)
    cases = [(0.75, 1, 1.0 / 3.0), (0.75, -1, -2.0 / 3.0), (2.0, -1, -1.5)]
    parts, ok = [], True
    for beta, side, want in cases:
        seq = zeros.make_sequence("power-one-sided", beta=beta)
        _, d, _ = blaschke.phase(seq, side * x)
        s = slope_fit(x, d).exponent
        ok &= abs(s - want) <= 0.05
        parts.append(f"beta={beta} side={side:+d}: {s:.4f} (want {want:.4f})")
    return ok, "; ".join(parts)


@criterion(3, "log log|E_beta(-x)| slope for beta = 3")
def c03():
    spec = constructions.CanonicalProductSpec("E_beta", beta=3.0)
    x = np.geomspace(1e3, 1e8, 41)
    lm, _ = constructions.canonical_product(spec, -x)
    s = slope_fit(x, lm).exponent
    return bool(np.all(lm > 0) and abs(s - 1.0 / 3.0) <= 0.03), f"slope = {s:.5f} (want 1/3 +- 0.03)"


@criterion(4, "E_circle growth on the negative axis, rho = 1")
def c04():
    spec = constructions.CanonicalProductSpec("E_circle", rho=1.0)
    lm, _ = constructions.canonical_product(spec, -1e6)
    # log|E(-x)| is positive there; the growth constant is log|E| / sqrt(x)
    r = float(lm) / 1e3
    return 0.98 * math.pi <= r <= 1.02 * math.pi, f"log|E(-1e6)|/1e3 = {r:.6f}, pi = {math.pi:.6f}"


@criterion(5, "two-sided decay of E_circle between the zeros")
def c05():
    spec = constructions.CanonicalProductSpec("E_circle", rho=1.0)
    k = np.arange(1, 1001, dtype=float)
    lm, _ = constructions.canonical_product(spec, (k + 0.49) ** 2)
    low, up, _ = circle_decay_constants(k, lm)
    r_low, r_up = low.max() / low.min(), up.max() / up.min()
    return bool(r_low < 3 and r_up < 3), f"block ratio lower = {r_low:.4f}, upper = {r_up:.4f}"


@criterion(6, "minimal majorant integral converges under window doubling")
def c06():
    spec = constructions.CanonicalProductSpec("E_circle_full", rho=1.0)
    rep = constructions.minimal_majorant_check(spec, W0=5e5, doublings=1, rel_tol=1e-2)
    return bool(rep.in_L2 and rep.relative_change < 1e-2), (
        f"integrals {rep.integrals[0]:.10g} -> {rep.integrals[-1]:.10g}, change {rep.relative_change:.3g}"
    )


@criterion(7, "Carleson constant of n + i")
def c07():
    res = zeros.carleson_constant(zeros.make_sequence("unit-half-lattice", N=100_000))
    d = abs(res.value - frozen.CARLESON_UNIT_HALF_LATTICE)
    return bool(d <= 1e-4 and res.interpolating), f"value = {res.value:.10g}, |diff| = {d:.3g}"


@criterion(8, "Hilbert transform closed forms")
def c08():
    v = transforms.hilbert(transforms.MajorantProfile.indicator(0.0, 1.0), 2.0)
    d = abs(v - 3 * math.log(2) / (2 * math.pi))
    worst_c = max(
        abs(transforms.hilbert(transforms.MajorantProfile.constant(c), x)) for c in (1.0, 2.5) for x in (-3.0, 0.0, 5.0)
    )
    return bool(d <= 1e-6 and worst_c <= 1e-9), f"indicator |diff| = {d:.3g}, constants max = {worst_c:.3g}"


@criterion(9, "Legendre involution and the relaxed decay bound")
def c09():
    t = np.linspace(-3.0, 3.0, 801)
    worst = 0.0
    for g in (0.5 * t**2, np.exp(t), np.abs(t) ** 3, np.logaddexp(0.0, 2 * t)):
        conj = transforms.legendre(t, g)
        p, gp = transforms.conjugate_samples(conj)
        back = transforms.legendre(p, gp, t)
        worst = max(worst, float(np.max(np.abs(back - g))))
    b = constructions.legendre_decay_bound(transforms.MajorantProfile.root(1.0), math.e**2)
    d = abs(b.relaxed - math.exp(-math.e))
    return bool(worst <= 1e-8 and d <= 1e-6), f"involution sup err = {worst:.3g}, relaxed bound |diff| = {d:.3g}"


@criterion(10, "vanishing moments and kb-series decay")
def c10():
    c = constructions.moment_vanishing(6)
    moments = [c.moment(k) for k in range(6)]
    exact = all(isinstance(m, int) and m == 0 for m in moments)
    seq = zeros.make_sequence("unit-half-lattice", N=7)
    x = np.geomspace(1e2, 1e4, 40)
    s = slope_fit(x, np.abs(constructions.kb_series_eval(seq, c, x))).exponent
    return bool(exact and abs(s + 7) <= 0.1), f"moments {moments}, slope = {s:.4f}"


@criterion(11, "exponent tables in exact arithmetic")
def c11():
    eq4, eq5, two = exponent_table_rows()
    bad = []
    for b, a in eq4:
        v = adm.limit_exponents(b)
        if not (v.alpha == a and v.alpha_plus == a):
            bad.append(f"alpha({b})")
    for b, a in eq5:
        if adm.limit_exponents(b).alpha_minus != a:
            bad.append(f"alpha_minus({b})")
    for b, g, a in two:
        if adm.limit_exponents(b, g).alpha != a:
            bad.append(f"alpha({b},{g})")
    eps = Fraction(1, 10**15)
    for bp in (Fraction(2, 3), Fraction(1), Fraction(2)):
        lo, mid, hi = (adm.limit_exponents(bp + s) for s in (-eps, 0, eps))
        if abs(lo.alpha - mid.alpha) > 1e-12 or abs(hi.alpha - mid.alpha) > 1e-12:
            bad.append(f"continuity alpha@{bp}")
    n = len(eq4) + len(eq5) + len(two)
    return not bad, f"{n} rows + 3 breakpoints" + (f"; mismatches: {bad}" if bad else "; all exact")


@criterion(12, "mainly-increasing checker and inclusion asymmetry")
def c12():
    r_id = adm.mainly_increasing_check(lambda t: t, (0.0, 1e3), samples=20_001)
    r_sin = adm.mainly_increasing_check(np.sin)
    t = np.linspace(1.0, 1e4, 200_001)
    pa, da, _ = blaschke.phase(zeros.make_sequence("unit-half-lattice"), t)
    pb, db, _ = blaschke.phase(zeros.make_sequence("power-one-sided", beta=1.5), t)
    r_ab = adm.mainly_increasing_check((t, pa - pb), (1.0, 1e4), fprime=da - db)
    # inclusion for (beta, gamma) = (3/2, 1): phi_1 - phi_{3/2} is mainly increasing, the reverse is not
    r_ba = adm.mainly_increasing_check((t, pb - pa), (1.0, 1e4), fprime=db - da)
    verdicts = (r_id.verdict, r_sin.verdict, r_ab.verdict, r_ba.verdict)
    ok = verdicts == (True, False, True, False)
    return ok, f"t: {verdicts[0]}, sin: {verdicts[1]}, phi1-phi3/2: {verdicts[2]}, reverse: {verdicts[3]}"


@criterion(13, "pointwise kernel bound for random coefficients")
def c13():
    seq = zeros.make_sequence("unit-half-lattice")
    rng = np.random.default_rng(20240613)
    x = np.linspace(-50.0, 60.0, 1000)
    worst = math.inf
    for _ in range(5):
        support = np.sort(rng.choice(np.arange(1, 40), size=5, replace=False))
        vals = rng.normal(size=5) + 1j * rng.normal(size=5)
        coeffs = constructions.CoefficientSequence(tuple(int(s) for s in support), tuple(vals))
        rep = blaschke.pointwise_bound_check(seq, coeffs, x)
        worst = min(worst, rep.real_slack)
    return worst >= 0, f"min slack over 5 sets x 1000 points = {worst:.4g}"


@criterion(14, "conformal map normalisation, asymptotics and inverse")
def c14():
    p = conformal.fit_eta_params()
    a2 = abs(p.a2 - 16 / math.pi)
    at1 = complex(conformal.eta(p, 1.0 + 0j))
    r_one = abs(at1 + 2j)
    z = 1e4 * np.exp(1j * np.linspace(0.05, math.pi - 0.05, 9))
    r1 = float(np.max(np.abs(conformal.eta(p, z) / (p.a2 * z**2 / 2) - 1)))
    r2 = float(np.max(np.abs(conformal.eta_prime(p, z) / (p.a2 * z) - 1)))
    rng = np.random.default_rng(0)
    zs = rng.uniform(-50, 50, 100) + 1j * rng.uniform(0.1, 100, 100)
    trip = float(np.max(np.abs(conformal.eta_inverse(p, conformal.eta(p, zs)) - zs)))
    ok = a2 <= 1e-8 and r_one <= 1e-8 and r1 < 0.01 and r2 < 0.01 and trip < 1e-8
    return ok, (
        f"|a2-16/pi| = {a2:.3g}, eta(1) = {at1:.6g} (|eta(1)+2i| = {r_one:.3g}), "
        f"ratios {r1:.3g}/{r2:.3g}, round trip {trip:.3g}"
    )


@criterion(15, "tangential zero classification")
def c15():
    got = (
        adm.tangential_classify("inverse-square").regime,
        adm.tangential_classify("exp").regime,
        adm.tangential_classify("exp-sqrt", one_sided=True).regime,
    )
    want = ("admissible-regime", "quasianalytic-regime", "quasianalytic-regime")
    return got == want, f"{got}"


@criterion(16, "slope of the derivative of the conjugate one-sided profile")
def c16():
    x = np.geomspace(1e2, 1e5, 12)
    parts, ok = [], True
    for alpha in (0.3, 0.7):
        sm = transforms.one_sided_smooth(alpha)
        d = transforms.hilbert_derivative(sm.U2, x, threads=8)
        s = slope_fit(x, np.abs(d)).exponent
        ok &= abs(s - (alpha - 1)) <= 0.05
        parts.append(f"alpha={alpha}: {s:.4f} (want {alpha - 1:.1f})")
    return ok, "; ".join(parts)


def evaluate(number):
    title, fn = CRITERIA[number]
    t0 = time.perf_counter()
    ok, detail = fn()
    RESULTS[number] = (bool(ok), f"{title}: {detail}", time.perf_counter() - t0)
    return bool(ok), detail


def line(n):
    ok, text, dt = RESULTS[n]
    return f"{'PASS' if ok else 'FAIL'} criterion {n:2d} [{dt:5.1f}s] {text}"


def summary_lines():
    return [line(n) for n in sorted(RESULTS)]


@pytest.mark.parametrize("number", sorted(CRITERIA), ids=lambda n: f"criterion{n:02d}")
def test_criterion(number):
    ok, detail = evaluate(number)
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for n in sorted(CRITERIA):
        try:
            ok, _ = evaluate(n)
        except Exception as exc:  # report and keep going
            RESULTS[n] = (False, f"{CRITERIA[n][0]}: raised {exc!r}", 0.0)
            ok = False
        failed += not ok
        print(line(n), flush=True)
    sys.exit(1 if failed else 0)
