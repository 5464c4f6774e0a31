import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

import frozen
from majorant_lab.fitting import slope_fit
from majorant_lab.transforms import (
    MajorantProfile,
    NonConvexInput,
    NonMonotoneProfile,
    NotPoissonIntegrable,
    check_regular,
    conjugate_samples,
    halfline_integral,
    hilbert,
    hilbert_derivative,
    legendre,
    log_integral,
    one_sided_smooth,
    smooth_log,
)

P = MajorantProfile


# logarithmic integrals ----------------------------------------------------


def test_log_integral_cases():
    r = log_integral(P.power(1.0))
    assert r.value == math.inf and r.finite is False
    r = log_integral(P.root(1.0))
    assert r.finite and r.value == pytest.approx(frozen.LOG_INTEGRAL_EXP_SQRT, rel=1e-8)
    r = log_integral(P.constant(0.0))
    assert r.finite and r.value == 0.0


def test_log_integral_sampled_without_tail_is_unknown():
    x = np.geomspace(0.5, 100, 50)
    r = log_integral(P.sampled(x, np.sqrt(x)))
    assert r.finite is None


def test_halfline_threshold():
    r = halfline_integral(P.power(0.4))
    assert r.finite and r.value == pytest.approx(frozen.HALFLINE_ALPHA_0_4, rel=1e-8)
    assert halfline_integral(P.power(0.6)).value == math.inf


@given(st.floats(0.05, 0.95))
def test_halfline_finite_iff_below_half(alpha):
    r = halfline_integral(P.power(alpha))
    assert r.finite == (alpha < 0.5)
    if alpha < 0.48:
        assert r.value == pytest.approx(1 / (0.5 - alpha), rel=1e-6)


# Hilbert transform ---------------------------------------------------------


@pytest.mark.parametrize("x", [2.0, -1.0, 0.5, 3.0, 10.0])
def test_hilbert_indicator_closed_form(x):
    exact = (math.log(abs(x) / abs(x - 1.0)) + 0.5 * math.log(2.0)) / math.pi
    assert hilbert(P.indicator(0.0, 1.0), x) == pytest.approx(exact, abs=1e-9)


def test_hilbert_indicator_oracle():
    assert hilbert(P.indicator(0.0, 1.0), 2.0) == pytest.approx(frozen.HILBERT_INDICATOR_X2, abs=1e-12)


@given(st.floats(-5, 5), st.floats(-1e3, 1e3))
def test_hilbert_annihilates_constants(c, x):
    assert abs(hilbert(P.constant(c), x)) <= 1e-9 * max(1.0, abs(c))


def test_hilbert_odd_for_even_profiles():
    prof = P.power(0.4)
    x = np.array([0.5, 2.0, 7.0, 30.0])
    v, e = hilbert(prof, np.concatenate([x, -x]), with_error=True)
    np.testing.assert_allclose(v[:4], -v[4:], atol=1e-7)
    assert np.all(e >= 0)


def test_hilbert_linear():
    a, b = P.power(0.3), P.indicator(-1.0, 2.0)
    comb = P(lambda t: 2.0 * a.omega(t) - 0.5 * b.omega(t), even=False, tail_exponent=0.3, breakpoints=(-1.0, 0.0, 2.0))
    x = np.array([-3.0, 0.7, 4.0])
    np.testing.assert_allclose(hilbert(comb, x), 2 * hilbert(a, x) - 0.5 * hilbert(b, x), atol=1e-7)


def test_hilbert_rejects_non_poisson_integrable():
    with pytest.raises(NotPoissonIntegrable):
        hilbert(P.power(1.0), 1.0)


def test_hilbert_error_estimate_is_honest():
    prof = P.power(0.4)
    x = np.array([1.5, 20.0])
    v, e = hilbert(prof, x, with_error=True)
    exact = -np.tan(0.2 * math.pi) * np.abs(x) ** 0.4 * np.sign(x)  # conjugate of |t|^a
    # the regulariser shifts by a constant; compare differences
    assert abs((v[1] - v[0]) - (exact[1] - exact[0])) <= max(10 * e.sum(), 1e-7)


def test_hilbert_derivative_of_power():
    prof = P.power(0.4)
    x = np.array([3.0, 50.0])
    d = hilbert_derivative(prof, x)
    exact = -np.tan(0.2 * math.pi) * 0.4 * x ** (-0.6)
    np.testing.assert_allclose(d, exact, rtol=1e-5)


# log smoothing --------------------------------------------------------------


def test_smooth_zero_stays_zero():
    out = smooth_log(P.constant(0.0))
    assert np.all(out.omega(np.geomspace(1e-3, 1e6, 50)) == 0)


def test_smooth_log_plus_closed_form():
    out = smooth_log(P.log_plus())
    x = np.geomspace(1 / math.e, 1e5, 60)
    np.testing.assert_allclose(out.omega(x), 0.5 * (1 + np.log(x)) ** 2, rtol=1e-9, atol=1e-12)
    assert out.regular


@pytest.mark.parametrize("order", [1, 2])
def test_smooth_dominates_and_is_regular(order):
    src = P.power(0.4)
    out = smooth_log(src, order)
    x = np.geomspace(1e-2, 1e8, 200)
    assert np.all(out.omega(x) >= src.omega(x) * (x > 1) - 1e-12)
    assert out.regular and check_regular(out)


def test_smooth_rejects_nonmonotone():
    bump = P(lambda t: np.exp(-((np.abs(t) - 3.0) ** 2)), even=True, tail_exponent=0.0)
    with pytest.raises(NonMonotoneProfile):
        smooth_log(bump)


def test_regularity_flags():
    assert P.power(0.5).regular
    assert not P.indicator(0.0, 1.0).regular
    assert not P(lambda t: -np.abs(t), even=True).regular


# one-sided smoothing ----------------------------------------------------------


@pytest.mark.parametrize("alpha", [0.3, 0.7])
def test_one_sided_constants(alpha):
    s = one_sided_smooth(alpha)
    key = f"{alpha}".replace(".", "P")
    assert s.kernel_abs_log == pytest.approx(getattr(frozen, f"KERNEL_INT_ABS_LOG_0{key[1:]}"), rel=1e-8)
    assert s.kernel_log_ratio == pytest.approx(getattr(frozen, f"KERNEL_INT_LOG_RATIO_0{key[1:]}"), rel=1e-8)
    assert s.M == pytest.approx(s.K * s.kernel_abs_log / s.kernel_log_ratio)


def test_one_sided_vanishing_sets():
    U2, V2, K, M = one_sided_smooth(0.5)
    assert np.all(U2.omega(np.linspace(-1, 1, 41)) == 0)
    assert np.all(V2.omega(np.linspace(-1e4, 1, 41)) == 0)
    assert np.all(V2.omega(np.linspace(2, 100, 10)) < 0)  # V = 1 - t^a is negative past 1


def test_one_sided_combination_grows_like_power():
    s = one_sided_smooth(0.7)
    t = -np.geomspace(10, 1e5, 40)
    r = s.combined().omega(t) / np.abs(t) ** 0.7
    assert np.all(r > 0) and r.max() / r.min() < 50


def test_one_sided_derivative_slope():
    s = one_sided_smooth(0.7)
    x = np.geomspace(1e2, 1e5, 10)
    d = hilbert_derivative(s.U2, x, threads=4)
    assert slope_fit(x, np.abs(d)).exponent == pytest.approx(-0.3, abs=0.05)


def test_one_sided_rejects_bad_alpha():
    with pytest.raises(ValueError):
        one_sided_smooth(1.0)


# Legendre transform -------------------------------------------------------------


def test_legendre_self_dual_quadratic():
    t = np.linspace(-10, 10, 20001)
    x = np.linspace(-5, 5, 101)
    np.testing.assert_allclose(legendre(t, 0.5 * t**2, x), 0.5 * x**2, atol=1e-6)


def test_legendre_exponential():
    t = np.linspace(-20, 5, 50001)
    x = np.linspace(0.1, 20, 50)
    np.testing.assert_allclose(legendre(t, np.exp(t), x), x * np.log(x) - x, atol=1e-5)


def test_legendre_rejects_nonconvex():
    t = np.linspace(-3, 3, 101)
    with pytest.raises(NonConvexInput):
        legendre(t, np.sin(t))


def test_legendre_sweep_agrees_and_is_monotone():
    t = np.linspace(-2, 2, 401)
    conj = legendre(t, np.cosh(t))
    x = np.linspace(-3, 3, 301)
    v, idx = conj.sweep(x)
    np.testing.assert_allclose(v, conj(x), atol=1e-12)
    assert np.all(np.diff(idx) >= 0) and np.all(np.diff(conj.argmax(x)) >= 0)


convex_slopes = arrays(np.float64, st.integers(3, 60), elements=st.floats(-50, 50))


@given(convex_slopes, st.floats(-5, 5))
def test_legendre_involution(slopes, g0):
    m = np.sort(slopes)
    t = np.linspace(-1.0, 2.0, m.size + 1)
    g = g0 + np.concatenate([[0.0], np.cumsum(m * np.diff(t))])
    conj = legendre(t, g)
    p, gp = conjugate_samples(conj)
    dp = np.diff(p)
    keep = np.concatenate([[True], dp > 1e-9])  # repeated slopes give one vertex
    p, gp = p[keep], gp[keep]
    # output convex
    if p.size >= 3:
        mm = np.diff(gp) / np.diff(p)
        assert np.all(np.diff(mm) >= -1e-8 * (1 + np.abs(mm).max()))
    if p.size >= 2:
        back = legendre(p, gp, t)
        assert np.max(np.abs(back - g)) <= 1e-8 * (1 + np.abs(g).max())


def test_profile_serialisation(tmp_path):
    assert P.power(0.4).to_kv() == {"form": "w_alpha", "alpha": 0.4, "scale": 1.0}
    path = tmp_path / "w.csv"
    P.root(2.0).to_csv(path, x=[1.0, 4.0])
    rows = path.read_text().splitlines()
    assert rows[0] == "x,omega,w" and rows[2].startswith("4,4,")
