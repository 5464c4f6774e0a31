import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.optimize import linprog
from scipy.special import gammaln

import frozen
from majorant_lab._lp import LPInfeasible, LPUnbounded, simplex
from majorant_lab.admissibility import (
    InsufficientResolution,
    InvalidExponent,
    carleman_log_T,
    carleman_test,
    density_constants,
    inclusion_check,
    limit_exponents,
    mainly_increasing_check,
    moment_bounds_from_heights,
    sufficiency_pipeline,
    tangential_classify,
    wstar_bound,
    wstar_lower_bound,
)
from majorant_lab.blaschke import phase
from majorant_lab.transforms import MajorantProfile, smooth_log
from majorant_lab.zeros import make_sequence

F = Fraction


# mainly increasing ------------------------------------------------------------


def test_identity_is_mainly_increasing_with_unit_points():
    r = mainly_increasing_check(lambda t: t, (0.0, 1e3), samples=20_001)
    assert r.verdict and r.violated is None
    np.testing.assert_allclose(r.d_points[:5], [0, 1, 2, 3, 4], atol=1e-9)
    np.testing.assert_allclose(r.increments, 1.0)


def test_sine_is_not():
    r = mainly_increasing_check(np.sin)
    assert not r.verdict and r.violated


def test_same_sequence_inclusion_is_false():
    seq = make_sequence("power-one-sided", beta=1.5)
    assert not inclusion_check(seq, seq, samples=50_001)


@pytest.fixture(scope="module")
def phases():
    t = np.linspace(1.0, 1e4, 200_001)
    a = phase(make_sequence("unit-half-lattice"), t)
    b = phase(make_sequence("power-one-sided", beta=1.5), t)
    return t, a, b


def test_phase_difference_and_asymmetry(phases):
    t, (pa, da, _), (pb, db, _) = phases
    fwd = mainly_increasing_check((t, pa - pb), (1.0, 1e4), fprime=da - db)
    back = mainly_increasing_check((t, pb - pa), (1.0, 1e4), fprime=db - da)
    assert fwd.verdict and not back.verdict
    assert np.all(np.diff(fwd.d_points) > 0)
    assert np.all((fwd.increments >= fwd.c) & (fwd.increments <= fwd.C))
    assert fwd.max_osc <= fwd.C


def test_denser_samples_keep_true_verdict():
    f = lambda t: t + 0.3 * np.sin(3 * t)  # noqa: E731
    for n in (20_001, 40_001, 80_001):
        assert mainly_increasing_check(f, (0.0, 500.0), samples=n).verdict


def test_coarse_samples_are_flagged():
    with pytest.raises(InsufficientResolution):
        mainly_increasing_check(lambda t: t + 2 * np.sin(40 * t), (0.0, 100.0), samples=2001)


def test_inclusion_never_both_ways():
    a = make_sequence("power-one-sided", beta=1.25)
    b = make_sequence("power-one-sided", beta=2.0)
    assert not (inclusion_check(a, b, samples=50_001) and inclusion_check(b, a, samples=50_001))


def test_sufficiency_flat_majorant_full_lattice():
    rep = sufficiency_pipeline(make_sequence("full-lattice"), MajorantProfile.constant(0.0))
    assert rep.sufficient


def test_sufficiency_smoothed_majorant_full_lattice():
    # phi + 2H[Omega] dips once on (0, 1), where |2H[Omega]'| exceeds phi';
    # the oscillation there is about 10, so the constant C has to allow it
    w = smooth_log(MajorantProfile.power(0.3), 2)
    seq = make_sequence("full-lattice")
    rep = sufficiency_pipeline(seq, w, hilbert_nodes=81, C=12.0)
    assert rep.sufficient and rep.log_integral < math.inf
    assert not sufficiency_pipeline(seq, w, hilbert_nodes=81).sufficient  # default C = 4


# exponent tables -----------------------------------------------------------------


@pytest.mark.parametrize(
    "beta,alpha,alpha_minus",
    [(F(3), F(1, 3), F(1, 3)), (F(1), F(1, 2), F(1, 2)), (F(3, 5), F(2, 3), F(1)), (0.6, F(2, 3), F(1))],
)
def test_exponent_examples(beta, alpha, alpha_minus):
    v = limit_exponents(beta)
    if isinstance(beta, float):  # float input gives float output
        assert (v.alpha, v.alpha_plus, v.alpha_minus) == pytest.approx((alpha, alpha, alpha_minus))
        return
    assert v.alpha == alpha and v.alpha_plus == alpha and v.alpha_minus == alpha_minus
    assert v.alpha_minus >= v.alpha


def test_two_sided_max_formula():
    assert limit_exponents(F(3), F(2)).alpha == F(1, 2)
    assert limit_exponents(F(3), F(11, 20)).alpha == F(9, 11)
    assert limit_exponents(F(1), F(3, 4)).alpha == 1
    with pytest.raises(InvalidExponent):
        limit_exponents(F(1), F(2))


@pytest.mark.parametrize("beta", [F(1, 2), F(1, 3), 0.5])
def test_out_of_range(beta):
    with pytest.raises(InvalidExponent):
        limit_exponents(beta)


fractions = st.fractions(min_value=F(51, 100), max_value=F(10), max_denominator=1000)


@given(fractions, fractions)
def test_exponents_nonincreasing(b1, b2):
    lo, hi = sorted((b1, b2))
    a, b = limit_exponents(lo), limit_exponents(hi)
    assert b.alpha <= a.alpha and b.alpha_minus <= a.alpha_minus
    assert 0 < b.alpha <= 1


@pytest.mark.parametrize("bp", [F(2, 3), F(1), F(2)])
def test_alpha_continuous_at_breakpoints(bp):
    eps = F(1, 10**12)
    vals = [limit_exponents(bp + s).alpha for s in (-eps, 0, eps)]
    assert max(vals) - min(vals) < 1e-9


def test_alpha_minus_breakpoints():
    eps = F(1, 10**12)
    assert abs(limit_exponents(F(2) - eps).alpha_minus - F(1, 2)) < 1e-9
    assert abs(limit_exponents(F(2) + eps).alpha_minus - F(1, 2)) < 1e-9
    # the table has 1 on (1/2, 1) and 1/2 at beta = 1
    assert limit_exponents(F(1) - eps).alpha_minus == 1
    assert limit_exponents(F(1)).alpha_minus == F(1, 2)


# tangential ----------------------------------------------------------------------


def test_tangential_cases():
    assert tangential_classify("inverse-square").regime == "admissible-regime"
    assert tangential_classify("exp").regime == "quasianalytic-regime"
    assert tangential_classify("exp-sqrt", one_sided=True).regime == "quasianalytic-regime"
    assert tangential_classify("exp-sqrt").regime == "admissible-regime"


@given(st.floats(1e-6, 1.0))
def test_constant_heights_admissible(c):
    assert tangential_classify(lambda n: np.full(np.shape(n), c)).regime == "admissible-regime"


def test_tangential_rejects_increasing_law():
    with pytest.raises(ValueError):
        tangential_classify(lambda n: 1 - 1 / (2 + np.abs(n)))


# Carleman ------------------------------------------------------------------------


def test_carleman_factorial_diverges():
    r = carleman_test(log_A=gammaln(np.arange(1001) + 1.0))
    assert r.divergent


def test_carleman_factorial_squared_converges():
    r = carleman_test(log_A=2 * gammaln(np.arange(10_001) + 1.0))
    assert not r.divergent and math.isfinite(r.integral_estimate)
    assert r.exponent == pytest.approx(0.5, abs=0.05)


def test_carleman_direct_values():
    K = 10_000
    log_A = 2 * gammaln(np.arange(K + 1) + 1.0)
    assert carleman_log_T(log_A, 1e4) == pytest.approx(frozen.LOG_T_FACTORIAL_SQUARED_AT_1E4, rel=1e-9)
    assert carleman_log_T(gammaln(np.arange(2001) + 1.0), 1e3) == pytest.approx(frozen.LOG_T_FACTORIAL_AT_1E3, rel=1e-9)
    # direct sup over k agrees
    r = 50.0
    direct = np.max(np.arange(K + 1) * math.log(r) - log_A)
    assert carleman_log_T(log_A, r) == pytest.approx(direct, rel=1e-12)


def test_carleman_from_exponential_heights():
    log_A = moment_bounds_from_heights("exp", 500, n_max=10**5)
    assert carleman_test(log_A=log_A).divergent
    r = np.array([50.0, 200.0])
    assert np.all(carleman_log_T(log_A, r) >= 0.5 * r / math.e - 3 * np.log(r))


def test_carleman_accepts_plain_values():
    A = np.exp(gammaln(np.arange(150) + 1.0))
    assert carleman_test(A).divergent


# w_* linear program -----------------------------------------------------------------


def _linprog_value(w, z, degree, nodes):
    n = np.arange(nodes + 1, dtype=float)
    V = np.polynomial.chebyshev.chebvander(2 * n / nodes - 1, degree)
    b = np.polynomial.chebyshev.chebvander([2 * z / nodes - 1], degree)[0]
    u = 1 / w(n)
    res = linprog(-b, A_ub=np.vstack([V, -V]), b_ub=np.concatenate([u, u]), bounds=[(None, None)] * (degree + 1), method="highs")
    assert res.status == 0
    return -res.fun


W_EXP = lambda n: np.exp(-np.sqrt(n))  # noqa: E731


@pytest.mark.parametrize("z,degree,nodes", [(7.0, 3, 12), (2.5, 5, 20), (15.0, 8, 30), (40.0, 10, 40)])
def test_wstar_lp_matches_oracle(z, degree, nodes):
    got = wstar_bound(W_EXP, z, degree, nodes)
    assert got.lp_value == pytest.approx(_linprog_value(W_EXP, z, degree, nodes), rel=1e-7)
    assert got.value <= got.lp_value * (1 + 1e-12)


def test_wstar_degree_zero():
    w = lambda n: 1 / (1 + n)  # noqa: E731
    assert wstar_lower_bound(w, 3.0, 0, 10) == pytest.approx(1.0)


def test_wstar_nondecreasing_in_degree():
    vals = [wstar_bound(W_EXP, 9.5, d, 25).lp_value for d in range(0, 12)]
    assert all(b >= a * (1 - 1e-9) for a, b in zip(vals, vals[1:]))


def test_wstar_node_consistency():
    for z in (3.0, 7.0, 20.0):
        b = wstar_bound(W_EXP, z, 6, 25)
        assert b.lp_value <= 1 / W_EXP(z) * (1 + 1e-9)


def test_wstar_rejects_bad_degree():
    with pytest.raises(ValueError):
        wstar_bound(W_EXP, 1.0, 10, 10)


# in-repo simplex against scipy -------------------------------------------------------

@given(st.integers(0, 10_000), st.integers(2, 6), st.integers(3, 12))
def test_simplex_matches_linprog(seed, m, k):
    rng = np.random.default_rng(seed)
    n = m + k
    M = rng.normal(size=(m, n))
    y0 = rng.uniform(0.1, 1.0, n)  # a strictly feasible point
    b = M @ y0
    c = rng.uniform(0.0, 2.0, n)  # nonnegative costs keep it bounded
    ours = simplex(c, M, b)
    ref = linprog(c, A_eq=M, b_eq=b, bounds=[(0, None)] * n, method="highs")
    assert ref.status == 0
    assert ours.value == pytest.approx(ref.fun, rel=1e-7, abs=1e-9)
    np.testing.assert_allclose(M @ ours.y, b, atol=1e-8)
    assert np.all(ours.y >= -1e-10)


def test_simplex_infeasible_and_unbounded():
    with pytest.raises(LPInfeasible):
        simplex([1.0, 1.0], [[1.0, 1.0]], [-1.0])
    with pytest.raises(LPUnbounded):
        simplex([-1.0, 0.0], [[1.0, -1.0]], [0.0])


# density -------------------------------------------------------------------------------


def test_density_unit_lattice():
    rep = density_constants(make_sequence("unit-half-lattice", N=2000), 10.0)
    assert 0.8 <= rep.c <= 1.0 <= rep.C <= 1.2
    assert rep.in_half_strip and rep.delta == rep.M == 1.0
