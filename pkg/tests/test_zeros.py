import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import frozen
from majorant_lab.zeros import (
    InvalidParameter,
    NonMonotoneLaw,
    TailBoundUnavailable,
    carleson_constant,
    make_sequence,
    sequence_from_kv,
)


def test_beta_one_is_the_unit_lattice():
    a = make_sequence("power-one-sided", beta=1.0, N=50)
    b = make_sequence("unit-half-lattice", N=50)
    np.testing.assert_allclose(a.zeros, b.zeros, rtol=0, atol=0)
    assert a.zero(7) == 7 + 1j


@pytest.mark.parametrize("beta", [0.5, 0.3, 0.0, -1.0])
def test_blaschke_condition_rejects_small_beta(beta):
    with pytest.raises(InvalidParameter):
        make_sequence("power-one-sided", beta=beta)


def test_two_sided_rejects_small_gamma():
    with pytest.raises(InvalidParameter):
        make_sequence("power-two-sided", beta=2.0, gamma=0.5)


def test_tangential_inverse_square_has_unit_height_at_zero():
    seq = make_sequence("tangential", y_law="inverse-square", N=100)
    assert seq.zero(0) == 1j
    assert np.all(seq.h > 0) and np.all(seq.h <= 1)


def test_tangential_rejects_increasing_law():
    with pytest.raises(NonMonotoneLaw):
        make_sequence("tangential", y_law=lambda n: 1 - 1 / (2 + np.abs(n)), N=20)


def test_tangential_rejects_heights_above_one():
    with pytest.raises(InvalidParameter):
        make_sequence("tangential", y_law=lambda n: 2.0 / (1 + np.abs(n)), N=20)


def test_unknown_height_law():
    with pytest.raises(InvalidParameter):
        make_sequence("tangential", y_law="gaussian")


def test_scaled_square_layout():
    seq = make_sequence("scaled-square", rho=0.5, N=10)
    assert seq.zero(-1) == -1 + 1j and seq.zero(0) == 1j
    assert seq.zero(4) == pytest.approx(4 + 1j)
    assert len(seq) == 12


def test_two_sided_index_zero_is_omitted():
    seq = make_sequence("power-two-sided", beta=2.0, gamma=0.75, N=10)
    with pytest.raises(IndexError):
        seq.zero(0)
    assert seq.zero(-16) == pytest.approx(-8 + 1j)


def test_carleson_unit_lattice_matches_euler_product():
    res = carleson_constant(make_sequence("unit-half-lattice", N=100_000))
    assert res.value == pytest.approx(frozen.CARLESON_TRUNCATED_PRODUCT, rel=1e-9)
    assert abs(res.value - frozen.CARLESON_UNIT_HALF_LATTICE) < 1e-4
    assert res.interpolating
    assert res.limit == pytest.approx(frozen.CARLESON_UNIT_HALF_LATTICE, rel=1e-9)


def test_carleson_single_zero_is_empty_product():
    res = carleson_constant(make_sequence("explicit-list", zeros=[1j]))
    assert res.value == 1.0 and res.interpolating


def test_carleson_incomplete_list_without_tail():
    seq = make_sequence("explicit-list", zeros=[1j, 1 + 1j, 2 + 1j], complete=False)
    with pytest.raises(TailBoundUnavailable):
        carleson_constant(seq)


def test_power_08_is_not_interpolating():
    res = carleson_constant(make_sequence("power-one-sided", beta=0.8, N=3000))
    assert not res.interpolating


def test_carleson_nonincreasing_in_truncation():
    vals = [carleson_constant(make_sequence("unit-half-lattice", N=n)).value for n in (10, 100, 1000, 10000)]
    assert all(b <= a * (1 + 1e-12) for a, b in zip(vals, vals[1:]))


@given(st.floats(1.0, 4.0))
def test_doubling_spacing_never_decreases_constant(tau):
    a = carleson_constant(make_sequence("unit-half-lattice", tau=tau, N=2000)).limit
    b = carleson_constant(make_sequence("unit-half-lattice", tau=2 * tau, N=2000)).limit
    assert b >= a


@given(
    st.sampled_from(["unit-half-lattice", "full-lattice", "power-one-sided", "power-two-sided", "scaled-square"]),
    st.floats(0.55, 4.0),
    st.floats(0.55, 4.0),
    st.integers(1, 300),
)
def test_zeros_lie_above_axis_and_round_trip(kind, beta, gamma, N):
    kw = {"beta": beta, "gamma": gamma, "rho": beta}
    args = {k: kw[k] for k in {"power-one-sided": ["beta"], "power-two-sided": ["beta", "gamma"], "scaled-square": ["rho"]}.get(kind, [])}
    seq = make_sequence(kind, N=N, **args)
    assert np.all(seq.h > 0)
    assert np.all(np.diff(seq.x) >= 0)
    back = sequence_from_kv({k: str(v) for k, v in seq.to_kv().items()})
    assert back == seq
    np.testing.assert_array_equal(back.zeros, seq.zeros)


def test_blaschke_sum_finite_for_power_kinds():
    seq = make_sequence("power-one-sided", beta=0.6, N=100_000)
    s = np.sum(seq.h / (1 + np.abs(seq.zeros) ** 2))
    assert math.isfinite(s)
