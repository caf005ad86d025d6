import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import special as sp

from vecpow.errors import DomainError, LowerParamPole, NonConvergence, PoleAtNonpositiveInteger
from vecpow.special import (
    HypSeriesParams,
    bessel_j,
    bessel_k,
    gamma_ratio,
    gegenbauer,
    gegenbauer_all,
    hyp_series,
    hyp_terminating,
    legendre_q_ratio,
    ln_gamma,
    pochhammer,
)


def test_ln_gamma_values_and_signs():
    assert ln_gamma(5.0) == (pytest.approx(math.log(24.0)), 1)
    v, s = ln_gamma(-0.5)  # Γ(−1/2) = −2√π
    assert s == -1 and v == pytest.approx(math.log(2 * math.sqrt(math.pi)))
    assert ln_gamma(-1.5)[1] == 1


@pytest.mark.parametrize("x", [0.0, -1.0, -7.0])
def test_ln_gamma_poles(x):
    with pytest.raises(PoleAtNonpositiveInteger):
        ln_gamma(x)


def test_gamma_ratio_and_pochhammer():
    assert gamma_ratio([7.5], [5.5]) == pytest.approx(6.5 * 5.5)
    assert pochhammer(0.5, 3) == 0.5 * 1.5 * 2.5
    assert pochhammer(-2.0, 4) == 0.0
    assert pochhammer(3.0, 0) == 1.0


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 25), st.floats(0.05, 6.0), st.floats(-1.0, 1.0))
def test_gegenbauer_matches_scipy(n, alpha, z):
    ref = sp.eval_gegenbauer(n, alpha, z)
    assert gegenbauer(n, alpha, z) == pytest.approx(ref, rel=1e-9, abs=1e-10 * max(1.0, abs(sp.eval_gegenbauer(n, alpha, 1.0))))


def test_gegenbauer_vectorized_shape():
    tab = gegenbauer_all(4, 1.5, np.linspace(-1, 1, 7))
    assert tab.shape == (5, 7)
    with pytest.raises(DomainError):
        gegenbauer_all(3, 0.0, 0.2)


def test_hyp_series_log_closed_form():
    val, used = hyp_series(HypSeriesParams((1, 1), (2,)), 0.25)
    assert val == pytest.approx(-math.log(0.75) / 0.25, rel=1e-15)
    assert used > 3


def test_hyp_series_exp_and_domain():
    val, _ = hyp_series(HypSeriesParams((), ()), 2.0)
    assert val == pytest.approx(math.exp(2.0), rel=1e-15)
    with pytest.raises(DomainError):
        hyp_series(HypSeriesParams((1, 1), (2,)), 1.0)
    with pytest.raises(NonConvergence):
        hyp_series(HypSeriesParams((1, 1), (2,), max_terms=5), 0.9)


def test_hyp_terminating_matches_jacobi_form():
    # ₂F₁(−n, n+1; 1; (1−x)/2) = P_n(x)
    x = 0.3
    for n in range(8):
        val = hyp_terminating(n, HypSeriesParams((-n, n + 1), (1,)), (1 - x) / 2)
        assert val == pytest.approx(sp.eval_legendre(n, x), abs=1e-14)


def test_lower_parameter_pole():
    with pytest.raises(LowerParamPole):
        HypSeriesParams((1.0,), (-2.0,))
    HypSeriesParams((-1.0,), (-2.0,))  # terminates before the pole


@pytest.mark.parametrize("order", [0.0, 0.5, 1.0, 2.5, 7.0, 20.0, 45.5])
def test_bessel_j_against_scipy(order):
    x = np.array([0.0, 0.1, 1.0, 5.0, 11.9, 12.5, 20.0, 37.0, 80.0, 150.0])
    ref = sp.jv(order, x)
    got = bessel_j(order, x)
    assert np.allclose(got, ref, rtol=1e-9, atol=1e-12)


@pytest.mark.parametrize("order", [0.0, 0.5, 1.0, 2.25, 6.0])
def test_bessel_k_against_scipy(order):
    x = np.array([1e-3, 0.1, 1.0, 5.0, 40.0])
    assert np.allclose(bessel_k(order, x), sp.kv(order, x), rtol=1e-12)


def test_bessel_k_half_order_closed_form():
    x = 2.0
    assert bessel_k(0.5, x) == pytest.approx(math.sqrt(math.pi / (2 * x)) * math.exp(-x), rel=1e-13)


def test_legendre_q_ratio_integer_degrees():
    z = 2.0
    q0 = 0.5 * math.log((z + 1) / (z - 1))
    assert legendre_q_ratio(0.0, 0.0, z) == pytest.approx(q0, rel=1e-14)
    assert legendre_q_ratio(1.0, 0.0, z) == pytest.approx(z * q0 - 1, rel=1e-13)


@pytest.mark.parametrize("v", [0.0, 0.5, 1.5, 3.0])
@pytest.mark.parametrize("z", [1.25, 2.0, 5.0])
def test_legendre_q_ratio_half_order(v, z):
    # μ = −1/2: closed form √(π/2) e^{−α(v+1/2)}/(v+1/2), z = cosh α
    alpha = math.acosh(z)
    ref = math.sqrt(math.pi / 2) * math.exp(-alpha * (v + 0.5)) / (v + 0.5)
    assert legendre_q_ratio(v, -0.5, z) == pytest.approx(ref, rel=1e-12)


def test_legendre_q_ratio_domain():
    with pytest.raises(DomainError):
        legendre_q_ratio(0.0, 0.0, 0.9)
    with pytest.raises(DomainError):
        legendre_q_ratio(-1.5, 0.0, 2.0)
