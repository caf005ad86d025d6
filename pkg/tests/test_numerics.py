import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import j0

from vecpow.errors import NonConvergence
from vecpow.numerics import (
    McSpec,
    QuadSpec,
    integrate_finite,
    integrate_oscillatory,
    integrate_semi_infinite,
    mc_sphere_expectation,
    sample_unit_sphere,
)


def test_gaussian_half_line():
    val, err = integrate_semi_infinite(lambda x: np.exp(-x * x))
    assert val == pytest.approx(math.sqrt(math.pi) / 2, rel=1e-13)
    assert err >= 0


def test_both_substitutions_agree():
    f = lambda x: x**2 * np.exp(-x)
    a, _ = integrate_semi_infinite(f, QuadSpec(semi_infinite_transform="rational_substitution"))
    b, _ = integrate_semi_infinite(f, QuadSpec(semi_infinite_transform="exp_substitution"))
    assert a == pytest.approx(2.0, rel=1e-12)
    assert b == pytest.approx(2.0, rel=1e-12)


def test_macdonald_integral_representation():
    # K_0(1) = ∫₀^∞ exp(−cosh t) dt
    val, _ = integrate_semi_infinite(lambda t: np.exp(-np.cosh(np.minimum(t, 700.0))))
    assert val == pytest.approx(0.42102443824070834, rel=1e-12)


def test_oscillatory_bessel_integral():
    val, _ = integrate_oscillatory(lambda x: j0(x), 1.0, QuadSpec(), cutoff=10.0)
    assert val == pytest.approx(1.0, abs=1e-10)


def test_vector_valued_integrand():
    val, _ = integrate_finite(lambda x: np.stack([x, x**2], axis=-1), 0.0, 1.0)
    assert np.allclose(val, [0.5, 1 / 3], rtol=1e-14)


def test_budget_exhaustion_raises():
    spec = QuadSpec(abs_tol=1e-15, rel_tol=1e-15, max_subdivisions=3)
    with pytest.raises(NonConvergence):
        integrate_finite(lambda x: np.sin(1 / (x + 1e-3)), 0.0, 1.0, spec)


@pytest.mark.parametrize("kw", [dict(abs_tol=-1), dict(max_subdivisions=0), dict(semi_infinite_transform="x")])
def test_quadspec_validation(kw):
    with pytest.raises(ValueError):
        QuadSpec(**kw)


def test_mcspec_validation():
    with pytest.raises(ValueError):
        McSpec(samples=5, batches=10)
    with pytest.raises(ValueError):
        McSpec(seed=-1)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 31))
def test_polynomials_integrated_exactly(k):
    val, _ = integrate_finite(lambda x: x**k, 0.0, 1.0)
    assert val == pytest.approx(1.0 / (k + 1), rel=1e-13)


def test_sphere_samples_are_unit_and_reproducible():
    mc = McSpec(samples=2000, seed=7, batches=4)
    a = np.concatenate(list(sample_unit_sphere(5, mc)))
    b = np.concatenate(list(sample_unit_sphere(5, mc)))
    assert a.shape == (2000, 5)
    assert np.allclose(np.linalg.norm(a, axis=1), 1.0)
    assert np.array_equal(a, b)


@pytest.mark.parametrize("M", [3, 4, 6])
def test_sphere_second_moment(M):
    mean, err = mc_sphere_expectation(lambda z: z[:, 0] ** 2, M, McSpec(200_000, 1, 10))
    assert abs(mean - 1 / M) <= 4 * err


def test_threaded_mc_matches_serial():
    mc = McSpec(100_000, 3, 8)
    g = lambda z: np.stack([z[:, 0] ** 4, z[:, 1]], axis=1)
    a = mc_sphere_expectation(g, 3, mc, workers=1)
    b = mc_sphere_expectation(g, 3, mc, workers=4)
    assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])
    # E[z_1^4] = 3/(M(M+2)) = 1/5 on S^2
    assert abs(a[0][0] - 0.2) <= 4 * a[1][0]
