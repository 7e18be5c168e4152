import math

import numpy as np
import pytest

from interpnorms import weighted_l2 as wl2
from interpnorms.spectral import (CoefficientVector, SpectralDecomposition,
                                  dirichlet_eigenfunction,
                                  dirichlet_interval_decomposition,
                                  sine_coefficients, spectral_interp_norm)

PI2 = math.pi ** 2


def test_decomposition_validation():
    with pytest.raises(ValueError):
        SpectralDecomposition(lambdas=[0.5, 0.7])
    with pytest.raises(ValueError):
        SpectralDecomposition(lambdas=[-1.0])
    with pytest.raises(ValueError):
        dirichlet_interval_decomposition(0)


def test_dirichlet_eigenvalues():
    dec = dirichlet_interval_decomposition(100)
    assert dec.lambdas[0] == pytest.approx(1.0 / (1.0 + PI2), rel=1e-15)
    assert dec.lambdas[1] == pytest.approx(1.0 / (1.0 + 4 * PI2), rel=1e-15)
    assert (np.diff(dec.lambdas) < 0).all()
    np.testing.assert_allclose(dec.rhos,
                               (np.arange(1, 101) * math.pi) ** 2, rtol=1e-12)
    # Lazy extension past the stored prefix.
    assert dec.eigenvalue(np.array([200]))[0] == pytest.approx(
        1.0 / (1.0 + (200 * math.pi) ** 2), rel=1e-15)


def test_unit_mode_norms():
    dec = dirichlet_interval_decomposition(4)
    e1 = CoefficientVector(a=[1.0])
    e2 = CoefficientVector(a=[0.0, 1.0])
    assert spectral_interp_norm(dec, e1, 0.5) == pytest.approx(
        (1.0 + PI2) ** 0.25, rel=1e-12)
    assert spectral_interp_norm(dec, e2, 0.5) == pytest.approx(
        (1.0 + 4 * PI2) ** 0.25, rel=1e-12)
    assert spectral_interp_norm(dec, e1, 0.0) == pytest.approx(1.0, rel=1e-15)
    with pytest.raises(ValueError):
        spectral_interp_norm(dec, e1, 1.2)


def test_endpoint_recovery_finite_support():
    dec = dirichlet_interval_decomposition(6)
    rng = np.random.default_rng(21)
    a = rng.standard_normal(6)
    coef = CoefficientVector(a=a)
    n0 = spectral_interp_norm(dec, coef, 0.0)
    n1 = spectral_interp_norm(dec, coef, 1.0)
    assert n0 == pytest.approx(float(np.sqrt(np.sum(a ** 2))), rel=1e-10)
    h1 = float(np.sqrt(np.sum(a ** 2 / dec.lambdas)))
    assert n1 == pytest.approx(h1, rel=1e-10)


def test_squared_norm_log_convex_in_s():
    dec = dirichlet_interval_decomposition(8)
    rng = np.random.default_rng(22)
    for _ in range(10):
        coef = CoefficientVector(a=rng.standard_normal(8))
        for s0, s1 in ((0.1, 0.9), (0.2, 0.6), (0.4, 1.0)):
            mid = 0.5 * (s0 + s1)
            nm = spectral_interp_norm(dec, coef, mid) ** 2
            n0 = spectral_interp_norm(dec, coef, s0) ** 2
            n1 = spectral_interp_norm(dec, coef, s1) ** 2
            assert nm <= math.sqrt(n0 * n1) * (1 + 1e-12)


def test_agreement_with_weighted_pair():
    # A decomposition is the counting-measure weighted pair with w0 = 1 and
    # w1 = 1/lambda_j; the interpolation norms must coincide exactly.
    dec = dirichlet_interval_decomposition(5)
    space = wl2.WeightedSpacePair(mu=np.ones(5), w0=np.ones(5),
                                  w1=1.0 / dec.lambdas)
    rng = np.random.default_rng(23)
    for _ in range(10):
        a = rng.standard_normal(5)
        theta = rng.uniform(0.05, 0.95)
        star = spectral_interp_norm(dec, CoefficientVector(a=a), theta)
        assert wl2.k_norm(space, a, theta) == pytest.approx(star, rel=1e-13)


def test_sine_coefficients_orthonormality():
    coef = sine_coefficients(dirichlet_eigenfunction(1), 4)
    np.testing.assert_allclose(coef.a, [1.0, 0.0, 0.0, 0.0], atol=1e-10)
    coef3 = sine_coefficients(dirichlet_eigenfunction(3), 5)
    np.testing.assert_allclose(coef3.a, [0, 0, 1.0, 0, 0], atol=1e-10)


def test_sine_coefficients_of_constant():
    # Closed-form oracle: a_j = sqrt(2) (1 - (-1)^j) / (j pi).
    jmax = 8
    coef = sine_coefficients(lambda x: np.ones_like(x), jmax)
    j = np.arange(1, jmax + 1)
    oracle = math.sqrt(2.0) * (1.0 - (-1.0) ** j) / (j * math.pi)
    np.testing.assert_allclose(coef.a, oracle, atol=1e-10)


def test_parseval_partial_sums_for_constant():
    # Partial-sum oracle: the coefficient energy of f = 1 approaches 1
    # from below at rate O(1/jmax).
    j = np.arange(1, 20001)
    energy = np.sum((math.sqrt(2.0) * (1.0 - (-1.0) ** j) / (j * math.pi)) ** 2)
    assert energy < 1.0
    assert energy == pytest.approx(1.0, abs=1e-4)


def test_divergent_tail_rejected():
    dec = dirichlet_interval_decomposition(10)
    coef = CoefficientVector(a=np.ones(10), decay_const=1.0, decay_power=1.0)
    # 2p - 2s - 1 <= 0 at s = 0.6, p = 1: the tail bound diverges.
    with pytest.raises(ValueError):
        spectral_interp_norm(dec, coef, 0.6)
    # Sufficient decay passes and certifies the truncation.
    strong = CoefficientVector(a=np.ones(10), decay_const=1.0,
                               decay_power=3.0)
    value = spectral_interp_norm(dec, strong, 0.5, rel_tol=1e-3)
    assert value > 0
