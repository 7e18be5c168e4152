import math

import numpy as np
import pytest

from interpnorms.quadrature import (Integrand, QuadratureError, SeriesTerms,
                                    SummationError, integrate_finite,
                                    integrate_finite_detailed,
                                    integrate_semi_infinite, sum_series)


def test_polynomial():
    assert integrate_finite(Integrand(lambda x: x ** 2), 0, 1, 1e-12) == \
        pytest.approx(1 / 3, rel=1e-12)


def test_sine():
    assert integrate_finite(Integrand(np.sin), 0, math.pi, 1e-12) == \
        pytest.approx(2.0, rel=1e-12)


def test_endpoint_singularity():
    # int_0^1 t^(-1/2) = 2; the rule never samples the endpoint, so
    # bisection toward 0 resolves the singularity.
    value = integrate_finite(Integrand(lambda x: x ** -0.5), 0, 1, 1e-9)
    assert value == pytest.approx(2.0, rel=1e-8)


def test_empty_interval_and_bad_interval():
    assert integrate_finite(Integrand(np.sin), 1.0, 1.0) == 0.0
    with pytest.raises(ValueError):
        integrate_finite(Integrand(np.sin), 1.0, 0.0)


def test_scalar_only_evaluator_wrapped():
    f = Integrand(lambda x: math.exp(-x), vectorized=False)
    assert integrate_finite(f, 0, 1, 1e-10) == pytest.approx(
        1 - math.exp(-1), rel=1e-10)


def test_budget_exhaustion():
    nasty = Integrand(lambda x: np.abs(np.sin(1e7 * x)))
    with pytest.raises(QuadratureError):
        integrate_finite(nasty, 0, 1, 1e-12, eval_budget=2000)


def test_semi_infinite_lorentzian():
    f = Integrand(lambda t: 1.0 / (1.0 + t * t), decay_hint=2.0)
    assert integrate_semi_infinite(f, 1e-11) == pytest.approx(
        math.pi / 2, rel=1e-11)


def test_semi_infinite_matches_normalization_identity():
    # int_0^inf t^(1-2 theta)/(1+t^2) dt at theta = 1/2 equals pi/2.
    f = Integrand(lambda t: t ** 0.0 / (1.0 + t * t), decay_hint=2.0)
    assert integrate_semi_infinite(f, 1e-11) == pytest.approx(
        math.pi / 2, rel=1e-10)


def test_semi_infinite_exponential():
    f = Integrand(lambda t: np.exp(-t), decay_hint=8.0)
    assert integrate_semi_infinite(f, 1e-11) == pytest.approx(1.0, rel=1e-10)


def test_semi_infinite_requires_decay_hint():
    with pytest.raises(ValueError):
        integrate_semi_infinite(Integrand(lambda t: 1.0 / (1.0 + t * t)))
    with pytest.raises(ValueError):
        integrate_semi_infinite(
            Integrand(lambda t: 1.0 / (1.0 + t), decay_hint=1.0))


def test_even_extension_consistency():
    # For an even integrand the full-line integral is twice the half-line
    # value: compare against a wide finite window.
    gauss = lambda t: np.exp(-t * t)
    half = integrate_semi_infinite(Integrand(gauss, decay_hint=10.0), 1e-11)
    full = integrate_finite(Integrand(gauss), -40.0, 40.0, 1e-12)
    assert 2.0 * half == pytest.approx(full, rel=1e-10)
    assert 2.0 * half == pytest.approx(math.sqrt(math.pi), rel=1e-10)


def test_determinism_bitwise():
    f = Integrand(lambda x: np.exp(-x) * np.cos(7 * x))
    a = integrate_finite(f, 0, 5, 1e-11)
    b = integrate_finite(f, 0, 5, 1e-11)
    assert a == b


def test_refinement_stays_within_reported_error():
    f = Integrand(lambda x: x ** -0.4)
    coarse = integrate_finite_detailed(f, 0, 1, 1e-6)
    fine = integrate_finite_detailed(f, 0, 1, 1e-10)
    assert abs(coarse.value - fine.value) <= coarse.error_estimate


def test_singular_point_splitting():
    # |x - 1/3|^(-1/2) has an interior integrable singularity; declaring it
    # lets the engine place panel boundaries there.
    c = 1.0 / 3.0
    f = Integrand(lambda x: np.abs(x - c) ** -0.5, singular_points=(c,))
    exact = 2 * math.sqrt(c) + 2 * math.sqrt(1 - c)
    assert integrate_finite(f, 0, 1, 1e-8) == pytest.approx(exact, rel=1e-7)


def test_series_basel():
    s = SeriesTerms(term=lambda j: 1.0 / j ** 2, tail_bound=lambda n: 1.0 / n)
    assert sum_series(s, 1e-6) == pytest.approx(math.pi ** 2 / 6, rel=1e-6)


def test_series_geometric():
    s = SeriesTerms(term=lambda j: 2.0 ** -j,
                    tail_bound=lambda n: 2.0 ** -n)
    assert sum_series(s, 1e-12) == pytest.approx(1.0, rel=1e-12)


def test_series_cubic_against_brute_force():
    # Oracle: direct partial sum of 1e7 terms.
    j = np.arange(1, 10**7 + 1, dtype=float)
    oracle = float(np.sum(1.0 / j ** 3))
    s = SeriesTerms(term=lambda j: 1.0 / j ** 3,
                    tail_bound=lambda n: 0.5 / n ** 2)
    assert sum_series(s, 1e-8) == pytest.approx(oracle, rel=1e-7)


def test_series_budget():
    s = SeriesTerms(term=lambda j: 1.0 / j ** 2, tail_bound=lambda n: 1.0 / n)
    with pytest.raises(SummationError):
        sum_series(s, 1e-12, term_budget=1000)
