"""Interpolation norms via eigen-decomposition of a compactly embedded pair.

For a pair where the stronger space embeds compactly and densely into the
weaker one, the interpolated norm of exponent s is the weighted coefficient
sum (sum_j lambda_j^(-s) |a_j|^2)^(1/2) in the eigenbasis normalized to
unit weaker-space norm.  The concrete instance here is the Dirichlet
Laplacian on the unit interval, whose eigenfunctions are sqrt(2) sin(j pi x)
with lambda_j = 1/(1 + j^2 pi^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .quadrature import Integrand, SeriesTerms, integrate_finite, sum_series

__all__ = [
    "SpectralDecomposition",
    "CoefficientVector",
    "dirichlet_interval_decomposition",
    "dirichlet_eigenfunction",
    "spectral_interp_norm",
    "sine_coefficients",
]


@dataclass(frozen=True)
class SpectralDecomposition:
    """Decreasing positive eigenvalues, unit-normalized in the weaker space.

    lambda_formula, when given, extends the sequence lazily beyond the
    stored prefix; tail_growth is a constant g with lambda_j^(-1) <= g j^2,
    used for analytic truncation bounds.
    """

    lambdas: np.ndarray
    lambda_formula: Callable[[np.ndarray], np.ndarray] | None = None
    tail_growth: float | None = None

    def __post_init__(self):
        lam = np.atleast_1d(np.asarray(self.lambdas, dtype=float))
        object.__setattr__(self, "lambdas", lam)
        if lam.size == 0:
            raise ValueError("decomposition needs at least one eigenvalue")
        if not (lam > 0).all():
            raise ValueError("eigenvalues must be positive")
        if (np.diff(lam) > 0).any():
            raise ValueError("eigenvalues must be nonincreasing")

    @property
    def rhos(self) -> np.ndarray:
        """rho_j = lambda_j^(-1) - 1."""
        return 1.0 / self.lambdas - 1.0

    def eigenvalue(self, j: np.ndarray) -> np.ndarray:
        """lambda_j for 1-based indices, via the formula where available."""
        j = np.asarray(j, dtype=np.int64)
        if self.lambda_formula is not None:
            return self.lambda_formula(j)
        if (j > self.lambdas.size).any():
            raise IndexError("index beyond stored eigenvalues and no formula")
        return self.lambdas[j - 1]


@dataclass(frozen=True)
class CoefficientVector:
    """Expansion coefficients a_j against the unit-normalized eigenbasis.

    decay_const / decay_power, when given, assert |a_j| <= C j^(-p) and
    enable a certified tail bound past the stored prefix.
    """

    a: np.ndarray
    decay_const: float | None = None
    decay_power: float | None = None

    def __post_init__(self):
        arr = np.atleast_1d(np.asarray(self.a))
        object.__setattr__(self, "a", arr)
        if arr.size == 0:
            raise ValueError("coefficient vector must be nonempty")


def dirichlet_interval_decomposition(jmax: int) -> SpectralDecomposition:
    """Eigenvalues 1/(1 + j^2 pi^2) of the unit-interval Dirichlet pair."""
    if jmax < 1:
        raise ValueError("jmax must be at least 1")
    j = np.arange(1, jmax + 1, dtype=float)

    def formula(idx: np.ndarray) -> np.ndarray:
        idx = np.asarray(idx, dtype=float)
        return 1.0 / (1.0 + (idx * math.pi) ** 2)

    return SpectralDecomposition(lambdas=formula(j), lambda_formula=formula,
                                 tail_growth=1.0 + math.pi ** 2)


def dirichlet_eigenfunction(j: int):
    """The j-th unit-L2-norm eigenfunction sqrt(2) sin(j pi x) on (0, 1)."""

    def phi(x: np.ndarray) -> np.ndarray:
        return math.sqrt(2.0) * np.sin(j * math.pi * np.asarray(x, dtype=float))

    return phi


def _tail_bound_factory(dec: SpectralDecomposition, coef: CoefficientVector,
                        s: float, support: int):
    """Remainder bound for sum_{j>n} lambda_j^(-s) |a_j|^2.

    With |a_j| <= C j^(-p) and lambda_j^(-1) <= g j^2 the tail is at most
    C^2 g^s sum_{j>n} j^(2s-2p) <= C^2 g^s n^(2s-2p+1) / (2p-2s-1) by
    integral comparison, provided 2p - 2s > 1.
    """
    if coef.decay_const is None or coef.decay_power is None:
        return lambda n: 0.0 if n >= support else math.inf
    if dec.tail_growth is None:
        raise ValueError("decay data given but decomposition has no tail_growth")
    c, p, g = coef.decay_const, coef.decay_power, dec.tail_growth
    expo = 2.0 * s - 2.0 * p
    if expo + 1.0 >= 0.0:
        raise ValueError(
            f"divergent tail bound: need 2p - 2s > 1, got p={p}, s={s}")

    def bound(n: int) -> float:
        return c * c * g ** s * n ** (expo + 1.0) / (-(expo + 1.0))

    return bound


def spectral_interp_norm(dec: SpectralDecomposition, coef: CoefficientVector,
                         s: float, rel_tol: float = 1e-10) -> float:
    """(sum_j lambda_j^(-s) |a_j|^2)^(1/2) for s in [0, 1].

    s = 0 recovers the weaker-space norm, s = 1 the stronger-space norm.
    """
    if not 0.0 <= s <= 1.0:
        raise ValueError("s must lie in [0, 1]")
    a = coef.a
    support = a.size
    abs_a2 = np.abs(a) ** 2
    tail_bound = _tail_bound_factory(dec, coef, s, support)

    def term(idx: np.ndarray) -> np.ndarray:
        idx = np.asarray(idx, dtype=np.int64)
        out = np.zeros(idx.shape, dtype=float)
        inside = idx <= support
        if inside.any():
            j_in = idx[inside]
            out[inside] = dec.eigenvalue(j_in) ** (-s) * abs_a2[j_in - 1]
        return out

    total = sum_series(SeriesTerms(term=term, tail_bound=tail_bound), rel_tol)
    return float(np.sqrt(total))


def sine_coefficients(f: Callable[[np.ndarray], np.ndarray], jmax: int,
                      rel_tol: float = 1e-10,
                      parseval_slack: float = 1e-8) -> CoefficientVector:
    """Coefficients a_j = int_0^1 f(x) sqrt(2) sin(j pi x) dx by quadrature.

    Runs a Parseval sanity check: the coefficient energy cannot exceed the
    L2 energy of f (up to quadrature slack).
    """
    if jmax < 1:
        raise ValueError("jmax must be at least 1")
    coeffs = np.empty(jmax)
    for j in range(1, jmax + 1):
        phi_j = dirichlet_eigenfunction(j)

        def integrand(x: np.ndarray, phi_j=phi_j) -> np.ndarray:
            return np.asarray(f(x), dtype=float) * phi_j(x)

        # Seed the grid at the integrand's sign changes so oscillatory
        # cancellation does not defeat the relative-error control.
        grid = np.arange(1, j) / j
        coeffs[j - 1] = integrate_finite(Integrand(integrand), 0.0, 1.0,
                                         rel_tol, abs_floor=1.0,
                                         initial_grid=grid)

    def f_sq(x: np.ndarray) -> np.ndarray:
        return np.asarray(f(x), dtype=float) ** 2

    energy = integrate_finite(Integrand(f_sq), 0.0, 1.0, rel_tol)
    coeff_energy = float(np.sum(coeffs ** 2))
    if coeff_energy > energy + parseval_slack:
        raise RuntimeError(
            f"coefficient energy {coeff_energy:.12g} exceeds L2 energy "
            f"{energy:.12g}")
    return CoefficientVector(a=coeffs)
