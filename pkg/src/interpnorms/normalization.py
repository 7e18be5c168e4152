"""Normalization constants and weight functions for the K- and J-norms.

The constant pair (N, N') normalizes the weighted-mean norms of
g(s) = s/sqrt(1+s^2) and min(1, s); with these choices interpolation of a
space with itself reproduces the original norm exactly.  q = infinity is a
distinguished sentinel (math.inf, compared by equality only) and all its
branches are closed forms -- no floating-point infinity enters arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .quadrature import Integrand, integrate_finite

__all__ = [
    "Q_INF",
    "ThetaQ",
    "g",
    "g_theta",
    "g_theta_argmax",
    "n_theta_q",
    "n_theta_q_quadrature",
    "n_prime_theta_q",
    "beta_integral",
]

Q_INF = math.inf


@dataclass(frozen=True)
class ThetaQ:
    """Interpolation parameters: theta in (0,1), q in [1, inf]."""

    theta: float
    q: float = 2.0

    def __post_init__(self):
        if not (isinstance(self.theta, (int, float)) and 0.0 < self.theta < 1.0):
            raise ValueError(f"theta must lie in (0, 1), got {self.theta}")
        if self.q != Q_INF and not self.q >= 1.0:
            raise ValueError(f"q must lie in [1, inf], got {self.q}")

    @property
    def q_is_inf(self) -> bool:
        return self.q == Q_INF

    @property
    def q_star(self) -> float:
        """Conjugate exponent: 1/q + 1/q* = 1."""
        if self.q_is_inf:
            return 1.0
        if self.q == 1.0:
            return Q_INF
        return self.q / (self.q - 1.0)


def g(s):
    """g(s) = s / sqrt(1 + s^2), increasing from 0 to 1 on (0, inf)."""
    s = np.asarray(s, dtype=float)
    return s / np.sqrt(1.0 + s * s)


def g_theta(t, theta: float):
    """g_theta(t) = t^theta / sqrt(1 + t^2)."""
    t = np.asarray(t, dtype=float)
    return t ** theta / np.sqrt(1.0 + t * t)


def g_theta_argmax(theta: float) -> float:
    """Location of the global maximum of g_theta on (0, inf)."""
    return math.sqrt(theta / (1.0 - theta))


def n_theta_q_quadrature(p: ThetaQ, rel_tol: float = 1e-12) -> float:
    """N via direct quadrature of its defining integral (finite q only).

    The domain is split at s = 1 and (1, inf) is folded onto (0, 1) by
    s -> 1/s, under which the integrand maps to its theta -> 1-theta
    counterpart; both endpoint behaviors are then pure powers at 0.
    """
    if p.q_is_inf:
        raise ValueError("quadrature route applies to finite q only")
    q, theta = p.q, p.theta
    e0 = q * (1.0 - theta) - 1.0
    e1 = q * theta - 1.0

    def integrand(s: np.ndarray) -> np.ndarray:
        return (s ** e0 + s ** e1) * (1.0 + s * s) ** (-0.5 * q)

    value = integrate_finite(Integrand(integrand), 0.0, 1.0, rel_tol)
    return value ** (-1.0 / q)


def n_theta_q(p: ThetaQ, rel_tol: float = 1e-12) -> float:
    """The preferred normalization constant N = 1 / |g|_{theta,q}.

    Closed forms for q = 2 and q = inf; quadrature otherwise.
    """
    theta = p.theta
    if p.q_is_inf:
        return theta ** (-0.5 * theta) * (1.0 - theta) ** (-0.5 * (1.0 - theta))
    if p.q == 2.0:
        return math.sqrt((2.0 / math.pi) * math.sin(math.pi * theta))
    return n_theta_q_quadrature(p, rel_tol)


def n_prime_theta_q(p: ThetaQ) -> float:
    """The companion constant N' = 1 / |min(1, .)|_{theta,q}.

    Satisfies N' <= N <= sqrt(2) N' since min(1,s)/sqrt(2) <= g(s) <= min(1,s).
    """
    if p.q_is_inf:
        return 1.0
    return (p.q * p.theta * (1.0 - p.theta)) ** (1.0 / p.q)


def beta_integral(alpha: float, q: float, a: float, b: float) -> float:
    """Closed form of the weighted power integral over (0, inf).

    Evaluates int_0^inf t^alpha / (a + b t^2)^(q/2) dt as
    a^((alpha+1-q)/2) * b^(-(1+alpha)/2) * N^{-q} with the constant N taken
    at theta = (q - alpha - 1)/q.  Requires -1 < alpha < q - 1 and a, b > 0.
    """
    if not (-1.0 < alpha < q - 1.0):
        raise ValueError(f"alpha must lie in (-1, q-1), got alpha={alpha}, q={q}")
    if not (a > 0.0 and b > 0.0):
        raise ValueError("a and b must be positive")
    theta = (q - alpha - 1.0) / q
    n = n_theta_q(ThetaQ(theta, q))
    return a ** (0.5 * (alpha + 1.0 - q)) * b ** (-0.5 * (1.0 + alpha)) * n ** (-q)
