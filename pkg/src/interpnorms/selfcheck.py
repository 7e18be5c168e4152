"""Seeded property suites over random weighted pairs.

Each suite draws its own generator from the given seed, so suites are
independently reproducible.  The n_scale hook multiplies the normalization
constant used by the quadrature routes; any perturbation there must make
the K=J and two-route suites fail, which is the sensitivity control.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .normalization import ThetaQ, n_theta_q
from . import weighted_l2 as wl2

__all__ = ["SuiteResult", "random_space", "random_element",
           "run_selfcheck", "SUITE_NAMES"]

SUITE_NAMES = ("k_equals_j", "k_two_routes", "exponent_theta_bound",
               "reiteration", "duality", "symmetry")

_THETAS = (0.25, 0.5, 0.75)


@dataclass(frozen=True)
class SuiteResult:
    suite: str
    cases: int
    failures: int
    max_deviation: float

    @property
    def ok(self) -> bool:
        return self.failures == 0


def random_space(rng: np.random.Generator, n_atoms: int = 3) -> wl2.WeightedSpacePair:
    """Random pair with weights and masses log-uniform in [0.2, 5]."""
    def draw():
        return np.exp(rng.uniform(np.log(0.2), np.log(5.0), size=n_atoms))

    return wl2.WeightedSpacePair(mu=draw(), w0=draw(), w1=draw())


def random_element(rng: np.random.Generator, n_atoms: int = 3) -> np.ndarray:
    return rng.standard_normal(n_atoms)


def _scaled_constant(theta: float, n_scale: float) -> float:
    return n_theta_q(ThetaQ(theta, 2.0)) * n_scale


def _suite_k_equals_j(rng, cases, n_atoms, n_scale, tol=1e-8):
    failures = 0
    worst = 0.0
    for _ in range(cases):
        space = random_space(rng, n_atoms)
        phi = random_element(rng, n_atoms)
        for theta in _THETAS:
            k = wl2.k_norm(space, phi, theta)
            try:
                j = wl2.j_norm_via_optimal_density(
                    space, phi, theta,
                    n_constant=_scaled_constant(theta, n_scale))
            except wl2.ReconstructionError as exc:
                failures += 1
                worst = max(worst, exc.residual)
                continue
            dev = abs(k - j) / k
            worst = max(worst, dev)
            if dev > tol:
                failures += 1
    return SuiteResult("k_equals_j", cases, failures, worst)


def _suite_k_two_routes(rng, cases, n_atoms, n_scale, tol=1e-8):
    failures = 0
    worst = 0.0
    for _ in range(cases):
        space = random_space(rng, n_atoms)
        phi = random_element(rng, n_atoms)
        for theta in _THETAS:
            a = wl2.k_norm(space, phi, theta)
            b = wl2.k_norm_definitional(
                space, phi, theta,
                n_constant=_scaled_constant(theta, n_scale))
            dev = abs(a - b) / a
            worst = max(worst, dev)
            if dev > tol:
                failures += 1
    return SuiteResult("k_two_routes", cases, failures, worst)


def _suite_exponent_bound(rng, cases, n_atoms, slack=1e-9):
    failures = 0
    worst = -np.inf
    for _ in range(cases):
        source = random_space(rng, n_atoms)
        target = random_space(rng, n_atoms)
        op = wl2.CoupleOperator(rng.standard_normal((n_atoms, n_atoms)))
        for theta in _THETAS:
            report = wl2.interpolated_operator_bound_check(
                op, source, target, theta, slack=slack)
            worst = max(worst, report.excess)
            if not report.ok:
                failures += 1
    return SuiteResult("exponent_theta_bound", cases, failures, worst)


def _suite_reiteration(rng, cases, n_atoms, tol=1e-10):
    failures = 0
    worst = 0.0
    for _ in range(cases):
        space = random_space(rng, n_atoms)
        theta0, theta1 = rng.uniform(0.0, 1.0, size=2)
        eta = rng.uniform(0.05, 0.95)
        res = wl2.reiteration_check(space, theta0, theta1, eta,
                                    seed=int(rng.integers(1 << 31)), tol=tol)
        worst = max(worst, res.max_deviation)
        if not res.ok:
            failures += 1
    return SuiteResult("reiteration", cases, failures, worst)


def _suite_duality(rng, cases, n_atoms, tol=1e-10):
    failures = 0
    worst = 0.0
    for _ in range(cases):
        space = random_space(rng, n_atoms)
        theta = rng.uniform(0.05, 0.95)
        res = wl2.duality_check(space, theta,
                                seed=int(rng.integers(1 << 31)), tol=tol)
        worst = max(worst, res.max_deviation)
        if not res.ok:
            failures += 1
    return SuiteResult("duality", cases, failures, worst)


def _suite_symmetry(rng, cases, n_atoms, tol=1e-12):
    failures = 0
    worst = 0.0
    for _ in range(cases):
        space = random_space(rng, n_atoms)
        swapped = wl2.WeightedSpacePair(space.mu, space.w1, space.w0)
        phi = random_element(rng, n_atoms)
        theta = rng.uniform(0.05, 0.95)
        direct = wl2.k_norm(space, phi, theta)
        mirrored = wl2.k_norm(swapped, phi, 1.0 - theta)
        dev = abs(direct - mirrored) / direct
        worst = max(worst, dev)
        if dev > tol:
            failures += 1
    return SuiteResult("symmetry", cases, failures, worst)


def run_selfcheck(seed: int = 1234, cases: int = 100, n_atoms: int = 3,
                  n_scale: float = 1.0) -> list[SuiteResult]:
    """Run all suites; reproducible for a fixed seed."""
    child_seeds = np.random.SeedSequence(seed).spawn(len(SUITE_NAMES))
    rngs = [np.random.default_rng(s) for s in child_seeds]
    return [
        _suite_k_equals_j(rngs[0], cases, n_atoms, n_scale),
        _suite_k_two_routes(rngs[1], cases, n_atoms, n_scale),
        _suite_exponent_bound(rngs[2], cases, n_atoms),
        _suite_reiteration(rngs[3], cases, n_atoms),
        _suite_duality(rngs[4], cases, n_atoms),
        _suite_symmetry(rngs[5], cases, n_atoms),
    ]
