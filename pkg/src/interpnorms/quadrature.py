"""Adaptive quadrature and series summation with error control.

The integration scheme is a globally adaptive bisection driven by a nested
Gauss-Legendre rule pair (10/21 points) per panel, with the local error
taken as the difference of the pair.  Panels are split at known singular
points first, refinement always attacks the dominant-error panels, and the
final sum runs over panels sorted by left endpoint, so results are
bit-reproducible for fixed inputs and tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

__all__ = [
    "ConvergenceError",
    "QuadratureError",
    "SummationError",
    "Integrand",
    "SeriesTerms",
    "IntegrationResult",
    "integrate_finite",
    "integrate_finite_detailed",
    "integrate_semi_infinite",
    "integrate_semi_infinite_detailed",
    "sum_series",
    "SINGULAR_WINDOW",
]

# Half-width of the removable-singularity window: the engine places panel
# boundaries at p - w, p, p + w so nodes never straddle the fallback seam.
SINGULAR_WINDOW = 1e-4

DEFAULT_EVAL_BUDGET = 10**6
DEFAULT_TERM_BUDGET = 10**7

_LOW_NODES, _LOW_WEIGHTS = np.polynomial.legendre.leggauss(10)
_HIGH_NODES, _HIGH_WEIGHTS = np.polynomial.legendre.leggauss(21)
_EVALS_PER_PANEL = _LOW_NODES.size + _HIGH_NODES.size

# Endpoint singularities of the form t^alpha with alpha near -1 are resolved
# by repeated bisection; each level only shrinks the error by 2^(1+alpha),
# so hundreds of generations may be needed at tight tolerances.
_MAX_GENERATIONS = 4000


class ConvergenceError(RuntimeError):
    """A numerical routine failed to reach the requested accuracy."""


class QuadratureError(ConvergenceError):
    """Adaptive integration exhausted its budget without converging."""


class SummationError(ConvergenceError):
    """Series summation exhausted its term budget without converging."""


@dataclass(frozen=True)
class Integrand:
    """A scalar integrand with structural hints for the adaptive engine.

    evaluator must accept a float ndarray and return one of equal shape
    (set vectorized=False to have the engine wrap a scalar-only callable).
    singular_points lists interior points where the evaluator switches to a
    series fallback; decay_hint is a power beta with |f(t)| = O(t^-beta) as
    t -> infinity, required (> 1) for semi-infinite integration.
    """

    evaluator: Callable[[np.ndarray], np.ndarray]
    singular_points: tuple[float, ...] = ()
    decay_hint: float | None = None
    vectorized: bool = True

    def vector_evaluator(self) -> Callable[[np.ndarray], np.ndarray]:
        if self.vectorized:
            return self.evaluator
        ev = np.vectorize(self.evaluator, otypes=[float])
        return lambda x: np.asarray(ev(x), dtype=float)


@dataclass(frozen=True)
class SeriesTerms:
    """Terms of a series plus a rigorous bound on the remainder after n terms.

    term must accept an int64 ndarray of (1-based) indices; tail_bound(n)
    bounds |sum_{j>n} term(j)| and must be nonincreasing with limit 0.
    """

    term: Callable[[np.ndarray], np.ndarray]
    tail_bound: Callable[[int], float]


@dataclass(frozen=True)
class IntegrationResult:
    value: float
    error_estimate: float
    evaluations: int


_PAIR_NODES = np.concatenate([_LOW_NODES, _HIGH_NODES])


def _rule_pair(ev, lefts: np.ndarray, rights: np.ndarray):
    """Low/high Gauss estimates for a batch of panels (one evaluator call)."""
    mid = 0.5 * (lefts + rights)
    half = 0.5 * (rights - lefts)
    x = mid[:, None] + half[:, None] * _PAIR_NODES[None, :]
    y = np.asarray(ev(x.ravel()), dtype=float).reshape(x.shape)
    if not np.isfinite(y).all():
        raise QuadratureError("integrand evaluated to a non-finite value")
    n_lo = _LOW_NODES.size
    i_lo = (y[:, :n_lo] * _LOW_WEIGHTS).sum(axis=1) * half
    i_hi = (y[:, n_lo:] * _HIGH_WEIGHTS).sum(axis=1) * half
    return i_hi, np.abs(i_hi - i_lo)


def _sorted_sum(lefts: np.ndarray, values: np.ndarray) -> float:
    order = np.argsort(lefts, kind="stable")
    return float(values[order].sum())


def _initial_breakpoints(a: float, b: float, points: Sequence[float],
                         grid: Sequence[float] | None) -> np.ndarray:
    cuts = {a, b}
    for p in points:
        if a < p < b:
            cuts.add(p)
            for seam in (p - SINGULAR_WINDOW, p + SINGULAR_WINDOW):
                if a < seam < b:
                    cuts.add(seam)
    if grid is not None:
        for g in grid:
            if a < g < b:
                cuts.add(float(g))
    return np.array(sorted(cuts))


def integrate_finite_detailed(f: Integrand, a: float, b: float,
                              rel_tol: float = 1e-10, *,
                              abs_floor: float = 0.0,
                              eval_budget: int = DEFAULT_EVAL_BUDGET,
                              initial_grid: Sequence[float] | None = None,
                              ) -> IntegrationResult:
    """Adaptively integrate f over [a, b] to relative tolerance rel_tol.

    abs_floor widens the error target to rel_tol * max(|I|, abs_floor),
    which lets a caller hold several sub-integrals to a shared scale.
    """
    if not (rel_tol > 0):
        raise ValueError("rel_tol must be positive")
    if not a < b:
        if a == b:
            return IntegrationResult(0.0, 0.0, 0)
        raise ValueError(f"invalid interval [{a}, {b}]")
    ev = f.vector_evaluator()
    cuts = _initial_breakpoints(a, b, f.singular_points, initial_grid)
    lefts = cuts[:-1].copy()
    rights = cuts[1:].copy()
    vals, errs = _rule_pair(ev, lefts, rights)
    evaluations = _EVALS_PER_PANEL * lefts.size

    tiny = np.finfo(float).tiny
    for _ in range(_MAX_GENERATIONS):
        total = _sorted_sum(lefts, vals)
        total_err = float(errs.sum())
        tol_abs = rel_tol * max(abs(total), abs_floor, tiny)
        if total_err <= tol_abs:
            return IntegrationResult(total, total_err, evaluations)
        # Attack the dominant panels; uniformly bad panels all split.
        threshold = max(tol_abs / (4.0 * lefts.size), 0.25 * float(errs.max()))
        split = errs >= threshold
        if not split.any():
            split = errs == errs.max()
        evaluations += 2 * _EVALS_PER_PANEL * int(split.sum())
        if evaluations > eval_budget:
            raise QuadratureError(
                f"no convergence within {eval_budget} evaluations "
                f"(error {total_err:.3e}, target {tol_abs:.3e})")
        mids = 0.5 * (lefts[split] + rights[split])
        new_lefts = np.concatenate([lefts[split], mids])
        new_rights = np.concatenate([mids, rights[split]])
        new_vals, new_errs = _rule_pair(ev, new_lefts, new_rights)
        lefts = np.concatenate([lefts[~split], new_lefts])
        rights = np.concatenate([rights[~split], new_rights])
        vals = np.concatenate([vals[~split], new_vals])
        errs = np.concatenate([errs[~split], new_errs])
    raise QuadratureError("refinement generation limit reached")


def integrate_finite(f: Integrand, a: float, b: float,
                     rel_tol: float = 1e-10, **kwargs) -> float:
    return integrate_finite_detailed(f, a, b, rel_tol, **kwargs).value


def _transformed_tail(f: Integrand) -> Integrand:
    """The image of f on (1, inf) under t -> 1/u, as an integrand on (0, 1)."""
    ev = f.vector_evaluator()

    def far(u: np.ndarray) -> np.ndarray:
        return ev(1.0 / u) / (u * u)

    points = tuple(1.0 / p for p in f.singular_points if p > 1.0)
    return Integrand(far, singular_points=points)


def integrate_semi_infinite_detailed(f: Integrand, rel_tol: float = 1e-10, *,
                                     eval_budget: int = DEFAULT_EVAL_BUDGET,
                                     ) -> IntegrationResult:
    """Integrate f over (0, inf): split at 1 and map (1, inf) -> (0, 1).

    Requires decay_hint > 1 so the transformed integrand is integrable at 0.
    """
    if f.decay_hint is None or not f.decay_hint > 1.0:
        raise ValueError("semi-infinite integration requires decay_hint > 1")
    near = Integrand(f.vector_evaluator(),
                     singular_points=tuple(p for p in f.singular_points
                                           if p < 1.0))
    far = _transformed_tail(f)
    seed = (0.25, 0.5, 0.75)
    # Rough pass to establish the common scale for the two halves.
    rough = (integrate_finite_detailed(near, 0.0, 1.0, 1e-3,
                                       eval_budget=eval_budget,
                                       initial_grid=seed).value
             + integrate_finite_detailed(far, 0.0, 1.0, 1e-3,
                                         eval_budget=eval_budget,
                                         initial_grid=seed).value)
    floor = abs(rough)
    r_near = integrate_finite_detailed(near, 0.0, 1.0, 0.5 * rel_tol,
                                       abs_floor=floor,
                                       eval_budget=eval_budget,
                                       initial_grid=seed)
    r_far = integrate_finite_detailed(far, 0.0, 1.0, 0.5 * rel_tol,
                                      abs_floor=floor,
                                      eval_budget=eval_budget,
                                      initial_grid=seed)
    return IntegrationResult(r_near.value + r_far.value,
                             r_near.error_estimate + r_far.error_estimate,
                             r_near.evaluations + r_far.evaluations)


def integrate_semi_infinite(f: Integrand, rel_tol: float = 1e-10,
                            **kwargs) -> float:
    return integrate_semi_infinite_detailed(f, rel_tol, **kwargs).value


def sum_series(s: SeriesTerms, rel_tol: float = 1e-10, *,
               term_budget: int = DEFAULT_TERM_BUDGET) -> float:
    """Sum s until tail_bound(n) <= rel_tol * |partial sum|.

    Terms are accumulated in geometrically growing blocks, 1-based.
    """
    if not (rel_tol > 0):
        raise ValueError("rel_tol must be positive")
    partial = 0.0
    n = 0
    block = 64
    while n < term_budget:
        hi = min(n + block, term_budget)
        idx = np.arange(n + 1, hi + 1, dtype=np.int64)
        terms = np.asarray(s.term(idx), dtype=float)
        if not np.isfinite(terms).all():
            raise SummationError("series term evaluated to a non-finite value")
        partial += float(terms.sum())
        n = hi
        tail = float(s.tail_bound(n))
        if tail <= rel_tol * abs(partial):
            return partial
        block = min(2 * block, 1 << 20)
    raise SummationError(
        f"no convergence within {term_budget} terms "
        f"(tail bound {s.tail_bound(n):.3e})")
