"""Quantitative reproductions of three interpolation counterexamples.

interval_ratio_bound: on (0, a) the multiplicative interpolation bound
between the L2 and H2 norms of the constant function undercuts the H1 norm
by a factor below min(a^(1/4), 1), so the norms of an interpolation family
cannot all match the intrinsic ones.

fractal_sequence / fractal_phi_bounds: a union of geometrically shrinking
intervals on which plateau functions have summable interpolation-bound
norms while their sum is unbounded; the scale recurrence decays quartically
and is therefore tracked in log space.

cusp_norm_scalings: on the power-cusp planar domain, plateau functions at
scale h have L2 norm of order h^((p+1)/2) and tensor-extension H2 norm of
order h^(-1), making the midpoint interpolation bound collapse like a
positive power of h.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .quadrature import Integrand, integrate_finite
from .sobolev1d import (IntervalTrace, h1_norm_interval, h2_norm_interval,
                        interp_upper_bound)

__all__ = [
    "SmoothCutoff",
    "DEFAULT_CUTOFF",
    "CuspParams",
    "CuspRow",
    "CuspScalingTable",
    "FractalSequence",
    "FractalBounds",
    "FractalWitness",
    "IntervalRatioRecord",
    "interval_ratio_bound",
    "fractal_sequence",
    "fractal_phi_bounds",
    "fractal_witness",
    "tensor_factor_norms",
    "cusp_norm_scalings",
]

_LOG4 = math.log(4.0)
_LOG2 = math.log(2.0)


class SmoothCutoff:
    """Even plateau cutoff: 1 on |t| <= 1/2, 0 beyond |t| >= 1.

    On the transition band the profile is exp(1 - 1/(1 - r^2)) with
    r = 2|t| - 1, which vanishes to all orders at |t| = 1 (the second
    derivative jumps at |t| = 1/2, so the profile is C^1 and lies in H2;
    quadrature must split panels at the seams, see `seams`).
    """

    seams = (0.5, 1.0)

    def _bump_parts(self, r: np.ndarray):
        one_minus = 1.0 - r * r
        u = 1.0 - 1.0 / one_minus
        du = -2.0 * r / one_minus ** 2
        d2u = -2.0 * (1.0 + 3.0 * r * r) / one_minus ** 3
        return np.exp(u), du, d2u

    def _regions(self, t: np.ndarray):
        at = np.abs(t)
        plateau = at <= 0.5
        band = (at > 0.5) & (at < 1.0)
        return at, plateau, band

    def value(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        at, plateau, band = self._regions(t)
        out = np.zeros_like(t)
        out[plateau] = 1.0
        if band.any():
            e, _, _ = self._bump_parts(2.0 * at[band] - 1.0)
            out[band] = e
        return out

    def d1(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        at, _, band = self._regions(t)
        out = np.zeros_like(t)
        if band.any():
            e, du, _ = self._bump_parts(2.0 * at[band] - 1.0)
            out[band] = 2.0 * np.sign(t[band]) * du * e
        return out

    def d2(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        at, _, band = self._regions(t)
        out = np.zeros_like(t)
        if band.any():
            e, du, d2u = self._bump_parts(2.0 * at[band] - 1.0)
            out[band] = 4.0 * (d2u + du * du) * e
        return out

    def derivative(self, k: int):
        return (self.value, self.d1, self.d2)[k]

    @cached_property
    def squared_integrals(self) -> tuple[float, float, float]:
        """(int chi^2, int chi'^2, int chi''^2) over the whole line."""
        band = []
        for k in range(3):
            h = self.derivative(k)

            def sq(t: np.ndarray, h=h) -> np.ndarray:
                return h(t) ** 2

            band.append(integrate_finite(Integrand(sq), 0.5, 1.0, 1e-12))
        return (1.0 + 2.0 * band[0], 2.0 * band[1], 2.0 * band[2])

    def h2_energy(self) -> float:
        """The squared H2(R) norm: int (chi^2 + 2 chi'^2 + chi''^2)."""
        c0, c1, c2 = self.squared_integrals
        return c0 + 2.0 * c1 + c2

    def alpha(self, mode: str = "norm-squared") -> float:
        """The cutoff energy constant feeding the fractal recurrence.

        The energy identities require the squared norm ("norm-squared",
        default); "norm" is the literal plain-norm reading.
        """
        energy = self.h2_energy()
        if mode == "norm-squared":
            return energy
        if mode == "norm":
            return math.sqrt(energy)
        raise ValueError(f"unknown alpha mode: {mode!r}")


DEFAULT_CUTOFF = SmoothCutoff()


@dataclass(frozen=True)
class IntervalRatioRecord:
    a: float
    l2: float
    h1: float
    h2: float
    upper_bound: float
    ratio_bound: float
    ok: bool


def interval_ratio_bound(a: float) -> IntervalRatioRecord:
    """Norms of the constant function on (0, a) and the interpolation gap.

    The endpoint norms feed the multiplicative midpoint bound
    sqrt(l2 * h2); its ratio to the H1 norm is
    ((a^2+4a)/(a^2+4a+4))^(1/4) < min(a^(1/4), 1).
    """
    if not a > 0:
        raise ValueError("a must be positive")
    trace = IntervalTrace(a=a, v0=1.0, va=1.0, d0=0.0, da=0.0,
                          i0=a, i1=0.0, i2=0.0)
    l2 = math.sqrt(a)
    h1 = h1_norm_interval(trace)
    h2 = h2_norm_interval(trace)
    upper = interp_upper_bound(l2, h2, 0.5)
    s = a * a + 4.0 * a
    ratio = (s / (s + 4.0)) ** 0.25
    return IntervalRatioRecord(a=a, l2=l2, h1=h1, h2=h2, upper_bound=upper,
                               ratio_bound=ratio,
                               ok=ratio < min(a ** 0.25, 1.0))


@dataclass(frozen=True)
class FractalSequence:
    """Scales of the shrinking-interval union, tracked in log space.

    log_a[k] is ln(a_n) for n = k+1; gaps b_n = a_(n-1)/2 - a_n.  The
    linear-scale views underflow to 0 beyond n ~ 6 by design.
    """

    alpha: float
    log_a: np.ndarray
    n_reached: int

    @property
    def a(self) -> np.ndarray:
        with np.errstate(under="ignore"):
            return np.exp(self.log_a)

    @property
    def log_b(self) -> np.ndarray:
        out = np.empty(self.n_reached)
        out[0] = 0.0
        ratio = np.exp(self.log_a[1:] - self.log_a[:-1])
        out[1:] = self.log_a[:-1] + np.log(0.5 - ratio)
        return out

    @property
    def b(self) -> np.ndarray:
        with np.errstate(under="ignore"):
            return np.exp(self.log_b)

    def log_recurrence_factor(self, n: int) -> float:
        """ln(1 + (1 + 64 a_(n-1)^-3) alpha) recovered from the recurrence."""
        if n < 2 or n > self.n_reached:
            raise IndexError(f"n must lie in [2, {self.n_reached}]")
        return self.log_a[n - 2] - _LOG4 - self.log_a[n - 1]


def fractal_sequence(alpha: float, nmax: int) -> FractalSequence:
    """Generate a_1 = 1, a_n = (a_(n-1)/4) / (1 + (1 + 64 a_(n-1)^-3) alpha).

    Verifies a_n < a_(n-1)/4 and a_n <= 4^(-n) as it goes.  Stops early
    (reporting n_reached) only if even the log-scale value leaves the
    double range.
    """
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    if nmax < 2:
        raise ValueError("nmax must be at least 2")
    log_a = [0.0]
    log_64a = math.log(64.0 * alpha)
    log_1pa = math.log1p(alpha)
    for n in range(2, nmax + 1):
        prev = log_a[-1]
        factor = float(np.logaddexp(log_1pa, log_64a - 3.0 * prev))
        nxt = prev - _LOG4 - factor
        if not math.isfinite(nxt) or abs(nxt) > 1e300:
            break
        if not nxt < prev - _LOG4:
            raise AssertionError("recurrence violated a_n < a_(n-1)/4")
        if not nxt <= -n * _LOG4 + 1e-12:
            raise AssertionError("recurrence violated a_n <= 4^(-n)")
        log_a.append(nxt)
    return FractalSequence(alpha=alpha, log_a=np.array(log_a),
                           n_reached=len(log_a))


@dataclass(frozen=True)
class FractalBounds:
    """Norm bounds for the n-th plateau function (log10 views alongside,
    since the linear h2 bound overflows past n ~ 8)."""

    n: int
    l2_bound: float
    h2_bound: float
    interp_half_bound: float
    log10_l2_bound: float
    log10_h2_bound: float
    log10_interp_half_bound: float
    geometric_bound: float
    cauchy_ok: bool


def fractal_phi_bounds(seq: FractalSequence, n: int) -> FractalBounds:
    """The bound chain for phi_n: L2, extension H2, and midpoint product.

    l2 <= a_n^(1/2); h2 <= ((1 + (1+64 a_(n-1)^-3) alpha)/2)^(1/2); their
    geometric mean is at most 2^(-1/4) (a_(n-1)/4)^(1/4) <= (sqrt 2)^(-n),
    which is the Cauchy-summability check.
    """
    if n < 2 or n > seq.n_reached:
        raise IndexError(f"n must lie in [2, {seq.n_reached}]")
    log_factor = seq.log_recurrence_factor(n)
    log_l2 = 0.5 * seq.log_a[n - 1]
    log_h2 = 0.5 * (log_factor - _LOG2)
    log_interp = -0.25 * _LOG2 + 0.25 * seq.log_a[n - 1] + 0.25 * log_factor
    geometric = 2.0 ** (-0.25) * 4.0 ** (-0.25 * n)
    ln10 = math.log(10.0)
    with np.errstate(over="ignore", under="ignore"):
        lin = [float(np.exp(v)) for v in (log_l2, log_h2, log_interp)]
    return FractalBounds(
        n=n,
        l2_bound=lin[0], h2_bound=lin[1], interp_half_bound=lin[2],
        log10_l2_bound=log_l2 / ln10,
        log10_h2_bound=log_h2 / ln10,
        log10_interp_half_bound=log_interp / ln10,
        geometric_bound=geometric,
        cauchy_ok=log_interp <= -0.5 * n * _LOG2 + 1e-12,
    )


@dataclass(frozen=True)
class FractalWitness:
    n: int
    log10_t: float
    value: int
    ok: bool


def fractal_witness(seq: FractalSequence, n: int) -> FractalWitness:
    """Value of the partial-sum function at a point of the n-th interval.

    Counts how many plateau functions equal 1 at t = (3/4) a_n; the sum
    takes the value n there, which is the unboundedness witness.
    """
    if n < 1 or n > seq.n_reached:
        raise IndexError(f"n must lie in [1, {seq.n_reached}]")
    log_t = math.log(0.75) + seq.log_a[n - 1]
    value = int(np.sum(log_t <= seq.log_a))
    return FractalWitness(n=n, log10_t=log_t / math.log(10.0),
                          value=value, ok=value == n)


@dataclass(frozen=True)
class CuspParams:
    """Cusp exponent, scale grid, and cutoff for the planar cusp domain."""

    p: float
    h_grid: np.ndarray
    cutoff: SmoothCutoff = DEFAULT_CUTOFF

    def __post_init__(self):
        object.__setattr__(self, "h_grid",
                           np.atleast_1d(np.asarray(self.h_grid, dtype=float)))
        if not self.p > 1:
            raise ValueError("cusp exponent p must exceed 1")
        h = self.h_grid
        if not ((h > 0).all() and (h <= 1).all()):
            raise ValueError("h grid must lie in (0, 1]")
        if (np.diff(h) >= 0).any():
            raise ValueError("h grid must be strictly decreasing")


@dataclass(frozen=True)
class CuspRow:
    h: float
    l2_norm: float
    h2_plus_norm: float
    interp_bound: float


@dataclass(frozen=True)
class CuspScalingTable:
    theta: float
    p: float
    rows: tuple[CuspRow, ...]
    slope_l2: float
    slope_h2: float
    slope_interp: float
    expected_slope_l2: float
    expected_slope_h2: float
    expected_slope_interp: float


def tensor_factor_norms(cutoff: SmoothCutoff, scale: float,
                        rel_tol: float = 1e-10) -> np.ndarray:
    """[int |d^k chi(x/s)/dx^k|^2 dx for k = 0, 1, 2], by direct quadrature."""
    if not scale > 0:
        raise ValueError("scale must be positive")
    out = np.empty(3)
    seams = [scale * s for s in cutoff.seams]
    for k in range(3):
        h = cutoff.derivative(k)

        def sq(x: np.ndarray, h=h, k=k) -> np.ndarray:
            return (h(x / scale) / scale ** k) ** 2

        out[k] = 2.0 * integrate_finite(Integrand(sq), 0.0, scale, rel_tol,
                                        initial_grid=seams[:1])
    return out


def _tensor_h2_coefficients() -> dict[tuple[int, int], float]:
    """Binomial weights of the squared H2 norm on the plane."""
    coeffs = {}
    for a1 in range(3):
        for a2 in range(3 - a1):
            k = a1 + a2
            coeffs[(a1, a2)] = (math.comb(2, k)
                                * math.factorial(k)
                                / (math.factorial(a1) * math.factorial(a2)))
    return coeffs


def cusp_norm_scalings(cp: CuspParams, theta: float,
                       rel_tol: float = 1e-10) -> CuspScalingTable:
    """Norm scalings of the plateau family on the cusp domain.

    Per scale h: the exact L2(Omega) norm 2 int_0^h chi(x1/h)^2 x1^p dx1;
    the H2(R^2) norm of the tensor extension chi(x1/h) chi(x2/(2h)) through
    the binomial derivative weights; and the theta-interpolation bound
    l2^(1-theta) h2^theta.  Log-log slopes are fitted by least squares and
    should match (p+1)/2, -1, and (1-theta)(p+1)/2 - theta.
    """
    if not 0.0 < theta < 1.0:
        raise ValueError("theta must lie in (0, 1)")
    if cp.h_grid.size < 3:
        raise ValueError("slope fitting needs at least 3 grid points")
    chi = cp.cutoff
    coeffs = _tensor_h2_coefficients()
    rows = []
    for h in cp.h_grid:

        def l2_density(x1: np.ndarray, h=h) -> np.ndarray:
            return chi.value(x1 / h) ** 2 * x1 ** cp.p

        l2_sq = 2.0 * integrate_finite(Integrand(l2_density), 0.0, h, rel_tol,
                                       initial_grid=[0.5 * h])
        fx = tensor_factor_norms(chi, h, rel_tol)
        fy = tensor_factor_norms(chi, 2.0 * h, rel_tol)
        h2_sq = sum(c * fx[a1] * fy[a2] for (a1, a2), c in coeffs.items())
        l2 = math.sqrt(l2_sq)
        h2 = math.sqrt(h2_sq)
        rows.append(CuspRow(h=float(h), l2_norm=l2, h2_plus_norm=h2,
                            interp_bound=interp_upper_bound(l2, h2, theta)))
    log_h = np.log([r.h for r in rows])
    slopes = [float(np.polyfit(log_h, np.log(v), 1)[0])
              for v in (np.array([r.l2_norm for r in rows]),
                        np.array([r.h2_plus_norm for r in rows]),
                        np.array([r.interp_bound for r in rows]))]
    beta = (1.0 - theta) * (cp.p + 1.0) / 2.0 - theta
    return CuspScalingTable(
        theta=theta, p=cp.p, rows=tuple(rows),
        slope_l2=slopes[0], slope_h2=slopes[1], slope_interp=slopes[2],
        expected_slope_l2=(cp.p + 1.0) / 2.0,
        expected_slope_h2=-1.0,
        expected_slope_interp=beta,
    )
