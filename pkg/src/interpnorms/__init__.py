"""Interpolation norms of Hilbert-space pairs and fractional Sobolev norms.

The package computes the quadratic-variant K- and J-method norms with the
normalization that makes interpolation of a space with itself exact,
realizes them exactly on finite weighted-L2 pairs and eigen-decompositions,
evaluates concrete fractional Sobolev norms on the line and on intervals,
and reproduces quantitative examples where interpolation and intrinsic
Sobolev norms differ.
"""

from .normalization import (Q_INF, ThetaQ, beta_integral, g, g_theta,
                            g_theta_argmax, n_prime_theta_q, n_theta_q,
                            n_theta_q_quadrature)
from .quadrature import (ConvergenceError, Integrand, IntegrationResult,
                         QuadratureError, SeriesTerms, SummationError,
                         integrate_finite, integrate_semi_infinite,
                         sum_series)
from .weighted_l2 import (CheckResult, CoupleOperator, OperatorBoundReport,
                          ReconstructionError, WeightedSpacePair, delta_norm,
                          duality_check, interpolated_operator_bound_check,
                          j_norm_via_optimal_density, k1_bound, k_functional,
                          k_norm, k_norm_definitional, norm_j,
                          operator_norm_weighted, optimal_split,
                          reiteration_check, sigma_norm_quadratic,
                          theta_weights)
from .spectral import (CoefficientVector, SpectralDecomposition,
                       dirichlet_eigenfunction,
                       dirichlet_interval_decomposition, sine_coefficients,
                       spectral_interp_norm)
from .sobolev1d import (ExtensionProfile, FourierSquareModulus,
                        InsufficientDecayError, IntervalTrace,
                        extension_energy, h1_norm_interval, h2_norm_interval,
                        hs_norm_fourier, interp_upper_bound,
                        minimal_extension, sine_fourier_sq,
                        trace_from_function)
from .counterexamples import (CuspParams, CuspScalingTable, DEFAULT_CUTOFF,
                              FractalBounds, FractalSequence, FractalWitness,
                              IntervalRatioRecord, SmoothCutoff,
                              cusp_norm_scalings, fractal_phi_bounds,
                              fractal_sequence, fractal_witness,
                              interval_ratio_bound, tensor_factor_norms)
from .selfcheck import SuiteResult, run_selfcheck

__version__ = "0.1.0"
