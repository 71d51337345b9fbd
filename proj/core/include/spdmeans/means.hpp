#pragma once

#include <optional>
#include <span>
#include <vector>

#include "spdmeans/spd.hpp"

namespace spdmeans {

/// Weighted metric geometric mean A #_t B = A^{1/2} (A^{-1/2} B A^{-1/2})^t A^{1/2}.
/// Defined for every real t; t = 0 returns A, t = 1 returns B.
SPDMatrix metric_mean(const SPDMatrix& a, const SPDMatrix& b, double t);

/// A^{-1} # B computed in the explicitly symmetric form
/// A^{-1/2} (A^{1/2} B A^{1/2})^{1/2} A^{-1/2}, so every intermediate stays
/// in the cone.
SPDMatrix inv_metric_mean(const SPDMatrix& a, const SPDMatrix& b);

/// Weighted spectral geometric mean A natural_t B = (A^{-1} # B)^t A (A^{-1} # B)^t
/// on the whole real line in t.
SPDMatrix spectral_mean(const SPDMatrix& a, const SPDMatrix& b, double t);

/// ||X A^{-1} X - B||_F / ||B||_F. Zero exactly when X solves the Riccati
/// equation, whose unique SPD solution is A # B.
double riccati_residual(const SPDMatrix& a, const SPDMatrix& b,
                        const SPDMatrix& x);

/// Residual of A^{-1} # X = (A^{-1} # B)^t at X = spectral_mean(a, b, t),
/// relative to ||(A^{-1} # B)^t||_F.
double spectral_equation_residual(const SPDMatrix& a, const SPDMatrix& b,
                                  double t);

/// With X = spectral_mean(a, b, t), U = A # X^{-1} and V = B # X^{-1},
/// returns ||V - U^{1 - 1/t}||_F / ||V||_F. Throws ZeroWeight at t = 0.
double characterization_residual(const SPDMatrix& a, const SPDMatrix& b,
                                 double t);

/// Solution of the pair A = X^{-t} Y X^{-t}, B = X^{1-t} Y X^{1-t}:
/// X = A^{-1} # B and Y = A natural_t B, with both back-substitution
/// residuals reported.
struct MeanSystemSolution {
  SPDMatrix x;
  SPDMatrix y;
  double residual_a;
  double residual_b;
};
MeanSystemSolution solve_mean_system(const SPDMatrix& a, const SPDMatrix& b,
                                     double t);

/// Margins of the two-sided Loewner sandwich
///   2^{1+t} (A + B^{-1})^{-t} - A^{-1}  <=  A natural_t B
///                                       <=  [2^{1+t} (A^{-1} + B)^{-t} - A]^{-1}
/// for t in (0,1). lower is lambda_min(mean - lower bound). The upper bound
/// only exists when its inner matrix is positive definite; upper is empty
/// otherwise.
struct LoewnerMargins {
  double lower;
  std::optional<double> upper;
};
LoewnerMargins loewner_bound_margins(const SPDMatrix& a, const SPDMatrix& b,
                                     double t);

/// Frobenius errors ||(A^s natural_t B^s)^{1/s} - exp((1-t) log A + t log B)||_F
/// for each s. s_values must be positive and strictly decreasing.
std::vector<double> ltk_errors(const SPDMatrix& a, const SPDMatrix& b, double t,
                               std::span<const double> s_values);

/// Max relative deviation between the sorted eigenvalues of A natural B and
/// the square roots of the sorted eigenvalues of AB.
double fiedler_ptak_gap(const SPDMatrix& a, const SPDMatrix& b);

}  // namespace spdmeans
