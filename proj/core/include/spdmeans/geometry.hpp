#pragma once

#include "spdmeans/means.hpp"
#include "spdmeans/spd.hpp"

namespace spdmeans {

/// Semi-metric d(A, B) = 2 ||log(A^{-1} # B)|| in the operator norm.
/// Symmetric, zero iff A = B, invariant under inversion, joint positive
/// scaling and orthogonal congruence; the triangle inequality may fail.
double semi_metric(const SPDMatrix& a, const SPDMatrix& b);

/// Both distances of a pair; each is zero exactly when the arguments agree.
struct DistanceReport {
  double semi_metric;
  double thompson;
};
DistanceReport distance_report(const SPDMatrix& a, const SPDMatrix& b);

/// Thompson metric d_T(A, B) = ||log A^{-1/2} B A^{-1/2}|| in the operator
/// norm. A genuine metric on the cone.
double thompson_metric(const SPDMatrix& a, const SPDMatrix& b);

/// | d(A natural_s B, A natural_t B) - |s - t| d(A, B) |. The spectral mean
/// curve is a geodesic for d, so this vanishes up to roundoff.
double geodesic_deviation(const SPDMatrix& a, const SPDMatrix& b, double s,
                          double t);

/// d(A natural_t B, A natural_t C) - t d(B, C), reported signed. A positive
/// value certifies that d-convexity fails for the spectral mean.
double convexity_gap(const SPDMatrix& a, const SPDMatrix& b, const SPDMatrix& c,
                     double t);

/// L_t(lambda) = (lambda^t - lambda^{-t}) / (lambda - lambda^{-1}) with the
/// continuous extension L_t(1) = t, engaged for |lambda - 1| < 1e-8.
double l_coeff(double t, double lam);

/// 2x2-only linear form of the metric mean:
/// A #_t B = L_{1-t}(lambda) A + L_t(lambda) B with lambda an eigenvalue of
/// A B^{-1} (the larger one is used; the formula is invariant under
/// lambda -> 1/lambda).
SPDMatrix metric_mean_linear_p2(const SPDMatrix& a, const SPDMatrix& b,
                                double t);

/// Relative Frobenius residual of the unconstrained least-squares fit
/// A natural_t B ~ x A + y B over scalars x, y. A zero residual is necessary
/// for any positive linear form to exist, so a clearly positive value
/// witnesses that no such form is available.
double linear_fit_residual(const SPDMatrix& a, const SPDMatrix& b, double t);

}  // namespace spdmeans
