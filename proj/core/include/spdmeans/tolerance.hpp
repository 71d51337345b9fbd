#pragma once

#include <utility>
#include <vector>

#include "spdmeans/means.hpp"
#include "spdmeans/spd.hpp"

namespace spdmeans {

// Default relative gap separating honest eigenvalue clusters from roundoff.
inline constexpr double kClusterTau = 1e-6;

// Relative tolerance on sqrt(ab) = det(A^{-1} B)^{1/m} for the determinant
// flavor of the relation.
inline constexpr double kDetTol = 1e-8;

enum class Relation { none, sigma, tilde };

/// One detected eigenvalue cluster: its mean and member count.
struct SpectrumCluster {
  double value;
  int multiplicity;
};

/// Outcome of relation detection on a pair (A, B).
///   sigma:  sigma(A^{-1} B) = {a, b}  (at most two clusters)
///   tilde:  sigma plus sqrt(ab) = det(A^{-1} B)^{1/m}
/// For a single cluster a == b and the second multiplicity is 0. When no
/// relation holds, a, b and det_residual are NaN.
struct ToleranceReport {
  Relation relation = Relation::none;
  double a = 0.0;
  double b = 0.0;
  std::pair<int, int> multiplicities{0, 0};
  double det_residual = 0.0;   // relative: |sqrt(ab) - det^{1/m}| / sqrt(ab)
  double cluster_spread = 0.0; // worst relative spread inside any cluster
  std::vector<SpectrumCluster> clusters;
};

/// Eigenvalues of A^{-1/2} B A^{-1/2} (similar to A^{-1} B), ascending,
/// greedily clustered: a new cluster opens when the relative gap to the
/// running cluster mean exceeds tau.
std::vector<SpectrumCluster> cluster_spectrum(const SPDMatrix& a,
                                              const SPDMatrix& b, double tau);

ToleranceReport check_sigma(const SPDMatrix& a, const SPDMatrix& b,
                            double tau = kClusterTau);
ToleranceReport check_tilde(const SPDMatrix& a, const SPDMatrix& b,
                            double tau = kClusterTau);

/// Closed form of the spectral mean under A^{-1} ~ B for unit determinants:
///   det(I + AB)^{-2t/m} (A^{-1} + B)^t A (A^{-1} + B)^t.
/// Throws DeterminantNotOne / RelationAbsent when the hypotheses fail.
SPDMatrix tilde_mean_formula(const SPDMatrix& a, const SPDMatrix& b, double t,
                             double tau = kClusterTau);

/// Closed form of the spectral mean under A^{-1} ~ B for arbitrary
/// determinants alpha = det A, beta = det B:
///   (ab)^{3t/m} det((ab)^{1/m} I + AB)^{-2t/m} S^t A S^t,
/// S = A^{-1} + (ab)^{-1/m} B, ab = alpha * beta.
SPDMatrix tilde_mean_general(const SPDMatrix& a, const SPDMatrix& b, double t,
                             double tau = kClusterTau);

/// L_{a,b}(t) = (a b^t - b a^t) / (a - b); the analytic limit a^t (1 - t) is
/// used when the relative gap between a and b is below 1e-10.
double l_ab(double a, double b, double t);

/// Linear span form of the metric mean under A sigma B:
///   A #_t B = L_{a,b}(t) A + L_{1/a,1/b}(1-t) B, {a, b} = sigma(A^{-1} B).
SPDMatrix sigma_metric_mean_linear(const SPDMatrix& a, const SPDMatrix& b,
                                   double t, double tau = kClusterTau);

/// Closed form of the spectral mean under A^{-1} sigma B with {a, b} = sigma(AB):
///   c^{2t} (sqrt(ab) A^{-1} + B)^t A (sqrt(ab) A^{-1} + B)^t,
/// c = 1/(sqrt(a) + sqrt(b)); a == b degenerates smoothly to c = 1/(2 sqrt a).
SPDMatrix sigma_spectral_mean_formula(const SPDMatrix& a, const SPDMatrix& b,
                                      double t, double tau = kClusterTau);

}  // namespace spdmeans
