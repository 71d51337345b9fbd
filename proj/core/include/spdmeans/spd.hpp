#pragma once

#include <Eigen/Dense>

#include "spdmeans/errors.hpp"

namespace spdmeans {

// Membership tolerances for the SPD cone. Matrices parsed from text carry
// rounding noise; asymmetry below kSymTol is silently symmetrized, larger
// asymmetry is rejected.
inline constexpr double kSymTol = 1e-8;
inline constexpr double kPdTol = 1e-12;

// Soft dimension cap. A configuration limit, nothing below depends on it.
inline constexpr int kMaxDim = 64;

/// A validated symmetric positive definite matrix. Immutable after
/// construction; values are safe to share across threads.
class SPDMatrix {
 public:
  /// Validates and stores (M + M^T)/2. Throws NotSquare, NotSymmetric,
  /// NotPositiveDefinite or DimensionOutOfRange.
  explicit SPDMatrix(const Eigen::MatrixXd& m);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXd& mat() const { return m_; }

  /// Wraps a matrix that is SPD by construction (spectral rebuilds, sums of
  /// SPD terms). Symmetrizes but skips the eigenvalue gate.
  static SPDMatrix trusted(Eigen::MatrixXd m);

 private:
  struct TrustedTag {};
  SPDMatrix(Eigen::MatrixXd m, TrustedTag);

  Eigen::MatrixXd m_;
};

/// Ascending eigenvalues and the matching orthonormal eigenvector columns.
struct EigenDecomposition {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

/// Gatekeeper for cone membership; see SPDMatrix constructor.
SPDMatrix validate_spd(const Eigen::MatrixXd& m);

/// Symmetric eigendecomposition with values ascending.
EigenDecomposition sym_eig(const SPDMatrix& a);

/// Eigendecomposition of a general symmetric matrix (positivity not
/// required). Throws NotSymmetric / ConvergenceFailure.
EigenDecomposition eig_symmetric(const Eigen::MatrixXd& s);

/// A^p through the eigendecomposition: V diag(values^p) V^T.
SPDMatrix mat_power(const SPDMatrix& a, double p);

/// Principal logarithm; result is symmetric, not necessarily definite.
Eigen::MatrixXd mat_log(const SPDMatrix& a);

/// Exponential of a symmetric matrix; always lands in the cone.
SPDMatrix mat_exp(const Eigen::MatrixXd& s);

/// Congruence action C^T A C, revalidated. Throws SingularTransform.
SPDMatrix congruence(const SPDMatrix& a, const Eigen::MatrixXd& c);

/// ||x - ref||_F / ||ref||_F; falls back to the absolute norm when ref = 0.
double rel_fro_error(const Eigen::MatrixXd& x, const Eigen::MatrixXd& ref);

/// Smallest eigenvalue of a symmetric matrix.
double min_eigenvalue(const Eigen::MatrixXd& s);

namespace detail {
void check_same_dim(const SPDMatrix& a, const SPDMatrix& b);
}  // namespace detail

}  // namespace spdmeans
