#include "spdmeans/geometry.hpp"

#include <cmath>
#include <string>

namespace spdmeans {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

double max_abs_log(const VectorXd& positive_values) {
  double out = 0.0;
  for (Eigen::Index i = 0; i < positive_values.size(); ++i) {
    out = std::max(out, std::abs(std::log(positive_values(i))));
  }
  return out;
}

}  // namespace

double semi_metric(const SPDMatrix& a, const SPDMatrix& b) {
  detail::check_same_dim(a, b);
  const SPDMatrix g = inv_metric_mean(a, b);
  return 2.0 * max_abs_log(sym_eig(g).values);
}

DistanceReport distance_report(const SPDMatrix& a, const SPDMatrix& b) {
  return {semi_metric(a, b), thompson_metric(a, b)};
}

double thompson_metric(const SPDMatrix& a, const SPDMatrix& b) {
  detail::check_same_dim(a, b);
  const SPDMatrix arm = mat_power(a, -0.5);
  const SPDMatrix inner = SPDMatrix::trusted(arm.mat() * b.mat() * arm.mat());
  return max_abs_log(sym_eig(inner).values);
}

double geodesic_deviation(const SPDMatrix& a, const SPDMatrix& b, double s,
                          double t) {
  detail::check_same_dim(a, b);
  const double along = semi_metric(spectral_mean(a, b, s), spectral_mean(a, b, t));
  return std::abs(along - std::abs(s - t) * semi_metric(a, b));
}

double convexity_gap(const SPDMatrix& a, const SPDMatrix& b, const SPDMatrix& c,
                     double t) {
  detail::check_same_dim(a, b);
  detail::check_same_dim(a, c);
  if (!(t >= 0.0 && t <= 1.0)) {
    throw WeightOutOfRange("convexity gap requires t in [0,1], got " +
                           std::to_string(t));
  }
  const double lhs = semi_metric(spectral_mean(a, b, t), spectral_mean(a, c, t));
  return lhs - t * semi_metric(b, c);
}

double l_coeff(double t, double lam) {
  if (!(lam > 0.0)) {
    throw NonpositiveEigenvalue("lambda must be positive, got " +
                                std::to_string(lam));
  }
  if (std::abs(lam - 1.0) < 1e-8) return t;
  return (std::pow(lam, t) - std::pow(lam, -t)) / (lam - 1.0 / lam);
}

SPDMatrix metric_mean_linear_p2(const SPDMatrix& a, const SPDMatrix& b,
                                double t) {
  detail::check_same_dim(a, b);
  if (a.dim() != 2) {
    throw DimensionMismatch("linear form is specific to 2x2 matrices, got " +
                            std::to_string(a.dim()));
  }
  if (!(t >= 0.0 && t <= 1.0)) {
    throw WeightOutOfRange("linear form requires t in [0,1], got " +
                           std::to_string(t));
  }
  // Eigenvalues of A B^{-1} through the similar symmetric B^{-1/2} A B^{-1/2}.
  // The L-coefficient identity needs the two eigenvalues to be a reciprocal
  // pair, which holds after normalizing both matrices to determinant one;
  // joint homogeneity of #_t then carries the determinants back out. For
  // det A = det B the factors collapse and this is the plain
  // L_{1-t}(lambda) A + L_t(lambda) B.
  const SPDMatrix brm = mat_power(b, -0.5);
  const SPDMatrix similar = SPDMatrix::trusted(brm.mat() * a.mat() * brm.mat());
  const Eigen::VectorXd eigs = sym_eig(similar).values;
  const double lam = std::sqrt(eigs(1) / eigs(0));  // the one >= 1
  const double det_ratio = a.mat().determinant() / b.mat().determinant();
  const double coeff_a = std::pow(det_ratio, -t / 2.0) * l_coeff(1.0 - t, lam);
  const double coeff_b =
      std::pow(det_ratio, (1.0 - t) / 2.0) * l_coeff(t, lam);
  return SPDMatrix::trusted(coeff_a * a.mat() + coeff_b * b.mat());
}

double linear_fit_residual(const SPDMatrix& a, const SPDMatrix& b, double t) {
  detail::check_same_dim(a, b);
  if (!(t > 0.0 && t < 1.0)) {
    throw WeightOutOfRange("fit requires t in (0,1), got " + std::to_string(t));
  }
  const SPDMatrix mean = spectral_mean(a, b, t);
  const Eigen::Index n = static_cast<Eigen::Index>(a.dim()) * a.dim();
  MatrixXd basis(n, 2);
  basis.col(0) = a.mat().reshaped();
  basis.col(1) = b.mat().reshaped();
  const VectorXd rhs = mean.mat().reshaped();
  const Eigen::JacobiSVD<MatrixXd> svd(basis,
                                       Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::Vector2d coeffs = svd.solve(rhs);
  return (rhs - basis * coeffs).norm() / rhs.norm();
}

}  // namespace spdmeans
