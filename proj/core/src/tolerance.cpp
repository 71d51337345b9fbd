#include "spdmeans/tolerance.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace spdmeans {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Similar-to-A^{-1}B symmetric matrix whose spectrum is clustered.
VectorXd relative_spectrum(const SPDMatrix& a, const SPDMatrix& b) {
  const SPDMatrix arm = mat_power(a, -0.5);
  const SPDMatrix similar = SPDMatrix::trusted(arm.mat() * b.mat() * arm.mat());
  return sym_eig(similar).values;
}

std::vector<SpectrumCluster> cluster_values(const VectorXd& eigs, double tau,
                                            double* spread_out) {
  std::vector<SpectrumCluster> clusters;
  double sum = eigs(0);
  int count = 1;
  double spread = 0.0;
  double cluster_lo = eigs(0);
  auto flush = [&](double hi) {
    const double mean = sum / count;
    clusters.push_back({mean, count});
    spread = std::max(spread, (hi - cluster_lo) / mean);
  };
  for (Eigen::Index i = 1; i < eigs.size(); ++i) {
    const double mean = sum / count;
    if ((eigs(i) - mean) / mean > tau) {
      flush(eigs(i - 1));
      sum = eigs(i);
      count = 1;
      cluster_lo = eigs(i);
    } else {
      sum += eigs(i);
      ++count;
    }
  }
  flush(eigs(eigs.size() - 1));
  if (spread_out != nullptr) *spread_out = spread;
  return clusters;
}

// det(A^{-1} B)^{1/m} as the geometric mean of the relative spectrum.
double det_root(const VectorXd& eigs) {
  return std::exp(eigs.array().log().mean());
}

// Pulls {a, b} out of a report that already established sigma. On 2x2 inputs
// the raw eigenvalues are used instead of cluster means, so near-degenerate
// pairs keep full accuracy through L_{a,b}'s own limit branch.
std::pair<double, double> sigma_values(const SPDMatrix& a, const SPDMatrix& b,
                                       const ToleranceReport& report) {
  if (a.dim() == 2) {
    const VectorXd eigs = relative_spectrum(a, b);
    return {eigs(0), eigs(1)};
  }
  return {report.a, report.b};
}

double determinant_of(const SPDMatrix& m) {
  return sym_eig(m).values.prod();
}

}  // namespace

std::vector<SpectrumCluster> cluster_spectrum(const SPDMatrix& a,
                                              const SPDMatrix& b, double tau) {
  detail::check_same_dim(a, b);
  if (!(tau > 0.0)) {
    throw InvalidArgument("cluster tolerance must be positive");
  }
  return cluster_values(relative_spectrum(a, b), tau, nullptr);
}

ToleranceReport check_sigma(const SPDMatrix& a, const SPDMatrix& b, double tau) {
  detail::check_same_dim(a, b);
  if (!(tau > 0.0)) {
    throw InvalidArgument("cluster tolerance must be positive");
  }
  const VectorXd eigs = relative_spectrum(a, b);
  ToleranceReport report;
  report.clusters = cluster_values(eigs, tau, &report.cluster_spread);
  if (report.clusters.size() > 2) {
    report.relation = Relation::none;
    report.a = kNaN;
    report.b = kNaN;
    report.det_residual = kNaN;
    return report;
  }
  report.relation = Relation::sigma;
  report.a = report.clusters.front().value;
  report.multiplicities.first = report.clusters.front().multiplicity;
  if (report.clusters.size() == 2) {
    report.b = report.clusters.back().value;
    report.multiplicities.second = report.clusters.back().multiplicity;
  } else {
    report.b = report.a;
    report.multiplicities.second = 0;
  }
  const double sqrt_ab = std::sqrt(report.a * report.b);
  report.det_residual = std::abs(sqrt_ab - det_root(eigs)) / sqrt_ab;
  return report;
}

ToleranceReport check_tilde(const SPDMatrix& a, const SPDMatrix& b, double tau) {
  ToleranceReport report = check_sigma(a, b, tau);
  if (report.relation == Relation::sigma && report.det_residual <= kDetTol) {
    report.relation = Relation::tilde;
  }
  return report;
}

SPDMatrix tilde_mean_formula(const SPDMatrix& a, const SPDMatrix& b, double t,
                             double tau) {
  detail::check_same_dim(a, b);
  const double det_a = determinant_of(a);
  const double det_b = determinant_of(b);
  if (std::abs(det_a - 1.0) > kDetTol || std::abs(det_b - 1.0) > kDetTol) {
    throw DeterminantNotOne("determinants are " + std::to_string(det_a) +
                            " and " + std::to_string(det_b));
  }
  const SPDMatrix ainv = mat_power(a, -1.0);
  if (check_tilde(ainv, b, tau).relation != Relation::tilde) {
    throw RelationAbsent("A^{-1} ~ B does not hold");
  }
  const int m = a.dim();
  // det(I + AB) through the spectrum of the similar A^{1/2} B A^{1/2}.
  const VectorXd product_eigs = relative_spectrum(ainv, b);
  const double log_det = (product_eigs.array() + 1.0).log().sum();
  const double factor = std::exp(-2.0 * t / m * log_det);
  const SPDMatrix s = SPDMatrix::trusted(ainv.mat() + b.mat());
  const SPDMatrix st = mat_power(s, t);
  return SPDMatrix::trusted(factor * st.mat() * a.mat() * st.mat());
}

SPDMatrix tilde_mean_general(const SPDMatrix& a, const SPDMatrix& b, double t,
                             double tau) {
  detail::check_same_dim(a, b);
  const SPDMatrix ainv = mat_power(a, -1.0);
  if (check_tilde(ainv, b, tau).relation != Relation::tilde) {
    throw RelationAbsent("A^{-1} ~ B does not hold");
  }
  const int m = a.dim();
  const double alpha_beta = determinant_of(a) * determinant_of(b);
  const double scale = std::pow(alpha_beta, 1.0 / m);
  const VectorXd product_eigs = relative_spectrum(ainv, b);  // sigma(AB)
  const double log_det = (product_eigs.array() + scale).log().sum();
  const double factor =
      std::pow(alpha_beta, 3.0 * t / m) * std::exp(-2.0 * t / m * log_det);
  const SPDMatrix s = SPDMatrix::trusted(ainv.mat() + b.mat() / scale);
  const SPDMatrix st = mat_power(s, t);
  return SPDMatrix::trusted(factor * st.mat() * a.mat() * st.mat());
}

double l_ab(double a, double b, double t) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw NonpositiveInput("cluster values must be positive");
  }
  if (std::abs(a - b) <= 1e-10 * std::max(a, b)) {
    return std::pow(a, t) * (1.0 - t);
  }
  return (a * std::pow(b, t) - b * std::pow(a, t)) / (a - b);
}

SPDMatrix sigma_metric_mean_linear(const SPDMatrix& a, const SPDMatrix& b,
                                   double t, double tau) {
  detail::check_same_dim(a, b);
  if (!(t > 0.0 && t < 1.0)) {
    throw WeightOutOfRange("linear span form requires t in (0,1), got " +
                           std::to_string(t));
  }
  const ToleranceReport report = check_sigma(a, b, tau);
  if (report.relation == Relation::none) {
    throw RelationAbsent("A sigma B does not hold");
  }
  const auto [va, vb] = sigma_values(a, b, report);
  return SPDMatrix::trusted(l_ab(va, vb, t) * a.mat() +
                            l_ab(1.0 / va, 1.0 / vb, 1.0 - t) * b.mat());
}

SPDMatrix sigma_spectral_mean_formula(const SPDMatrix& a, const SPDMatrix& b,
                                      double t, double tau) {
  detail::check_same_dim(a, b);
  if (!(t > 0.0 && t < 1.0)) {
    throw WeightOutOfRange("closed form requires t in (0,1), got " +
                           std::to_string(t));
  }
  const SPDMatrix ainv = mat_power(a, -1.0);
  const ToleranceReport report = check_sigma(ainv, b, tau);
  if (report.relation == Relation::none) {
    throw RelationAbsent("A^{-1} sigma B does not hold");
  }
  const auto [va, vb] = sigma_values(ainv, b, report);  // sigma(AB)
  const double c = 1.0 / (std::sqrt(va) + std::sqrt(vb));
  const SPDMatrix s =
      SPDMatrix::trusted(std::sqrt(va * vb) * ainv.mat() + b.mat());
  const SPDMatrix st = mat_power(s, t);
  return SPDMatrix::trusted(std::pow(c, 2.0 * t) * st.mat() * a.mat() *
                            st.mat());
}

}  // namespace spdmeans
