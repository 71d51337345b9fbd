#include "spdmeans/means.hpp"

#include <cmath>
#include <string>

namespace spdmeans {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct SquareRoots {
  MatrixXd root;      // A^{1/2}
  MatrixXd inv_root;  // A^{-1/2}
};

SquareRoots square_roots(const SPDMatrix& a) {
  const EigenDecomposition ed = sym_eig(a);
  const VectorXd r = ed.values.cwiseSqrt();
  return {ed.vectors * r.asDiagonal() * ed.vectors.transpose(),
          ed.vectors * r.cwiseInverse().asDiagonal() * ed.vectors.transpose()};
}

}  // namespace

SPDMatrix metric_mean(const SPDMatrix& a, const SPDMatrix& b, double t) {
  detail::check_same_dim(a, b);
  if (t == 0.0) return a;
  if (t == 1.0) return b;
  const SquareRoots ra = square_roots(a);
  const SPDMatrix inner =
      SPDMatrix::trusted(ra.inv_root * b.mat() * ra.inv_root);
  const SPDMatrix powered = mat_power(inner, t);
  return SPDMatrix::trusted(ra.root * powered.mat() * ra.root);
}

SPDMatrix inv_metric_mean(const SPDMatrix& a, const SPDMatrix& b) {
  detail::check_same_dim(a, b);
  const SquareRoots ra = square_roots(a);
  const SPDMatrix inner = SPDMatrix::trusted(ra.root * b.mat() * ra.root);
  const SPDMatrix root = mat_power(inner, 0.5);
  return SPDMatrix::trusted(ra.inv_root * root.mat() * ra.inv_root);
}

SPDMatrix spectral_mean(const SPDMatrix& a, const SPDMatrix& b, double t) {
  detail::check_same_dim(a, b);
  if (t == 0.0) return a;
  if (t == 1.0) return b;
  const SPDMatrix g = inv_metric_mean(a, b);
  const SPDMatrix gt = mat_power(g, t);
  return SPDMatrix::trusted(gt.mat() * a.mat() * gt.mat());
}

double riccati_residual(const SPDMatrix& a, const SPDMatrix& b,
                        const SPDMatrix& x) {
  detail::check_same_dim(a, b);
  detail::check_same_dim(a, x);
  const SPDMatrix ainv = mat_power(a, -1.0);
  return rel_fro_error(x.mat() * ainv.mat() * x.mat(), b.mat());
}

double spectral_equation_residual(const SPDMatrix& a, const SPDMatrix& b,
                                  double t) {
  detail::check_same_dim(a, b);
  const SPDMatrix x = spectral_mean(a, b, t);
  const SPDMatrix lhs = inv_metric_mean(a, x);
  const SPDMatrix rhs = mat_power(inv_metric_mean(a, b), t);
  return rel_fro_error(lhs.mat(), rhs.mat());
}

double characterization_residual(const SPDMatrix& a, const SPDMatrix& b,
                                 double t) {
  detail::check_same_dim(a, b);
  if (t == 0.0) throw ZeroWeight("characterization requires t != 0");
  const SPDMatrix x = spectral_mean(a, b, t);
  const SPDMatrix xinv = mat_power(x, -1.0);
  const SPDMatrix u = metric_mean(a, xinv, 0.5);
  const SPDMatrix v = metric_mean(b, xinv, 0.5);
  const SPDMatrix upow = mat_power(u, 1.0 - 1.0 / t);
  return rel_fro_error(upow.mat(), v.mat());
}

MeanSystemSolution solve_mean_system(const SPDMatrix& a, const SPDMatrix& b,
                                     double t) {
  detail::check_same_dim(a, b);
  const SPDMatrix x = inv_metric_mean(a, b);
  const SPDMatrix y = spectral_mean(a, b, t);
  const SPDMatrix xm = mat_power(x, -t);
  const SPDMatrix xp = mat_power(x, 1.0 - t);
  const double ra = rel_fro_error(xm.mat() * y.mat() * xm.mat(), a.mat());
  const double rb = rel_fro_error(xp.mat() * y.mat() * xp.mat(), b.mat());
  return {x, y, ra, rb};
}

LoewnerMargins loewner_bound_margins(const SPDMatrix& a, const SPDMatrix& b,
                                     double t) {
  detail::check_same_dim(a, b);
  if (!(t > 0.0 && t < 1.0)) {
    throw WeightOutOfRange("bound requires t in (0,1), got " +
                           std::to_string(t));
  }
  const SPDMatrix mean = spectral_mean(a, b, t);
  const double c = std::pow(2.0, 1.0 + t);
  const SPDMatrix ainv = mat_power(a, -1.0);
  const SPDMatrix binv = mat_power(b, -1.0);

  const SPDMatrix low_sum = SPDMatrix::trusted(a.mat() + binv.mat());
  const Eigen::MatrixXd lower_bound =
      c * mat_power(low_sum, -t).mat() - ainv.mat();
  LoewnerMargins out{min_eigenvalue(mean.mat() - lower_bound), std::nullopt};

  const SPDMatrix up_sum = SPDMatrix::trusted(ainv.mat() + b.mat());
  const Eigen::MatrixXd inner = c * mat_power(up_sum, -t).mat() - a.mat();
  const EigenDecomposition ei = eig_symmetric(inner);
  const double lmax = ei.values(ei.values.size() - 1);
  if (ei.values(0) > kPdTol * std::max(lmax, 0.0)) {
    const Eigen::MatrixXd upper_bound = ei.vectors *
                                        ei.values.cwiseInverse().asDiagonal() *
                                        ei.vectors.transpose();
    out.upper = min_eigenvalue(upper_bound - mean.mat());
  }
  return out;
}

std::vector<double> ltk_errors(const SPDMatrix& a, const SPDMatrix& b, double t,
                               std::span<const double> s_values) {
  detail::check_same_dim(a, b);
  for (std::size_t i = 0; i < s_values.size(); ++i) {
    if (!(s_values[i] > 0.0)) {
      throw InvalidArgument("s values must be positive");
    }
    if (i > 0 && !(s_values[i] < s_values[i - 1])) {
      throw InvalidArgument("s values must be strictly decreasing");
    }
  }
  const Eigen::MatrixXd target_exponent =
      (1.0 - t) * mat_log(a) + t * mat_log(b);
  const SPDMatrix target = mat_exp(target_exponent);
  std::vector<double> errors;
  errors.reserve(s_values.size());
  for (const double s : s_values) {
    const SPDMatrix as = mat_power(a, s);
    const SPDMatrix bs = mat_power(b, s);
    const SPDMatrix mean = spectral_mean(as, bs, t);
    const SPDMatrix rescaled = mat_power(mean, 1.0 / s);
    errors.push_back((rescaled.mat() - target.mat()).norm());
  }
  return errors;
}

double fiedler_ptak_gap(const SPDMatrix& a, const SPDMatrix& b) {
  detail::check_same_dim(a, b);
  const SPDMatrix nat = spectral_mean(a, b, 0.5);
  const VectorXd mean_eigs = sym_eig(nat).values;
  const SquareRoots ra = square_roots(a);
  const SPDMatrix product =
      SPDMatrix::trusted(ra.root * b.mat() * ra.root);  // similar to AB
  const VectorXd product_eigs = sym_eig(product).values;
  double worst = 0.0;
  for (Eigen::Index i = 0; i < mean_eigs.size(); ++i) {
    const double expected = std::sqrt(product_eigs(i));
    worst = std::max(worst, std::abs(mean_eigs(i) - expected) / expected);
  }
  return worst;
}

}  // namespace spdmeans
