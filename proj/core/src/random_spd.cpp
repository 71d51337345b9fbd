#include "spdmeans/random_spd.hpp"

#include <cmath>
#include <string>

namespace spdmeans {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

VectorXd log_uniform_values(int m, double lo, double hi, Prng& rng) {
  std::uniform_real_distribution<double> dist(std::log(lo), std::log(hi));
  VectorXd v(m);
  for (int i = 0; i < m; ++i) v(i) = std::exp(dist(rng));
  return v;
}

SPDMatrix conjugated_diagonal(const VectorXd& eigs, Prng& rng) {
  const MatrixXd q = random_orthogonal(static_cast<int>(eigs.size()), rng);
  return SPDMatrix::trusted(q * eigs.asDiagonal() * q.transpose());
}

// Diagonal with value `a` on the first mult_a slots and `b` on the rest.
VectorXd two_point_diagonal(int m, double a, double b, int mult_a) {
  if (mult_a < 1 || mult_a >= m) {
    throw InvalidArgument("multiplicity " + std::to_string(mult_a) +
                          " invalid for dimension " + std::to_string(m));
  }
  VectorXd d(m);
  d.head(mult_a).setConstant(a);
  d.tail(m - mult_a).setConstant(b);
  return d;
}

// W with spectrum `diag`, then B = A^{+-1/2} W A^{+-1/2} so that the
// conjugated spectrum shows up in A^{-1} B (sign -1) or A B (sign +1).
std::pair<SPDMatrix, SPDMatrix> spectrum_pair(const SPDMatrix& a,
                                              const VectorXd& diag, Prng& rng,
                                              double root_sign) {
  const SPDMatrix w = conjugated_diagonal(diag, rng);
  const SPDMatrix ar = mat_power(a, 0.5 * root_sign);
  return {a, SPDMatrix::trusted(ar.mat() * w.mat() * ar.mat())};
}

}  // namespace

MatrixXd random_orthogonal(int m, Prng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  MatrixXd g(m, m);
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < m; ++c) g(r, c) = gauss(rng);
  }
  const Eigen::HouseholderQR<MatrixXd> qr(g);
  MatrixXd q = qr.householderQ();
  const VectorXd diag = qr.matrixQR().diagonal();
  for (int i = 0; i < m; ++i) {
    if (diag(i) < 0.0) q.col(i) = -q.col(i);
  }
  return q;
}

SPDMatrix random_spd(int m, Prng& rng, double eig_lo, double eig_hi) {
  return conjugated_diagonal(log_uniform_values(m, eig_lo, eig_hi, rng), rng);
}

SPDMatrix random_unit_det_spd(int m, Prng& rng) {
  VectorXd eigs = log_uniform_values(m, 0.25, 4.0, rng);
  const double mean_log = eigs.array().log().mean();
  eigs = (eigs.array().log() - mean_log).exp();
  return conjugated_diagonal(eigs, rng);
}

std::pair<SPDMatrix, SPDMatrix> random_commuting_pair(int m, Prng& rng) {
  const MatrixXd q = random_orthogonal(m, rng);
  const VectorXd d1 = log_uniform_values(m, 0.25, 4.0, rng);
  const VectorXd d2 = log_uniform_values(m, 0.25, 4.0, rng);
  return {SPDMatrix::trusted(q * d1.asDiagonal() * q.transpose()),
          SPDMatrix::trusted(q * d2.asDiagonal() * q.transpose())};
}

std::pair<SPDMatrix, SPDMatrix> random_noncommuting_pair(int m, Prng& rng) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    SPDMatrix a = random_spd(m, rng);
    SPDMatrix b = random_spd(m, rng);
    const MatrixXd commutator = a.mat() * b.mat() - b.mat() * a.mat();
    if (commutator.norm() > 1e-2 * a.mat().norm() * b.mat().norm()) {
      return {std::move(a), std::move(b)};
    }
  }
  throw InternalError("failed to draw a non-commuting pair");
}

std::pair<SPDMatrix, SPDMatrix> make_sigma_pair(int m, double a, double b,
                                                int mult_a, Prng& rng) {
  return spectrum_pair(random_spd(m, rng), two_point_diagonal(m, a, b, mult_a),
                       rng, +1.0);
}

std::pair<SPDMatrix, SPDMatrix> make_inverse_sigma_pair(int m, double a,
                                                        double b, int mult_a,
                                                        Prng& rng) {
  return spectrum_pair(random_spd(m, rng), two_point_diagonal(m, a, b, mult_a),
                       rng, -1.0);
}

std::pair<SPDMatrix, SPDMatrix> make_inverse_tilde_pair(int m, double a,
                                                        double b, Prng& rng) {
  if (m % 2 != 0) {
    throw InvalidArgument("tilde instances with a != b need even dimension");
  }
  return spectrum_pair(random_spd(m, rng),
                       two_point_diagonal(m, a, b, m / 2), rng, -1.0);
}

std::pair<SPDMatrix, SPDMatrix> make_unit_det_inverse_tilde_pair(int m,
                                                                 double a,
                                                                 Prng& rng) {
  if (m % 2 != 0) {
    throw InvalidArgument("tilde instances with a != b need even dimension");
  }
  return spectrum_pair(random_unit_det_spd(m, rng),
                       two_point_diagonal(m, a, 1.0 / a, m / 2), rng, -1.0);
}

PositiveTuple random_tuple(int m, Prng& rng, double lo, double hi) {
  const VectorXd v = log_uniform_values(m, lo, hi, rng);
  return PositiveTuple(std::vector<double>(v.data(), v.data() + m));
}

PositiveTuple apply_random_multiplicative_pinches(const PositiveTuple& alpha,
                                                  int count, Prng& rng) {
  const int m = alpha.size();
  if (m < 2) {
    throw InvalidArgument("pinching needs at least two coordinates");
  }
  std::uniform_int_distribution<int> pick(0, m - 1);
  std::uniform_real_distribution<double> weight(0.0, 1.0);
  PositiveTuple out = alpha;
  for (int n = 0; n < count; ++n) {
    int i = pick(rng);
    int j = pick(rng);
    while (j == i) j = pick(rng);
    if (i > j) std::swap(i, j);
    out = apply_pinch(out, {i, j, weight(rng), PinchKind::multiplicative});
  }
  return out;
}

}  // namespace spdmeans
