#include "spdmeans/pinch.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "spdmeans/means.hpp"
#include "spdmeans/spd.hpp"

namespace spdmeans {

namespace {

double equality_tolerance(const std::vector<double>& x,
                          const std::vector<double>& y) {
  double scale = 0.0;
  for (const double v : x) scale = std::max(scale, std::abs(v));
  for (const double v : y) scale = std::max(scale, std::abs(v));
  return 1e-12 * scale + 1e-14;
}

std::vector<double> sorted_descending(std::vector<double> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

std::vector<double> log_values(const PositiveTuple& t) {
  std::vector<double> out;
  out.reserve(t.values().size());
  for (const double v : t.values()) out.push_back(std::log(v));
  return out;
}

// Majorization on raw vectors (any sign); used directly for logarithms.
bool majorizes_vectors(const std::vector<double>& alpha,
                       const std::vector<double>& beta) {
  const std::vector<double> a = sorted_descending(alpha);
  const std::vector<double> b = sorted_descending(beta);
  const double tol = equality_tolerance(a, b);
  double pa = 0.0;
  double pb = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    pa += a[k];
    pb += b[k];
    if (pb > pa + tol) return false;
  }
  return std::abs(pa - pb) <= tol;
}

void check_lengths(const PositiveTuple& alpha, const PositiveTuple& beta) {
  if (alpha.size() != beta.size()) {
    throw LengthMismatch("tuple lengths " + std::to_string(alpha.size()) +
                         " and " + std::to_string(beta.size()) + " differ");
  }
}

void check_step(const PinchStep& step, int size) {
  if (step.i < 0 || step.j >= size || step.i >= step.j) {
    throw IndexOutOfRange("pinch indices (" + std::to_string(step.i) + ", " +
                          std::to_string(step.j) + ") invalid for length " +
                          std::to_string(size));
  }
  if (!(step.t >= 0.0 && step.t <= 1.0)) {
    throw WeightOutOfRange("pinch weight must lie in [0,1], got " +
                           std::to_string(step.t));
  }
}

// Swap steps (t = 0 pinches) realizing the permutation mapping position p of
// `from` onto position p of `to`, as equal multisets.
std::vector<PinchStep> swap_steps_to(const std::vector<double>& from,
                                     const std::vector<double>& to,
                                     double tol) {
  const int m = static_cast<int>(from.size());
  std::vector<double> work = from;
  std::vector<PinchStep> swaps;
  for (int p = 0; p < m; ++p) {
    if (std::abs(work[p] - to[p]) <= tol) continue;
    int q = p + 1;
    while (q < m && std::abs(work[q] - to[p]) > tol) ++q;
    if (q == m) {
      throw InternalError("positional reconstruction failed to match tuples");
    }
    std::swap(work[p], work[q]);
    swaps.push_back({p, q, 0.0, PinchKind::multiplicative});
  }
  return swaps;
}

}  // namespace

PositiveTuple::PositiveTuple(std::vector<double> values)
    : values_(std::move(values)) {
  if (values_.empty()) {
    throw LengthMismatch("tuple must have at least one entry");
  }
  for (const double v : values_) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw NonpositiveEntry("tuple entries must be positive, got " +
                             std::to_string(v));
    }
  }
}

bool majorizes(const PositiveTuple& alpha, const PositiveTuple& beta) {
  check_lengths(alpha, beta);
  return majorizes_vectors(alpha.values(), beta.values());
}

bool log_majorizes(const PositiveTuple& alpha, const PositiveTuple& beta) {
  check_lengths(alpha, beta);
  return majorizes_vectors(log_values(alpha), log_values(beta));
}

PositiveTuple apply_pinch(const PositiveTuple& x, const PinchStep& step) {
  check_step(step, x.size());
  std::vector<double> out = x.values();
  const double xi = out[step.i];
  const double xj = out[step.j];
  if (step.kind == PinchKind::arithmetic) {
    out[step.i] = step.t * xi + (1.0 - step.t) * xj;
    out[step.j] = step.t * xj + (1.0 - step.t) * xi;
  } else {
    out[step.i] = std::exp(step.t * std::log(xi) + (1.0 - step.t) * std::log(xj));
    out[step.j] = std::exp(step.t * std::log(xj) + (1.0 - step.t) * std::log(xi));
  }
  return PositiveTuple(out);
}

PinchChain build_pinch_chain(const PositiveTuple& alpha,
                             const PositiveTuple& beta, bool positional_swaps) {
  check_lengths(alpha, beta);
  if (!log_majorizes(alpha, beta)) {
    throw NotLogMajorized("target tuple is not log-majorized by the source");
  }
  const int m = alpha.size();
  std::vector<double> x = sorted_descending(log_values(alpha));
  const std::vector<double> y = sorted_descending(log_values(beta));
  const double tol = equality_tolerance(x, y);

  PinchChain chain{{}, alpha, beta, false};
  auto matched = [&](int idx) { return std::abs(x[idx] - y[idx]) <= tol; };

  while (true) {
    int j = -1;
    for (int i = 0; i < m; ++i) {
      if (!matched(i) && x[i] > y[i]) {
        j = i;
        break;
      }
    }
    if (j < 0) break;  // every coordinate sits on its target
    if (static_cast<int>(chain.steps.size()) >= m) {
      throw ChainOverflow("chain construction exceeded " + std::to_string(m) +
                          " steps");
    }
    int k = -1;
    for (int i = j + 1; i < m; ++i) {
      if (!matched(i) && x[i] < y[i]) {
        k = i;
        break;
      }
    }
    if (k < 0) {
      throw InternalError("no deficit coordinate after the surplus");
    }
    const double delta = std::min(x[j] - y[j], y[k] - x[k]);
    const double t = 1.0 - delta / (x[j] - x[k]);
    x[j] -= delta;
    x[k] += delta;
    chain.steps.push_back({j, k, t, PinchKind::multiplicative});
    // Every intermediate must still log-majorize the target.
    if (!majorizes_vectors(x, y)) {
      throw InternalError("intermediate tuple stopped majorizing the target");
    }
  }
  chain.reached_step_cap = static_cast<int>(chain.steps.size()) >= m;

  if (positional_swaps) {
    std::vector<double> target_logs = log_values(beta);
    const auto swaps = swap_steps_to(x, target_logs, tol);
    chain.steps.insert(chain.steps.end(), swaps.begin(), swaps.end());
  }
  return chain;
}

double verify_chain_scalar(const PinchChain& chain) {
  PositiveTuple current(sorted_descending(chain.source.values()));
  for (const PinchStep& step : chain.steps) {
    current = apply_pinch(current, step);
  }
  const std::vector<double> got = sorted_descending(current.values());
  const std::vector<double> want = sorted_descending(chain.target.values());
  if (got.size() != want.size()) {
    throw LengthMismatch("chain endpoints have different lengths");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < got.size(); ++i) {
    worst = std::max(worst, std::abs(std::log(got[i]) - std::log(want[i])));
  }
  return worst;
}

double verify_chain_matrix(const PinchChain& chain) {
  PositiveTuple current(sorted_descending(chain.source.values()));
  const int m = current.size();
  double worst = 0.0;
  for (const PinchStep& step : chain.steps) {
    Eigen::VectorXd diag =
        Eigen::Map<const Eigen::VectorXd>(current.values().data(), m);
    const SPDMatrix d = SPDMatrix::trusted(diag.asDiagonal());
    Eigen::MatrixXd perm = Eigen::MatrixXd::Identity(m, m);
    perm.col(step.i).swap(perm.col(step.j));
    const SPDMatrix swapped =
        SPDMatrix::trusted(perm.transpose() * d.mat() * perm);
    const SPDMatrix mean = spectral_mean(swapped, d, step.t);
    const PositiveTuple next = apply_pinch(current, step);
    const Eigen::VectorXd next_diag =
        Eigen::Map<const Eigen::VectorXd>(next.values().data(), m);
    worst = std::max(worst, rel_fro_error(mean.mat(),
                                          Eigen::MatrixXd(next_diag.asDiagonal())));
    current = next;
  }
  return worst;
}

}  // namespace spdmeans
