#pragma once

#include <vector>

#include "spdmeans/errors.hpp"

namespace spdmeans {

/// An ordered tuple of strictly positive reals.
class PositiveTuple {
 public:
  explicit PositiveTuple(std::vector<double> values);

  const std::vector<double>& values() const { return values_; }
  int size() const { return static_cast<int>(values_.size()); }

 private:
  std::vector<double> values_;
};

enum class PinchKind { arithmetic, multiplicative };

/// One two-coordinate pinch. Indices are 0-based internally; the JSON wire
/// format is 1-based.
struct PinchStep {
  int i;
  int j;  // i < j
  double t;
  PinchKind kind;
};

/// A replayable sequence of pinches taking source to target. Replay starts
/// from the source sorted descending; the result matches the target as a
/// sorted multiset (positionally too, when swap steps were requested).
struct PinchChain {
  std::vector<PinchStep> steps;
  PositiveTuple source;
  PositiveTuple target;
  // True when the averaging steps reached the full tuple length; the
  // construction normally needs at most length - 1.
  bool reached_step_cap = false;
};

/// True iff beta is majorized by alpha: with both sorted descending, every
/// prefix sum of beta is at most the matching prefix sum of alpha, and the
/// totals agree.
bool majorizes(const PositiveTuple& alpha, const PositiveTuple& beta);

/// Majorization of the logarithms, i.e. beta prec_log alpha. Equality of the
/// total products is required: pinches preserve products, so nothing weaker
/// can be reached by a chain.
bool log_majorizes(const PositiveTuple& alpha, const PositiveTuple& beta);

/// Applies one pinch. Arithmetic averages the two coordinates with weights
/// (t, 1-t); multiplicative does the same to their logarithms. t = 0 is a
/// plain swap for either kind.
PositiveTuple apply_pinch(const PositiveTuple& x, const PinchStep& step);

/// Builds a chain of multiplicative pinches carrying alpha to beta, which
/// exists precisely when beta is log-majorized by alpha (NotLogMajorized
/// otherwise). At most size-1 averaging steps are produced. With
/// positional_swaps, degenerate t = 0 swap steps are appended so the replay
/// also lands on beta's literal coordinate order.
PinchChain build_pinch_chain(const PositiveTuple& alpha,
                             const PositiveTuple& beta,
                             bool positional_swaps = false);

/// Replays the chain from its source and returns the largest absolute
/// log-domain deviation from the target, compared as sorted multisets.
double verify_chain_scalar(const PinchChain& chain);

/// Replays the chain through the spectral mean on diagonal matrices: each
/// step is checked as (P^T D P) natural_t D against the next tuple. Returns
/// the worst relative Frobenius deviation over the steps.
double verify_chain_matrix(const PinchChain& chain);

}  // namespace spdmeans
