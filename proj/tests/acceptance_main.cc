// Acceptance harness: runs every pinned criterion at its stated tolerance and
// prints one pass/fail line per criterion, then the supporting invariant
// suites. Exits nonzero if anything fails.

#include <chrono>
#include <cstdio>

#include "spdmeans/verify.hpp"

namespace {

using spdmeans::SuiteResult;
using spdmeans::VerifyOptions;

struct Criterion {
  int number;
  const char* description;
  SuiteResult (*suite)(const VerifyOptions&);
  double time_limit_seconds;  // 0 disables the runtime check
};

bool run_criterion(const Criterion& c, const VerifyOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const SuiteResult result = c.suite(opts);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  const bool in_time = c.time_limit_seconds <= 0.0 || seconds < c.time_limit_seconds;
  const bool ok = result.passed && in_time;
  std::printf("[%s] criterion %2d: %s (suite %s, trials=%ld, %.2fs)\n",
              ok ? "PASS" : "FAIL", c.number, c.description,
              result.name.c_str(), result.trials, seconds);
  if (!in_time) {
    std::printf("       exceeded the %.0fs runtime budget\n",
                c.time_limit_seconds);
  }
  if (!result.passed) {
    for (const auto& [label, metric] : result.metrics) {
      if (!metric.ok) {
        std::printf("       %s: worst %.3e vs tolerance %.3e\n", label.c_str(),
                    metric.worst, metric.tolerance);
      }
    }
    std::size_t shown = 0;
    for (const auto& note : result.notes) {
      if (shown++ >= 5) {
        std::printf("       ... %zu further notes\n", result.notes.size() - 5);
        break;
      }
      std::printf("       note: %s\n", note.c_str());
    }
  }
  return ok;
}

}  // namespace

int main() {
  const VerifyOptions opts;  // pinned defaults, fixed seed

  const Criterion criteria[] = {
      {1, "convexity counterexample distances and strict gap",
       spdmeans::suite_convexity_counterexample, 1.0},
      {2, "spectral mean identities over random pairs",
       spdmeans::suite_mean_identities, 30.0},
      {3, "geodesic property of the spectral mean curve",
       spdmeans::suite_geodesic, 0.0},
      {4, "eigenvalues of the mean pair with sqrt of the product spectrum",
       spdmeans::suite_fiedler_ptak, 0.0},
      {5, "mean equation and system residuals", spdmeans::suite_mean_equations,
       0.0},
      {6, "two-sided Loewner bounds stay on the right side",
       spdmeans::suite_loewner_bounds, 0.0},
      {7, "Lie-Trotter-Kato error sequence shrinks",
       spdmeans::suite_lie_trotter_kato, 0.0},
      {8, "closed forms under the tolerance relations",
       spdmeans::suite_tolerance_closed_forms, 0.0},
      {9, "pinch chains for log-majorized tuples", spdmeans::suite_pinch_chains,
       0.0},
      {10, "no scalar linear form for non-commuting pairs",
       spdmeans::suite_spectral_linear_fit, 0.0},
  };

  bool all = true;
  for (const Criterion& c : criteria) {
    all = run_criterion(c, opts) && all;
  }

  const Criterion invariants[] = {
      {11, "matrix-function primitives", spdmeans::suite_spd_primitives, 0.0},
      {12, "semi-metric and Thompson invariances",
       spdmeans::suite_metric_invariance, 0.0},
      {13, "planar linear form of the metric mean",
       spdmeans::suite_linear_form_2x2, 0.0},
      {14, "tolerance relation axioms and invariance",
       spdmeans::suite_tolerance_relations, 0.0},
      {15, "pinch conservation and progress", spdmeans::suite_pinch_invariants,
       0.0},
  };
  std::printf("-- supporting invariant suites --\n");
  for (const Criterion& c : invariants) {
    const auto start = std::chrono::steady_clock::now();
    const SuiteResult result = c.suite(opts);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::printf("[%s] invariant: %s (suite %s, trials=%ld, %.2fs)\n",
                result.passed ? "PASS" : "FAIL", c.description,
                result.name.c_str(), result.trials, seconds);
    all = result.passed && all;
  }

  std::printf("acceptance: %s\n", all ? "PASS" : "FAIL");
  return all ? 0 : 1;
}
