#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spdmeans/spd.hpp"
#include "spdmeans/tolerance.hpp"

namespace spdmeans {

inline constexpr std::uint64_t kDefaultSeed = 12345;

/// One named check inside a suite. For "at most" checks `worst` is the
/// largest observed value and must stay <= tolerance; for "at least" checks
/// it is the smallest and must stay >= tolerance. Observations (no
/// tolerance) are carried for the report only.
struct MetricResult {
  double worst = 0.0;
  double tolerance = 0.0;
  enum class Direction { at_most, at_least, observed } direction =
      Direction::observed;
  bool ok = true;
};

/// Outcome of one randomized or fixture-driven suite.
struct SuiteResult {
  std::string name;
  bool passed = true;
  long trials = 0;
  double seconds = 0.0;
  std::map<std::string, MetricResult> metrics;
  std::vector<std::string> notes;
};

/// Records `value` under `label`, failing the suite if it exceeds `tol`.
void check_le(SuiteResult& result, const std::string& label, double value,
              double tol);
/// Records `value` under `label`, failing the suite if it drops below `tol`.
void check_ge(SuiteResult& result, const std::string& label, double value,
              double tol);
/// Records `value` for the report without any pass/fail effect.
void observe(SuiteResult& result, const std::string& label, double value);

struct VerifyOptions {
  std::uint64_t seed = kDefaultSeed;
  std::optional<std::vector<int>> dims;  // overrides each suite's default
  std::optional<long> trials;            // overrides each suite's default
  double cluster_tau = kClusterTau;
};

SuiteResult suite_spd_primitives(const VerifyOptions& opts);
SuiteResult suite_mean_identities(const VerifyOptions& opts);
SuiteResult suite_mean_equations(const VerifyOptions& opts);
SuiteResult suite_loewner_bounds(const VerifyOptions& opts);
SuiteResult suite_lie_trotter_kato(const VerifyOptions& opts);
SuiteResult suite_fiedler_ptak(const VerifyOptions& opts);
SuiteResult suite_geodesic(const VerifyOptions& opts);
SuiteResult suite_metric_invariance(const VerifyOptions& opts);
SuiteResult suite_linear_form_2x2(const VerifyOptions& opts);
SuiteResult suite_convexity_counterexample(const VerifyOptions& opts);
SuiteResult suite_spectral_linear_fit(const VerifyOptions& opts);
SuiteResult suite_tolerance_relations(const VerifyOptions& opts);
SuiteResult suite_tolerance_closed_forms(const VerifyOptions& opts);
SuiteResult suite_pinch_invariants(const VerifyOptions& opts);
SuiteResult suite_pinch_chains(const VerifyOptions& opts);

/// Every suite above, in a fixed order, each timed.
std::vector<SuiteResult> run_all_suites(const VerifyOptions& opts);

/// The bundled 2x2 convexity fixture (four-decimal entries, matching
/// tests/data/convexity_*.txt).
const Eigen::MatrixXd& fixture_a();
const Eigen::MatrixXd& fixture_b();
const Eigen::MatrixXd& fixture_c();

/// Counterexample check against arbitrary matrices, so a corrupted fixture
/// can be exercised as a negative control.
SuiteResult convexity_counterexample_check(const Eigen::MatrixXd& a,
                                           const Eigen::MatrixXd& b,
                                           const Eigen::MatrixXd& c);

}  // namespace spdmeans
