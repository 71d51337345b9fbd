// Command-line front-end: file ingestion, subcommand dispatch and JSON
// reporting for the SPD mean library.
//
// Exit codes: 0 success, 1 internal error, 2 input/validation error,
// 3 relation or precondition absent, 4 verification failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "spdmeans/geometry.hpp"
#include "spdmeans/io.hpp"
#include "spdmeans/means.hpp"
#include "spdmeans/pinch.hpp"
#include "spdmeans/random_spd.hpp"
#include "spdmeans/tolerance.hpp"
#include "spdmeans/verify.hpp"

namespace {

using nlohmann::json;
using namespace spdmeans;

json tolerances_json(double tau) {
  return json{{"sym_tol", kSymTol},
              {"pd_tol", kPdTol},
              {"cluster_tau", tau},
              {"det_tol", kDetTol}};
}

json or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

const char* relation_name(Relation r) {
  switch (r) {
    case Relation::none:
      return "none";
    case Relation::sigma:
      return "sigma";
    case Relation::tilde:
      return "tilde";
  }
  return "none";
}

json report_to_json(const ToleranceReport& r) {
  json clusters = json::array();
  for (const SpectrumCluster& c : r.clusters) {
    clusters.push_back(
        json{{"value", c.value}, {"multiplicity", c.multiplicity}});
  }
  return json{{"relation", relation_name(r.relation)},
              {"a", or_null(r.a)},
              {"b", or_null(r.b)},
              {"multiplicities",
               json::array({r.multiplicities.first, r.multiplicities.second})},
              {"det_residual", or_null(r.det_residual)},
              {"cluster_spread", r.cluster_spread},
              {"clusters", std::move(clusters)}};
}

json metric_to_json(const MetricResult& m) {
  json out{{"worst", or_null(m.worst)}, {"ok", m.ok}};
  switch (m.direction) {
    case MetricResult::Direction::at_most:
      out["check"] = "at_most";
      out["tolerance"] = m.tolerance;
      break;
    case MetricResult::Direction::at_least:
      out["check"] = "at_least";
      out["tolerance"] = m.tolerance;
      break;
    case MetricResult::Direction::observed:
      out["check"] = "observed";
      break;
  }
  return out;
}

// Wall-clock timing is deliberately left out: with a fixed seed the report
// must be byte-identical across runs.
json suite_to_json(const SuiteResult& r) {
  json metrics = json::object();
  for (const auto& [label, metric] : r.metrics) {
    metrics[label] = metric_to_json(metric);
  }
  return json{{"name", r.name},
              {"passed", r.passed},
              {"trials", r.trials},
              {"metrics", metrics},
              {"notes", r.notes}};
}

void emit(const json& j, const std::string& path) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    throw ParseError("cannot write output file: " + path);
  }
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_input:
      return 2;
    case ErrorKind::precondition_absent:
      return 3;
    case ErrorKind::internal:
      return 1;
  }
  return 1;
}

struct Options {
  std::string file_a;
  std::string file_b;
  std::string kind = "spectral";
  double t = 0.5;
  double tau = kClusterTau;
  std::uint64_t seed = kDefaultSeed;
  std::vector<int> dims;
  long trials = 0;
  bool positional_pinches = false;
  std::string json_path;
};

json run_mean(const Options& opt) {
  const SPDMatrix a = load_matrix(opt.file_a);
  const SPDMatrix b = load_matrix(opt.file_b);
  json residuals = json::object();
  SPDMatrix result = [&] {
    if (opt.kind == "metric") {
      SPDMatrix m = metric_mean(a, b, opt.t);
      if (opt.t == 0.5) {
        residuals["riccati"] = riccati_residual(a, b, m);
      }
      return m;
    }
    residuals["spectral_equation"] = spectral_equation_residual(a, b, opt.t);
    return spectral_mean(a, b, opt.t);
  }();
  return json{{"command", "mean"},
              {"kind", opt.kind},
              {"t", opt.t},
              {"result", matrix_to_json(result.mat())},
              {"residuals", residuals},
              {"tolerances", tolerances_json(opt.tau)}};
}

json run_dist(const Options& opt) {
  const SPDMatrix a = load_matrix(opt.file_a);
  const SPDMatrix b = load_matrix(opt.file_b);
  const DistanceReport report = distance_report(a, b);
  return json{{"command", "dist"},
              {"semi_metric", report.semi_metric},
              {"thompson", report.thompson},
              {"tolerances", tolerances_json(opt.tau)}};
}

json run_tolerance(const Options& opt) {
  const SPDMatrix a = load_matrix(opt.file_a);
  const SPDMatrix b = load_matrix(opt.file_b);
  const ToleranceReport direct = check_tilde(a, b, opt.tau);
  const SPDMatrix ainv = mat_power(a, -1.0);
  const ToleranceReport inverse = check_tilde(ainv, b, opt.tau);

  json forms = json::object();
  const bool open_weight = opt.t > 0.0 && opt.t < 1.0;
  if (direct.relation != Relation::none && open_weight) {
    forms["metric_linear_span"] = json{
        {"t", opt.t},
        {"agreement_residual",
         rel_fro_error(sigma_metric_mean_linear(a, b, opt.t, opt.tau).mat(),
                       metric_mean(a, b, opt.t).mat())}};
  }
  if (inverse.relation != Relation::none && open_weight) {
    forms["spectral_closed_form"] = json{
        {"t", opt.t},
        {"agreement_residual",
         rel_fro_error(sigma_spectral_mean_formula(a, b, opt.t, opt.tau).mat(),
                       spectral_mean(a, b, opt.t).mat())}};
  }
  if (inverse.relation == Relation::tilde) {
    forms["spectral_tilde_general"] = json{
        {"t", opt.t},
        {"agreement_residual",
         rel_fro_error(tilde_mean_general(a, b, opt.t, opt.tau).mat(),
                       spectral_mean(a, b, opt.t).mat())}};
    const double det_a = a.mat().determinant();
    const double det_b = b.mat().determinant();
    if (std::abs(det_a - 1.0) <= kDetTol && std::abs(det_b - 1.0) <= kDetTol) {
      forms["spectral_tilde_unit_det"] = json{
          {"t", opt.t},
          {"agreement_residual",
           rel_fro_error(tilde_mean_formula(a, b, opt.t, opt.tau).mat(),
                         spectral_mean(a, b, opt.t).mat())}};
    }
  }
  return json{{"command", "tolerance"},
              {"report", report_to_json(direct)},
              {"inverse_report", report_to_json(inverse)},
              {"closed_forms", forms},
              {"tolerances", tolerances_json(opt.tau)}};
}

json run_pinch(const Options& opt) {
  const PositiveTuple alpha = load_tuple(opt.file_a);
  const PositiveTuple beta = load_tuple(opt.file_b);
  const PinchChain chain =
      build_pinch_chain(alpha, beta, opt.positional_pinches);
  long averaging = 0;
  for (const PinchStep& s : chain.steps) {
    if (s.t != 0.0) ++averaging;
  }
  json out = chain_to_json(chain);
  out["command"] = "pinch";
  out["averaging_steps"] = averaging;
  out["swap_steps"] = static_cast<long>(chain.steps.size()) - averaging;
  out["reached_step_cap"] = chain.reached_step_cap;
  out["scalar_replay_deviation"] = verify_chain_scalar(chain);
  out["matrix_replay_deviation"] = verify_chain_matrix(chain);
  return out;
}

json run_ltk(const Options& opt) {
  const SPDMatrix a = load_matrix(opt.file_a);
  const SPDMatrix b = load_matrix(opt.file_b);
  std::vector<double> s_values;
  for (int k = 0; k <= 6; ++k) s_values.push_back(std::pow(2.0, -k));
  const std::vector<double> errors = ltk_errors(a, b, opt.t, s_values);
  const std::size_t n = errors.size();
  const bool tail_decreasing =
      errors[n - 1] < errors[n - 2] && errors[n - 2] < errors[n - 3];
  return json{{"command", "ltk"},
              {"t", opt.t},
              {"s_values", s_values},
              {"errors", errors},
              {"last_below_first", errors.back() < errors.front()},
              {"tail_strictly_decreasing", tail_decreasing}};
}

int run_verify(const Options& opt) {
  VerifyOptions vopts;
  vopts.seed = opt.seed;
  vopts.cluster_tau = opt.tau;
  if (!opt.dims.empty()) vopts.dims = opt.dims;
  if (opt.trials > 0) vopts.trials = opt.trials;

  const std::vector<SuiteResult> results = run_all_suites(vopts);
  bool passed = true;
  json suites = json::array();
  for (const SuiteResult& r : results) {
    passed = passed && r.passed;
    suites.push_back(suite_to_json(r));
  }
  json config{{"seed", opt.seed},
              {"rng", kPrngName},
              {"cluster_tau", opt.tau},
              {"dims", opt.dims.empty() ? json(nullptr) : json(opt.dims)},
              {"trials", opt.trials > 0 ? json(opt.trials) : json(nullptr)}};
  emit(json{{"command", "verify"},
            {"config", config},
            {"passed", passed},
            {"suites", suites}},
       opt.json_path);
  return passed ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Metric and spectral geometric means on the SPD cone"};
  app.require_subcommand(1);
  Options opt;

  auto* mean = app.add_subcommand("mean", "Weighted mean of two matrices");
  mean->add_option("A", opt.file_a, "matrix file")->required();
  mean->add_option("B", opt.file_b, "matrix file")->required();
  mean->add_option("--kind", opt.kind, "metric|spectral")
      ->check(CLI::IsMember({"metric", "spectral"}));
  mean->add_option("--t", opt.t, "weight (default 0.5)");
  mean->add_option("--json", opt.json_path, "write the report to this path");

  auto* dist = app.add_subcommand("dist", "Semi-metric and Thompson distance");
  dist->add_option("A", opt.file_a, "matrix file")->required();
  dist->add_option("B", opt.file_b, "matrix file")->required();
  dist->add_option("--json", opt.json_path, "write the report to this path");

  auto* tolerance =
      app.add_subcommand("tolerance", "Tolerance relations and closed forms");
  tolerance->add_option("A", opt.file_a, "matrix file")->required();
  tolerance->add_option("B", opt.file_b, "matrix file")->required();
  tolerance->add_option("--t", opt.t, "weight for the closed forms");
  tolerance->add_option("--tau", opt.tau, "relative cluster gap tolerance");
  tolerance->add_option("--json", opt.json_path,
                        "write the report to this path");

  auto* pinch = app.add_subcommand("pinch", "Pinch chain between two tuples");
  pinch->add_option("ALPHA", opt.file_a, "tuple file")->required();
  pinch->add_option("BETA", opt.file_b, "tuple file")->required();
  pinch->add_flag("--positional-pinches", opt.positional_pinches,
                  "append swap steps reaching the literal coordinate order");
  pinch->add_option("--json", opt.json_path, "write the report to this path");

  auto* ltk = app.add_subcommand("ltk", "Limit errors toward the log-mean");
  ltk->add_option("A", opt.file_a, "matrix file")->required();
  ltk->add_option("B", opt.file_b, "matrix file")->required();
  ltk->add_option("--t", opt.t, "weight (default 0.5)");
  ltk->add_option("--json", opt.json_path, "write the report to this path");

  auto* verify = app.add_subcommand("verify", "Run the verification suites");
  verify->add_option("--seed", opt.seed, "PRNG seed");
  verify->add_option("--m", opt.dims, "dimension list override");
  verify->add_option("--trials", opt.trials, "trial count override");
  verify->add_option("--tau", opt.tau, "relative cluster gap tolerance");
  verify->add_option("--json", opt.json_path, "write the report to this path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    emit(json{{"error",
               json{{"type", "UsageError"}, {"message", e.what()},
                    {"exit_code", 2}}}},
         "");
    return 2;
  }

  try {
    if (mean->parsed()) {
      emit(run_mean(opt), opt.json_path);
    } else if (dist->parsed()) {
      emit(run_dist(opt), opt.json_path);
    } else if (tolerance->parsed()) {
      emit(run_tolerance(opt), opt.json_path);
    } else if (pinch->parsed()) {
      emit(run_pinch(opt), opt.json_path);
    } else if (ltk->parsed()) {
      emit(run_ltk(opt), opt.json_path);
    } else if (verify->parsed()) {
      return run_verify(opt);
    }
    return 0;
  } catch (const Error& e) {
    const int code = exit_code_for(e.kind());
    std::cerr << e.name() << ": " << e.what() << "\n";
    emit(json{{"error", json{{"type", e.name()},
                             {"message", e.what()},
                             {"exit_code", code}}}},
         "");
    return code;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    emit(json{{"error", json{{"type", "InternalError"},
                             {"message", e.what()},
                             {"exit_code", 1}}}},
         "");
    return 1;
  }
}
