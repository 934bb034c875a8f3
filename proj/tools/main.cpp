// speamp: single-point runs, concentration-curve sweeps, amplification
// boundary reports and a self-verification suite for the heralded
// single-photon amplification circuit.
//
// Exit codes: 0 success, 1 verification failure, 2 usage/parameter error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "speamp/protocol.hpp"
#include "speamp/report.hpp"
#include "speamp/selfcheck.hpp"

namespace {

constexpr int kExitSuccess = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitUsageError = 2;

// Writes to the --output path, or stdout when the path is empty.
void emit(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output path: " + path);
  out << content;
  if (!out) throw std::invalid_argument("failed writing output path: " + path);
}

double parse_t2(const std::string& text, double alpha2, double t1) {
  if (text == "auto") return speamp::concentration_t2(alpha2, t1);
  std::size_t consumed = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &consumed);
  } catch (const std::exception&) {
    throw std::invalid_argument("t2 must be a number or \"auto\", got: " + text);
  }
  if (consumed != text.size()) {
    throw std::invalid_argument("t2 must be a number or \"auto\", got: " + text);
  }
  return value;
}

int cmd_run(double eta, double alpha2, double t1, const std::string& t2_text,
            const std::string& output) {
  speamp::ProtocolParams params{eta, alpha2, t1, parse_t2(t2_text, alpha2, t1)};
  speamp::ProtocolOutcome outcome = speamp::run_protocol(params);

  const double analytic_p = speamp::analytic_success_probability(params);
  const double analytic_eta_prime = speamp::analytic_eta_prime(params);
  const bool has_gain = params.eta > 0.0;
  const double analytic_g =
      has_gain ? speamp::analytic_g(params) : std::numeric_limits<double>::quiet_NaN();

  double max_abs_deviation = std::abs(outcome.success_probability - analytic_p);
  max_abs_deviation = std::max(max_abs_deviation, std::abs(outcome.eta_prime - analytic_eta_prime));
  if (has_gain) {
    max_abs_deviation = std::max(max_abs_deviation, std::abs(outcome.gain - analytic_g));
  }

  speamp::FlatJsonWriter json;
  json.add_number("eta", params.eta);
  json.add_number("alpha2", params.alpha2);
  json.add_number("t1", params.t1);
  json.add_number("t2", params.t2);
  json.add_number("P", outcome.success_probability);
  json.add_number("eta_prime", outcome.eta_prime);
  json.add_number("g", outcome.gain);  // null when eta = 0
  json.add_number("fidelity", outcome.fidelity);
  for (const auto& [name, probability] : outcome.pattern_probabilities) {
    json.add_number("per_pattern_" + name, probability);
  }
  json.add_number("analytic_P", analytic_p);
  json.add_number("analytic_eta_prime", analytic_eta_prime);
  json.add_number("analytic_g", analytic_g);
  json.add_number("max_abs_deviation", max_abs_deviation);
  emit(output, json.str());

  return max_abs_deviation < 1e-10 ? kExitSuccess : kExitVerificationFailure;
}

int cmd_curve(const std::string& quantity, double alpha2, double eta, bool has_eta, int points,
              std::pair<double, double> range, const std::string& output,
              const std::string& format) {
  if (quantity != "t2-vs-t1" && quantity != "g-vs-t1" && quantity != "P-vs-t1") {
    throw std::invalid_argument("quantity must be one of t2-vs-t1, g-vs-t1, P-vs-t1");
  }
  if ((quantity == "g-vs-t1" || quantity == "P-vs-t1") && !has_eta) {
    throw std::invalid_argument("quantity " + quantity + " requires --eta");
  }
  if (format != "csv" && format != "json") {
    throw std::invalid_argument("format must be csv or json");
  }

  speamp::SweepSpec spec;
  spec.alpha2 = alpha2;
  spec.eta = eta;
  spec.has_eta = has_eta;
  spec.points = points;
  spec.t1_min = range.first;
  spec.t1_max = range.second;
  const std::vector<speamp::CurveRow> rows = speamp::concentration_curve(spec);

  if (format == "csv") {
    emit(output, speamp::to_csv(rows));
  } else {
    // One flat object per line; same six columns as the CSV.
    std::string text;
    for (const auto& row : rows) {
      speamp::FlatJsonWriter json;
      json.add_number("t1", row.t1);
      json.add_number("t2", row.t2);
      json.add_number("P", row.success_probability);
      json.add_number("eta_prime", row.eta_prime);
      json.add_number("g", row.gain);
      json.add_number("fidelity", row.fidelity);
      text += json.str();
    }
    emit(output, text);
  }
  return kExitSuccess;
}

int cmd_boundary(double alpha2, const std::string& output) {
  speamp::AmplificationBoundary boundary = speamp::amplification_boundary(alpha2);
  speamp::FlatJsonWriter json;
  json.add_number("alpha2", alpha2);
  json.add_number("t1_star", boundary.t1_star);
  json.add_number("t2_star", boundary.t2_star);
  for (double eta : {0.2, 0.4, 0.6, 0.8}) {
    json.add_number("g_limit_eta_" + speamp::format_double(eta), speamp::g_limit(eta));
  }
  emit(output, json.str());
  return kExitSuccess;
}

int cmd_verify(int grid_density, double tolerance, std::uint64_t shots, std::uint64_t seed) {
  speamp::VerifyOptions options;
  options.grid_density = grid_density;
  options.tolerance = tolerance;
  options.shots = shots;
  options.seed = seed;

  bool all_passed = true;
  for (const speamp::CheckResult& check : speamp::run_verification(options)) {
    all_passed = all_passed && check.passed;
    std::printf("[%s] %-18s max_deviation=%-12s tolerance=%-8s %s\n",
                check.passed ? "PASS" : "FAIL", check.name.c_str(),
                speamp::format_double(check.max_deviation).c_str(),
                speamp::format_double(check.tolerance).c_str(), check.detail.c_str());
  }
  std::printf("%s\n", all_passed ? "all checks passed" : "verification failed");
  return all_passed ? kExitSuccess : kExitVerificationFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heralded amplification and concentration of single-photon entanglement"};
  app.require_subcommand(1);

  // --- run ---------------------------------------------------------------
  auto* run = app.add_subcommand("run", "Simulate one parameter point and report JSON");
  double run_eta = 0.0;
  double run_alpha2 = 0.0;
  double run_t1 = 0.0;
  std::string run_t2 = "auto";
  std::string run_output;
  run->add_option("--eta", run_eta, "Input single-photon weight")->required();
  run->add_option("--alpha2", run_alpha2, "Input |alpha|^2")->required();
  run->add_option("--t1", run_t1, "First splitter transmission")->required();
  run->add_option("--t2", run_t2, "Second splitter transmission, or \"auto\"");
  run->add_option("--output", run_output, "Output path (default stdout)");

  // --- curve -------------------------------------------------------------
  auto* curve = app.add_subcommand("curve", "Sweep t1 along the concentration curve");
  std::string curve_quantity;
  double curve_alpha2 = 0.0;
  double curve_eta = 0.0;
  int curve_points = 200;
  std::pair<double, double> curve_range{0.005, 0.995};
  std::string curve_output;
  std::string curve_format = "csv";
  curve->add_option("--quantity", curve_quantity, "t2-vs-t1, g-vs-t1 or P-vs-t1")->required();
  curve->add_option("--alpha2", curve_alpha2, "Input |alpha|^2")->required();
  auto* curve_eta_option = curve->add_option("--eta", curve_eta, "Input single-photon weight");
  curve->add_option("--points", curve_points, "Grid size (default 200)");
  curve->add_option("--range", curve_range, "t1 range lo,hi (default 0.005,0.995)")
      ->delimiter(',');
  curve->add_option("--output", curve_output, "Output path (default stdout)");
  curve->add_option("--format", curve_format, "csv or json (default csv)");

  // --- boundary ----------------------------------------------------------
  auto* boundary = app.add_subcommand("boundary", "Report the amplification region endpoints");
  double boundary_alpha2 = 0.0;
  std::string boundary_output;
  boundary->add_option("--alpha2", boundary_alpha2, "Input |alpha|^2")->required();
  boundary->add_option("--output", boundary_output, "Output path (default stdout)");

  // --- verify ------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "Run the invariant and oracle suite");
  int verify_grid = 5;
  double verify_tol = 1e-10;
  std::uint64_t verify_shots = 0;
  std::uint64_t verify_seed = 42;
  verify->add_option("--grid", verify_grid, "t1 samples per grid cell (default 5)")
      ->check(CLI::Range(2, 1000));
  verify->add_option("--tol", verify_tol, "Oracle tolerance (default 1e-10)");
  verify->add_option("--shots", verify_shots, "Monte-Carlo shots (default 0 = skip)");
  verify->add_option("--seed", verify_seed, "Sampling seed (default 42)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitSuccess : kExitUsageError;
  }

  try {
    if (run->parsed()) return cmd_run(run_eta, run_alpha2, run_t1, run_t2, run_output);
    if (curve->parsed()) {
      return cmd_curve(curve_quantity, curve_alpha2, curve_eta, curve_eta_option->count() > 0,
                       curve_points, curve_range, curve_output, curve_format);
    }
    if (boundary->parsed()) return cmd_boundary(boundary_alpha2, boundary_output);
    if (verify->parsed()) return cmd_verify(verify_grid, verify_tol, verify_shots, verify_seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsageError;
  }
  return kExitUsageError;  // unreachable: a subcommand is required
}
