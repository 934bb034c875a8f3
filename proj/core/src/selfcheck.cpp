#include "speamp/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "speamp/detection.hpp"
#include "speamp/protocol.hpp"
#include "speamp/report.hpp"

namespace speamp {

namespace {

const std::vector<double> kEtaSamples = {0.2, 0.4, 0.6, 0.8, 1.0};
const std::vector<double> kAlpha2Samples = {0.1, 0.2, 0.4, 0.5, 0.8, 0.9};

struct Tracker {
  double worst = 0.0;
  std::string where;

  void observe(double deviation, const std::string& context) {
    if (deviation > worst) {
      worst = deviation;
      where = context;
    }
  }
};

std::string point_label(double eta, double alpha2, double t1) {
  std::ostringstream out;
  out << "eta=" << format_double(eta) << " alpha2=" << format_double(alpha2)
      << " t1=" << format_double(t1);
  return out.str();
}

CheckResult finish(std::string name, const Tracker& tracker, double tolerance) {
  CheckResult result;
  result.name = std::move(name);
  result.max_deviation = tracker.worst;
  result.tolerance = tolerance;
  result.passed = tracker.worst <= tolerance;
  result.detail = tracker.where.empty() ? "" : "worst at " + tracker.where;
  return result;
}

// A few fixed multiphoton kets exercising interference up to the cap.
std::vector<PureState> probe_states() {
  const ModeLayout layout({"u", "v"});
  std::vector<PureState> states;
  auto ket = [&](std::vector<int> occ) { return basis_state(layout, OccupationVector(occ)); };
  states.push_back(ket({1, 0}));
  states.push_back(ket({1, 1}));
  states.push_back(ket({2, 1}));
  states.push_back(ket({2, 2}));
  {
    PureState::AmplitudeMap amps;
    amps.emplace(OccupationVector({1, 0}), Complex(0.6, 0.0));
    amps.emplace(OccupationVector({0, 1}), Complex(0.0, 0.8));
    states.emplace_back(layout, std::move(amps));
  }
  {
    PureState::AmplitudeMap amps;
    amps.emplace(OccupationVector({2, 0}), Complex(0.5, 0.0));
    amps.emplace(OccupationVector({1, 1}), Complex(-0.5, 0.5));
    amps.emplace(OccupationVector({0, 2}), Complex(0.0, -0.5));
    states.emplace_back(layout, std::move(amps));
  }
  return states;
}

const std::vector<double> kTransmissionSamples = {0.0, 0.1, 0.3, 0.5, 0.7, 0.9, 1.0};

CheckResult check_hom_dip(const BeamSplitterFn& splitter) {
  // |1,1> on a balanced splitter bunches: the coincidence amplitude vanishes.
  const ModeLayout layout({"u", "v"});
  PureState in = basis_state(layout, OccupationVector({1, 1}));
  PureState out = splitter(in, BeamSplitterSetting{"u", "v", 0.5});
  Tracker tracker;
  tracker.observe(std::norm(out.amplitude(OccupationVector({1, 1}))), "t=0.5 coincidence");
  return finish("hom_dip", tracker, 1e-15);
}

CheckResult check_bs_involution(const BeamSplitterFn& splitter) {
  Tracker tracker;
  for (double t : kTransmissionSamples) {
    const BeamSplitterSetting setting{"u", "v", t};
    for (const PureState& state : probe_states()) {
      PureState twice = splitter(splitter(state, setting), setting);
      // Same-ray distance: the double application must reproduce the input
      // exactly, phase included.
      Complex overlap = inner_product(state, twice);
      double deviation = std::abs(overlap - Complex(1.0, 0.0));
      tracker.observe(deviation, "t=" + format_double(t));
    }
  }
  return finish("bs_involution", tracker, 1e-12);
}

CheckResult check_bs_unitarity(const BeamSplitterFn& splitter) {
  Tracker tracker;
  for (double t : kTransmissionSamples) {
    const BeamSplitterSetting setting{"u", "v", t};
    for (const PureState& state : probe_states()) {
      PureState out = splitter(state, setting);
      tracker.observe(std::abs(out.norm_sq() - state.norm_sq()), "t=" + format_double(t));
    }
  }
  return finish("bs_unitarity", tracker, 1e-12);
}

CheckResult check_loss_composition() {
  const std::vector<std::pair<double, double>> pairs = {
      {0.9, 0.8}, {0.5, 0.5}, {0.7, 0.2}, {1.0, 0.6}, {0.3, 0.0}};
  Tracker tracker;
  for (const auto& [eta1, eta2] : pairs) {
    for (double alpha2 : {0.3, 0.7}) {
      MixedState state = build_input_state(1.0, alpha2);
      MixedState chained = loss_channel(loss_channel(state, "a1", eta1), "a1", eta2);
      MixedState direct = loss_channel(state, "a1", eta1 * eta2);
      tracker.observe(ensemble_distance(chained, direct),
                      "eta1=" + format_double(eta1) + " eta2=" + format_double(eta2));
    }
  }
  return finish("loss_composition", tracker, 1e-12);
}

CheckResult check_input_preparation() {
  Tracker tracker;
  for (double eta : kEtaSamples) {
    for (double alpha2 : kAlpha2Samples) {
      MixedState direct = build_input_state(eta, alpha2);
      MixedState lossy = build_input_via_lossy_channels(alpha2, eta);
      tracker.observe(ensemble_distance(direct, lossy), point_label(eta, alpha2, 0.0));
    }
  }
  return finish("input_preparation", tracker, 1e-12);
}

std::vector<double> t1_grid(int density) {
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(density));
  for (int i = 0; i < density; ++i) {
    grid.push_back(density == 1 ? 0.5 : 0.05 + 0.9 * static_cast<double>(i) / (density - 1));
  }
  return grid;
}

CheckResult check_oracle_grid(const VerifyOptions& options) {
  Tracker tracker;
  for (double eta : kEtaSamples) {
    for (double alpha2 : kAlpha2Samples) {
      for (double t1 : t1_grid(options.grid_density)) {
        ProtocolParams params{eta, alpha2, t1, concentration_t2(alpha2, t1)};
        ProtocolOutcome outcome = run_protocol(params);
        const std::string label = point_label(eta, alpha2, t1);
        tracker.observe(
            std::abs(outcome.success_probability - analytic_success_probability(params)), label);
        tracker.observe(std::abs(outcome.eta_prime - analytic_eta_prime(params)), label);
        tracker.observe(std::abs(outcome.gain - analytic_g(params)), label);
        // On the concentration curve the surviving photon is balanced.
        tracker.observe(1.0 - outcome.fidelity, label);
      }
    }
  }
  return finish("oracle_grid", tracker, options.tolerance);
}

CheckResult check_pattern_split(const VerifyOptions& options) {
  Tracker tracker;
  for (double eta : {0.0, 0.4, 1.0}) {
    for (double alpha2 : {0.2, 0.5, 0.8}) {
      for (double t1 : {0.15, 0.5, 0.85}) {
        ProtocolParams params{eta, alpha2, t1, concentration_t2(alpha2, t1)};
        ProtocolOutcome outcome = run_protocol(params);
        for (const auto& [name, probability] : outcome.pattern_probabilities) {
          tracker.observe(std::abs(probability - outcome.success_probability / 4.0),
                          name + " at " + point_label(eta, alpha2, t1));
        }
      }
    }
  }
  return finish("pattern_split", tracker, options.tolerance);
}

CheckResult check_point_k(const VerifyOptions& options) {
  Tracker tracker;
  for (double alpha2 : {0.4, 0.8}) {
    AmplificationBoundary boundary = amplification_boundary(alpha2);
    for (double eta : {0.2, 0.4, 0.6, 0.8}) {
      ProtocolOutcome outcome =
          run_protocol({eta, alpha2, boundary.t1_star, boundary.t2_star});
      tracker.observe(std::abs(outcome.gain - 1.0),
                      point_label(eta, alpha2, boundary.t1_star));
    }
  }
  return finish("point_k", tracker, options.tolerance);
}

CheckResult check_g_limit() {
  // Early on the concentration curve the gain has already climbed to 1/eta.
  const double t1 = 1e-6;
  Tracker tracker;
  for (double alpha2 : {0.4, 0.8}) {
    for (double eta : {0.2, 0.4, 0.6, 0.8}) {
      ProtocolOutcome outcome = run_protocol({eta, alpha2, t1, concentration_t2(alpha2, t1)});
      tracker.observe(std::abs(outcome.gain - g_limit(eta)), point_label(eta, alpha2, t1));
    }
  }
  return finish("g_limit", tracker, 1e-3);
}

CheckResult check_monte_carlo(const VerifyOptions& options) {
  CheckResult result;
  result.name = "monte_carlo";
  if (options.shots == 0) {
    result.passed = true;
    result.detail = "skipped (shots = 0)";
    return result;
  }

  // Reference point; sampled pattern frequencies must sit within 5 sigma of
  // the exact detection distribution.
  const ProtocolParams params{0.6, 0.4, 0.3, concentration_t2(0.4, 0.3)};
  MixedState state = build_input_state(params.eta, params.alpha2);
  auto split_ancilla = [](const std::string& top, const std::string& bottom, double t) {
    PureState one = basis_state(ModeLayout({top, bottom}), OccupationVector({1, 0}));
    return apply_beam_splitter(one, BeamSplitterSetting{top, bottom, t});
  };
  state = tensor_product(state, split_ancilla("d1", "d2", params.t1));
  state = tensor_product(state, split_ancilla("c1", "c2", params.t2));
  state = apply_beam_splitter(state, BeamSplitterSetting{"a1", "d1", 0.5});
  state = apply_beam_splitter(state, BeamSplitterSetting{"b1", "c1", 0.5});
  state = rename_mode(state, "a1", "f1");
  state = rename_mode(state, "d1", "f2");
  state = rename_mode(state, "b1", "e1");
  state = rename_mode(state, "c1", "e2");

  const std::vector<std::string> detectors = {"f1", "f2", "e1", "e2"};
  auto counts = sample_detection(state, detectors, options.shots, options.seed);

  Tracker tracker;  // deviation measured in sigmas, tolerance 5
  const double shots = static_cast<double>(options.shots);
  for (const auto& outcome : detection_distribution(state, detectors)) {
    const double p = outcome.probability;
    const double sigma = std::sqrt(p * (1.0 - p) / shots);
    auto it = counts.find(outcome.pattern);
    const double observed =
        it == counts.end() ? 0.0 : static_cast<double>(it->second) / shots;
    std::ostringstream label;
    for (const auto& [mode, count] : outcome.pattern) label << mode << ':' << count << ' ';
    tracker.observe(sigma == 0.0 ? 0.0 : std::abs(observed - p) / sigma, label.str());
  }
  result = finish("monte_carlo", tracker, 5.0);
  result.detail += " (" + std::to_string(options.shots) + " shots, seed " +
                   std::to_string(options.seed) + ")";
  return result;
}

}  // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
  BeamSplitterFn splitter = options.beam_splitter;
  if (!splitter) {
    splitter = [](const PureState& state, const BeamSplitterSetting& setting) {
      return apply_beam_splitter(state, setting);
    };
  }

  std::vector<CheckResult> results;
  results.push_back(check_hom_dip(splitter));
  results.push_back(check_bs_involution(splitter));
  results.push_back(check_bs_unitarity(splitter));
  results.push_back(check_loss_composition());
  results.push_back(check_input_preparation());
  results.push_back(check_oracle_grid(options));
  results.push_back(check_pattern_split(options));
  results.push_back(check_point_k(options));
  results.push_back(check_g_limit());
  results.push_back(check_monte_carlo(options));
  return results;
}

}  // namespace speamp
