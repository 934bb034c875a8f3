#include "speamp/protocol.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "speamp/detection.hpp"
#include "speamp/optics.hpp"

namespace speamp {

namespace {

void require_unit_interval(double value, const char* name, bool open) {
  const bool ok = open ? (value > 0.0 && value < 1.0) : (value >= 0.0 && value <= 1.0);
  if (!ok) {
    throw std::invalid_argument(std::string(name) + " must lie in " +
                                (open ? "(0, 1)" : "[0, 1]"));
  }
}

}  // namespace

void ProtocolParams::validate() const {
  require_unit_interval(eta, "eta", false);
  require_unit_interval(alpha2, "alpha2", false);
  require_unit_interval(t1, "t1", true);
  require_unit_interval(t2, "t2", true);
}

MixedState build_input_state(double eta, double alpha2) {
  require_unit_interval(eta, "eta", false);
  require_unit_interval(alpha2, "alpha2", false);
  const ModeLayout layout({"a1", "b1"});
  const double alpha = std::sqrt(alpha2);
  const double beta = std::sqrt(1.0 - alpha2);

  PureState::AmplitudeMap amps;
  amps.emplace(OccupationVector({1, 0}), Complex(alpha, 0.0));
  amps.emplace(OccupationVector({0, 1}), Complex(beta, 0.0));
  PureState photon(layout, std::move(amps));
  PureState vacuum = basis_state(layout, OccupationVector({0, 0}));

  // Zero-weight branches are pruned by the ensemble constructor, so the
  // eta = 0 and eta = 1 endpoints come out single-branch.
  return MixedState(layout, {{eta, std::move(photon)}, {1.0 - eta, std::move(vacuum)}});
}

MixedState build_input_via_lossy_channels(double alpha2, double eta) {
  require_unit_interval(alpha2, "alpha2", false);
  require_unit_interval(eta, "eta", false);
  const ModeLayout layout({"a1", "b1"});
  PureState photon = basis_state(layout, OccupationVector({1, 0}));
  // Splitting on transmission alpha2 sends a1 -> alpha a1 + beta b1.
  photon = apply_beam_splitter(photon, BeamSplitterSetting{"a1", "b1", alpha2});

  MixedState state = MixedState::from_pure(std::move(photon));
  state = loss_channel(state, "a1", eta);
  state = loss_channel(state, "b1", eta);
  return state;
}

double concentration_t2(double alpha2, double t1) {
  if (!(alpha2 > 0.0 && alpha2 < 1.0)) {
    throw std::domain_error("concentration requires alpha2 in (0, 1)");
  }
  if (!(t1 >= 0.0 && t1 < 1.0)) {
    throw std::domain_error("concentration requires t1 in [0, 1)");
  }
  const double beta2 = 1.0 - alpha2;
  return beta2 * t1 / (alpha2 * (1.0 - t1) + beta2 * t1);
}

double analytic_success_probability(const ProtocolParams& params) {
  params.validate();
  const double beta2 = 1.0 - params.alpha2;
  return params.eta * (params.alpha2 * params.t2 + beta2 * params.t1) + params.t1 * params.t2 -
         2.0 * params.eta * params.t1 * params.t2;
}

double analytic_eta_prime(const ProtocolParams& params) {
  params.validate();
  const double probability = analytic_success_probability(params);
  if (probability == 0.0) throw std::domain_error("eta_prime is undefined at P = 0");
  const double beta2 = 1.0 - params.alpha2;
  const double kept =
      params.eta * (params.alpha2 * params.t2 + beta2 * params.t1 - params.t1 * params.t2);
  return kept / probability;
}

double analytic_g(const ProtocolParams& params) {
  if (params.eta == 0.0) throw std::domain_error("gain is undefined at eta = 0");
  return analytic_eta_prime(params) / params.eta;
}

double g_limit(double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) throw std::domain_error("gain limit requires eta in (0, 1]");
  return 1.0 / eta;
}

AmplificationBoundary amplification_boundary(double alpha2) {
  const double t1_star = 2.0 * alpha2 / (1.0 + 2.0 * alpha2);
  return {t1_star, concentration_t2(alpha2, t1_star)};
}

ProtocolOutcome run_protocol(const ProtocolParams& params) {
  params.validate();

  // Single-photon ancilla split on a variable splitter: sqrt(t)|1,0> + sqrt(1-t)|0,1>.
  const auto split_ancilla = [](const std::string& top, const std::string& bottom, double t) {
    const ModeLayout pair({top, bottom});
    PureState one = basis_state(pair, OccupationVector({1, 0}));
    return apply_beam_splitter(one, BeamSplitterSetting{top, bottom, t});
  };

  MixedState state = build_input_state(params.eta, params.alpha2);
  state = tensor_product(state, split_ancilla("d1", "d2", params.t1));
  state = tensor_product(state, split_ancilla("c1", "c2", params.t2));

  // Balanced detection splitters, then detector-facing names: D1/D2 watch the
  // a1/d1 outputs (f1, f2) and D3/D4 watch the b1/c1 outputs (e1, e2).
  state = apply_beam_splitter(state, BeamSplitterSetting{"a1", "d1", 0.5});
  state = apply_beam_splitter(state, BeamSplitterSetting{"b1", "c1", 0.5});
  state = rename_mode(state, "a1", "f1");
  state = rename_mode(state, "d1", "f2");
  state = rename_mode(state, "b1", "e1");
  state = rename_mode(state, "c1", "e2");

  struct AcceptedPattern {
    const char* name;
    DetectionPattern pattern;
    bool flip_c2;  // sign correction restoring the D1D3 reference state
  };
  const std::vector<AcceptedPattern> accepted = {
      {"D1D3", {{"f1", 1}, {"f2", 0}, {"e1", 1}, {"e2", 0}}, false},
      {"D1D4", {{"f1", 1}, {"f2", 0}, {"e1", 0}, {"e2", 1}}, true},
      {"D2D3", {{"f1", 0}, {"f2", 1}, {"e1", 1}, {"e2", 0}}, true},
      {"D2D4", {{"f1", 0}, {"f2", 1}, {"e1", 0}, {"e2", 1}}, false},
  };

  ProtocolOutcome outcome;
  std::vector<WeightedBranch> pooled;
  for (const auto& entry : accepted) {
    PostselectResult result = postselect(state, entry.pattern);
    outcome.pattern_probabilities[entry.name] = result.probability;
    outcome.success_probability += result.probability;
    if (result.conditional.is_empty()) continue;
    MixedState conditional =
        entry.flip_c2 ? phase_flip(result.conditional, "c2") : std::move(result.conditional);
    for (const auto& branch : conditional.branches()) {
      pooled.push_back({result.probability * branch.weight, branch.state});
    }
  }

  const ModeLayout output_layout({"d2", "c2"});
  if (pooled.empty()) {
    outcome.heralded_state = MixedState::empty(output_layout);
    outcome.gain = params.eta == 0.0 ? std::numeric_limits<double>::quiet_NaN() : 0.0;
    return outcome;
  }
  for (auto& branch : pooled) branch.weight /= outcome.success_probability;
  outcome.heralded_state = MixedState(output_layout, std::move(pooled));

  // Single-photon weight and, conditioned on that sector, the overlap with
  // the balanced superposition.
  const PureState maximal = [&] {
    PureState::AmplitudeMap amps;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    amps.emplace(OccupationVector({1, 0}), Complex(inv_sqrt2, 0.0));
    amps.emplace(OccupationVector({0, 1}), Complex(inv_sqrt2, 0.0));
    return PureState(output_layout, std::move(amps));
  }();

  double single_photon_weight = 0.0;
  double overlap_mass = 0.0;
  for (const auto& branch : outcome.heralded_state.branches()) {
    bool single = true;
    for (const auto& [occ, amp] : branch.state.amplitudes()) {
      if (occ.total() != 1) {
        single = false;
        break;
      }
    }
    if (!single) continue;
    single_photon_weight += branch.weight;
    overlap_mass += branch.weight * std::norm(inner_product(maximal, branch.state));
  }

  outcome.eta_prime = single_photon_weight;
  outcome.gain = params.eta == 0.0 ? std::numeric_limits<double>::quiet_NaN()
                                   : outcome.eta_prime / params.eta;
  outcome.fidelity = single_photon_weight == 0.0 ? 0.0 : overlap_mass / single_photon_weight;
  return outcome;
}

double fidelity_to_maximal(const MixedState& state) {
  if (state.layout().size() != 2) {
    throw std::invalid_argument("fidelity target is defined for two-mode states");
  }
  if (state.is_empty()) return 0.0;
  PureState::AmplitudeMap amps;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  amps.emplace(OccupationVector({1, 0}), Complex(inv_sqrt2, 0.0));
  amps.emplace(OccupationVector({0, 1}), Complex(inv_sqrt2, 0.0));
  const PureState maximal(state.layout(), std::move(amps));

  double fidelity = 0.0;
  for (const auto& branch : state.branches()) {
    fidelity += branch.weight * std::norm(inner_product(maximal, branch.state));
  }
  return fidelity;
}

}  // namespace speamp
