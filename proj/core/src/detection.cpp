#include "speamp/detection.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <utility>

namespace speamp {

namespace {

// Uniform double in [0, 1) from the top 53 bits; bit-for-bit reproducible
// across platforms, unlike std::uniform_real_distribution.
double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<std::size_t> mode_indices(const MixedState& state,
                                      const std::vector<std::string>& modes) {
  std::vector<std::size_t> indices;
  indices.reserve(modes.size());
  for (const auto& mode : modes) indices.push_back(state.layout().index_of(mode));
  return indices;
}

}  // namespace

std::vector<OutcomeProbability> detection_distribution(const MixedState& state,
                                                       const std::vector<std::string>& modes) {
  const std::vector<std::size_t> indices = mode_indices(state, modes);

  std::map<std::vector<int>, double> mass;
  for (const auto& branch : state.branches()) {
    for (const auto& [occ, amp] : branch.state.amplitudes()) {
      std::vector<int> key;
      key.reserve(indices.size());
      for (std::size_t i : indices) key.push_back(occ[i]);
      mass[std::move(key)] += branch.weight * std::norm(amp);
    }
  }

  std::vector<OutcomeProbability> outcomes;
  outcomes.reserve(mass.size());
  for (const auto& [key, prob] : mass) {
    if (prob < kWeightPrune) continue;
    DetectionPattern pattern;
    for (std::size_t i = 0; i < modes.size(); ++i) pattern[modes[i]] = key[i];
    outcomes.push_back({std::move(pattern), prob});
  }
  std::sort(outcomes.begin(), outcomes.end(),
            [](const OutcomeProbability& a, const OutcomeProbability& b) {
              if (a.probability != b.probability) return a.probability > b.probability;
              return a.pattern < b.pattern;
            });
  return outcomes;
}

PostselectResult postselect(const MixedState& state, const DetectionPattern& pattern) {
  std::vector<std::string> modes;
  std::vector<int> expected;
  std::vector<std::size_t> indices;
  modes.reserve(pattern.size());
  for (const auto& [mode, count] : pattern) {
    if (count < 0) throw std::invalid_argument("detector count must be non-negative");
    modes.push_back(mode);
    expected.push_back(count);
    indices.push_back(state.layout().index_of(mode));
  }

  // Keep only amplitudes matching the pattern, then drop the measured modes.
  ModeLayout reduced = state.layout();
  for (const auto& mode : modes) reduced = reduced.without(mode);

  double probability = 0.0;
  std::vector<WeightedBranch> branches;
  for (const auto& branch : state.branches()) {
    PureState::AmplitudeMap amps;
    for (const auto& [occ, amp] : branch.state.amplitudes()) {
      bool match = true;
      for (std::size_t k = 0; k < indices.size(); ++k) {
        if (occ[indices[k]] != expected[k]) {
          match = false;
          break;
        }
      }
      if (!match) continue;
      // Remove measured positions (descending index order keeps the rest stable).
      std::vector<std::size_t> sorted = indices;
      std::sort(sorted.begin(), sorted.end(), std::greater<>());
      OccupationVector rest = occ;
      for (std::size_t index : sorted) rest = rest.without_index(index);
      amps.emplace(std::move(rest), amp);
    }
    if (amps.empty()) continue;
    PureState component(reduced, std::move(amps), branch.state.photon_cap());
    probability += branch.weight * component.norm_sq();
    branches.push_back({branch.weight, std::move(component)});
  }

  if (probability < kWeightPrune) return {0.0, MixedState::empty(std::move(reduced))};

  // Renormalize branch weights by the herald probability.
  for (auto& branch : branches) branch.weight /= probability;
  return {probability, MixedState(std::move(reduced), std::move(branches))};
}

std::map<DetectionPattern, std::uint64_t> sample_detection(const MixedState& state,
                                                           const std::vector<std::string>& modes,
                                                           std::uint64_t shots,
                                                           std::uint64_t seed) {
  if (shots == 0) throw std::invalid_argument("shots must be at least 1");
  // One distribution pass, then categorical draws; identical seeds give
  // identical counts by construction.
  const std::vector<OutcomeProbability> outcomes = detection_distribution(state, modes);
  if (outcomes.empty()) throw std::domain_error("cannot sample from an empty distribution");
  std::mt19937_64 rng(seed);
  std::map<DetectionPattern, std::uint64_t> counts;
  for (std::uint64_t shot = 0; shot < shots; ++shot) {
    double u = uniform_unit(rng);
    const OutcomeProbability* chosen = &outcomes.back();
    for (const auto& outcome : outcomes) {
      u -= outcome.probability;
      if (u < 0.0) {
        chosen = &outcome;
        break;
      }
    }
    ++counts[chosen->pattern];
  }
  return counts;
}

}  // namespace speamp
