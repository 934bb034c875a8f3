// Photon-number-resolving detection on a subset of modes: outcome
// distributions, post-selection (with the heralded conditional state), and
// seeded Monte Carlo sampling.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "speamp/fock.hpp"

namespace speamp {

// A detection event: photon count observed on each measured mode.
using DetectionPattern = std::map<std::string, int>;

struct OutcomeProbability {
  DetectionPattern pattern;
  double probability = 0.0;
};

// Full outcome distribution from measuring the given modes in the photon
// number basis. Outcomes with probability below kWeightPrune are dropped;
// the rest are sorted by descending probability, then pattern order.
std::vector<OutcomeProbability> detection_distribution(const MixedState& state,
                                                       const std::vector<std::string>& modes);

struct PostselectResult {
  double probability = 0.0;  // chance the pattern fires
  MixedState conditional;    // heralded state on the unmeasured modes; empty if probability ~ 0
};

// Projects onto the given detector pattern and traces out the measured
// modes. Throws std::out_of_range if a pattern mode is unknown.
PostselectResult postselect(const MixedState& state, const DetectionPattern& pattern);

// Draws `shots` detection events and returns counts per observed pattern.
// Deterministic for a given seed (uniform deviates come from the top 53 bits
// of a mt19937_64 stream, not from distribution adapters, so counts are
// identical across platforms). Throws std::invalid_argument when shots = 0.
std::map<DetectionPattern, std::uint64_t> sample_detection(const MixedState& state,
                                                           const std::vector<std::string>& modes,
                                                           std::uint64_t shots,
                                                           std::uint64_t seed);

}  // namespace speamp
