// Built-in verification battery: physics invariants of the optical elements
// plus closed-form cross-checks of the simulated protocol. Backs the `verify`
// command and is reusable from tests.

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "speamp/fock.hpp"
#include "speamp/optics.hpp"

namespace speamp {

struct CheckResult {
  std::string name;
  bool passed = false;
  double max_deviation = 0.0;  // worst deviation observed by the check
  double tolerance = 0.0;      // bound it was held to
  std::string detail;          // one-line context (worst point, sample sizes, ...)
};

// Replaceable splitter action for the element-level checks; lets tests prove
// the battery catches a broken implementation.
using BeamSplitterFn = std::function<PureState(const PureState&, const BeamSplitterSetting&)>;

struct VerifyOptions {
  int grid_density = 5;        // t1 samples per (eta, alpha2) cell of the grid check
  double tolerance = 1e-10;    // simulation-vs-closed-form bound
  std::uint64_t shots = 0;     // detection-sampling shots; 0 skips the sampling check
  std::uint64_t seed = 42;
  BeamSplitterFn beam_splitter;  // defaults to the library implementation
};

// Runs every check and reports one result each, in a fixed order:
//   hom_dip           two photons meeting on a balanced splitter never split
//   bs_involution     applying the same splitter twice is the identity
//   bs_unitarity      splitters preserve the norm up to the photon cap
//   loss_composition  loss eta1 then eta2 equals one loss of eta1*eta2
//   input_preparation lossy operational preparation matches the direct mixture
//   oracle_grid       simulated P, eta', gain vs closed forms across a grid
//   pattern_split     the four accepted patterns fire with equal probability
//   point_k           gain is exactly 1 at the amplification boundary
//   g_limit           gain approaches 1/eta as t1 -> 0 on the concentration curve
//   monte_carlo       sampled detection frequencies within 5 sigma (if shots > 0)
std::vector<CheckResult> run_verification(const VerifyOptions& options);

}  // namespace speamp
