// Heralded amplification and concentration of single-photon path
// entanglement with two tunable beam splitters.
//
// The input is a single photon shared coherently between modes a1 and b1,
//   alpha |1,0> + beta |0,1>,
// degraded by transmission loss to a mixture that carries the photon with
// probability eta and vacuum otherwise. Two single-photon ancillas are split
// on beam splitters of transmission t1 (modes d1/d2) and t2 (modes c1/c2);
// a1 interferes with d1 and b1 with c1 on balanced splitters feeding four
// detectors: D1/D2 watch f1/f2 (the a1/d1 outputs) and D3/D4 watch e1/e2
// (the b1/c1 outputs). Keeping runs where exactly one detector fires on each
// side leaves a heralded state on d2/c2 whose single-photon weight eta' can
// exceed eta, and choosing t2 = concentration_t2(alpha2, t1) simultaneously
// reshapes the surviving photon into the balanced superposition
// (|1,0> + |0,1>)/sqrt(2).

#pragma once

#include <map>
#include <string>

#include "speamp/fock.hpp"

namespace speamp {

struct ProtocolParams {
  double eta = 1.0;     // input single-photon weight, in [0, 1]
  double alpha2 = 0.5;  // |alpha|^2 of the input superposition, in [0, 1]
  double t1 = 0.5;      // transmission of the d-arm ancilla splitter, in (0, 1)
  double t2 = 0.5;      // transmission of the c-arm ancilla splitter, in (0, 1)

  // Throws std::invalid_argument naming the offending parameter.
  void validate() const;
};

struct ProtocolOutcome {
  double success_probability = 0.0;  // chance any accepted pattern fires
  double eta_prime = 0.0;            // single-photon weight of the heralded state
  double gain = 0.0;                 // eta_prime / eta; NaN when eta == 0
  double fidelity = 0.0;             // single-photon sector vs (|1,0>+|0,1>)/sqrt(2)
  MixedState heralded_state;         // on modes (d2, c2), averaged over patterns
  std::map<std::string, double> pattern_probabilities;  // keys D1D3, D1D4, D2D3, D2D4
};

// Mixture {eta: alpha|1,0> + beta|0,1>, 1-eta: |0,0>} on modes (a1, b1),
// with beta = sqrt(1 - alpha2).
MixedState build_input_state(double eta, double alpha2);

// Same state prepared operationally: one photon split on a beam splitter of
// transmission alpha2, then independent loss of survival eta on each arm.
// Agrees with build_input_state branch for branch.
MixedState build_input_via_lossy_channels(double alpha2, double eta);

// Transmission t2 that balances the heralded single-photon superposition for
// a given input weight alpha2 and chosen t1:
//   t2 = beta2 t1 / (alpha2 (1 - t1) + beta2 t1).
// Throws std::domain_error unless alpha2 lies in (0, 1) and t1 in [0, 1).
double concentration_t2(double alpha2, double t1);

// Closed forms for the heralded statistics. eta = 0 is legal for P and
// eta_prime (curve endpoints); the gain is undefined there.
double analytic_success_probability(const ProtocolParams& params);
double analytic_eta_prime(const ProtocolParams& params);
// eta_prime / eta; throws std::domain_error when eta == 0.
double analytic_g(const ProtocolParams& params);
// Limit of the gain along the concentration curve as t1 -> 0+, equal to
// 1 / eta. Throws std::domain_error when eta == 0.
double g_limit(double eta);

// Largest splitter settings (on the concentration curve) that still amplify:
// gain > 1 exactly when t1 < t1_star, independently of eta < 1.
struct AmplificationBoundary {
  double t1_star = 0.0;
  double t2_star = 0.0;
};
AmplificationBoundary amplification_boundary(double alpha2);

// Simulates the full circuit and post-selection. The heralded state averages
// the four accepted patterns after the conditional sign correction (a phase
// flip on c2 for D1D4 and D2D3), which makes all four agree exactly.
ProtocolOutcome run_protocol(const ProtocolParams& params);

// Ensemble fidelity of a two-mode state against (|1,0> + |0,1>)/sqrt(2).
// Throws std::invalid_argument unless the state has exactly two modes.
double fidelity_to_maximal(const MixedState& state);

}  // namespace speamp
