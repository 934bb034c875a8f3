// Passive linear-optical elements acting on Fock states: variable beam
// splitters, photon loss, and mode-local phase flips.

#pragma once

#include <string>

#include "speamp/fock.hpp"

namespace speamp {

// Lossless two-mode beam splitter with (intensity) transmission t. The mode
// transform is the real symmetric involution
//   a† -> √t a† + √(1-t) b†
//   b† -> √(1-t) a† - √t b†
// so applying the same splitter twice is the identity.
struct BeamSplitterSetting {
  std::string mode_a;
  std::string mode_b;
  double transmission = 0.5;

  // Throws std::invalid_argument unless modes differ and t ∈ [0, 1].
  void validate() const;
};

PureState apply_beam_splitter(const PureState& state, const BeamSplitterSetting& setting);
MixedState apply_beam_splitter(const MixedState& state, const BeamSplitterSetting& setting);

// Photon loss with survival probability eta on one mode, realized as a beam
// splitter of transmission eta into a fresh vacuum environment mode that is
// traced out immediately. Composing losses eta1 then eta2 equals one loss of
// eta1*eta2.
MixedState loss_channel(const MixedState& state, const std::string& mode, double eta);

// Multiplies each basis ket by (-1)^(photon count in the given mode).
PureState phase_flip(const PureState& state, const std::string& mode);
MixedState phase_flip(const MixedState& state, const std::string& mode);

}  // namespace speamp
