// Sparse bosonic Fock-space states over named optical modes.
//
// States are immutable values: every operation returns a new state, so the
// whole library is safe to evaluate in parallel across independent inputs.
// Mixed states are stored as weighted ensembles of normalized pure states,
// which is exact for everything produced here (loss and detection branch in
// the photon-number basis and keep the rank low).

#pragma once

#include <compare>
#include <complex>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace speamp {

using Complex = std::complex<double>;

// Numeric policy shared across the library.
inline constexpr int kDefaultPhotonCap = 4;
inline constexpr double kAmplitudePrune = 1e-15;  // stored-amplitude floor
inline constexpr double kWeightPrune = 1e-15;     // ensemble-branch-weight floor
inline constexpr double kEnsembleTol = 1e-12;     // weight-sum / ray-equality tolerance

// Ordered list of unique mode names. Mode identity is by name everywhere;
// indices are positions in the declared order.
class ModeLayout {
 public:
  ModeLayout() = default;
  explicit ModeLayout(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t index) const { return names_.at(index); }

  bool contains(const std::string& name) const;
  // Throws std::out_of_range for an unknown name.
  std::size_t index_of(const std::string& name) const;

  ModeLayout without(const std::string& name) const;
  ModeLayout renamed(const std::string& from, const std::string& to) const;
  // Throws std::invalid_argument if the two layouts share a mode name.
  static ModeLayout concat(const ModeLayout& a, const ModeLayout& b);

  bool operator==(const ModeLayout&) const = default;

 private:
  std::vector<std::string> names_;
};

// Photon counts per mode, ordered like the owning layout.
class OccupationVector {
 public:
  OccupationVector() = default;
  explicit OccupationVector(std::vector<int> counts);

  std::size_t size() const { return counts_.size(); }
  int operator[](std::size_t index) const { return counts_.at(index); }
  const std::vector<int>& counts() const { return counts_; }
  int total() const;

  OccupationVector with_count(std::size_t index, int count) const;
  OccupationVector without_index(std::size_t index) const;
  static OccupationVector concat(const OccupationVector& a, const OccupationVector& b);

  auto operator<=>(const OccupationVector&) const = default;

 private:
  std::vector<int> counts_;
};

// Sparse ket: map from occupation vectors to complex amplitudes. Amplitudes
// below kAmplitudePrune are dropped at construction; every stored occupation
// must fit the layout and respect the photon cap.
class PureState {
 public:
  using AmplitudeMap = std::map<OccupationVector, Complex>;

  PureState(ModeLayout layout, AmplitudeMap amplitudes, int photon_cap = kDefaultPhotonCap);

  const ModeLayout& layout() const { return layout_; }
  const AmplitudeMap& amplitudes() const { return amplitudes_; }
  int photon_cap() const { return photon_cap_; }
  std::size_t term_count() const { return amplitudes_.size(); }

  Complex amplitude(const OccupationVector& occupation) const;
  double norm_sq() const;
  double norm() const;

  // Throws std::domain_error on a zero state.
  PureState normalized() const;
  PureState scaled(Complex factor) const;
  // Multiplies by a unit phase so the first (lowest occupation) nonzero
  // amplitude is real positive; fixes the global-phase gauge for comparisons.
  PureState with_canonical_phase() const;

 private:
  ModeLayout layout_;
  AmplitudeMap amplitudes_;
  int photon_cap_ = kDefaultPhotonCap;
};

// Unit-amplitude basis ket |occupation>.
PureState basis_state(const ModeLayout& layout, const OccupationVector& occupation,
                      int photon_cap = kDefaultPhotonCap);

// <a|b>, conjugate-linear in the first argument. Throws on layout mismatch.
Complex inner_product(const PureState& a, const PureState& b);

// |a> ⊗ |b>. Mode names must be disjoint; the cap of the product is the
// larger of the two caps and the combined totals must respect it.
PureState tensor_product(const PureState& a, const PureState& b);

PureState rename_mode(const PureState& state, const std::string& from, const std::string& to);

struct WeightedBranch {
  double weight = 0.0;
  PureState state;
};

// Weighted ensemble of normalized pure states. Construction normalizes each
// branch, fixes canonical phases, merges branches that are the same ray,
// drops weights below kWeightPrune and checks the weights sum to 1 within
// kEnsembleTol. An empty branch list is the zero-probability sentinel
// returned by impossible post-selections.
class MixedState {
 public:
  MixedState() = default;  // empty ensemble over zero modes
  MixedState(ModeLayout layout, std::vector<WeightedBranch> branches);

  static MixedState from_pure(PureState state);
  static MixedState empty(ModeLayout layout);

  bool is_empty() const { return branches_.empty(); }
  const ModeLayout& layout() const { return layout_; }
  const std::vector<WeightedBranch>& branches() const { return branches_; }
  double total_weight() const;

 private:
  ModeLayout layout_;
  std::vector<WeightedBranch> branches_;
};

// Exact partial trace over one mode in the number basis: each branch splits
// into sub-branches keyed by the traced mode's photon count, weighted by the
// squared norm of the matching component. Total weight is preserved.
MixedState trace_out_mode(const MixedState& state, const std::string& mode);

MixedState tensor_product(const MixedState& state, const PureState& ancilla);
MixedState rename_mode(const MixedState& state, const std::string& from, const std::string& to);

// Largest discrepancy between two ensembles seen as matched branch lists:
// max over branches of (1 - |<a|b>|) and |w_a - w_b|, after greedy pairing
// by overlap. Returns 1 when the branch counts differ. Diagnostic metric for
// branch-for-branch equality tests.
double ensemble_distance(const MixedState& a, const MixedState& b);

// Debug rendering, e.g. "(0.7071+0i)|1,0> + (0.7071+0i)|0,1>  [a1,b1]".
std::string to_string(const PureState& state);
std::string to_string(const MixedState& state);

}  // namespace speamp
