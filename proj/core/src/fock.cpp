#include "speamp/fock.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace speamp {

ModeLayout::ModeLayout(std::vector<std::string> names) : names_(std::move(names)) {
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw std::invalid_argument("mode name must be non-empty");
    if (!seen.insert(n).second) throw std::invalid_argument("duplicate mode name: " + n);
  }
}

bool ModeLayout::contains(const std::string& name) const {
  return std::find(names_.begin(), names_.end(), name) != names_.end();
}

std::size_t ModeLayout::index_of(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw std::out_of_range("unknown mode: " + name);
  return static_cast<std::size_t>(it - names_.begin());
}

ModeLayout ModeLayout::without(const std::string& name) const {
  std::size_t drop = index_of(name);
  std::vector<std::string> rest;
  rest.reserve(names_.size() - 1);
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (i != drop) rest.push_back(names_[i]);
  }
  return ModeLayout(std::move(rest));
}

ModeLayout ModeLayout::renamed(const std::string& from, const std::string& to) const {
  std::size_t at = index_of(from);
  if (from != to && contains(to)) throw std::invalid_argument("mode name already in use: " + to);
  std::vector<std::string> names = names_;
  names[at] = to;
  return ModeLayout(std::move(names));
}

ModeLayout ModeLayout::concat(const ModeLayout& a, const ModeLayout& b) {
  std::vector<std::string> names = a.names_;
  names.insert(names.end(), b.names_.begin(), b.names_.end());
  return ModeLayout(std::move(names));  // ctor rejects duplicates
}

OccupationVector::OccupationVector(std::vector<int> counts) : counts_(std::move(counts)) {
  for (int c : counts_) {
    if (c < 0) throw std::invalid_argument("photon count must be non-negative");
  }
}

int OccupationVector::total() const {
  int sum = 0;
  for (int c : counts_) sum += c;
  return sum;
}

OccupationVector OccupationVector::with_count(std::size_t index, int count) const {
  std::vector<int> counts = counts_;
  counts.at(index) = count;
  return OccupationVector(std::move(counts));
}

OccupationVector OccupationVector::without_index(std::size_t index) const {
  if (index >= counts_.size()) throw std::out_of_range("occupation index out of range");
  std::vector<int> counts;
  counts.reserve(counts_.size() - 1);
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (i != index) counts.push_back(counts_[i]);
  }
  return OccupationVector(std::move(counts));
}

OccupationVector OccupationVector::concat(const OccupationVector& a, const OccupationVector& b) {
  std::vector<int> counts = a.counts_;
  counts.insert(counts.end(), b.counts_.begin(), b.counts_.end());
  return OccupationVector(std::move(counts));
}

PureState::PureState(ModeLayout layout, AmplitudeMap amplitudes, int photon_cap)
    : layout_(std::move(layout)), photon_cap_(photon_cap) {
  if (photon_cap_ < 0) throw std::invalid_argument("photon cap must be non-negative");
  for (auto& [occ, amp] : amplitudes) {
    if (occ.size() != layout_.size()) {
      throw std::invalid_argument("occupation length does not match mode count");
    }
    if (occ.total() > photon_cap_) {
      throw std::out_of_range("occupation exceeds photon cap " + std::to_string(photon_cap_));
    }
    if (std::abs(amp) >= kAmplitudePrune) amplitudes_.emplace(occ, amp);
  }
}

Complex PureState::amplitude(const OccupationVector& occupation) const {
  auto it = amplitudes_.find(occupation);
  return it == amplitudes_.end() ? Complex(0.0, 0.0) : it->second;
}

double PureState::norm_sq() const {
  double sum = 0.0;
  for (const auto& [occ, amp] : amplitudes_) sum += std::norm(amp);
  return sum;
}

double PureState::norm() const { return std::sqrt(norm_sq()); }

PureState PureState::normalized() const {
  double n = norm();
  if (n == 0.0) throw std::domain_error("cannot normalize a zero state");
  return scaled(Complex(1.0 / n, 0.0));
}

PureState PureState::scaled(Complex factor) const {
  AmplitudeMap amps;
  for (const auto& [occ, amp] : amplitudes_) amps.emplace(occ, amp * factor);
  return PureState(layout_, std::move(amps), photon_cap_);
}

PureState PureState::with_canonical_phase() const {
  for (const auto& [occ, amp] : amplitudes_) {
    double mag = std::abs(amp);
    if (mag >= kAmplitudePrune) return scaled(std::conj(amp) / mag);  // amp -> |amp|
  }
  return *this;
}

PureState basis_state(const ModeLayout& layout, const OccupationVector& occupation,
                      int photon_cap) {
  PureState::AmplitudeMap amps;
  amps.emplace(occupation, Complex(1.0, 0.0));
  return PureState(layout, std::move(amps), photon_cap);
}

Complex inner_product(const PureState& a, const PureState& b) {
  if (a.layout() != b.layout()) throw std::invalid_argument("inner product across different layouts");
  // Iterate the sparser operand and look up in the other.
  const PureState& outer = a.term_count() <= b.term_count() ? a : b;
  Complex sum(0.0, 0.0);
  for (const auto& [occ, amp] : outer.amplitudes()) {
    const Complex other = (&outer == &a) ? b.amplitude(occ) : a.amplitude(occ);
    if (other == Complex(0.0, 0.0)) continue;
    sum += (&outer == &a) ? std::conj(amp) * other : std::conj(other) * amp;
  }
  return sum;
}

PureState tensor_product(const PureState& a, const PureState& b) {
  ModeLayout layout = ModeLayout::concat(a.layout(), b.layout());
  int cap = std::max(a.photon_cap(), b.photon_cap());
  PureState::AmplitudeMap amps;
  for (const auto& [occ_a, amp_a] : a.amplitudes()) {
    for (const auto& [occ_b, amp_b] : b.amplitudes()) {
      amps.emplace(OccupationVector::concat(occ_a, occ_b), amp_a * amp_b);
    }
  }
  return PureState(std::move(layout), std::move(amps), cap);
}

PureState rename_mode(const PureState& state, const std::string& from, const std::string& to) {
  // Amplitudes are keyed by position, so only the layout changes.
  return PureState(state.layout().renamed(from, to), state.amplitudes(), state.photon_cap());
}

namespace {

// True when |a> and |b> are the same ray: both unit-norm with canonical
// phase, so equality means Re<a|b> ~ 1.
bool same_ray(const PureState& a, const PureState& b) {
  if (a.term_count() != b.term_count()) return false;
  return inner_product(a, b).real() > 1.0 - kEnsembleTol;
}

bool state_less(const PureState& a, const PureState& b) {
  // Deterministic tie-break for equal weights: lexicographic on the sparse
  // amplitude support (occupations, then amplitude components).
  auto it_a = a.amplitudes().begin();
  auto it_b = b.amplitudes().begin();
  for (; it_a != a.amplitudes().end() && it_b != b.amplitudes().end(); ++it_a, ++it_b) {
    if (it_a->first != it_b->first) return it_a->first < it_b->first;
    if (it_a->second.real() != it_b->second.real()) return it_a->second.real() < it_b->second.real();
    if (it_a->second.imag() != it_b->second.imag()) return it_a->second.imag() < it_b->second.imag();
  }
  return a.term_count() < b.term_count();
}

}  // namespace

MixedState::MixedState(ModeLayout layout, std::vector<WeightedBranch> branches)
    : layout_(std::move(layout)) {
  // Canonicalize each branch, preserving weight * norm^2 when the stored ket
  // is unnormalized (a branch {w, k} means the ensemble member w*|k|^2 · k/|k|).
  std::vector<WeightedBranch> kept;
  for (auto& branch : branches) {
    if (branch.weight < 0.0) throw std::invalid_argument("branch weight must be non-negative");
    if (branch.state.layout() != layout_) {
      throw std::invalid_argument("branch layout does not match ensemble layout");
    }
    double nsq = branch.state.norm_sq();
    double weight = branch.weight * nsq;
    if (weight < kWeightPrune) continue;
    kept.push_back({weight, branch.state.normalized().with_canonical_phase()});
  }

  // Merge branches that are the same ray (identical physical state).
  std::vector<WeightedBranch> merged;
  for (auto& branch : kept) {
    bool absorbed = false;
    for (auto& existing : merged) {
      if (same_ray(existing.state, branch.state)) {
        existing.weight += branch.weight;
        absorbed = true;
        break;
      }
    }
    if (!absorbed) merged.push_back(std::move(branch));
  }

  if (merged.empty()) return;  // zero-probability sentinel

  double total = 0.0;
  for (const auto& branch : merged) total += branch.weight;
  if (std::abs(total - 1.0) > kEnsembleTol) {
    throw std::invalid_argument("ensemble weights sum to " + std::to_string(total) +
                                ", expected 1 within tolerance");
  }
  for (auto& branch : merged) branch.weight /= total;  // exact unit total

  std::sort(merged.begin(), merged.end(), [](const WeightedBranch& a, const WeightedBranch& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return state_less(a.state, b.state);
  });
  branches_ = std::move(merged);
}

MixedState MixedState::from_pure(PureState state) {
  ModeLayout layout = state.layout();
  std::vector<WeightedBranch> branches;
  branches.push_back({1.0, std::move(state)});
  return MixedState(std::move(layout), std::move(branches));
}

MixedState MixedState::empty(ModeLayout layout) {
  return MixedState(std::move(layout), {});
}

double MixedState::total_weight() const {
  double sum = 0.0;
  for (const auto& branch : branches_) sum += branch.weight;
  return sum;
}

MixedState trace_out_mode(const MixedState& state, const std::string& mode) {
  std::size_t drop = state.layout().index_of(mode);
  ModeLayout reduced = state.layout().without(mode);

  std::vector<WeightedBranch> branches;
  for (const auto& branch : state.branches()) {
    // Split the branch by the traced mode's photon count; each group is an
    // (unnormalized) conditional ket whose squared norm carries the weight.
    std::map<int, PureState::AmplitudeMap> groups;
    for (const auto& [occ, amp] : branch.state.amplitudes()) {
      groups[occ[drop]].emplace(occ.without_index(drop), amp);
    }
    for (auto& [count, amps] : groups) {
      PureState component(reduced, std::move(amps), branch.state.photon_cap());
      branches.push_back({branch.weight, std::move(component)});  // ctor folds in norm^2
    }
  }
  return MixedState(std::move(reduced), std::move(branches));
}

MixedState tensor_product(const MixedState& state, const PureState& ancilla) {
  ModeLayout layout = ModeLayout::concat(state.layout(), ancilla.layout());
  std::vector<WeightedBranch> branches;
  branches.reserve(state.branches().size());
  for (const auto& branch : state.branches()) {
    branches.push_back({branch.weight, tensor_product(branch.state, ancilla)});
  }
  return MixedState(std::move(layout), std::move(branches));
}

MixedState rename_mode(const MixedState& state, const std::string& from, const std::string& to) {
  ModeLayout layout = state.layout().renamed(from, to);
  std::vector<WeightedBranch> branches;
  branches.reserve(state.branches().size());
  for (const auto& branch : state.branches()) {
    branches.push_back({branch.weight, rename_mode(branch.state, from, to)});
  }
  return MixedState(std::move(layout), std::move(branches));
}

double ensemble_distance(const MixedState& a, const MixedState& b) {
  if (a.branches().size() != b.branches().size()) return 1.0;
  std::vector<bool> used(b.branches().size(), false);
  double worst = 0.0;
  for (const auto& branch_a : a.branches()) {
    // Greedy pairing: best-overlap unused branch of b.
    double best_overlap = -1.0;
    std::size_t best = 0;
    for (std::size_t j = 0; j < b.branches().size(); ++j) {
      if (used[j]) continue;
      double overlap = std::abs(inner_product(branch_a.state, b.branches()[j].state));
      if (overlap > best_overlap) {
        best_overlap = overlap;
        best = j;
      }
    }
    used[best] = true;
    worst = std::max(worst, 1.0 - best_overlap);
    worst = std::max(worst, std::abs(branch_a.weight - b.branches()[best].weight));
  }
  return worst;
}

namespace {

void append_double(std::ostringstream& out, double value) {
  std::ostringstream tmp;
  tmp.precision(6);
  tmp << value;
  out << tmp.str();
}

void append_complex(std::ostringstream& out, Complex value) {
  out << '(';
  append_double(out, value.real());
  if (value.imag() >= 0.0) out << '+';
  append_double(out, value.imag());
  out << "i)";
}

}  // namespace

std::string to_string(const PureState& state) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [occ, amp] : state.amplitudes()) {
    if (!first) out << " + ";
    first = false;
    append_complex(out, amp);
    out << '|';
    for (std::size_t i = 0; i < occ.size(); ++i) {
      if (i > 0) out << ',';
      out << occ[i];
    }
    out << '>';
  }
  if (first) out << "0";
  out << "  [";
  for (std::size_t i = 0; i < state.layout().size(); ++i) {
    if (i > 0) out << ',';
    out << state.layout().name(i);
  }
  out << ']';
  return out.str();
}

std::string to_string(const MixedState& state) {
  std::ostringstream out;
  if (state.is_empty()) return "{empty ensemble}";
  bool first = true;
  for (const auto& branch : state.branches()) {
    if (!first) out << "\n";
    first = false;
    append_double(out, branch.weight);
    out << " :: " << to_string(branch.state);
  }
  return out.str();
}

}  // namespace speamp
