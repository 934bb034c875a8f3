#include "speamp/optics.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace speamp {

void BeamSplitterSetting::validate() const {
  if (mode_a == mode_b) throw std::invalid_argument("beam splitter needs two distinct modes");
  if (!(transmission >= 0.0 && transmission <= 1.0)) {
    throw std::invalid_argument("beam splitter transmission must lie in [0, 1]");
  }
}

namespace {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double result = 1.0;
  for (int i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

double factorial(int n) {
  double result = 1.0;
  for (int i = 2; i <= n; ++i) result *= i;
  return result;
}

// Amplitude <p, q| BS |m, n> for the convention above, with m+n = p+q.
// Expand (√t a† + √(1-t) b†)^m (√(1-t) a† - √t b†)^n on vacuum and collect
// the a†^p b†^q coefficient, including the √(p! q! / (m! n!)) normalization.
double two_mode_kernel(int m, int n, int p, double rt, double rr) {
  const int q = m + n - p;
  double sum = 0.0;
  for (int i = std::max(0, p - n); i <= std::min(m, p); ++i) {
    // i photons from the first factor go to mode a, p-i from the second.
    double term = binomial(m, i) * binomial(n, p - i);
    term *= std::pow(rt, i) * std::pow(rr, m - i);          // first factor
    term *= std::pow(rr, p - i) * std::pow(-rt, n - p + i); // second factor
    sum += term;
  }
  return sum * std::sqrt(factorial(p) * factorial(q) / (factorial(m) * factorial(n)));
}

}  // namespace

PureState apply_beam_splitter(const PureState& state, const BeamSplitterSetting& setting) {
  setting.validate();
  const std::size_t ia = state.layout().index_of(setting.mode_a);
  const std::size_t ib = state.layout().index_of(setting.mode_b);
  const double rt = std::sqrt(setting.transmission);
  const double rr = std::sqrt(1.0 - setting.transmission);

  PureState::AmplitudeMap out;
  for (const auto& [occ, amp] : state.amplitudes()) {
    const int m = occ[ia];
    const int n = occ[ib];
    const int photons = m + n;
    for (int p = 0; p <= photons; ++p) {
      double kernel = two_mode_kernel(m, n, p, rt, rr);
      if (kernel == 0.0) continue;
      OccupationVector target = occ.with_count(ia, p).with_count(ib, photons - p);
      out[target] += amp * kernel;
    }
  }
  return PureState(state.layout(), std::move(out), state.photon_cap());
}

MixedState apply_beam_splitter(const MixedState& state, const BeamSplitterSetting& setting) {
  std::vector<WeightedBranch> branches;
  branches.reserve(state.branches().size());
  for (const auto& branch : state.branches()) {
    branches.push_back({branch.weight, apply_beam_splitter(branch.state, setting)});
  }
  return MixedState(state.layout(), std::move(branches));
}

MixedState loss_channel(const MixedState& state, const std::string& mode, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("loss survival probability must lie in [0, 1]");
  }
  // Pick an environment name that cannot collide with user modes.
  std::string env = "_loss_env";
  while (state.layout().contains(env)) env += "_";

  const PureState vacuum = basis_state(ModeLayout({env}), OccupationVector({0}));
  MixedState dilated = tensor_product(state, vacuum);
  dilated = apply_beam_splitter(dilated, BeamSplitterSetting{mode, env, eta});
  return trace_out_mode(dilated, env);
}

PureState phase_flip(const PureState& state, const std::string& mode) {
  const std::size_t index = state.layout().index_of(mode);
  PureState::AmplitudeMap out;
  for (const auto& [occ, amp] : state.amplitudes()) {
    out.emplace(occ, (occ[index] % 2 == 0) ? amp : -amp);
  }
  return PureState(state.layout(), std::move(out), state.photon_cap());
}

MixedState phase_flip(const MixedState& state, const std::string& mode) {
  std::vector<WeightedBranch> branches;
  branches.reserve(state.branches().size());
  for (const auto& branch : state.branches()) {
    branches.push_back({branch.weight, phase_flip(branch.state, mode)});
  }
  return MixedState(state.layout(), std::move(branches));
}

}  // namespace speamp
