#include <benchmark/benchmark.h>

#include <speamp/fock.hpp>
#include <speamp/optics.hpp>
#include <speamp/protocol.hpp>
#include <speamp/report.hpp>

namespace {

using namespace speamp;

PureState multiphoton_probe() {
  const ModeLayout layout({"u", "v"});
  PureState::AmplitudeMap amps;
  amps[OccupationVector({1, 0})] = Complex(0.4, 0.1);
  amps[OccupationVector({1, 1})] = Complex(0.3, -0.2);
  amps[OccupationVector({2, 1})] = Complex(0.5, 0.0);
  amps[OccupationVector({2, 2})] = Complex(0.2, 0.4);
  amps[OccupationVector({0, 3})] = Complex(0.0, 0.3);
  PureState state(layout, amps);
  return state.normalized();
}

void BM_beam_splitter(benchmark::State& bench) {
  const auto probe = multiphoton_probe();
  const BeamSplitterSetting setting{"u", "v", 0.37};
  for (auto _ : bench) {
    benchmark::DoNotOptimize(apply_beam_splitter(probe, setting));
  }
}
BENCHMARK(BM_beam_splitter);

void BM_loss_channel(benchmark::State& bench) {
  const auto probe = MixedState::from_pure(multiphoton_probe());
  for (auto _ : bench) {
    benchmark::DoNotOptimize(loss_channel(probe, "u", 0.72));
  }
}
BENCHMARK(BM_loss_channel);

void BM_run_protocol(benchmark::State& bench) {
  const ProtocolParams params{0.6, 0.4, 0.3, concentration_t2(0.4, 0.3)};
  for (auto _ : bench) {
    benchmark::DoNotOptimize(run_protocol(params));
  }
}
BENCHMARK(BM_run_protocol);

void BM_concentration_curve(benchmark::State& bench) {
  SweepSpec spec;
  spec.alpha2 = 0.4;
  spec.eta = 0.6;
  spec.has_eta = true;
  spec.points = 200;
  for (auto _ : bench) {
    benchmark::DoNotOptimize(concentration_curve(spec));
  }
}
BENCHMARK(BM_concentration_curve);

}  // namespace

BENCHMARK_MAIN();
