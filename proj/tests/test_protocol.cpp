#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include "speamp/fock.hpp"
#include "speamp/protocol.hpp"

using namespace speamp;

namespace {

OccupationVector occ(std::vector<int> counts) { return OccupationVector(std::move(counts)); }

// Closed forms restated here from scratch so the simulation is checked
// against an expression the library does not share.
double oracle_p(double eta, double alpha2, double t1, double t2) {
  const double beta2 = 1.0 - alpha2;
  return eta * (alpha2 * t2 * (1.0 - t1) + beta2 * t1 * (1.0 - t2)) + (1.0 - eta) * t1 * t2;
}

double oracle_eta_prime(double eta, double alpha2, double t1, double t2) {
  const double beta2 = 1.0 - alpha2;
  const double kept = eta * (alpha2 * t2 * (1.0 - t1) + beta2 * t1 * (1.0 - t2));
  return kept / oracle_p(eta, alpha2, t1, t2);
}

}  // namespace

TEST_CASE("parameter validation names the offending field") {
  CHECK_NOTHROW((ProtocolParams{0.0, 0.0, 0.5, 0.5}.validate()));
  CHECK_NOTHROW((ProtocolParams{1.0, 1.0, 0.001, 0.999}.validate()));
  CHECK_THROWS_WITH_AS((ProtocolParams{1.5, 0.4, 0.3, 0.3}.validate()),
                       "eta must lie in [0, 1]", std::invalid_argument);
  CHECK_THROWS_WITH_AS((ProtocolParams{0.5, -0.1, 0.3, 0.3}.validate()),
                       "alpha2 must lie in [0, 1]", std::invalid_argument);
  CHECK_THROWS_WITH_AS((ProtocolParams{0.5, 0.4, 0.0, 0.3}.validate()),
                       "t1 must lie in (0, 1)", std::invalid_argument);
  CHECK_THROWS_WITH_AS((ProtocolParams{0.5, 0.4, 0.3, 1.0}.validate()),
                       "t2 must lie in (0, 1)", std::invalid_argument);
}

TEST_CASE("the input mixture carries the photon with weight eta") {
  SUBCASE("unit eta is the pure superposition") {
    MixedState state = build_input_state(1.0, 0.5);
    REQUIRE(state.branches().size() == 1);
    const PureState& ket = state.branches()[0].state;
    CHECK(ket.amplitude(occ({1, 0})).real() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    CHECK(ket.amplitude(occ({0, 1})).real() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  }

  SUBCASE("zero eta is pure vacuum") {
    MixedState state = build_input_state(0.0, 0.3);
    REQUIRE(state.branches().size() == 1);
    CHECK(state.branches()[0].state.amplitude(occ({0, 0})).real() == doctest::Approx(1.0));
  }

  SUBCASE("intermediate eta splits photon and vacuum") {
    MixedState state = build_input_state(0.6, 0.4);
    REQUIRE(state.branches().size() == 2);
    CHECK(state.branches()[0].weight == doctest::Approx(0.6));
    CHECK(state.branches()[0].state.amplitude(occ({1, 0})).real() ==
          doctest::Approx(std::sqrt(0.4)).epsilon(1e-12));
    CHECK(state.branches()[1].weight == doctest::Approx(0.4));
  }

  CHECK_THROWS_AS(build_input_state(-0.1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(build_input_state(0.5, 1.0001), std::invalid_argument);
}

TEST_CASE("lossy-channel preparation reproduces the direct mixture") {
  for (double eta : {0.0, 0.2, 0.4, 0.6, 0.8, 1.0}) {
    for (double alpha2 : {0.1, 0.4, 0.5, 0.9}) {
      MixedState direct = build_input_state(eta, alpha2);
      MixedState lossy = build_input_via_lossy_channels(alpha2, eta);
      CHECK(ensemble_distance(direct, lossy) < 1e-12);
    }
  }
}

TEST_CASE("the concentration setting solves the balance condition") {
  for (double t : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    CHECK(concentration_t2(0.5, t) == doctest::Approx(t).epsilon(1e-12));
  }
  CHECK(concentration_t2(0.4, 0.3) == doctest::Approx(0.18 / 0.46).epsilon(1e-12));
  CHECK(concentration_t2(0.7, 0.0) == 0.0);

  // Balance residual alpha2 t2 (1-t1) = beta2 t1 (1-t2) at the returned t2.
  for (double alpha2 : {0.1, 0.25, 0.6, 0.95}) {
    for (double t1 : {0.05, 0.4, 0.8}) {
      const double t2 = concentration_t2(alpha2, t1);
      CHECK(std::abs(alpha2 * t2 * (1.0 - t1) - (1.0 - alpha2) * t1 * (1.0 - t2)) < 1e-12);
    }
  }

  CHECK_THROWS_AS(concentration_t2(0.0, 0.3), std::domain_error);
  CHECK_THROWS_AS(concentration_t2(1.0, 0.3), std::domain_error);
  CHECK_THROWS_AS(concentration_t2(0.5, 1.0), std::domain_error);
}

TEST_CASE("closed forms evaluate the published reference points") {
  SUBCASE("success probability") {
    CHECK(analytic_success_probability({0.0, 0.3, 0.25, 0.4}) ==
          doctest::Approx(0.25 * 0.4).epsilon(1e-12));
    CHECK(analytic_success_probability({1.0, 0.5, 0.5, 0.5}) == doctest::Approx(0.25));
    CHECK(analytic_success_probability({0.6, 0.4, 0.3, 0.18 / 0.46}) ==
          doctest::Approx(0.1784347826086957).epsilon(1e-12));
  }

  SUBCASE("heralded single-photon weight") {
    CHECK(analytic_eta_prime({1.0, 0.3, 0.2, 0.7}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(analytic_eta_prime({0.0, 0.3, 0.2, 0.7}) == doctest::Approx(0.0));
    CHECK(analytic_eta_prime({0.6, 0.4, 0.3, 0.18 / 0.46}) ==
          doctest::Approx(0.7368421052631579).epsilon(1e-12));
  }

  SUBCASE("gain") {
    CHECK(analytic_g({1.0, 0.3, 0.2, 0.7}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(analytic_g({0.6, 0.5, 0.2, 0.2}) == doctest::Approx(0.8 / 0.56).epsilon(1e-12));
    CHECK(analytic_g({0.6, 0.4, 0.3, 0.18 / 0.46}) ==
          doctest::Approx(1.2280701754385965).epsilon(1e-12));
    CHECK_THROWS_AS(analytic_g({0.0, 0.4, 0.3, 0.3}), std::domain_error);
  }

  SUBCASE("gain limit") {
    CHECK(g_limit(0.2) == doctest::Approx(5.0));
    CHECK(g_limit(0.5) == doctest::Approx(2.0));
    CHECK(g_limit(1.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(g_limit(0.0), std::domain_error);
  }
}

TEST_CASE("the amplification boundary is the g = 1 crossing, for every eta") {
  AmplificationBoundary b04 = amplification_boundary(0.4);
  CHECK(b04.t1_star == doctest::Approx(4.0 / 9.0).epsilon(1e-12));
  CHECK(b04.t2_star == doctest::Approx(6.0 / 11.0).epsilon(1e-12));

  AmplificationBoundary b05 = amplification_boundary(0.5);
  CHECK(b05.t1_star == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(b05.t2_star == doctest::Approx(0.5).epsilon(1e-12));

  AmplificationBoundary b08 = amplification_boundary(0.8);
  CHECK(b08.t1_star == doctest::Approx(8.0 / 13.0).epsilon(1e-12));
  CHECK(b08.t2_star == doctest::Approx(2.0 / 7.0).epsilon(1e-12));

  for (double alpha2 : {0.2, 0.4, 0.8}) {
    AmplificationBoundary boundary = amplification_boundary(alpha2);
    for (double eta : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      CHECK(std::abs(analytic_g({eta, alpha2, boundary.t1_star, boundary.t2_star}) - 1.0) <
            1e-12);
    }
    // Amplification strictly inside, attenuation strictly outside (eta < 1).
    const double below = boundary.t1_star - 0.05;
    const double above = boundary.t1_star + 0.05;
    CHECK(analytic_g({0.5, alpha2, below, concentration_t2(alpha2, below)}) > 1.0);
    CHECK(analytic_g({0.5, alpha2, above, concentration_t2(alpha2, above)}) < 1.0);
  }

  CHECK_THROWS_AS(amplification_boundary(0.0), std::domain_error);
}

TEST_CASE("the simulated circuit reproduces the closed forms at the reference point") {
  const double eta = 0.6;
  const double alpha2 = 0.4;
  const double t1 = 0.3;
  const double t2 = concentration_t2(alpha2, t1);
  ProtocolOutcome outcome = run_protocol({eta, alpha2, t1, t2});

  CHECK(outcome.success_probability ==
        doctest::Approx(oracle_p(eta, alpha2, t1, t2)).epsilon(1e-12));
  CHECK(outcome.eta_prime ==
        doctest::Approx(oracle_eta_prime(eta, alpha2, t1, t2)).epsilon(1e-12));
  CHECK(outcome.gain == doctest::Approx(1.2280701754385965).epsilon(1e-10));
  CHECK(outcome.fidelity == doctest::Approx(1.0).epsilon(1e-12));

  // All four patterns fire equally.
  REQUIRE(outcome.pattern_probabilities.size() == 4);
  for (const std::string name : {"D1D3", "D1D4", "D2D3", "D2D4"}) {
    CHECK(outcome.pattern_probabilities.at(name) ==
          doctest::Approx(outcome.success_probability / 4.0).epsilon(1e-12));
  }

  // Heralded mixture: photon branch of weight eta' plus vacuum remainder.
  REQUIRE(outcome.heralded_state.branches().size() == 2);
  CHECK(outcome.heralded_state.branches()[0].weight ==
        doctest::Approx(outcome.eta_prime).epsilon(1e-12));
  const PureState& photon = outcome.heralded_state.branches()[0].state;
  CHECK(std::abs(photon.amplitude(occ({1, 0}))) ==
        doctest::Approx(std::sqrt(0.5)).epsilon(1e-10));
  CHECK(std::abs(photon.amplitude(occ({0, 1}))) ==
        doctest::Approx(std::sqrt(0.5)).epsilon(1e-10));
  CHECK(outcome.heralded_state.branches()[1].state.amplitude(occ({0, 0})).real() ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("simulation matches the oracle across an eta/alpha2/t1 sample") {
  for (double eta : {0.0, 0.3, 0.7, 1.0}) {
    for (double alpha2 : {0.15, 0.5, 0.85}) {
      for (double t1 : {0.08, 0.5, 0.92}) {
        for (double t2 : {0.2, 0.65}) {
          ProtocolOutcome outcome = run_protocol({eta, alpha2, t1, t2});
          CHECK(std::abs(outcome.success_probability - oracle_p(eta, alpha2, t1, t2)) < 1e-12);
          CHECK(std::abs(outcome.eta_prime - oracle_eta_prime(eta, alpha2, t1, t2)) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("unbalanced settings leave the heralded photon partly distinguishable") {
  // t1 = t2 keeps the alpha/beta weights, so fidelity is ((alpha+beta)/sqrt2)^2.
  ProtocolOutcome outcome = run_protocol({1.0, 0.8, 0.5, 0.5});
  const double expected = 0.5 * std::pow(std::sqrt(0.8) + std::sqrt(0.2), 2.0);
  CHECK(outcome.fidelity == doctest::Approx(expected).epsilon(1e-12));
  CHECK(outcome.eta_prime == doctest::Approx(1.0).epsilon(1e-12));

  ProtocolOutcome balanced = run_protocol({1.0, 0.5, 0.5, 0.5});
  CHECK(balanced.success_probability == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(balanced.eta_prime == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(balanced.fidelity == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("a vacuum input heralds vacuum with undefined gain") {
  ProtocolOutcome outcome = run_protocol({0.0, 0.4, 0.3, 0.5});
  CHECK(outcome.success_probability == doctest::Approx(0.3 * 0.5).epsilon(1e-12));
  CHECK(outcome.eta_prime == doctest::Approx(0.0));
  CHECK(std::isnan(outcome.gain));
  CHECK(outcome.fidelity == doctest::Approx(0.0));
  REQUIRE(outcome.heralded_state.branches().size() == 1);
  CHECK(outcome.heralded_state.branches()[0].state.amplitude(occ({0, 0})).real() ==
        doctest::Approx(1.0));
}

TEST_CASE("success probability vanishes as t1 approaches zero on the curve") {
  double previous = 1.0;
  for (double t1 : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
    ProtocolOutcome outcome = run_protocol({0.6, 0.4, t1, concentration_t2(0.4, t1)});
    CHECK(outcome.success_probability < previous);
    previous = outcome.success_probability;
  }
  CHECK(previous < 1e-5);
}

TEST_CASE("gain climbs to 1/eta along the vanishing-t1 concentration curve") {
  for (double eta : {0.2, 0.4, 0.6, 0.8}) {
    ProtocolOutcome outcome = run_protocol({eta, 0.4, 1e-6, concentration_t2(0.4, 1e-6)});
    CHECK(std::abs(outcome.gain - 1.0 / eta) < 1e-3);
  }
}

TEST_CASE("fidelity against the balanced target sums branch overlaps") {
  const ModeLayout layout({"d2", "c2"});
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  PureState::AmplitudeMap amps;
  amps.emplace(occ({1, 0}), Complex(inv_sqrt2, 0.0));
  amps.emplace(occ({0, 1}), Complex(inv_sqrt2, 0.0));
  PureState target(layout, std::move(amps));

  CHECK(fidelity_to_maximal(MixedState::from_pure(target)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fidelity_to_maximal(MixedState::from_pure(basis_state(layout, occ({1, 0})))) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(fidelity_to_maximal(build_input_state(0.35, 0.5)) == doctest::Approx(0.35).epsilon(1e-12));
  CHECK(fidelity_to_maximal(MixedState::empty(layout)) == 0.0);
  CHECK_THROWS_AS(fidelity_to_maximal(MixedState::from_pure(
                      basis_state(ModeLayout({"x", "y", "z"}), occ({0, 0, 0})))),
                  std::invalid_argument);
}
