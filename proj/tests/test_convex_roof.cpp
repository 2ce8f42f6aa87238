// Copyright 2026 The tangle4 Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tangle4/convex_roof.hpp"

#include <gtest/gtest.h>

#include "tangle4/suites.hpp"
#include "test_util.hpp"

using namespace tangle4;
using namespace tangle4::testing;

namespace {

RoofConfig quick(std::size_t restarts = 8) {
  RoofConfig c;
  c.restarts = restarts;
  return c;
}

// Equal mixture of |000> and |111>: tau3 roof 0, assistance 1.
DensityMatrix ghz_mixture() { return traced_abc(ghz4()); }

}  // namespace

TEST(Unitary, ParametersGiveUnitary) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  for (std::size_t m : {1u, 2u, 4u, 9u}) {
    std::vector<double> p(m * m);
    for (auto& x : p) x = normal(rng);
    const CMatrix u = unitary_from_parameters(p, m);
    EXPECT_LT(max_abs(u.adjoint() * u - CMatrix::Identity(m, m)), 1e-12) << m;
  }
  const std::vector<double> zero(16, 0.0);
  EXPECT_LT(max_abs(unitary_from_parameters(zero, 4) - CMatrix::Identity(4, 4)), 1e-15);
}

TEST(EnsembleFromUnitary, IdentityKeepsSpectralMembers) {
  const auto spectral = eigendecompose(ghz_mixture());
  const auto e = ensemble_from_unitary(spectral, CMatrix::Identity(2, 2));
  ASSERT_EQ(e.size(), 2u);
  EXPECT_NEAR(average_tau3(e), 0.0, 1e-14);
}

TEST(EnsembleFromUnitary, HadamardGivesGhzPair) {
  const auto spectral = eigendecompose(ghz_mixture());
  CMatrix h(2, 2);
  h << 1.0, 1.0, 1.0, -1.0;
  h /= std::sqrt(2.0);
  const auto e = ensemble_from_unitary(spectral, h);
  ASSERT_EQ(e.size(), 2u);
  for (const auto& m : e.members()) {
    EXPECT_NEAR(m.weight, 0.5, 1e-14);
    EXPECT_NEAR(tau3_pure(m.state).value, 1.0, 1e-12);
  }
  EXPECT_NEAR(average_tau3(e), 1.0, 1e-12);
  EXPECT_LT(frobenius_distance(e.density(), ghz_mixture()), 1e-14);
}

TEST(EnsembleFromUnitary, Rejections) {
  const auto spectral = eigendecompose(ghz_mixture());
  EXPECT_THROW(ensemble_from_unitary(spectral, CMatrix::Identity(1, 1)), DimensionError);
  CMatrix bad = CMatrix::Identity(3, 3);
  bad(0, 0) = 2.0;
  EXPECT_THROW(ensemble_from_unitary(spectral, bad), InvalidOperationError);
}

TEST(EnsembleFromUnitary, LongerEnsemblesReproduceRho) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto rho = random_rank2_three_qubit(seed);
    const auto spectral = eigendecompose(rho);
    for (std::size_t m : {2u, 3u, 4u, 6u}) {
      const auto e = ensemble_from_unitary(spectral, random_unitary(m, seed * 10 + m));
      EXPECT_LT(frobenius_distance(e.density(), rho), 1e-10);
      EXPECT_LE(e.size(), m);
    }
  }
}

TEST(OptimizeRoof, GhzMixtureBothDirections) {
  const auto lo = tau3_mixed(ghz_mixture(), quick());
  const auto hi = tau_a(ghz_mixture(), quick());
  EXPECT_LE(lo.value, 1e-6);
  EXPECT_GE(hi.value, 1.0 - 1e-6);
  EXPECT_EQ(lo.direction, BoundDirection::upper_bound_on_min);
  EXPECT_EQ(hi.direction, BoundDirection::lower_bound_on_max);
  EXPECT_EQ(lo.diagnostics.rank, 2u);
  EXPECT_EQ(lo.diagnostics.ensemble_length, 4u);
}

TEST(OptimizeRoof, PureInputGivesPureTangle) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto s = random_pure({2, 2, 2}, seed);
    const auto rho = DensityMatrix::from_pure(s);
    const double expected = tau3_pure(s).value;
    EXPECT_NEAR(tau3_mixed(rho, quick(2)).value, expected, 1e-8);
    EXPECT_NEAR(tau_a(rho, quick(2)).value, expected, 1e-8);
  }
}

TEST(OptimizeRoof, Rejections) {
  EXPECT_THROW(tau3_mixed(DensityMatrix::from_pure(bell())), DimensionError);
  RoofConfig none;
  none.restarts = 0;
  EXPECT_THROW(tau3_mixed(ghz_mixture(), none), DimensionError);
  RoofConfig shortlen;
  shortlen.ensemble_length = 1;
  EXPECT_THROW(tau3_mixed(ghz_mixture(), shortlen), DimensionError);
}

TEST(OptimizeRoof, WitnessIsValidDecomposition) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto rho = random_rank2_three_qubit(seed);
    for (auto obj : {RoofObjective::minimize, RoofObjective::maximize}) {
      const auto r = optimize_roof(rho, obj, quick());
      EXPECT_LT(frobenius_distance(r.witness.density(), rho), 1e-8);
      EXPECT_NEAR(average_tau3(r.witness), r.value, 1e-9);
      for (const auto& m : r.witness.members()) EXPECT_TRUE(m.state.is_normalized(1e-9));
    }
  }
}

TEST(OptimizeRoof, DominatesRandomSampling) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto rho = random_rank2_three_qubit(100 + seed);
    const auto oracle = grid_oracle(rho, 2000, seed);
    EXPECT_LE(tau3_mixed(rho, quick()).value, oracle.min_estimate + 1e-6);
    EXPECT_GE(tau_a(rho, quick()).value, oracle.max_estimate - 1e-6);
  }
}

TEST(OptimizeRoof, DeterministicForSeed) {
  const auto rho = random_rank2_three_qubit(42);
  RoofConfig a = quick(4), b = quick(4);
  b.threads = 2;
  const auto r1 = tau_a(rho, a);
  const auto r2 = tau_a(rho, a);
  const auto r3 = tau_a(rho, b);
  EXPECT_EQ(r1.value, r2.value);
  EXPECT_EQ(r1.value, r3.value);
  EXPECT_EQ(r1.diagnostics.best_restart, r3.diagnostics.best_restart);
}

TEST(OptimizeRoof, TraceIsMonotone) {
  RoofConfig c = quick(3);
  c.record_trace = true;
  const auto r = tau3_mixed(random_rank2_three_qubit(7), c);
  ASSERT_EQ(r.diagnostics.traces.size(), 3u);
  for (const auto& trace : r.diagnostics.traces) {
    ASSERT_FALSE(trace.empty());
    for (std::size_t k = 1; k < trace.size(); ++k) EXPECT_LE(trace[k], trace[k - 1]);
  }
}

TEST(GridOracle, GhzMixtureReachesBothEnds) {
  const auto est = grid_oracle(ghz_mixture(), 20000, 1);
  EXPECT_LE(est.min_estimate, 0.05);
  EXPECT_GE(est.max_estimate, 0.95);
  EXPECT_LE(est.min_estimate, est.max_estimate);
}
