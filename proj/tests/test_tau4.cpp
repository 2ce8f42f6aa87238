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

#include "tangle4/tau4.hpp"

#include <gtest/gtest.h>

#include "tangle4/families.hpp"
#include "tangle4/slocc.hpp"
#include "test_util.hpp"

using namespace tangle4;
using namespace tangle4::testing;

namespace {

RoofConfig quick(std::size_t restarts = 8) {
  RoofConfig c;
  c.restarts = restarts;
  return c;
}

}  // namespace

TEST(Tau4, GhzIsOne) {
  const auto r = tau4_pure4(ghz4(), 3, quick());
  EXPECT_NEAR(r.tau4, 1.0, 1e-3);
  EXPECT_GE(r.certified_lower, 0.99);
  EXPECT_EQ(r.traced_site, std::optional<std::size_t>{3});
}

TEST(Tau4, WStateVanishesAtEverySite) {
  for (std::size_t site = 0; site < 4; ++site) EXPECT_LE(tau4_pure4(w4(), site, quick()).tau4, 2e-3) << site;
}

TEST(Tau4, BellPairAndProductVanish) {
  EXPECT_LE(tau4_pure4(bell_bell(), 3, quick()).tau4, 1e-3);
  EXPECT_LE(tau4_pure4(StateVector::basis("0110"), 0, quick()).tau4, 1e-3);
}

TEST(Tau4, BoundsAreOrdered) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto r = tau4_pure4(random_pure({2, 2, 2, 2}, seed), 3, quick());
    EXPECT_GE(r.tau_a.value, r.tau3.value);
    EXPECT_GE(r.tau4, 0.0);
    EXPECT_LE(r.tau4, 1.0);
    EXPECT_NEAR(r.tau4 * r.tau4, r.tau_a.value * r.tau_a.value - r.tau3.value * r.tau3.value, 1e-12);
  }
}

TEST(Tau4, Rejections) {
  EXPECT_THROW(tau4_pure4(ghz3(), 0), DimensionError);
  EXPECT_THROW(tau4_pure4(ghz4(), 4), DimensionError);
  EXPECT_THROW(tau4_pure4(random_pure({3, 2, 2, 2}, 1), 3), DimensionError);
  EXPECT_THROW(tau4_pure4(StateVector({2, 2, 2, 2}, 2.0 * ghz4().amps()), 3), DegenerateStateError);
}

TEST(Tau4, QuditOnTracedSite) {
  // A qutrit on the traced site is allowed; the kept three sites stay qubits.
  const auto r = tau4_pure4(random_pure({2, 2, 2, 3}, 5), 3, quick(4));
  EXPECT_EQ(r.tau_a.diagnostics.rank, 3u);
  EXPECT_GE(r.tau_a.value, r.tau3.value);
}

TEST(EntanglementVector, GhzAndW) {
  const auto g = entanglement_vector(ghz4(), quick(4));
  for (double v : g.components) EXPECT_NEAR(v, 1.0, 1e-3);
  const auto w = entanglement_vector(w4(), quick(4));
  for (double v : w.components) EXPECT_LE(v, 2e-3);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(g.reports[k].traced_site, std::optional<std::size_t>{k});
}

TEST(EntanglementVector, SeventhFamilyIsLocalized) {
  const auto s = family_state({FamilyId::L07plus1bar});
  const auto v = entanglement_vector(s, quick());
  EXPECT_GT(v.components[0], 0.9);
  for (std::size_t k = 1; k < 4; ++k) EXPECT_LE(v.components[k], 2e-3) << k;
}

TEST(CertifyNonzero, Verdicts) {
  const auto yes = certify_nonzero(ghz4(), 3, quick());
  EXPECT_EQ(yes.verdict, NonzeroVerdict::certified_nonzero);
  EXPECT_GE(yes.lower_bound, 0.99);
  const auto no = certify_nonzero(w4(), 0, quick());
  EXPECT_EQ(no.verdict, NonzeroVerdict::consistent_with_zero);
  EXPECT_LE(no.gap, 1e-3);
}

TEST(Tau4, DeterminantOneFiltersScaleByNormSquared) {
  // With det = 1 on the three kept sites, tau4 of the normalized output times n^2 equals tau4 before.
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto s = random_pure({2, 2, 2, 2}, 30 + seed);
    std::vector<LocalOperator> ops;
    for (std::size_t site = 0; site < 3; ++site) {
      auto op = random_invertible_local(derive_seed(seed, site), site);
      op.matrix /= std::sqrt(op.matrix.determinant());
      ops.push_back(op);
    }
    const auto out = apply_local(s, ops);
    const double before = tau4_pure4(s, 3, quick()).tau4;
    const double after = tau4_pure4(normalize(out.state), 3, quick()).tau4;
    EXPECT_NEAR(after * out.probability, before, 2e-2) << seed;
  }
}

TEST(Tau4OfDm, RankOneGivesZero) {
  const auto r = tau4_of_dm(DensityMatrix::from_pure(ghz3()), quick(2));
  EXPECT_NEAR(r.tau_a.value, 1.0, 1e-9);
  EXPECT_NEAR(r.tau3.value, 1.0, 1e-9);
  EXPECT_LE(r.tau4, 1e-4);
  EXPECT_FALSE(r.traced_site.has_value());
}
