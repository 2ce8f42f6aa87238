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

#include "tangle4/measures.hpp"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <random>

#include "test_util.hpp"

using namespace tangle4;
using namespace tangle4::testing;

namespace {

// Wootters concurrence from the eigenvalues of rho * (Y x Y) rho^* (Y x Y).
double wootters_oracle(const CMatrix& rho) {
  CMatrix y(2, 2);
  y << 0.0, Complex(0, -1), Complex(0, 1), 0.0;
  CMatrix yy(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) yy.block(2 * i, 2 * j, 2, 2) = y(i, j) * y;
  const CMatrix r = rho * yy * rho.conjugate() * yy;
  Eigen::ComplexEigenSolver<CMatrix> es(r);
  std::vector<double> l;
  for (int k = 0; k < 4; ++k) l.push_back(std::sqrt(std::max(0.0, es.eigenvalues()(k).real())));
  std::sort(l.rbegin(), l.rend());
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

double pure_concurrence(const CVector& v) { return 2.0 * std::abs(v(0) * v(3) - v(1) * v(2)); }

StateVector reorder3(const StateVector& s, std::array<int, 3> perm) {
  CVector out(8);
  for (int i = 0; i < 8; ++i) {
    const int bits[3] = {(i >> 2) & 1, (i >> 1) & 1, i & 1};
    const int j = (bits[perm[0]] << 2) | (bits[perm[1]] << 1) | bits[perm[2]];
    out(j) = s.amps()(i);
  }
  return StateVector({2, 2, 2}, out);
}

}  // namespace

TEST(Mu3, KnownStates) {
  EXPECT_NEAR(mu3_pure(ghz3()).value, 1.0, 1e-14);
  EXPECT_NEAR(mu3_pure(w3()).value, 0.0, 1e-14);
  EXPECT_NEAR(mu3_pure(StateVector::basis("010")).value, 0.0, 1e-14);
  EXPECT_NEAR(mu3_pure(tensor(StateVector::basis("0"), bell())).value, 0.0, 1e-14);
  EXPECT_NEAR(tau3_pure(ghz3()).value, 1.0, 1e-14);
  EXPECT_EQ(mu3_pure(ghz3()).kind, MeasureKind::mu3);
}

TEST(Mu3, UnbalancedGhz) {
  for (double p : {0.1, 0.25, 0.5, 0.9}) {
    const auto s = ket({{std::sqrt(p), "000"}, {std::sqrt(1 - p), "111"}});
    EXPECT_NEAR(mu3_pure(s).value, 4 * p * (1 - p), 1e-13) << p;
  }
}

TEST(Mu3, RejectsWrongShapeAndUnnormalized) {
  EXPECT_THROW(mu3_pure(ghz4()), DimensionError);
  EXPECT_THROW(mu3_pure(random_pure({2, 2, 3}, 1)), DimensionError);
  CVector v = ghz3().amps() * 2.0;
  EXPECT_THROW(mu3_pure(StateVector({2, 2, 2}, v)), DegenerateStateError);
}

TEST(Mu3, MatchesCkwResidual) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto s = random_pure({2, 2, 2}, seed);
    const std::size_t a[] = {0}, ab[] = {0, 1}, ac[] = {0, 2};
    const double det_a = partial_trace(s, a).entries().determinant().real();
    const double cab = wootters_oracle(partial_trace(s, ab).entries());
    const double cac = wootters_oracle(partial_trace(s, ac).entries());
    // The oracle takes square roots of roundoff-level eigenvalues, so it is only good to ~1e-8.
    EXPECT_NEAR(mu3_pure(s).value, 4 * det_a - cab * cab - cac * cac, 1e-7) << seed;
  }
}

TEST(Mu3, PermutationInvariant) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto s = random_pure({2, 2, 2}, seed);
    const double base = mu3_pure(s).value;
    for (auto perm : {std::array{1, 0, 2}, std::array{2, 1, 0}, std::array{1, 2, 0}}) {
      EXPECT_NEAR(mu3_pure(reorder3(s, perm)).value, base, 1e-12);
    }
  }
}

TEST(Mu3, LocalUnitaryInvariant) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto s = random_pure({2, 2, 2}, seed);
    const double base = mu3_pure(s).value;
    for (std::size_t site = 0; site < 3; ++site) s = rotate(s, site, seed * 7 + site);
    EXPECT_NEAR(mu3_pure(s).value, base, 1e-12);
  }
}

TEST(Mu3, ScalesWithSquaredDeterminants) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto s = random_pure({2, 2, 2}, seed);
    std::vector<LocalOperator> ops;
    double det2 = 1.0;
    for (std::size_t site = 0; site < 3; ++site) {
      ops.push_back(random_invertible_local(seed * 3 + site, site));
      det2 *= std::norm(ops.back().matrix.determinant());
    }
    const auto r = apply_local(s, ops);
    const double raw = mu3_raw(std::span<const Complex, 8>(r.state.amps().data(), 8));
    EXPECT_NEAR(raw, det2 * mu3_pure(s).value, 1e-12 + 1e-9 * raw);
  }
}

TEST(Concurrence, KnownStates) {
  const auto b = DensityMatrix::from_pure(bell());
  EXPECT_NEAR(concurrence_mixed_2q(b).value, 1.0, 1e-12);
  EXPECT_NEAR(concurrence_assist_2q(b).value, 1.0, 1e-12);
  const auto prod = DensityMatrix::from_pure(StateVector::basis("01"));
  EXPECT_NEAR(concurrence_mixed_2q(prod).value, 0.0, 1e-12);
  const DensityMatrix mixed({2, 2}, 0.25 * CMatrix::Identity(4, 4));
  EXPECT_NEAR(concurrence_mixed_2q(mixed).value, 0.0, 1e-12);
  EXPECT_NEAR(concurrence_assist_2q(mixed).value, 1.0, 1e-12);
  EXPECT_THROW(concurrence_mixed_2q(DensityMatrix::from_pure(ghz3())), DimensionError);
}

TEST(Concurrence, WernerState) {
  for (double p : {0.2, 0.5, 0.8}) {
    const CMatrix rho = p * DensityMatrix::from_pure(bell()).entries() + (1 - p) / 4 * CMatrix::Identity(4, 4);
    EXPECT_NEAR(concurrence_mixed_2q(DensityMatrix({2, 2}, rho)).value, std::max(0.0, (3 * p - 1) / 2), 1e-12);
  }
}

TEST(Concurrence, MatchesEigenvalueOracle) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::size_t keep[] = {0, 1};
    const auto rho = partial_trace(random_pure({2, 2, 2}, seed), keep);
    EXPECT_NEAR(concurrence_mixed_2q(rho).value, wootters_oracle(rho.entries()), 1e-7) << seed;
  }
}

TEST(Concurrence, PureStateFormula) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto s = random_pure({2, 2}, seed);
    const auto rho = DensityMatrix::from_pure(s);
    EXPECT_NEAR(concurrence_mixed_2q(rho).value, pure_concurrence(s.amps()), 1e-10);
    EXPECT_NEAR(concurrence_assist_2q(rho).value, pure_concurrence(s.amps()), 1e-10);
  }
}

TEST(ConcurrenceAssist, BoundsSampledDecompositions) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t keep[] = {0, 1};
    const auto rho = partial_trace(random_pure({2, 2, 2}, seed), keep);
    const auto spectral = eigendecompose(rho);
    CMatrix t(4, static_cast<Eigen::Index>(spectral.size()));
    for (std::size_t j = 0; j < spectral.size(); ++j)
      t.col(static_cast<Eigen::Index>(j)) = std::sqrt(spectral.members()[j].weight) * spectral.members()[j].state.amps();
    const double ca = concurrence_assist_2q(rho).value;
    double best = 0.0;
    for (std::uint64_t k = 0; k < 2000; ++k) {
      const CMatrix u = random_unitary(4, derive_seed(seed, k));
      double avg = 0.0;
      for (Eigen::Index i = 0; i < 4; ++i) {
        const CVector v = t * u.row(i).head(t.cols()).transpose();
        avg += pure_concurrence(v);  // equals p_i C(psi_i) by homogeneity
      }
      EXPECT_LE(avg, ca + 1e-9);
      best = std::max(best, avg);
    }
    EXPECT_LE(ca - best, 5e-2);
    EXPECT_GE(ca, concurrence_mixed_2q(rho).value);
  }
}

TEST(NTangle, KnownStates) {
  EXPECT_NEAR(n_tangle_4q(ghz4()).value, 1.0, 1e-14);
  EXPECT_NEAR(n_tangle_4q(w4()).value, 0.0, 1e-14);
  EXPECT_NEAR(n_tangle_4q(bell_bell()).value, 1.0, 1e-14);
  EXPECT_NEAR(n_tangle_4q(StateVector::basis("0101")).value, 0.0, 1e-14);
  EXPECT_THROW(n_tangle_4q(ghz3()), DimensionError);
}

TEST(NTangle, LocalUnitaryInvariant) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto s = random_pure({2, 2, 2, 2}, seed);
    const double base = n_tangle_4q(s).value;
    for (std::size_t site = 0; site < 4; ++site) s = rotate(s, site, seed * 11 + site);
    EXPECT_NEAR(n_tangle_4q(s).value, base, 1e-12);
  }
}
