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

// Standard representatives of the nine SLOCC families of four-qubit pure
// states, the expected zero/nonzero behaviour of tau4 when the first qubit is
// traced out, and parameter sweeps that compare the two.

#pragma once

#include "tangle4/qstate.hpp"
#include "tangle4/tau4.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tangle4 {

enum class FamilyId { Gabcd, Labc2, La2b2, Lab3, La4, La2_03plus1, L05plus3bar, L07plus1bar, L03_03 };

inline constexpr std::array<FamilyId, 9> kAllFamilies{
    FamilyId::Gabcd, FamilyId::Labc2,       FamilyId::La2b2,       FamilyId::Lab3,  FamilyId::La4,
    FamilyId::La2_03plus1, FamilyId::L05plus3bar, FamilyId::L07plus1bar, FamilyId::L03_03};

constexpr std::string_view to_string(FamilyId id) {
  switch (id) {
    case FamilyId::Gabcd: return "Gabcd";
    case FamilyId::Labc2: return "Labc2";
    case FamilyId::La2b2: return "La2b2";
    case FamilyId::Lab3: return "Lab3";
    case FamilyId::La4: return "La4";
    case FamilyId::La2_03plus1: return "La2_03plus1";
    case FamilyId::L05plus3bar: return "L05plus3bar";
    case FamilyId::L07plus1bar: return "L07plus1bar";
    case FamilyId::L03_03: return "L03_03";
  }
  return "unknown";
}

inline std::optional<FamilyId> parse_family(std::string_view name) {
  for (auto id : kAllFamilies) {
    if (to_string(id) == name) return id;
  }
  return std::nullopt;
}

/// Number of leading parameters among (a, b, c, d) the family uses.
constexpr std::size_t parameter_count(FamilyId id) {
  switch (id) {
    case FamilyId::Gabcd: return 4;
    case FamilyId::Labc2: return 3;
    case FamilyId::La2b2:
    case FamilyId::Lab3: return 2;
    case FamilyId::La4:
    case FamilyId::La2_03plus1: return 1;
    default: return 0;
  }
}

struct FamilySpec {
  FamilyId family = FamilyId::Gabcd;
  Complex a{0.0}, b{0.0}, c{0.0}, d{0.0};
};

/// The standard-form amplitudes exactly as written, before normalization.
inline CVector family_amplitudes(const FamilySpec& spec) {
  CVector v = CVector::Zero(16);
  auto add = [&v](Complex coeff, std::initializer_list<std::string_view> kets) {
    for (auto k : kets) v(static_cast<Eigen::Index>(std::stoul(std::string(k), nullptr, 2))) += coeff;
  };
  const Complex a = spec.a, b = spec.b, c = spec.c, d = spec.d;
  const Complex i(0.0, 1.0);
  switch (spec.family) {
    case FamilyId::Gabcd:
      add((a + d) / 2.0, {"0000", "1111"});
      add((a - d) / 2.0, {"0011", "1100"});
      add((b + c) / 2.0, {"0101", "1010"});
      add((b - c) / 2.0, {"0110", "1001"});
      break;
    case FamilyId::Labc2:
      add((a + b) / 2.0, {"0000", "1111"});
      add((a - b) / 2.0, {"0011", "1100"});
      add(c, {"0101", "1010"});
      add(1.0, {"0110"});
      break;
    case FamilyId::La2b2:
      add(a, {"0000", "1111"});
      add(b, {"0101", "1010"});
      add(1.0, {"0110", "0011"});
      break;
    case FamilyId::Lab3:
      add(a, {"0000", "1111"});
      add((a + b) / 2.0, {"0101", "1010"});
      add(i / std::sqrt(2.0), {"0001", "0010", "0111", "1011"});
      add((a - b) / 2.0, {"0110", "1001"});
      break;
    case FamilyId::La4:
      add(a, {"0000", "0101", "1010", "1111"});
      add(i, {"0001"});
      add(1.0, {"0110"});
      add(-1.0, {"1011"});
      break;
    case FamilyId::La2_03plus1:
      add(a, {"0000", "1111"});
      add(1.0, {"0011", "0101", "0110"});
      break;
    case FamilyId::L05plus3bar:
      add(1.0, {"0000", "0101", "1000", "1110"});
      break;
    case FamilyId::L07plus1bar:
      add(1.0, {"0000", "1011", "1101", "1110"});
      break;
    case FamilyId::L03_03:
      add(1.0, {"0000", "0111"});
      break;
  }
  return v;
}

inline StateVector family_state(const FamilySpec& spec) {
  const CVector v = family_amplitudes(spec);
  if (v.norm() < 1e-300) {
    throw DegenerateStateError("parameters of " + std::string(to_string(spec.family)) + " give the zero vector");
  }
  return {Dims{2, 2, 2, 2}, v / v.norm()};
}

enum class Expectation { zero, nonzero, unspecified };

constexpr std::string_view to_string(Expectation e) {
  switch (e) {
    case Expectation::zero: return "zero";
    case Expectation::nonzero: return "nonzero";
    case Expectation::unspecified: return "unspecified";
  }
  return "unknown";
}

struct Prediction {
  FamilyId family;
  std::string condition;
  Expectation expected = Expectation::unspecified;
  std::size_t traced_site = 0;
};

inline constexpr double kModulusTolerance = 1e-12;

/// Expected tau4 with the first qubit traced out. Only the stated conditions
/// are encoded; every other point is unspecified.
inline Prediction predicted_zero(const FamilySpec& spec) {
  auto same = [](Complex x, Complex y) { return std::abs(std::abs(x) - std::abs(y)) <= kModulusTolerance; };
  auto vanishes = [](Complex x) { return std::abs(x) <= kModulusTolerance; };
  Prediction p{spec.family, "outside every stated condition", Expectation::unspecified, 0};
  auto zero_if = [&p](bool cond, std::string what) {
    if (cond && p.expected == Expectation::unspecified) {
      p.expected = Expectation::zero;
      p.condition = std::move(what);
    }
  };
  switch (spec.family) {
    case FamilyId::Gabcd: {
      const int zeros = vanishes(spec.a) + vanishes(spec.b) + vanishes(spec.c) + vanishes(spec.d);
      zero_if(zeros == 0 && same(spec.a, spec.b) && same(spec.b, spec.c) && same(spec.c, spec.d), "|a|=|b|=|c|=|d|");
      zero_if(zeros == 3, "three parameters vanish");
      break;
    }
    case FamilyId::Labc2:
      zero_if(same(spec.a, spec.c), "|a|=|c|");
      zero_if(same(spec.b, spec.c), "|b|=|c|");
      break;
    case FamilyId::La2b2:
      zero_if(same(spec.a, spec.b), "|a|=|b|");
      break;
    case FamilyId::Lab3:
      zero_if(same(spec.a, spec.b), "|a|=|b|");
      break;
    case FamilyId::La4:
    case FamilyId::La2_03plus1:
      zero_if(vanishes(spec.a), "a=0");
      break;
    case FamilyId::L05plus3bar:
    case FamilyId::L03_03:
      zero_if(true, "always");
      break;
    case FamilyId::L07plus1bar:
      p.expected = Expectation::nonzero;
      p.condition = "always";
      break;
  }
  return p;
}

struct SweepRow {
  FamilySpec spec;
  Prediction prediction;
  std::optional<double> tau4;  // empty for zero-norm grid points
  double certified_lower = 0.0;
  double gap = 0.0;
  bool agree = true;
  std::string note;
};

struct SweepOptions {
  RoofConfig roof;
  double zero_tolerance = 2e-3;
  double certify_gap = kDefaultCertifyGap;
};

inline SweepRow evaluate_point(const FamilySpec& spec, const SweepOptions& options = {}) {
  SweepRow row;
  row.spec = spec;
  row.prediction = predicted_zero(spec);
  const CVector raw = family_amplitudes(spec);
  if (raw.norm() < 1e-300) {
    row.note = "zero-norm parameters skipped";
    return row;
  }
  const auto decision = certify_nonzero(family_state(spec), 0, options.roof, options.certify_gap);
  row.tau4 = decision.report.tau4;
  row.certified_lower = decision.lower_bound;
  row.gap = decision.gap;
  switch (row.prediction.expected) {
    case Expectation::zero: row.agree = *row.tau4 <= options.zero_tolerance; break;
    case Expectation::nonzero: row.agree = decision.verdict == NonzeroVerdict::certified_nonzero; break;
    case Expectation::unspecified: row.agree = true; break;
  }
  return row;
}

/// Evaluates every grid point with the first qubit traced; output follows grid order.
inline std::vector<SweepRow> sweep(std::span<const FamilySpec> grid, const SweepOptions& options = {}) {
  if (grid.empty()) throw DimensionError("sweep grid is empty");
  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (const auto& spec : grid) rows.push_back(evaluate_point(spec, options));
  return rows;
}

/// Parameter points covering every stated zero condition (at least two points
/// wherever the condition leaves freedom), the always-nonzero family, and a
/// few generic points.
inline std::vector<FamilySpec> reference_points() {
  const Complex i(0.0, 1.0);
  using F = FamilyId;
  return {
      {F::Gabcd, 1.0, 1.0, 1.0, 1.0},
      {F::Gabcd, 1.0, -1.0, i, 1.0},
      {F::Gabcd, 0.5, 0.5 * i, -0.5, 0.5},
      {F::Gabcd, 1.0, 0.0, 0.0, 0.0},
      {F::Gabcd, 0.0, 0.0, 0.7 * i, 0.0},
      {F::Gabcd, 0.0, 0.3, 0.0, 0.0},
      {F::Gabcd, 0.5, 0.3, 0.2, 0.1},
      {F::Labc2, 1.0, 0.5, 1.0},
      {F::Labc2, 0.6 * i, 0.2, 0.6},
      {F::Labc2, 0.2, 0.7, 0.7},
      {F::Labc2, 0.3, -0.8, 0.8 * i},
      {F::Labc2, 0.3, 0.6, 0.9},
      {F::La2b2, 1.0, 1.0},
      {F::La2b2, 0.5, -0.5},
      {F::La2b2, 0.3, 0.3 * i},
      {F::La2b2, 1.0, 0.5},
      {F::Lab3, 1.0, 1.0},
      {F::Lab3, 0.5, 0.5 * i},
      {F::Lab3, 0.0, 0.0},
      {F::Lab3, 1.0, 0.3},
      {F::La4, 0.0},
      {F::La4, 0.7},
      {F::La2_03plus1, 0.0},
      {F::La2_03plus1, 0.7},
      {F::L05plus3bar},
      {F::L07plus1bar},
      {F::L03_03},
  };
}

}  // namespace tangle4
