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

// Monogamy of localized entanglement for four-qubit pure states:
//
//   tau_(A)BCD^2 + tau3^2(rho_BCD) <= C_a^2(rho_CD) - C^2(rho_CD) = tau3^2(|phi>_[AB]CD),
//
// where the right-hand side is the tangle with A and B merged into one party.

#pragma once

#include "tangle4/measures.hpp"
#include "tangle4/tau4.hpp"

namespace tangle4 {

struct MergedTangle {
  double value = 0.0;  // sqrt(max(0, C_a^2 - C^2))
  double concurrence = 0.0;
  double concurrence_assist = 0.0;
};

namespace detail {

inline std::vector<std::size_t> remaining_pair(std::size_t traced, std::size_t partner) {
  if (traced >= 4 || partner >= 4 || traced == partner) {
    throw DimensionError("merged party needs two distinct sites among four");
  }
  std::vector<std::size_t> keep;
  for (std::size_t s = 0; s < 4; ++s) {
    if (s != traced && s != partner) keep.push_back(s);
  }
  return keep;
}

}  // namespace detail

/// Tangle of the pure state with `first` and `second` merged into one party,
/// from the concurrences of the remaining two-qubit marginal.
inline MergedTangle tau3_merged(const StateVector& state, std::size_t first = 0, std::size_t second = 1) {
  detail::require_dims(state.dims(), {2, 2, 2, 2}, "merged tangle");
  detail::require_normalized(state, "merged tangle");
  const auto rho = partial_trace(state, detail::remaining_pair(first, second));
  MergedTangle m;
  m.concurrence = concurrence_mixed_2q(rho).value;
  m.concurrence_assist = concurrence_assist_2q(rho).value;
  m.value = std::sqrt(std::max(0.0, m.concurrence_assist * m.concurrence_assist - m.concurrence * m.concurrence));
  return m;
}

inline double tau3_merged_AB(const StateVector& state) { return tau3_merged(state, 0, 1).value; }

inline constexpr double kMonogamyTolerance = 1e-2;

struct MonogamyReport {
  std::size_t traced_site = 0;
  std::size_t partner_site = 1;
  double tau4 = 0.0;       // tau_(A)BCD
  double tau3_rest = 0.0;  // tau3(rho_BCD), upper bound from the roof search
  MergedTangle merged;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;  // rhs - lhs, negative on violation
  double tolerance = kMonogamyTolerance;
  bool satisfied = true;
};

/// Default sites give the inequality above; other (traced, partner) pairs give
/// the analogous inequalities with a different party traced and merged.
inline MonogamyReport check_monogamy(const StateVector& state, const RoofConfig& config = {},
                                     double tolerance = kMonogamyTolerance, std::size_t traced_site = 0,
                                     std::size_t partner_site = 1) {
  detail::require_dims(state.dims(), {2, 2, 2, 2}, "monogamy");
  MonogamyReport r;
  r.traced_site = traced_site;
  r.partner_site = partner_site;
  r.tolerance = tolerance;
  const auto report = tau4_pure4(state, traced_site, config);
  r.tau4 = report.tau4;
  r.tau3_rest = report.tau3.value;
  r.merged = tau3_merged(state, traced_site, partner_site);
  r.lhs = r.tau4 * r.tau4 + r.tau3_rest * r.tau3_rest;
  r.rhs = r.merged.value * r.merged.value;
  r.gap = r.rhs - r.lhs;
  r.satisfied = r.lhs <= r.rhs + tolerance;
  return r;
}

struct Pure3Relation {
  double tau3 = 0.0;    // from the closed-form pure-state tangle
  double via_concurrences = 0.0;
  double concurrence = 0.0;
  double concurrence_assist = 0.0;
  double deviation = 0.0;
  bool satisfied = true;
};

/// tau3(|psi_BCD>) against sqrt(C_a^2(rho_CD) - C^2(rho_CD)).
inline Pure3Relation check_pure3_relation(const StateVector& state, double tolerance = 1e-8) {
  detail::require_dims(state.dims(), {2, 2, 2}, "three-qubit relation");
  Pure3Relation r;
  r.tau3 = tau3_pure(state).value;
  const std::size_t keep[] = {1, 2};
  const auto rho = partial_trace(state, keep);
  r.concurrence = concurrence_mixed_2q(rho).value;
  r.concurrence_assist = concurrence_assist_2q(rho).value;
  r.via_concurrences = std::sqrt(std::max(0.0, r.concurrence_assist * r.concurrence_assist - r.concurrence * r.concurrence));
  r.deviation = std::abs(r.tau3 - r.via_concurrences);
  r.satisfied = r.deviation <= tolerance;
  return r;
}

}  // namespace tangle4
