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

// Localized quadripartite entanglement
//
//   tau4(|psi>_ABCS) = tau4[rho_ABC] = sqrt(tau_a(rho_ABC)^2 - tau3(rho_ABC)^2),
//
// estimated from one downward and one upward roof search on the same state.

#pragma once

#include "tangle4/convex_roof.hpp"
#include "tangle4/qstate.hpp"

#include <array>
#include <optional>

namespace tangle4 {

struct Tau4Report {
  double tau4 = 0.0;
  RoofResult tau_a;  // lower bound on the tangle of assistance
  RoofResult tau3;   // upper bound on the convex-roof tangle
  double certified_lower = 0.0;
  std::optional<std::size_t> traced_site;
};

/// Runs both roof searches and cross-evaluates the two witnesses, so the
/// reported pair always satisfies tau_a >= tau3. The estimate is biased low:
/// tau_a can only be under-estimated and tau3 only over-estimated.
inline Tau4Report tau4_of_dm(const DensityMatrix& dm, const RoofConfig& config = {}) {
  Tau4Report report;
  report.tau3 = optimize_roof(dm, RoofObjective::minimize, config);
  report.tau_a = optimize_roof(dm, RoofObjective::maximize, config);
  if (report.tau_a.value < report.tau3.value) {
    // Each witness is a valid decomposition for the other objective.
    std::swap(report.tau_a.witness, report.tau3.witness);
    std::swap(report.tau_a.value, report.tau3.value);
  }
  const double a = report.tau_a.value, b = report.tau3.value;
  report.tau4 = std::min(1.0, std::sqrt(std::max(0.0, a * a - b * b)));
  report.certified_lower = report.tau4;
  return report;
}

namespace detail {

inline DensityMatrix reduced_three_qubits(const StateVector& state, std::size_t traced_site) {
  if (traced_site >= state.num_sites()) throw DimensionError("traced site out of range");
  if (state.num_sites() != 4) throw DimensionError("tau4 needs exactly four parties");
  const auto keep = all_sites_except(state.num_sites(), traced_site);
  for (auto k : keep) {
    if (state.dims()[k] != 2) throw DimensionError("the three kept parties must be qubits");
  }
  require_normalized(state, "tau4");
  return partial_trace(state, keep);
}

}  // namespace detail

/// tau4 of a 2 x 2 x 2 x n pure state with `traced_site` playing the role of S.
inline Tau4Report tau4_pure4(const StateVector& state, std::size_t traced_site, const RoofConfig& config = {}) {
  auto report = tau4_of_dm(detail::reduced_three_qubits(state, traced_site), config);
  report.traced_site = traced_site;
  return report;
}

struct EntanglementVector {
  std::array<double, 4> components{};  // [tau_(A)BCD, tau_A(B)CD, tau_AB(C)D, tau_ABC(D)]
  std::array<Tau4Report, 4> reports;
};

inline EntanglementVector entanglement_vector(const StateVector& state, const RoofConfig& config = {}) {
  detail::require_dims(state.dims(), {2, 2, 2, 2}, "entanglement vector");
  EntanglementVector v;
  for (std::size_t site = 0; site < 4; ++site) {
    v.reports[site] = tau4_pure4(state, site, config);
    v.components[site] = v.reports[site].tau4;
  }
  return v;
}

enum class NonzeroVerdict { certified_nonzero, consistent_with_zero };

constexpr std::string_view to_string(NonzeroVerdict v) {
  return v == NonzeroVerdict::certified_nonzero ? "certified-nonzero" : "consistent-with-zero";
}

struct NonzeroDecision {
  NonzeroVerdict verdict = NonzeroVerdict::consistent_with_zero;
  double lower_bound = 0.0;  // sqrt(max^2 - min^2) from the two witnesses
  double gap = 0.0;          // best maximum minus best minimum
  Tau4Report report;
};

inline constexpr double kDefaultCertifyGap = 5e-2;

/// Certified nonzero when the upward witness beats the downward witness by
/// more than `min_gap`. Both witnesses are explicit decompositions, so
/// true tau_a >= max and true tau3 <= min.
inline NonzeroDecision certify_nonzero(const StateVector& state, std::size_t traced_site,
                                       const RoofConfig& config = {}, double min_gap = kDefaultCertifyGap) {
  NonzeroDecision d;
  d.report = tau4_pure4(state, traced_site, config);
  d.gap = d.report.tau_a.value - d.report.tau3.value;
  d.lower_bound = d.report.certified_lower;
  d.verdict = d.gap > min_gap ? NonzeroVerdict::certified_nonzero : NonzeroVerdict::consistent_with_zero;
  return d;
}

}  // namespace tangle4
