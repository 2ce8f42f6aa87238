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

// One round of the five-stage local measurement sequence
//
//   S measures {M_i}; A measures {A_j^i}; B measures {B_k^ij};
//   C measures {C_l^ijk}; S measures {F_m^ijkl},
//
// each stage conditioned on all earlier outcomes, together with the numerical
// monotonicity and concavity harnesses built on it.

#pragma once

#include "tangle4/qstate.hpp"
#include "tangle4/tau4.hpp"

#include <vector>

namespace tangle4 {

/// Kraus set applied at one stage; children[o] is the next stage after outcome o.
struct ProtocolNode {
  KrausSet kraus;
  std::vector<ProtocolNode> children;
};

struct SloccProtocol {
  std::vector<std::size_t> stage_sites;  // site measured at each depth of the tree
  std::size_t qudit_site = 3;            // S; its operators do not enter D_ijkl
  ProtocolNode root;
};

/// S, then the three other parties in order, then S again.
inline std::vector<std::size_t> measurement_sequence(std::size_t qudit_site, std::size_t num_sites = 4) {
  std::vector<std::size_t> sites{qudit_site};
  for (std::size_t s = 0; s < num_sites; ++s) {
    if (s != qudit_site) sites.push_back(s);
  }
  sites.push_back(qudit_site);
  return sites;
}

namespace detail {

inline void validate_node(const ProtocolNode& node, const SloccProtocol& protocol, const Dims& dims,
                          std::size_t depth) {
  const std::size_t site = protocol.stage_sites[depth];
  if (site >= dims.size()) throw DimensionError("protocol stage site out of range");
  const auto d = static_cast<Eigen::Index>(dims[site]);
  for (const auto& k : node.kraus) {
    if (k.rows() != d || k.cols() != d) {
      throw DimensionError("Kraus operator shape does not match site " + std::to_string(site));
    }
  }
  if (!is_complete(node.kraus)) {
    throw InvalidOperationError("incomplete Kraus set at stage " + std::to_string(depth));
  }
  if (depth + 1 == protocol.stage_sites.size()) {
    if (!node.children.empty()) throw InvalidOperationError("protocol tree deeper than its stage list");
    return;
  }
  if (node.children.size() != node.kraus.size()) {
    throw InvalidOperationError("protocol needs one follow-up stage per outcome");
  }
  for (const auto& child : node.children) validate_node(child, protocol, dims, depth + 1);
}

template <typename MakeSet>
ProtocolNode build_tree(const std::vector<std::size_t>& sites, const Dims& dims, std::size_t depth,
                        MakeSet& make_set) {
  ProtocolNode node;
  node.kraus = make_set(dims[sites[depth]]);
  if (depth + 1 < sites.size()) {
    for (std::size_t o = 0; o < node.kraus.size(); ++o) {
      node.children.push_back(build_tree(sites, dims, depth + 1, make_set));
    }
  }
  return node;
}

}  // namespace detail

inline void validate_protocol(const SloccProtocol& protocol, const Dims& dims) {
  if (protocol.stage_sites.empty()) throw InvalidOperationError("protocol has no stages");
  detail::validate_node(protocol.root, protocol, dims, 0);
}

/// Protocol whose every stage is a single given Kraus set factory call.
template <typename MakeSet>
SloccProtocol make_protocol(const Dims& dims, std::size_t qudit_site, MakeSet make_set) {
  if (qudit_site >= dims.size()) throw DimensionError("qudit site out of range");
  SloccProtocol p;
  p.stage_sites = measurement_sequence(qudit_site, dims.size());
  p.qudit_site = qudit_site;
  p.root = detail::build_tree(p.stage_sites, dims, 0, make_set);
  return p;
}

inline SloccProtocol identity_protocol(const Dims& dims, std::size_t qudit_site) {
  return make_protocol(dims, qudit_site, [](std::size_t d) {
    const auto n = static_cast<Eigen::Index>(d);
    return KrausSet{CMatrix::Identity(n, n)};
  });
}

/// Every node an independent random complete set of `outcomes` operators.
inline SloccProtocol random_protocol(const Dims& dims, std::size_t qudit_site, std::uint64_t seed,
                                     std::size_t outcomes = 2) {
  std::uint64_t node = 0;
  return make_protocol(dims, qudit_site, [&](std::size_t d) {
    return random_kraus_set(d, outcomes, derive_seed(seed, node++));
  });
}

struct SloccOutcome {
  std::vector<std::size_t> outcome;  // (i, j, k, l, m)
  double probability;                // N_ijklm
  double det_product;                // D_ijkl: product of |det| of the non-S operators
  StateVector post;                  // normalized
};

inline constexpr double kNegligibleProbability = 1e-14;

namespace detail {

inline void walk_protocol(const ProtocolNode& node, const SloccProtocol& protocol, const Dims& dims,
                          std::size_t depth, const CVector& amps, double det, std::vector<std::size_t>& path,
                          std::vector<SloccOutcome>& out) {
  const std::size_t site = protocol.stage_sites[depth];
  for (std::size_t o = 0; o < node.kraus.size(); ++o) {
    CVector next = amps;
    apply_on_site(next, dims, site, node.kraus[o]);
    const double d = site == protocol.qudit_site ? det : det * std::abs(node.kraus[o].determinant());
    path.push_back(o);
    if (node.children.empty()) {
      const double p = next.squaredNorm();
      if (p >= kNegligibleProbability) out.push_back({path, p, d, StateVector(dims, next / std::sqrt(p))});
    } else {
      walk_protocol(node.children[o], protocol, dims, depth + 1, next, d, path, out);
    }
    path.pop_back();
  }
}

}  // namespace detail

/// Enumerates every outcome tuple in lexicographic order. Branches with
/// probability below kNegligibleProbability have no meaningful post-state and
/// are omitted.
inline std::vector<SloccOutcome> slocc_round(const StateVector& state, const SloccProtocol& protocol) {
  validate_protocol(protocol, state.dims());
  detail::require_normalized(state, "slocc round");
  std::vector<SloccOutcome> out;
  std::vector<std::size_t> path;
  detail::walk_protocol(protocol.root, protocol, state.dims(), 0, state.amps(), 1.0, path, out);
  return out;
}

// ---------------------------------------------------------------------------
// Monotonicity: sum_outcomes N * tau4(post) <= tau4(pre).

inline constexpr double kHarnessTolerance = 2e-2;

struct MonotonicityTrial {
  double pre = 0.0;
  double post_average = 0.0;
  double violation = 0.0;  // post_average - pre
  double total_probability = 0.0;
  std::size_t outcomes = 0;
};

struct MonotonicityReport {
  std::vector<MonotonicityTrial> trials;
  double max_violation = 0.0;
  double tolerance = kHarnessTolerance;
  bool passed = true;
};

/// Compares against a precomputed tau4 of the pre-state.
inline MonotonicityTrial monotonicity_trial(const StateVector& state, double pre_tau4, const SloccProtocol& protocol,
                                            const RoofConfig& config = {}) {
  MonotonicityTrial t;
  t.pre = pre_tau4;
  for (const auto& o : slocc_round(state, protocol)) {
    t.post_average += o.probability * tau4_pure4(o.post, protocol.qudit_site, config).tau4;
    t.total_probability += o.probability;
    ++t.outcomes;
  }
  t.violation = t.post_average - t.pre;
  return t;
}

inline MonotonicityTrial monotonicity_trial(const StateVector& state, const SloccProtocol& protocol,
                                            const RoofConfig& config = {}) {
  return monotonicity_trial(state, tau4_pure4(state, protocol.qudit_site, config).tau4, protocol, config);
}

inline MonotonicityReport check_monotonicity(const StateVector& state, std::size_t traced_site, std::size_t trials,
                                             std::uint64_t seed, const RoofConfig& config = {},
                                             double tolerance = kHarnessTolerance, std::size_t outcomes = 2) {
  MonotonicityReport report;
  report.tolerance = tolerance;
  report.max_violation = -std::numeric_limits<double>::infinity();
  const double pre = tau4_pure4(state, traced_site, config).tau4;
  for (std::size_t k = 0; k < trials; ++k) {
    const auto protocol = random_protocol(state.dims(), traced_site, derive_seed(seed, k), outcomes);
    report.trials.push_back(monotonicity_trial(state, pre, protocol, config));
    report.max_violation = std::max(report.max_violation, report.trials.back().violation);
  }
  report.passed = report.max_violation <= tolerance;
  return report;
}

// ---------------------------------------------------------------------------
// Concavity: tau4[l rho1 + (1 - l) rho2] >= l tau4[rho1] + (1 - l) tau4[rho2].

struct ConcavityRow {
  double lambda = 0.0;
  double mixture = 0.0;  // tau4 of the mixture
  double chord = 0.0;    // weighted average of the endpoint values
  double violation = 0.0;
};

struct ConcavityReport {
  double first = 0.0;
  double second = 0.0;
  std::vector<ConcavityRow> rows;
  double max_violation = 0.0;
  double tolerance = kHarnessTolerance;
  bool passed = true;
};

inline ConcavityReport check_concavity(const DensityMatrix& first, const DensityMatrix& second,
                                       std::span<const double> lambdas, const RoofConfig& config = {},
                                       double tolerance = kHarnessTolerance) {
  if (first.dims() != Dims{2, 2, 2} || second.dims() != Dims{2, 2, 2}) {
    throw DimensionError("concavity check needs two three-qubit density matrices");
  }
  ConcavityReport report;
  report.tolerance = tolerance;
  report.first = tau4_of_dm(first, config).tau4;
  report.second = tau4_of_dm(second, config).tau4;
  report.max_violation = -std::numeric_limits<double>::infinity();
  for (double l : lambdas) {
    if (!(l >= 0.0 && l <= 1.0)) throw DimensionError("mixing weight outside [0, 1]");
    ConcavityRow row;
    row.lambda = l;
    const DensityMatrix mix(first.dims(), l * first.entries() + (1.0 - l) * second.entries());
    row.mixture = tau4_of_dm(mix, config).tau4;
    row.chord = l * report.first + (1.0 - l) * report.second;
    row.violation = row.chord - row.mixture;
    report.max_violation = std::max(report.max_violation, row.violation);
    report.rows.push_back(row);
  }
  report.passed = report.max_violation <= tolerance;
  return report;
}

}  // namespace tangle4
