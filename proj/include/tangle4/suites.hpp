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

// Randomized property suites: local-filter covariance of the three-tangle,
// the three-qubit concurrence identity, concavity and monotonicity of tau4,
// vanishing on separable states, and monogamy.

#pragma once

#include "tangle4/io.hpp"
#include "tangle4/measures.hpp"
#include "tangle4/monogamy.hpp"
#include "tangle4/slocc.hpp"
#include "tangle4/tau4.hpp"

#include <array>
#include <cstdlib>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace tangle4 {

enum class Suite { covariance, concavity, monotonicity, separable_zero, eq14, monogamy };

inline constexpr std::array<Suite, 6> kAllSuites{Suite::covariance,     Suite::concavity, Suite::monotonicity,
                                                 Suite::separable_zero, Suite::eq14,      Suite::monogamy};

constexpr std::string_view to_string(Suite s) {
  switch (s) {
    case Suite::covariance: return "covariance";
    case Suite::concavity: return "concavity";
    case Suite::monotonicity: return "monotonicity";
    case Suite::separable_zero: return "separable-zero";
    case Suite::eq14: return "eq14";
    case Suite::monogamy: return "monogamy";
  }
  return "unknown";
}

inline std::optional<Suite> parse_suite(std::string_view name) {
  for (auto s : kAllSuites) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

/// Pass threshold on the suite's worst-case statistic.
constexpr double default_tolerance(Suite s) {
  switch (s) {
    case Suite::covariance: return 1e-8;      // relative error
    case Suite::eq14: return 1e-8;            // absolute deviation
    case Suite::concavity: return 2e-2;       // chord minus mixture
    case Suite::monotonicity: return 2e-2;    // post average minus pre
    case Suite::separable_zero: return 2e-3;  // tau4
    case Suite::monogamy: return 1e-2;        // lhs minus rhs
  }
  return 0.0;
}

struct SuiteOptions {
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  std::optional<double> tolerance;
  RoofConfig roof;
  std::size_t threads = 1;
};

struct SuiteReport {
  Suite suite = Suite::covariance;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  double worst = 0.0;
  std::size_t worst_trial = 0;
  std::vector<double> per_trial;  // the suite's statistic for each trial
  bool passed = true;
};

/// Thread count from TANGLE4_THREADS, else 1.
inline std::size_t default_thread_count() {
  if (const char* env = std::getenv("TANGLE4_THREADS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n > 0) return static_cast<std::size_t>(n);
  }
  return 1;
}

/// Runs fn(i) for i in [0, n); results are indexed, so the order of execution
/// does not affect the output.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t threads, Fn&& fn) {
  threads = std::max<std::size_t>(1, std::min(threads, n));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += threads) fn(i);
    });
  }
}

// ---------------------------------------------------------------------------
// Single-trial statistics, exposed for tests.

/// Relative error of tau3((A(x)B(x)C)phi / n) against |det A det B det C| tau3(phi) / n^2.
inline double covariance_trial(std::uint64_t seed) {
  const auto phi = random_pure({2, 2, 2}, derive_seed(seed, 0));
  const std::array<LocalOperator, 3> ops{random_invertible_local(derive_seed(seed, 1), 0),
                                         random_invertible_local(derive_seed(seed, 2), 1),
                                         random_invertible_local(derive_seed(seed, 3), 2)};
  const auto filtered = apply_local(phi, ops);
  const double n2 = filtered.probability;
  const double dets = std::abs(ops[0].matrix.determinant() * ops[1].matrix.determinant() * ops[2].matrix.determinant());
  const double lhs = tau3_pure(normalize(filtered.state)).value;
  const double rhs = dets * tau3_pure(phi).value / n2;
  return std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300);
}

inline double eq14_trial(std::uint64_t seed) {
  return check_pure3_relation(random_pure({2, 2, 2}, seed)).deviation;
}

inline constexpr std::array<double, 3> kConcavityWeights{0.25, 0.5, 0.75};

/// Random rank-2 three-qubit state: a Haar-random four-qubit state with its last qubit traced.
inline DensityMatrix random_rank2_three_qubit(std::uint64_t seed) {
  const std::size_t keep[] = {0, 1, 2};
  return partial_trace(random_pure({2, 2, 2, 2}, seed), keep);
}

inline double concavity_trial(std::uint64_t seed, const RoofConfig& roof) {
  const auto report = check_concavity(random_rank2_three_qubit(derive_seed(seed, 0)),
                                      random_rank2_three_qubit(derive_seed(seed, 1)), kConcavityWeights, roof);
  return report.max_violation;
}

inline double monotonicity_suite_trial(std::uint64_t seed, const RoofConfig& roof) {
  const auto state = random_pure({2, 2, 2, 2}, derive_seed(seed, 0));
  const auto protocol = random_protocol(state.dims(), 3, derive_seed(seed, 1));
  return monotonicity_trial(state, protocol, roof).violation;
}

enum class SeparablePattern { a_bcd, ab_cd, abc_d };

inline constexpr std::array<SeparablePattern, 3> kSeparablePatterns{SeparablePattern::a_bcd, SeparablePattern::ab_cd,
                                                                    SeparablePattern::abc_d};

inline StateVector random_separable(SeparablePattern pattern, std::uint64_t seed) {
  const auto s1 = derive_seed(seed, 0), s2 = derive_seed(seed, 1);
  switch (pattern) {
    case SeparablePattern::a_bcd: return tensor(random_pure({2}, s1), random_pure({2, 2, 2}, s2));
    case SeparablePattern::ab_cd: return tensor(random_pure({2, 2}, s1), random_pure({2, 2}, s2));
    case SeparablePattern::abc_d: return tensor(random_pure({2, 2, 2}, s1), random_pure({2}, s2));
  }
  throw DimensionError("unknown separability pattern");
}

/// Largest tau4 (fourth party traced) over one random state of each pattern.
inline double separable_trial(std::uint64_t seed, const RoofConfig& roof) {
  double worst = 0.0;
  for (std::size_t p = 0; p < kSeparablePatterns.size(); ++p) {
    const auto state = random_separable(kSeparablePatterns[p], derive_seed(seed, p));
    worst = std::max(worst, tau4_pure4(state, 3, roof).tau4);
  }
  return worst;
}

inline double monogamy_trial(std::uint64_t seed, const RoofConfig& roof) {
  const auto r = check_monogamy(random_pure({2, 2, 2, 2}, seed), roof);
  return r.lhs - r.rhs;
}

inline SuiteReport run_suite(Suite suite, const SuiteOptions& options) {
  if (options.trials == 0) throw DimensionError("a suite needs at least one trial");
  SuiteReport report;
  report.suite = suite;
  report.trials = options.trials;
  report.seed = options.seed;
  report.tolerance = options.tolerance.value_or(default_tolerance(suite));
  report.per_trial.assign(options.trials, 0.0);

  parallel_for(options.trials, options.threads, [&](std::size_t t) {
    const std::uint64_t seed = derive_seed(options.seed, t);
    double v = 0.0;
    switch (suite) {
      case Suite::covariance: v = covariance_trial(seed); break;
      case Suite::eq14: v = eq14_trial(seed); break;
      case Suite::concavity: v = concavity_trial(seed, options.roof); break;
      case Suite::monotonicity: v = monotonicity_suite_trial(seed, options.roof); break;
      case Suite::separable_zero: v = separable_trial(seed, options.roof); break;
      case Suite::monogamy: v = monogamy_trial(seed, options.roof); break;
    }
    report.per_trial[t] = v;
  });

  report.worst = report.per_trial.front();
  for (std::size_t t = 1; t < report.per_trial.size(); ++t) {
    if (report.per_trial[t] > report.worst) {
      report.worst = report.per_trial[t];
      report.worst_trial = t;
    }
  }
  report.passed = report.worst <= report.tolerance;
  return report;
}

inline json to_json(const SuiteReport& r) {
  return {{"suite", to_string(r.suite)}, {"verdict", r.passed ? "PASS" : "FAIL"}, {"trials", r.trials},
          {"seed", r.seed},              {"tolerance", r.tolerance},              {"worst", r.worst},
          {"worst_trial", r.worst_trial}, {"per_trial", r.per_trial}};
}

}  // namespace tangle4
