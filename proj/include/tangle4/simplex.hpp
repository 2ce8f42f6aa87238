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

// Derivative-free Nelder-Mead simplex search with the dimension-adaptive
// coefficients of Gao and Han (2012).

#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

namespace tangle4 {

struct SimplexOptions {
  std::size_t max_iterations = 2000;
  double f_tolerance = 1e-8;  // stop once max f - min f over the simplex is below this
  double initial_step = 0.5;
  bool record_trace = false;
};

struct SimplexResult {
  std::vector<double> x;
  double f = 0.0;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  bool converged = false;
  std::vector<double> trace;  // best value after each iteration, when recorded
};

/// Minimizes `f`, which takes `const std::vector<double>&` and returns double.
template <typename F>
SimplexResult nelder_mead(F&& f, std::vector<double> x0, const SimplexOptions& options) {
  const std::size_t n = x0.size();
  SimplexResult result;
  if (n == 0) {
    result.f = f(x0);
    result.x = std::move(x0);
    result.evaluations = 1;
    result.converged = true;
    return result;
  }
  const double dn = static_cast<double>(n);
  const double reflect = 1.0;
  const double expand = 1.0 + 2.0 / dn;
  const double contract = 0.75 - 1.0 / (2.0 * dn);
  const double shrink = 1.0 - 1.0 / dn;

  std::vector<std::vector<double>> vertex(n + 1, x0);
  std::vector<double> value(n + 1);
  for (std::size_t i = 0; i < n; ++i) vertex[i + 1][i] += options.initial_step;
  for (std::size_t i = 0; i <= n; ++i) value[i] = f(vertex[i]);
  result.evaluations = n + 1;

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), trial(n), second(n);
  auto along = [&](double t, const std::vector<double>& toward, std::vector<double>& out) {
    for (std::size_t k = 0; k < n; ++k) out[k] = centroid[k] + t * (toward[k] - centroid[k]);
  };

  for (;;) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return value[a] < value[b]; });
    const std::size_t best = order.front(), worst = order.back(), next_worst = order[n - 1];
    if (options.record_trace) result.trace.push_back(value[best]);
    if (value[worst] - value[best] <= options.f_tolerance) {
      result.converged = true;
      break;
    }
    if (result.iterations >= options.max_iterations) break;
    ++result.iterations;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < n; ++k) centroid[k] += vertex[i][k];
    }
    for (auto& c : centroid) c /= dn;

    along(-reflect, vertex[worst], trial);
    const double f_reflect = f(trial);
    ++result.evaluations;

    bool do_shrink = false;
    if (f_reflect < value[best]) {
      along(-reflect * expand, vertex[worst], second);
      const double f_expand = f(second);
      ++result.evaluations;
      if (f_expand < f_reflect) {
        vertex[worst] = second;
        value[worst] = f_expand;
      } else {
        vertex[worst] = trial;
        value[worst] = f_reflect;
      }
    } else if (f_reflect < value[next_worst]) {
      vertex[worst] = trial;
      value[worst] = f_reflect;
    } else if (f_reflect < value[worst]) {
      along(-reflect * contract, vertex[worst], second);
      const double f_contract = f(second);
      ++result.evaluations;
      if (f_contract <= f_reflect) {
        vertex[worst] = second;
        value[worst] = f_contract;
      } else {
        do_shrink = true;
      }
    } else {
      along(contract, vertex[worst], second);
      const double f_contract = f(second);
      ++result.evaluations;
      if (f_contract < value[worst]) {
        vertex[worst] = second;
        value[worst] = f_contract;
      } else {
        do_shrink = true;
      }
    }

    if (do_shrink) {
      for (std::size_t i = 0; i <= n; ++i) {
        if (i == best) continue;
        for (std::size_t k = 0; k < n; ++k) {
          vertex[i][k] = vertex[best][k] + shrink * (vertex[i][k] - vertex[best][k]);
        }
        value[i] = f(vertex[i]);
        ++result.evaluations;
      }
    }
  }

  const auto best = static_cast<std::size_t>(std::min_element(value.begin(), value.end()) - value.begin());
  result.x = vertex[best];
  result.f = value[best];
  return result;
}

}  // namespace tangle4
