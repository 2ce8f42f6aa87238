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

// Convex-roof search for three-qubit density matrices.
//
// Every decomposition {p_i, |pi_i>} of length m of a rank-r state rho is
// generated from the spectral ensemble {lambda_j, |e_j>} by an m x m unitary:
//
//   |pi~_i> = sum_{j<r} U_ij sqrt(lambda_j) |e_j>,   p_i = <pi~_i|pi~_i>.
//
// U is parametrized as exp(iH) with H Hermitian and built from m^2 reals, and
// the average pure-state tangle is searched downward (convex roof) or upward
// (assistance) by restarted simplex search. Any decomposition is a witness, so
// a minimum found is an upper bound on the roof and a maximum found is a lower
// bound on the assistance value.

#pragma once

#include "tangle4/measures.hpp"
#include "tangle4/qstate.hpp"
#include "tangle4/simplex.hpp"

#include <cstdint>
#include <random>
#include <string_view>
#include <thread>
#include <vector>

namespace tangle4 {

enum class RoofObjective { minimize, maximize };
enum class BoundDirection { upper_bound_on_min, lower_bound_on_max };

constexpr std::string_view to_string(RoofObjective o) {
  return o == RoofObjective::minimize ? "min" : "max";
}
constexpr std::string_view to_string(BoundDirection d) {
  return d == BoundDirection::upper_bound_on_min ? "upper-bound-on-min" : "lower-bound-on-max";
}

struct RoofConfig {
  std::size_t ensemble_length = 0;  // 0 selects min(rank^2, 4), never below rank
  std::size_t restarts = 32;
  std::size_t max_iterations = 2000;
  double tolerance = 1e-8;
  std::uint64_t seed = 20100105;
  std::size_t threads = 1;
  bool record_trace = false;
};

struct RoofDiagnostics {
  std::size_t rank = 0;
  std::size_t ensemble_length = 0;
  std::size_t iterations = 0;  // summed over restarts
  std::size_t evaluations = 0;
  std::size_t restarts = 0;
  std::size_t best_restart = 0;
  std::vector<std::vector<double>> traces;  // per restart, objective-signed best values
};

struct RoofResult {
  double value = 0.0;
  Ensemble witness;
  BoundDirection direction = BoundDirection::upper_bound_on_min;
  RoofDiagnostics diagnostics;
};

inline std::size_t default_ensemble_length(std::size_t rank) {
  return std::max(rank, std::min<std::size_t>(rank * rank, 4));
}

namespace detail {

// Stack storage for the mixing matrices of short ensembles.
inline constexpr Eigen::Index kSmallLength = 8;
using SmallMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, 0, kSmallLength, kSmallLength>;

template <typename Matrix>
Matrix unitary_from_parameters(std::span<const double> params, std::size_t m) {
  if (params.size() != m * m) throw DimensionError("unitary parametrization needs m^2 reals");
  const auto n = static_cast<Eigen::Index>(m);
  Matrix h(n, n);
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < n; ++i) h(i, i) = params[k++];
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const Complex z(params[k], params[k + 1]);
      k += 2;
      h(i, j) = z;
      h(j, i) = std::conj(z);
    }
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  Matrix v = es.eigenvectors();
  Matrix scaled = v;
  for (Eigen::Index j = 0; j < n; ++j) scaled.col(j) *= std::polar(1.0, es.eigenvalues()(j));
  return scaled * v.adjoint();
}

}  // namespace detail

/// Unitary exp(iH); H has the m diagonal entries first, then (re, im) pairs of
/// the strict upper triangle in row-major order.
inline CMatrix unitary_from_parameters(std::span<const double> params, std::size_t m) {
  return detail::unitary_from_parameters<CMatrix>(params, m);
}

/// Columns sqrt(lambda_j) |e_j> of the spectral ensemble.
inline CMatrix spectral_factor(const Ensemble& spectral) {
  if (spectral.empty()) throw DegenerateStateError("empty spectral ensemble");
  const auto& first = spectral.members().front().state;
  CMatrix t(static_cast<Eigen::Index>(first.size()), static_cast<Eigen::Index>(spectral.size()));
  for (std::size_t j = 0; j < spectral.size(); ++j) {
    const auto& m = spectral.members()[j];
    t.col(static_cast<Eigen::Index>(j)) = std::sqrt(m.weight) * m.state.amps();
  }
  return t;
}

namespace detail {

// Members with exactly zero weight (rows of U orthogonal to the support) are dropped.
inline Ensemble ensemble_from_columns(const CMatrix& vectors, const Dims& dims) {
  std::vector<EnsembleMember> members;
  for (Eigen::Index i = 0; i < vectors.cols(); ++i) {
    const double p = vectors.col(i).squaredNorm();
    if (!(p > 0.0)) continue;
    members.push_back({p, StateVector(dims, vectors.col(i) / std::sqrt(p))});
  }
  return Ensemble(std::move(members));
}

// Average pure-state tangle of the decomposition generated by U, evaluated
// without normalizing members: p * sqrt(mu3(v / |v|)) = sqrt(mu3_raw(v)).
template <typename Matrix>
class BasicRoofEvaluator {
 public:
  BasicRoofEvaluator(const CMatrix& factor, std::size_t m)
      : factor_(factor), m_(m), vectors_(factor.rows(), static_cast<Eigen::Index>(m)) {}

  std::size_t ensemble_length() const { return m_; }

  template <typename U>
  double average_for_unitary(const U& u) {
    vectors_.noalias() = factor_ * u.leftCols(factor_.cols()).transpose();
    double sum = 0.0;
    for (Eigen::Index i = 0; i < vectors_.cols(); ++i) {
      sum += std::sqrt(mu3_raw(std::span<const Complex, 8>(vectors_.col(i).data(), 8)));
    }
    return sum;
  }

  double average(std::span<const double> params) {
    return average_for_unitary(unitary_from_parameters<Matrix>(params, m_));
  }

 private:
  CMatrix factor_;
  std::size_t m_;
  CMatrix vectors_;
};

// Dispatches on ensemble length to stack or heap mixing matrices.
class RoofEvaluator {
 public:
  RoofEvaluator(const CMatrix& factor, std::size_t m)
      : small_(m <= static_cast<std::size_t>(kSmallLength)), factor_(factor), small_eval_(factor, m), large_eval_(factor, m) {}

  double average(std::span<const double> params) {
    return small_ ? small_eval_.average(params) : large_eval_.average(params);
  }
  double average_for_unitary(const CMatrix& u) { return large_eval_.average_for_unitary(u); }

  Ensemble ensemble_for_unitary(const CMatrix& u, const Dims& dims) const {
    return ensemble_from_columns(factor_ * u.leftCols(factor_.cols()).transpose(), dims);
  }

 private:
  bool small_;
  CMatrix factor_;
  BasicRoofEvaluator<SmallMatrix> small_eval_;
  BasicRoofEvaluator<CMatrix> large_eval_;
};

inline void require_three_qubits(const DensityMatrix& dm) {
  if (dm.dims() != Dims{2, 2, 2}) throw DimensionError("convex roof requires a three-qubit density matrix");
}

inline double clamp_unit(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace detail

/// Average pure-state tangle sum_i p_i tau3(pi_i) of a three-qubit ensemble.
inline double average_tau3(const Ensemble& ensemble) {
  double sum = 0.0;
  for (const auto& m : ensemble.members()) sum += m.weight * tau3_pure(m.state).value;
  return sum;
}

/// Decomposition generated by the first r columns of `u` from a spectral
/// ensemble of r members.
inline Ensemble ensemble_from_unitary(const Ensemble& spectral, const CMatrix& u) {
  if (u.rows() != u.cols()) throw InvalidOperationError("mixing matrix must be square");
  if (static_cast<std::size_t>(u.rows()) < spectral.size()) {
    throw DimensionError("ensemble length below the number of spectral members");
  }
  const double err = (u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
  if (err > 1e-9) throw InvalidOperationError("mixing matrix is not unitary");
  const CMatrix t = spectral_factor(spectral);
  return detail::ensemble_from_columns(t * u.leftCols(t.cols()).transpose(),
                                       spectral.members().front().state.dims());
}

inline RoofResult optimize_roof(const DensityMatrix& dm, RoofObjective objective,
                                const RoofConfig& config = {}) {
  detail::require_three_qubits(dm);
  if (config.restarts == 0) throw DimensionError("roof search needs at least one restart");
  const Ensemble spectral = eigendecompose(dm);
  if (spectral.empty()) throw DegenerateStateError("density matrix has no support above cutoff");
  const std::size_t rank = spectral.size();
  const std::size_t m = config.ensemble_length == 0 ? default_ensemble_length(rank) : config.ensemble_length;
  if (m < rank) throw DimensionError("ensemble length " + std::to_string(m) + " below rank " + std::to_string(rank));

  const CMatrix factor = spectral_factor(spectral);
  const double sign = objective == RoofObjective::minimize ? 1.0 : -1.0;
  SimplexOptions options;
  options.max_iterations = config.max_iterations;
  options.f_tolerance = config.tolerance;
  options.record_trace = config.record_trace;

  std::vector<SimplexResult> runs(config.restarts);
  auto run_restart = [&](std::size_t k) {
    detail::RoofEvaluator eval(factor, m);
    std::vector<double> x0(m * m, 0.0);
    // Restart 0 starts from the spectral decomposition itself.
    if (k > 0) {
      std::mt19937_64 rng(derive_seed(config.seed, k));
      std::normal_distribution<double> normal(0.0, 1.0);
      for (auto& x : x0) x = normal(rng);
    }
    runs[k] = nelder_mead([&](const std::vector<double>& x) { return sign * eval.average(x); },
                          std::move(x0), options);
  };

  const std::size_t threads = std::max<std::size_t>(1, std::min(config.threads, config.restarts));
  if (threads == 1) {
    for (std::size_t k = 0; k < config.restarts; ++k) run_restart(k);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t k = w; k < config.restarts; k += threads) run_restart(k);
      });
    }
  }

  RoofResult result;
  result.direction = objective == RoofObjective::minimize ? BoundDirection::upper_bound_on_min
                                                          : BoundDirection::lower_bound_on_max;
  auto& diag = result.diagnostics;
  diag.rank = rank;
  diag.ensemble_length = m;
  diag.restarts = config.restarts;
  for (std::size_t k = 0; k < runs.size(); ++k) {
    diag.iterations += runs[k].iterations;
    diag.evaluations += runs[k].evaluations;
    if (runs[k].f < runs[diag.best_restart].f) diag.best_restart = k;
    if (config.record_trace) diag.traces.push_back(std::move(runs[k].trace));
  }

  const CMatrix u = unitary_from_parameters(runs[diag.best_restart].x, m);
  detail::RoofEvaluator eval(factor, m);
  result.value = detail::clamp_unit(eval.average_for_unitary(u));
  result.witness = eval.ensemble_for_unitary(u, dm.dims());
  return result;
}

/// Upper bound on the convex-roof tangle min sum p_i tau3(pi_i).
inline RoofResult tau3_mixed(const DensityMatrix& dm, const RoofConfig& config = {}) {
  return optimize_roof(dm, RoofObjective::minimize, config);
}

/// Lower bound on the tangle of assistance max sum p_i tau3(pi_i).
inline RoofResult tau_a(const DensityMatrix& dm, const RoofConfig& config = {}) {
  return optimize_roof(dm, RoofObjective::maximize, config);
}

struct OracleEstimate {
  double min_estimate;
  double max_estimate;
};

/// Brute-force cross-check: average tangle over `samples` Haar-random
/// unitaries at every ensemble length from the rank up to 4.
inline OracleEstimate grid_oracle(const DensityMatrix& dm, std::size_t samples, std::uint64_t seed) {
  detail::require_three_qubits(dm);
  const Ensemble spectral = eigendecompose(dm);
  const std::size_t rank = spectral.size();
  const CMatrix factor = spectral_factor(spectral);
  OracleEstimate est{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (std::size_t m = rank; m <= std::max<std::size_t>(rank, 4); ++m) {
    detail::RoofEvaluator eval(factor, m);
    for (std::size_t s = 0; s < samples; ++s) {
      const double v = eval.average_for_unitary(random_unitary(m, derive_seed(seed, m * 1000003 + s)));
      est.min_estimate = std::min(est.min_estimate, v);
      est.max_estimate = std::max(est.max_estimate, v);
    }
  }
  return est;
}

}  // namespace tangle4
