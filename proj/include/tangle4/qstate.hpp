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

// Pure and mixed state algebra over ordered lists of subsystem dimensions.
// Amplitude and matrix indices are big-endian: the first subsystem is the most
// significant digit.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tangle4 {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using Dims = std::vector<std::size_t>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Zero vector, zero-norm parameter combination, or a state that cannot be normalized.
class DegenerateStateError : public Error {
 public:
  using Error::Error;
};

/// Dimensions, site indices or operator shapes that do not fit the request.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Incomplete Kraus sets, non-unitary parameter matrices, non-Hermitian inputs.
class InvalidOperationError : public Error {
 public:
  using Error::Error;
};

inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kRankCutoff = 1e-12;
inline constexpr double kKrausTolerance = 1e-9;

inline std::size_t total_dim(const Dims& dims) {
  if (dims.empty()) throw DimensionError("empty dimension list");
  std::size_t n = 1;
  for (auto d : dims) {
    if (d == 0) throw DimensionError("subsystem dimension must be positive");
    n *= d;
  }
  return n;
}

class StateVector {
 public:
  StateVector(Dims dims, CVector amps) : dims_(std::move(dims)), amps_(std::move(amps)) {
    if (static_cast<std::size_t>(amps_.size()) != total_dim(dims_)) {
      throw DimensionError("amplitude count " + std::to_string(amps_.size()) +
                           " does not match product of dims " + std::to_string(total_dim(dims_)));
    }
  }

  /// Computational basis state for qubits, e.g. basis("0110").
  static StateVector basis(std::string_view bits) {
    Dims dims(bits.size(), 2);
    CVector amps = CVector::Zero(static_cast<Eigen::Index>(total_dim(dims)));
    std::size_t index = 0;
    for (char b : bits) {
      if (b != '0' && b != '1') throw DimensionError("basis label must be a bit string");
      index = 2 * index + static_cast<std::size_t>(b - '0');
    }
    amps(static_cast<Eigen::Index>(index)) = 1.0;
    return {std::move(dims), std::move(amps)};
  }

  const Dims& dims() const { return dims_; }
  const CVector& amps() const { return amps_; }
  std::size_t num_sites() const { return dims_.size(); }
  std::size_t size() const { return static_cast<std::size_t>(amps_.size()); }
  double norm() const { return amps_.norm(); }
  bool is_normalized(double tol = kNormTolerance) const {
    return std::abs(amps_.squaredNorm() - 1.0) <= tol;
  }

 private:
  Dims dims_;
  CVector amps_;
};

class DensityMatrix {
 public:
  DensityMatrix(Dims dims, CMatrix entries) : dims_(std::move(dims)), entries_(std::move(entries)) {
    const auto n = static_cast<Eigen::Index>(total_dim(dims_));
    if (entries_.rows() != n || entries_.cols() != n) {
      throw DimensionError("density matrix side does not match product of dims");
    }
  }

  static DensityMatrix from_pure(const StateVector& s) {
    return {s.dims(), s.amps() * s.amps().adjoint()};
  }

  const Dims& dims() const { return dims_; }
  const CMatrix& entries() const { return entries_; }
  std::size_t num_sites() const { return dims_.size(); }
  std::size_t size() const { return static_cast<std::size_t>(entries_.rows()); }
  Complex trace() const { return entries_.trace(); }

  double hermiticity_error() const { return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff(); }

  /// Hermitian, positive semidefinite and unit trace, each within `tol`.
  bool is_valid(double tol = kHermitianTolerance) const {
    if (hermiticity_error() > tol) return false;
    if (std::abs(trace() - 1.0) > tol) return false;
    CMatrix h = 0.5 * (entries_ + entries_.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -tol;
  }

 private:
  Dims dims_;
  CMatrix entries_;
};

struct EnsembleMember {
  double weight;
  StateVector state;
};

/// Weighted pure states {p_i, |pi_i>} realizing a density matrix.
class Ensemble {
 public:
  Ensemble() = default;
  explicit Ensemble(std::vector<EnsembleMember> members) : members_(std::move(members)) {
    for (const auto& m : members_) {
      if (m.state.dims() != members_.front().state.dims()) {
        throw DimensionError("ensemble members must share dims");
      }
      if (m.weight < 0.0) throw InvalidOperationError("negative ensemble weight");
    }
  }

  const std::vector<EnsembleMember>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }

  double total_weight() const {
    double w = 0.0;
    for (const auto& m : members_) w += m.weight;
    return w;
  }

  DensityMatrix density() const {
    if (members_.empty()) throw DegenerateStateError("empty ensemble has no density matrix");
    const auto& dims = members_.front().state.dims();
    const auto n = static_cast<Eigen::Index>(total_dim(dims));
    CMatrix rho = CMatrix::Zero(n, n);
    for (const auto& m : members_) rho += m.weight * m.state.amps() * m.state.amps().adjoint();
    return {dims, std::move(rho)};
  }

 private:
  std::vector<EnsembleMember> members_;
};

struct LocalOperator {
  std::size_t site;
  CMatrix matrix;
};

using KrausSet = std::vector<CMatrix>;

/// max-abs entry of sum M^dagger M - I.
inline double completeness_error(const KrausSet& set) {
  if (set.empty()) return std::numeric_limits<double>::infinity();
  CMatrix sum = CMatrix::Zero(set.front().cols(), set.front().cols());
  for (const auto& m : set) {
    if (m.cols() != sum.cols()) return std::numeric_limits<double>::infinity();
    sum += m.adjoint() * m;
  }
  return (sum - CMatrix::Identity(sum.rows(), sum.cols())).cwiseAbs().maxCoeff();
}

inline bool is_complete(const KrausSet& set, double tol = kKrausTolerance) {
  return completeness_error(set) <= tol;
}

inline double frobenius_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dims() != b.dims()) throw DimensionError("density matrices over different dims");
  return (a.entries() - b.entries()).norm();
}

inline StateVector normalize(const StateVector& state) {
  const double n = state.norm();
  if (!(n > 0.0)) throw DegenerateStateError("cannot normalize the zero vector");
  return {state.dims(), state.amps() / n};
}

inline StateVector tensor(const StateVector& a, const StateVector& b) {
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  CVector amps(static_cast<Eigen::Index>(a.size() * b.size()));
  for (Eigen::Index i = 0; i < a.amps().size(); ++i) {
    amps.segment(i * b.amps().size(), b.amps().size()) = a.amps()(i) * b.amps();
  }
  return {std::move(dims), std::move(amps)};
}

namespace detail {

// Splits every full index into (kept index, traced index), both big-endian over
// their own site lists.
struct IndexSplit {
  std::vector<std::size_t> kept;
  std::vector<std::size_t> traced;
  Dims kept_dims;
  Dims traced_dims;
};

inline IndexSplit split_indices(const Dims& dims, std::span<const std::size_t> keep) {
  if (keep.empty()) throw DimensionError("partial trace needs at least one kept site");
  std::vector<bool> is_kept(dims.size(), false);
  for (auto k : keep) {
    if (k >= dims.size()) throw DimensionError("site index " + std::to_string(k) + " out of range");
    if (is_kept[k]) throw DimensionError("duplicate site index " + std::to_string(k));
    is_kept[k] = true;
  }
  IndexSplit split;
  std::vector<std::size_t> traced_sites;
  for (std::size_t s = 0; s < dims.size(); ++s) {
    if (!is_kept[s]) traced_sites.push_back(s);
  }
  for (auto k : keep) split.kept_dims.push_back(dims[k]);
  for (auto t : traced_sites) split.traced_dims.push_back(dims[t]);

  const std::size_t n = total_dim(dims);
  split.kept.resize(n);
  split.traced.resize(n);
  std::vector<std::size_t> digits(dims.size());
  for (std::size_t idx = 0; idx < n; ++idx) {
    std::size_t rem = idx;
    for (std::size_t s = dims.size(); s-- > 0;) {
      digits[s] = rem % dims[s];
      rem /= dims[s];
    }
    std::size_t kept = 0;
    for (auto k : keep) kept = kept * dims[k] + digits[k];
    std::size_t traced = 0;
    for (auto t : traced_sites) traced = traced * dims[t] + digits[t];
    split.kept[idx] = kept;
    split.traced[idx] = traced;
  }
  return split;
}

// Applies `op` to one site of a big-endian amplitude vector in place.
inline void apply_on_site(CVector& amps, const Dims& dims, std::size_t site, const CMatrix& op) {
  const auto d = static_cast<Eigen::Index>(dims[site]);
  Eigen::Index right = 1;
  for (std::size_t s = site + 1; s < dims.size(); ++s) right *= static_cast<Eigen::Index>(dims[s]);
  const Eigen::Index left = amps.size() / (d * right);
  CVector in(d), out(d);
  for (Eigen::Index l = 0; l < left; ++l) {
    for (Eigen::Index r = 0; r < right; ++r) {
      for (Eigen::Index k = 0; k < d; ++k) in(k) = amps((l * d + k) * right + r);
      out.noalias() = op * in;
      for (Eigen::Index k = 0; k < d; ++k) amps((l * d + k) * right + r) = out(k);
    }
  }
}

}  // namespace detail

/// Matrix T (kept x traced) with Tr_traced |psi><psi| = T T^dagger.
inline CMatrix purification_factor(const StateVector& state, std::span<const std::size_t> keep) {
  const auto split = detail::split_indices(state.dims(), keep);
  CMatrix t = CMatrix::Zero(static_cast<Eigen::Index>(total_dim(split.kept_dims)),
                            static_cast<Eigen::Index>(total_dim(split.traced_dims)));
  for (std::size_t i = 0; i < state.size(); ++i) {
    t(static_cast<Eigen::Index>(split.kept[i]), static_cast<Eigen::Index>(split.traced[i])) =
        state.amps()(static_cast<Eigen::Index>(i));
  }
  return t;
}

inline DensityMatrix partial_trace(const DensityMatrix& dm, std::span<const std::size_t> keep) {
  const auto split = detail::split_indices(dm.dims(), keep);
  const auto n = static_cast<Eigen::Index>(total_dim(split.kept_dims));
  CMatrix out = CMatrix::Zero(n, n);
  const auto& rho = dm.entries();
  for (std::size_t i = 0; i < dm.size(); ++i) {
    for (std::size_t j = 0; j < dm.size(); ++j) {
      if (split.traced[i] != split.traced[j]) continue;
      out(static_cast<Eigen::Index>(split.kept[i]), static_cast<Eigen::Index>(split.kept[j])) +=
          rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return {split.kept_dims, std::move(out)};
}

inline DensityMatrix partial_trace(const StateVector& state, std::span<const std::size_t> keep) {
  Dims kept_dims;
  for (auto k : keep) {
    if (k >= state.num_sites()) throw DimensionError("site index out of range");
    kept_dims.push_back(state.dims()[k]);
  }
  CMatrix t = purification_factor(state, keep);
  return {std::move(kept_dims), t * t.adjoint()};
}

/// Every site except `traced`, in their original order.
inline std::vector<std::size_t> all_sites_except(std::size_t num_sites, std::size_t traced) {
  std::vector<std::size_t> keep;
  for (std::size_t s = 0; s < num_sites; ++s) {
    if (s != traced) keep.push_back(s);
  }
  return keep;
}

struct LocalResult {
  StateVector state;  // unnormalized
  double probability;
};

/// Applies at most one operator per site; sites without an operator see the identity.
inline LocalResult apply_local(const StateVector& state, std::span<const LocalOperator> ops) {
  std::vector<bool> seen(state.num_sites(), false);
  CVector amps = state.amps();
  for (const auto& op : ops) {
    if (op.site >= state.num_sites()) throw DimensionError("operator site out of range");
    if (seen[op.site]) throw DimensionError("two operators on site " + std::to_string(op.site));
    seen[op.site] = true;
    const auto d = static_cast<Eigen::Index>(state.dims()[op.site]);
    if (op.matrix.rows() != d || op.matrix.cols() != d) {
      throw DimensionError("operator shape does not match dimension of site " +
                           std::to_string(op.site));
    }
    detail::apply_on_site(amps, state.dims(), op.site, op.matrix);
  }
  const double p = amps.squaredNorm();
  return {StateVector(state.dims(), std::move(amps)), p};
}

inline LocalResult apply_local(const StateVector& state, std::initializer_list<LocalOperator> ops) {
  return apply_local(state, std::span<const LocalOperator>(ops.begin(), ops.size()));
}

/// Orthonormal eigenvectors weighted by eigenvalue, largest first; eigenvalues
/// below kRankCutoff are dropped.
inline Ensemble eigendecompose(const DensityMatrix& dm) {
  if (dm.hermiticity_error() > kHermitianTolerance) {
    throw InvalidOperationError("density matrix is not Hermitian within tolerance");
  }
  CMatrix h = 0.5 * (dm.entries() + dm.entries().adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  std::vector<EnsembleMember> members;
  for (Eigen::Index k = es.eigenvalues().size(); k-- > 0;) {
    const double w = es.eigenvalues()(k);
    if (w < kRankCutoff) continue;
    members.push_back({w, StateVector(dm.dims(), es.eigenvectors().col(k))});
  }
  return Ensemble(std::move(members));
}

// ---------------------------------------------------------------------------
// Seeded random generators. Every function is a pure function of its seed.

/// splitmix64 step; derives independent child seeds.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace detail {

inline CMatrix ginibre(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    for (Eigen::Index i = 0; i < g.rows(); ++i) g(i, j) = Complex(normal(rng), normal(rng));
  }
  return g;
}

}  // namespace detail

/// Haar-random normalized pure state.
inline StateVector random_pure(const Dims& dims, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  CVector v = detail::ginibre(total_dim(dims), 1, rng).col(0);
  return {dims, v / v.norm()};
}

/// Haar-random unitary (QR of a Ginibre matrix with the phase correction).
inline CMatrix random_unitary(std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  CMatrix g = detail::ginibre(dim, dim, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    const Complex d = r(k, k);
    if (std::abs(d) > 0.0) q.col(k) *= d / std::abs(d);
  }
  return q;
}

/// Random invertible filter with largest singular value exactly 1.
inline LocalOperator random_invertible_local(std::uint64_t seed, std::size_t site = 0,
                                             std::size_t dim = 2) {
  std::mt19937_64 rng(seed);
  for (;;) {
    CMatrix g = detail::ginibre(dim, dim, rng);
    Eigen::JacobiSVD<CMatrix> svd(g);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) < 1e-6 * sv(0)) continue;
    return {site, g / sv(0)};
  }
}

/// `count` operators with sum M^dagger M = I: M_k = G_k S^{-1/2}, S = sum G^dagger G.
inline KrausSet random_kraus_set(std::size_t dim, std::size_t count, std::uint64_t seed) {
  if (dim == 0) throw DimensionError("Kraus dimension must be positive");
  if (count == 0) throw DimensionError("Kraus set needs at least one operator");
  std::mt19937_64 rng(seed);
  KrausSet set;
  const auto d = static_cast<Eigen::Index>(dim);
  CMatrix s = CMatrix::Zero(d, d);
  for (std::size_t k = 0; k < count; ++k) {
    set.push_back(detail::ginibre(dim, dim, rng));
    s += set.back().adjoint() * set.back();
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (s + s.adjoint()));
  CMatrix inv_sqrt = es.eigenvectors() *
                     es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                     es.eigenvectors().adjoint();
  for (auto& m : set) m = m * inv_sqrt;
  return set;
}

}  // namespace tangle4
