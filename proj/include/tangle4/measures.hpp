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

// Closed-form entanglement measures: pure three-qubit tangle, two-qubit
// concurrence and concurrence of assistance, and the four-qubit n-tangle.

#pragma once

#include "tangle4/qstate.hpp"

#include <array>
#include <span>
#include <string_view>

namespace tangle4 {

enum class MeasureKind { mu3, tau3, concurrence, concurrence_assist, n_tangle };

constexpr std::string_view to_string(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::mu3: return "mu3";
    case MeasureKind::tau3: return "tau3";
    case MeasureKind::concurrence: return "concurrence";
    case MeasureKind::concurrence_assist: return "concurrence_assist";
    case MeasureKind::n_tangle: return "n_tangle";
  }
  return "unknown";
}

struct MeasureValue {
  double value;
  MeasureKind kind;
};

/// 4|d1 - 2 d2 + 4 d3| over eight amplitudes a_ijk at index 4i + 2j + k.
/// Homogeneous of degree 4, so callers may pass unnormalized vectors and
/// divide by the fourth power of the norm themselves.
inline double mu3_raw(std::span<const Complex, 8> a) {
  const Complex a000 = a[0], a001 = a[1], a010 = a[2], a011 = a[3];
  const Complex a100 = a[4], a101 = a[5], a110 = a[6], a111 = a[7];
  const Complex d1 = a000 * a000 * a111 * a111 + a001 * a001 * a110 * a110 +
                     a010 * a010 * a101 * a101 + a100 * a100 * a011 * a011;
  const Complex p0 = a000 * a111, p1 = a011 * a100, p2 = a101 * a010, p3 = a110 * a001;
  const Complex d2 = p0 * p1 + p0 * p2 + p0 * p3 + p1 * p2 + p1 * p3 + p2 * p3;
  const Complex d3 = a000 * a110 * a101 * a011 + a111 * a001 * a010 * a100;
  return 4.0 * std::abs(d1 - 2.0 * d2 + 4.0 * d3);
}

namespace detail {

inline void require_dims(const Dims& dims, const Dims& expected, std::string_view what) {
  if (dims != expected) {
    throw DimensionError(std::string(what) + " requires " + std::to_string(expected.size()) +
                         " qubits");
  }
}

inline void require_normalized(const StateVector& s, std::string_view what) {
  if (!s.is_normalized(1e-8)) {
    throw DegenerateStateError(std::string(what) + " requires a normalized state");
  }
}

}  // namespace detail

inline MeasureValue mu3_pure(const StateVector& state) {
  detail::require_dims(state.dims(), {2, 2, 2}, "mu3");
  detail::require_normalized(state, "mu3");
  return {mu3_raw(std::span<const Complex, 8>(state.amps().data(), 8)), MeasureKind::mu3};
}

inline MeasureValue tau3_pure(const StateVector& state) {
  detail::require_dims(state.dims(), {2, 2, 2}, "tau3");
  return {std::sqrt(mu3_pure(state).value), MeasureKind::tau3};
}

namespace detail {

// sigma_y (x) sigma_y, real in the computational basis.
inline Eigen::Matrix4cd spin_flip_yy() {
  Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  return yy;
}

}  // namespace detail

/// Decreasing square roots of the eigenvalues of rho * rho~, with
/// rho~ = (Y (x) Y) rho* (Y (x) Y).
///
/// With rho = T T^dagger over its support (eigenvalues above kRankCutoff),
/// the nonzero roots are the singular values of T^T (Y (x) Y) T, so missing
/// rank gives exact zeros instead of square roots of rounding noise.
inline std::array<double, 4> spin_flip_roots(const DensityMatrix& dm) {
  detail::require_dims(dm.dims(), {2, 2}, "concurrence");
  const Eigen::Matrix4cd rho = 0.5 * (dm.entries() + dm.entries().adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho);
  CMatrix t(4, 0);
  for (Eigen::Index k = 0; k < 4; ++k) {
    const double w = es.eigenvalues()(k);
    if (w <= kRankCutoff) continue;
    t.conservativeResize(Eigen::NoChange, t.cols() + 1);
    t.col(t.cols() - 1) = std::sqrt(w) * es.eigenvectors().col(k);
  }
  std::array<double, 4> roots{};
  if (t.cols() == 0) return roots;
  const CMatrix s = t.transpose() * detail::spin_flip_yy() * t;
  Eigen::JacobiSVD<CMatrix> svd(s);
  for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
    roots[static_cast<std::size_t>(k)] = svd.singularValues()(k);
  }
  return roots;
}

/// Wootters concurrence max(0, l1 - l2 - l3 - l4).
inline MeasureValue concurrence_mixed_2q(const DensityMatrix& dm) {
  const auto l = spin_flip_roots(dm);
  return {std::max(0.0, l[0] - l[1] - l[2] - l[3]), MeasureKind::concurrence};
}

/// Concurrence of assistance l1 + l2 + l3 + l4 (fidelity of rho and rho~).
inline MeasureValue concurrence_assist_2q(const DensityMatrix& dm) {
  const auto l = spin_flip_roots(dm);
  return {l[0] + l[1] + l[2] + l[3], MeasureKind::concurrence_assist};
}

/// |<psi| Y(x)Y(x)Y(x)Y |psi*>|^2.
inline MeasureValue n_tangle_4q(const StateVector& state) {
  detail::require_dims(state.dims(), {2, 2, 2, 2}, "n-tangle");
  detail::require_normalized(state, "n-tangle");
  CMatrix y(2, 2);
  y << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  CVector flipped = state.amps().conjugate();
  for (std::size_t site = 0; site < 4; ++site) detail::apply_on_site(flipped, state.dims(), site, y);
  return {std::norm(state.amps().dot(flipped)), MeasureKind::n_tangle};
}

}  // namespace tangle4
