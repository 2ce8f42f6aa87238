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

#pragma once

#include "tangle4/tangle4.hpp"

#include <cmath>
#include <initializer_list>
#include <string_view>
#include <utility>

namespace tangle4::testing {

/// Normalized sum of weighted qubit basis kets, e.g. ket({{1, "000"}, {1, "111"}}).
inline StateVector ket(std::initializer_list<std::pair<Complex, std::string_view>> terms) {
  CVector v;
  Dims dims;
  for (const auto& [coeff, bits] : terms) {
    const auto b = StateVector::basis(bits);
    if (v.size() == 0) {
      v = CVector::Zero(b.amps().size());
      dims = b.dims();
    }
    v += coeff * b.amps();
  }
  return normalize(StateVector(dims, v));
}

inline StateVector ghz3() { return ket({{1.0, "000"}, {1.0, "111"}}); }
inline StateVector w3() { return ket({{1.0, "001"}, {1.0, "010"}, {1.0, "100"}}); }
inline StateVector ghz4() { return ket({{1.0, "0000"}, {1.0, "1111"}}); }
inline StateVector w4() { return ket({{1.0, "0001"}, {1.0, "0010"}, {1.0, "0100"}, {1.0, "1000"}}); }
inline StateVector bell() { return ket({{1.0, "00"}, {1.0, "11"}}); }
inline StateVector bell_bell() { return tensor(bell(), bell()); }

inline DensityMatrix traced_abc(const StateVector& four, std::size_t traced = 3) {
  return partial_trace(four, all_sites_except(4, traced));
}

inline double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

/// Applies a one-site unitary on `site` of a pure state.
inline StateVector rotate(const StateVector& s, std::size_t site, std::uint64_t seed) {
  const std::array<LocalOperator, 1> op{LocalOperator{site, random_unitary(s.dims()[site], seed)}};
  return apply_local(s, op).state;
}

}  // namespace tangle4::testing
