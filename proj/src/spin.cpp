// Copyright 2026 The quadqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "quadqc/spin.hpp"

#include <cmath>

#include "quadqc/error.hpp"

namespace quadqc {

Spin Spin::from_double(double i) {
  const double twice = 2.0 * i;
  const double rounded = std::round(twice);
  if (!std::isfinite(i) || std::abs(twice - rounded) > 1e-12 || rounded < 1) {
    throw Error(ErrorCode::kInvalidSpin,
                "spin must be a positive half-integer, got " +
                    std::to_string(i));
  }
  return Spin(static_cast<int>(rounded));
}

Spin Spin::from_twice(int twice_i) {
  if (twice_i < 1) {
    throw Error(ErrorCode::kInvalidSpin,
                "2I must be >= 1, got " + std::to_string(twice_i));
  }
  return Spin(twice_i);
}

std::string Spin::to_string() const {
  if (twice_ % 2 == 0) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

SpinOperators spin_operators(Spin spin) {
  const int d = spin.dim();
  const double j = spin.value();
  ComplexMatrix iz = ComplexMatrix::Zero(d, d);
  ComplexMatrix iplus = ComplexMatrix::Zero(d, d);
  for (int k = 0; k < d; ++k) iz(k, k) = spin.m(k);
  // <m+1| I+ |m> = sqrt(I(I+1) - m(m+1)); row k-1 holds m+1.
  for (int k = 1; k < d; ++k) {
    const double m = spin.m(k);
    iplus(k - 1, k) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
  }
  ComplexMatrix iminus = iplus.adjoint();
  ComplexMatrix ix = 0.5 * (iplus + iminus);
  ComplexMatrix iy = (iplus - iminus) / (2.0 * kI);
  return SpinOperators{spin, std::move(ix), std::move(iy), std::move(iz),
                       std::move(iplus), std::move(iminus)};
}

SpinOperators spin_operators(double i) {
  return spin_operators(Spin::from_double(i));
}

}  // namespace quadqc
