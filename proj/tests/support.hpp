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

#pragma once

// Independent oracles and fixed reference data for the unit tests.

#include <cmath>
#include <complex>
#include <optional>
#include <random>
#include <string>

#include "quadqc/error.hpp"
#include "quadqc/linalg.hpp"

namespace quadqc::testing {

inline const double kSqrt3 = std::sqrt(3.0);
inline constexpr double kPi = 3.14159265358979323846;

/// Scaled-and-squared truncated Taylor series for exp(i s H). Shares no code
/// with the eigendecomposition route.
inline ComplexMatrix expm_series(const ComplexMatrix& h, double s) {
  ComplexMatrix a = Complex(0.0, s) * h;
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  while (norm / std::pow(2.0, squarings) > 0.25) ++squarings;
  a /= std::pow(2.0, squarings);
  ComplexMatrix sum = ComplexMatrix::Identity(h.rows(), h.cols());
  ComplexMatrix term = sum;
  for (int k = 1; k <= 30; ++k) {
    term = term * a / static_cast<double>(k);
    sum += term;
  }
  for (int k = 0; k < squarings; ++k) sum = sum * sum;
  return sum;
}

inline ComplexMatrix random_hermitian(std::mt19937_64& rng, int dim,
                                      double scale = 1.0) {
  std::normal_distribution<double> n(0.0, scale);
  ComplexMatrix m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) m(r, c) = Complex(n(rng), n(rng));
  }
  return 0.5 * (m + m.adjoint());
}

inline ComplexMatrix random_traceless_hermitian(std::mt19937_64& rng, int dim) {
  ComplexMatrix m = random_hermitian(rng, dim);
  m -= (m.trace() / static_cast<double>(dim)) * ComplexMatrix::Identity(dim, dim);
  return m;
}

/// Hard (pi/2)_{-y} on spin 3/2, the two-qubit pseudo-Hadamard.
inline ComplexMatrix pseudo_hadamard() {
  const double s = kSqrt3;
  ComplexMatrix m(4, 4);
  m << 1, s, s, 1,
      -s, -1, 1, s,
       s, -1, -1, s,
      -1, s, -s, 1;
  return m / (2.0 * std::sqrt(2.0));
}

/// Spin-3/2 Iy as usually printed.
inline ComplexMatrix iy_three_halves() {
  const Complex i(0.0, 1.0);
  const double h = kSqrt3 / 2.0;
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 1) = -i * h;
  m(1, 0) = i * h;
  m(1, 2) = -i;
  m(2, 1) = i;
  m(2, 3) = -i * h;
  m(3, 2) = i * h;
  return m;
}

/// Reference post-oracle densities (times 8) as fixed matrices,
/// rows/columns in the order 00, 01, 11, 10. The last two are
/// printed in swapped order relative to the state table; see the dj tests.
inline ComplexMatrix printed_density(int f) {
  const double s = kSqrt3;
  ComplexMatrix m(4, 4);
  switch (f) {
    case 1:
      m << 1, -s, s, -1, -s, 3, -3, s, s, -3, 3, -s, -1, s, -s, 1;
      break;
    case 2:
      m << 3, -s, s, -3, -s, 1, -1, s, s, -1, 1, -s, -3, s, -s, 3;
      break;
    case 3:
      m << 3, -s, -3, s, -s, 1, s, -1, -3, s, 3, -s, s, -1, -s, 1;
      break;
    default:
      m << 1, -s, -1, s, -s, 3, s, -3, -1, s, 1, -s, s, -3, -s, 3;
      break;
  }
  return m;
}

/// Code of the quadqc::Error thrown by f, or nullopt if none is thrown.
template <class F>
std::optional<ErrorCode> error_code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline std::string fixture_path(const std::string& rel) {
  return std::string(QUADQC_FIXTURE_DIR) + "/" + rel;
}

}  // namespace quadqc::testing
