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

#include <vector>

#include "quadqc/linalg.hpp"
#include "quadqc/spin_system.hpp"

namespace quadqc {

/// Traceless Hermitian deviation density matrix (high-temperature limit).
///
/// Tolerances are relative to the largest entry, so states of any overall
/// scale are accepted.
class DeviationDensityMatrix {
 public:
  /// Throws Error(kNotHermitian) / Error(kInvalidArgument) if `m` is not
  /// Hermitian or not traceless within tol.
  explicit DeviationDensityMatrix(ComplexMatrix m, double tol = 1e-10);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  Complex operator()(int row, int col) const { return m_(row, col); }
  /// Real parts of the diagonal.
  std::vector<double> populations() const;
  bool is_diagonal(double tol = 1e-12) const;

 private:
  ComplexMatrix m_;
};

/// scale * Iz: diag(3, 1, -1, -3)/2 for I=3/2 and scale 1.
DeviationDensityMatrix equilibrium_state(const SpinSystem& sys,
                                         double scale = 1.0);

/// |00> pseudopure state for I=3/2: population inversion (pi) on 10<->11,
/// equilibration (pi/2) on 01<->11, then a gradient crush.
/// Throws Error(kInvalidArgument) for a non-diagonal start or I != 3/2.
DeviationDensityMatrix pseudopure_00(const SpinSystem& sys,
                                     const DeviationDensityMatrix& rho_eq);

/// U rho U^dagger as a deviation matrix.
DeviationDensityMatrix evolve(const DeviationDensityMatrix& rho,
                              const ComplexMatrix& u);

}  // namespace quadqc
