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

#include "quadqc/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "quadqc/error.hpp"
#include "quadqc/pulses.hpp"

namespace quadqc {

DeviationDensityMatrix::DeviationDensityMatrix(ComplexMatrix m, double tol)
    : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() == 0) {
    throw Error(ErrorCode::kDimensionMismatch,
                "density matrix must be square and non-empty");
  }
  const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
  if (!is_hermitian(m_, tol * scale)) {
    throw Error(ErrorCode::kNotHermitian, "density matrix is not Hermitian");
  }
  if (std::abs(m_.trace()) > tol * scale * m_.rows()) {
    throw Error(ErrorCode::kInvalidArgument,
                "deviation density matrix must be traceless");
  }
}

std::vector<double> DeviationDensityMatrix::populations() const {
  std::vector<double> out(static_cast<std::size_t>(dim()));
  for (int k = 0; k < dim(); ++k) out[k] = m_(k, k).real();
  return out;
}

bool DeviationDensityMatrix::is_diagonal(double tol) const {
  const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
  for (int r = 0; r < dim(); ++r) {
    for (int c = 0; c < dim(); ++c) {
      if (r != c && std::abs(m_(r, c)) > tol * scale) return false;
    }
  }
  return true;
}

DeviationDensityMatrix equilibrium_state(const SpinSystem& sys, double scale) {
  if (!std::isfinite(scale)) {
    throw Error(ErrorCode::kInvalidArgument, "equilibrium scale must be finite");
  }
  return DeviationDensityMatrix(scale * sys.operators().iz);
}

DeviationDensityMatrix pseudopure_00(const SpinSystem& sys,
                                     const DeviationDensityMatrix& rho_eq) {
  if (sys.spin().twice() != 3) {
    throw Error(ErrorCode::kInvalidArgument,
                "pseudopure preparation is defined for I=3/2 only");
  }
  if (!rho_eq.is_diagonal()) {
    throw Error(ErrorCode::kInvalidArgument,
                "pseudopure preparation needs a diagonal starting state");
  }
  constexpr double kPi = std::numbers::pi;
  const ComplexMatrix invert =
      subspace_rotation(sys, LevelPair{3, 2}, Axis::kMinusY, kPi);
  const ComplexMatrix equalise =
      subspace_rotation(sys, LevelPair{1, 2}, Axis::kMinusY, 0.5 * kPi);
  return gradient_crush(evolve(rho_eq, equalise * invert));
}

DeviationDensityMatrix evolve(const DeviationDensityMatrix& rho,
                              const ComplexMatrix& u) {
  if (u.rows() != rho.dim() || u.cols() != rho.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "propagator and density matrix dimensions differ");
  }
  ComplexMatrix m = conjugate(rho.matrix(), u);
  // restore exact Hermiticity lost to rounding
  m = 0.5 * (m + m.adjoint()).eval();
  return DeviationDensityMatrix(std::move(m), 1e-8);
}

}  // namespace quadqc
