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

#include <complex>
#include <Eigen/Dense>

namespace quadqc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kDefaultTolerance = 1e-10;
inline constexpr Complex kI{0.0, 1.0};

ComplexMatrix identity(Eigen::Index dim);

/// Largest absolute entry-wise difference.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b,
                  double tol = kDefaultTolerance);
bool is_hermitian(const ComplexMatrix& m, double tol = kDefaultTolerance);

/// True iff ||U^dagger U - 1||_inf < tol.
bool is_unitary(const ComplexMatrix& u, double tol = 1e-9);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// exp(i * s * H) for Hermitian H, via eigendecomposition.
/// Throws Error(kNotHermitian) if H is not Hermitian within tol.
ComplexMatrix expm_hermitian(const ComplexMatrix& h, double s,
                             double tol = kDefaultTolerance);

/// |Tr(U^dagger V)| / d. Equals 1 iff V = e^{i phi} U.
double gate_fidelity_global_phase(const ComplexMatrix& u,
                                  const ComplexMatrix& v);

/// The phase phi such that V ~ e^{i phi} U (argument of Tr(U^dagger V)).
double global_phase(const ComplexMatrix& u, const ComplexMatrix& v);

/// U * rho * U^dagger.
ComplexMatrix conjugate(const ComplexMatrix& rho, const ComplexMatrix& u);

}  // namespace quadqc
