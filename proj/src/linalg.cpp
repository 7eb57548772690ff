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

#include "quadqc/linalg.hpp"

#include <cmath>
#include <string>

#include "quadqc/error.hpp"

namespace quadqc {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "E_INVALID_ARGUMENT";
    case ErrorCode::kDimensionMismatch: return "E_DIMENSION_MISMATCH";
    case ErrorCode::kNotHermitian: return "E_NOT_HERMITIAN";
    case ErrorCode::kNotUnitary: return "E_NOT_UNITARY";
    case ErrorCode::kInvalidSpin: return "E_INVALID_SPIN";
    case ErrorCode::kForbiddenTransition: return "E_FORBIDDEN_TRANSITION";
    case ErrorCode::kUnknownTransition: return "E_UNKNOWN_TRANSITION";
    case ErrorCode::kUncalibratable: return "E_UNCALIBRATABLE";
    case ErrorCode::kNyquist: return "E_NYQUIST";
    case ErrorCode::kNonUnitarySequence: return "E_NON_UNITARY_SEQUENCE";
    case ErrorCode::kAmbiguousReadout: return "E_AMBIGUOUS_READOUT";
    case ErrorCode::kSyntax: return "E_SYNTAX";
    case ErrorCode::kUnknownKeyword: return "E_UNKNOWN_KEYWORD";
    case ErrorCode::kDuplicateAcquire: return "E_DUPLICATE_ACQUIRE";
    case ErrorCode::kAcquireNotLast: return "E_ACQUIRE_NOT_LAST";
    case ErrorCode::kLambdaUndeclared: return "E_LAMBDA_UNDECLARED";
    case ErrorCode::kMissingSystem: return "E_MISSING_SYSTEM";
    case ErrorCode::kBadValue: return "E_BAD_VALUE";
    case ErrorCode::kIo: return "E_IO";
  }
  return "E_UNKNOWN";
}

ComplexMatrix identity(Eigen::Index dim) {
  return ComplexMatrix::Identity(dim, dim);
}

namespace {

void require_same_square(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "matrix dimensions differ: " + std::to_string(a.rows()) + "x" +
                    std::to_string(a.cols()) + " vs " +
                    std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
}

}  // namespace

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_square(a, b);
  return (a - b).cwiseAbs().maxCoeff();
}

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return (a - b).cwiseAbs().maxCoeff() <= tol;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const ComplexMatrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  const ComplexMatrix defect = u.adjoint() * u - identity(u.rows());
  return defect.cwiseAbs().maxCoeff() < tol;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_square(a, b);
  return a * b - b * a;
}

ComplexMatrix expm_hermitian(const ComplexMatrix& h, double s, double tol) {
  if (!is_hermitian(h, tol)) {
    throw Error(ErrorCode::kNotHermitian,
                "expm_hermitian: generator is not Hermitian");
  }
  // Symmetrise so roundoff in the input cannot leak into the eigenvectors.
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  const Eigen::VectorXd& eval = solver.eigenvalues();
  const ComplexMatrix& evec = solver.eigenvectors();
  ComplexVector phases(eval.size());
  for (Eigen::Index k = 0; k < eval.size(); ++k) {
    phases(k) = std::exp(kI * (s * eval(k)));
  }
  return evec * phases.asDiagonal() * evec.adjoint();
}

double gate_fidelity_global_phase(const ComplexMatrix& u,
                                  const ComplexMatrix& v) {
  require_same_square(u, v);
  const Complex tr = (u.adjoint() * v).trace();
  return std::abs(tr) / static_cast<double>(u.rows());
}

double global_phase(const ComplexMatrix& u, const ComplexMatrix& v) {
  require_same_square(u, v);
  return std::arg((u.adjoint() * v).trace());
}

ComplexMatrix conjugate(const ComplexMatrix& rho, const ComplexMatrix& u) {
  require_same_square(rho, u);
  return u * rho * u.adjoint();
}

}  // namespace quadqc
