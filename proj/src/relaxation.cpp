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

#include "quadqc/relaxation.hpp"

#include <cmath>
#include <cstdlib>

#include "quadqc/error.hpp"

namespace quadqc {

namespace {

void require_time(double t, const char* name) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(name) + " must be positive and finite");
  }
}

}  // namespace

void RelaxationParams::validate() const {
  require_time(t1_s, "T1");
  require_time(t2_central_s, "T2 (central)");
  require_time(t2_outer_s, "T2 (outer)");
  require_time(t2_multi_quantum_s, "T2 (multiple quantum)");
  if (!std::isfinite(equilibrium_scale)) {
    throw Error(ErrorCode::kInvalidArgument, "equilibrium scale must be finite");
  }
}

double coherence_t2(const SpinSystem& sys, const RelaxationParams& params,
                    int a, int b) {
  const int twice_m_a = sys.spin().twice() - 2 * a;
  const int twice_m_b = sys.spin().twice() - 2 * b;
  if (std::abs(twice_m_a - twice_m_b) != 2) return params.t2_multi_quantum_s;
  // the single-quantum line between m=+1/2 and m=-1/2
  const bool central = (twice_m_a + twice_m_b) == 0;
  return central ? params.t2_central_s : params.t2_outer_s;
}

DeviationDensityMatrix apply_relaxation(const DeviationDensityMatrix& rho,
                                        double dt_s,
                                        const RelaxationParams& params,
                                        const SpinSystem& sys) {
  if (!(dt_s >= 0.0) || !std::isfinite(dt_s)) {
    throw Error(ErrorCode::kInvalidArgument,
                "relaxation interval must be >= 0 and finite");
  }
  params.validate();
  if (rho.dim() != sys.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "density matrix does not match the spin system");
  }
  if (dt_s == 0.0) return rho;
  const ComplexMatrix& iz = sys.operators().iz;
  const double e1 = std::exp(-dt_s / params.t1_s);
  ComplexMatrix m = rho.matrix();
  for (int r = 0; r < rho.dim(); ++r) {
    const double eq = params.equilibrium_scale * iz(r, r).real();
    m(r, r) = eq + (m(r, r).real() - eq) * e1;
    for (int c = r + 1; c < rho.dim(); ++c) {
      const double e2 = std::exp(-dt_s / coherence_t2(sys, params, r, c));
      m(r, c) *= e2;
      m(c, r) = std::conj(m(r, c));
    }
  }
  return DeviationDensityMatrix(std::move(m), 1e-8);
}

}  // namespace quadqc
