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

#include "quadqc/density.hpp"
#include "quadqc/spin_system.hpp"

namespace quadqc {

/// Phenomenological relaxation times, seconds.
struct RelaxationParams {
  double t1_s = 16e-3;
  double t2_central_s = 14e-3;
  double t2_outer_s = 4e-3;
  /// Decay time of double- and triple-quantum coherences.
  double t2_multi_quantum_s = 4e-3;
  /// Scale of the equilibrium state the populations relax toward.
  double equilibrium_scale = 1.0;

  /// T1 = 16 ms, T2 = 14 ms (central) / 4 ms (outer and multi-quantum).
  static RelaxationParams sodium_defaults() { return {}; }

  /// Throws Error(kInvalidArgument) unless every time is positive and finite.
  void validate() const;
};

/// Transverse decay time of the coherence between basis levels a and b.
double coherence_t2(const SpinSystem& sys, const RelaxationParams& params,
                    int a, int b);

/// Populations relax toward equilibrium with e^{-dt/T1}; each coherence is
/// multiplied by e^{-dt/T2} for its transition. dt = 0 returns rho unchanged.
DeviationDensityMatrix apply_relaxation(const DeviationDensityMatrix& rho,
                                        double dt_s,
                                        const RelaxationParams& params,
                                        const SpinSystem& sys);

}  // namespace quadqc
