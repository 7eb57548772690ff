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

#include <optional>
#include <vector>

#include "quadqc/density.hpp"
#include "quadqc/readout.hpp"
#include "quadqc/relaxation.hpp"
#include "quadqc/sequence.hpp"

namespace quadqc::seq {

struct CompileOptions {
  /// When set, selective pulses without their own shape use this one.
  std::optional<GaussianShape> shaped_default;
};

/// Propagator of a single unitary event.
ComplexMatrix event_propagator(const EventBody& event, const SpinSystem& sys,
                               const CompileOptions& options = {});

/// Ordered product of the event propagators (first event applied first).
/// Throws Error(kNonUnitarySequence) for gradient or acquire events and
/// Error(kDimensionMismatch) if `sys` does not match the declared spin.
ComplexMatrix compile_unitary(const SequenceIR& ir, const SpinSystem& sys,
                              const CompileOptions& options = {});
/// Compiles against the system the script declares.
ComplexMatrix compile_unitary(const SequenceIR& ir,
                              const CompileOptions& options = {});

struct TrajectoryOptions {
  std::optional<RelaxationParams> relax;
  std::optional<GaussianShape> shaped_default;
  /// Line broadening for the acquire event.
  double lb_hz = 200.0;
};

struct Trajectory {
  /// states[0] is the input; states[k] follows event k-1.
  std::vector<DeviationDensityMatrix> states;
  std::optional<Fid> fid;

  const DeviationDensityMatrix& final_state() const { return states.back(); }
};

/// Applies each event in turn. Relaxation (when given) acts during delays,
/// refocusing blocks, shaped pulses and the acquisition, never during ideal
/// pulses.
Trajectory run_trajectory(const SequenceIR& ir, const SpinSystem& sys,
                          const DeviationDensityMatrix& rho0,
                          const TrajectoryOptions& options = {});

}  // namespace quadqc::seq
