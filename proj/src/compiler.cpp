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

#include "quadqc/compiler.hpp"

#include <numbers>

#include "quadqc/error.hpp"
#include "quadqc/pulses.hpp"

namespace quadqc::seq {

namespace {

constexpr double kPi = std::numbers::pi;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_system(const SequenceIR& ir, const SpinSystem& sys) {
  if (ir.system.spin != sys.spin()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "script declares I=" + ir.system.spin.to_string() +
                    " but the system has I=" + sys.spin().to_string());
  }
}

std::optional<GaussianShape> shape_for(const SelPulse& p,
                                       const std::optional<GaussianShape>& fallback) {
  return p.shape ? p.shape : fallback;
}

}  // namespace

ComplexMatrix event_propagator(const EventBody& event, const SpinSystem& sys,
                               const CompileOptions& options) {
  return std::visit(
      Overloaded{
          [&](const HardPulse& e) { return hard_pulse(sys, e.axis, e.angle); },
          [&](const SelPulse& e) -> ComplexMatrix {
            if (auto shape = shape_for(e, options.shaped_default)) {
              return shaped_pulse(sys, e.levels, e.axis, e.angle, *shape).propagator;
            }
            return selective_pulse(sys, e.levels, e.axis, e.angle);
          },
          [&](const ZPulse& e) { return selective_z_pulse(sys, e.levels, e.angle); },
          [&](const QuadDelay& e) { return quad_evolution(sys, e.tau_s); },
          [&](const Refocus& e) { return refocus_block(sys, e.tau_s); },
          [&](const Gradient&) -> ComplexMatrix {
            throw Error(ErrorCode::kNonUnitarySequence,
                        "'gradient' is not unitary; use a trajectory run");
          },
          [&](const Acquire&) -> ComplexMatrix {
            throw Error(ErrorCode::kNonUnitarySequence,
                        "'acquire' is not unitary; use a trajectory run");
          },
      },
      event);
}

ComplexMatrix compile_unitary(const SequenceIR& ir, const SpinSystem& sys,
                              const CompileOptions& options) {
  check_system(ir, sys);
  ComplexMatrix u = identity(sys.dim());
  for (const Event& ev : ir.events) {
    u = event_propagator(ev.body, sys, options) * u;
  }
  return u;
}

ComplexMatrix compile_unitary(const SequenceIR& ir,
                              const CompileOptions& options) {
  return compile_unitary(ir, ir.system.to_system(), options);
}

Trajectory run_trajectory(const SequenceIR& ir, const SpinSystem& sys,
                          const DeviationDensityMatrix& rho0,
                          const TrajectoryOptions& options) {
  check_system(ir, sys);
  if (rho0.dim() != sys.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "initial state does not match the spin system");
  }
  if (options.relax) options.relax->validate();
  const CompileOptions compile{options.shaped_default};
  auto relax = [&](const DeviationDensityMatrix& rho, double dt) {
    return options.relax ? apply_relaxation(rho, dt, *options.relax, sys) : rho;
  };

  Trajectory out;
  out.states.push_back(rho0);
  for (const Event& ev : ir.events) {
    const DeviationDensityMatrix& rho = out.states.back();
    DeviationDensityMatrix next = std::visit(
        Overloaded{
            [&](const QuadDelay& e) {
              // diagonal propagator: commutes with the relaxation step
              return relax(evolve(rho, quad_evolution(sys, e.tau_s)), e.tau_s);
            },
            [&](const Refocus& e) {
              const ComplexMatrix half = free_evolution(sys, 0.5 * e.tau_s);
              DeviationDensityMatrix r = relax(evolve(rho, half), 0.5 * e.tau_s);
              r = evolve(r, hard_pulse(sys, Axis::kX, kPi));
              return relax(evolve(r, half), 0.5 * e.tau_s);
            },
            [&](const SelPulse& e) {
              const auto shape = shape_for(e, options.shaped_default);
              if (!shape) return evolve(rho, selective_pulse(sys, e.levels, e.axis, e.angle));
              const ShapedPulse p = shaped_pulse(sys, e.levels, e.axis, e.angle, *shape);
              if (!options.relax) return evolve(rho, p.propagator);
              const double dt = shape->duration_s / shape->n_slices;
              DeviationDensityMatrix r = rho;
              for (const ComplexMatrix& slice : p.slices) r = relax(evolve(r, slice), dt);
              return r;
            },
            [&](const Gradient&) { return gradient_crush(rho); },
            [&](const Acquire& e) {
              AcquisitionParams acq{e.points, e.dwell_s, options.lb_hz};
              out.fid = synthesize_fid(observable_amplitudes(rho, sys), sys, acq,
                                       options.relax);
              return rho;
            },
            [&](const auto& e) { return evolve(rho, event_propagator(e, sys, compile)); },
        },
        ev.body);
    out.states.push_back(std::move(next));
  }
  return out;
}

}  // namespace quadqc::seq
