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

#include "quadqc/dj.hpp"

#include <cmath>
#include <exception>
#include <numbers>

#include "quadqc/compiler.hpp"
#include "quadqc/error.hpp"
#include "quadqc/pulses.hpp"

namespace quadqc::dj {

namespace {

constexpr double kPi = std::numbers::pi;

// basis indices of the logical states
constexpr int k00 = 0;
constexpr int k01 = 1;
constexpr int k11 = 2;
constexpr int k10 = 3;

seq::Event event(seq::EventBody body) { return seq::Event{std::move(body), {}}; }

seq::Event outer_pi(LevelPair levels, Axis axis) {
  return event(seq::SelPulse{levels, axis, kPi / std::sqrt(3.0), std::nullopt});
}

seq::Event zpulse(int a, int b, double phi) {
  return event(seq::ZPulse{LevelPair{a, b}, phi});
}

}  // namespace

OracleId parse_oracle(std::string_view text) {
  if (text == "f1") return OracleId::kF1;
  if (text == "f2") return OracleId::kF2;
  if (text == "f3") return OracleId::kF3;
  if (text == "f4") return OracleId::kF4;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown oracle '" + std::string(text) + "' (expected f1..f4)");
}

std::string_view oracle_name(OracleId id) {
  switch (id) {
    case OracleId::kF1: return "f1";
    case OracleId::kF2: return "f2";
    case OracleId::kF3: return "f3";
    case OracleId::kF4: return "f4";
  }
  return "?";
}

Method parse_method(std::string_view text) {
  if (text == "ideal-matrix") return Method::kIdealMatrix;
  if (text == "selective-z") return Method::kSelectiveZ;
  if (text == "quad-evolution") return Method::kQuadEvolution;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown method '" + std::string(text) +
                  "' (expected ideal-matrix, selective-z or quad-evolution)");
}

std::string_view method_name(Method m) {
  switch (m) {
    case Method::kIdealMatrix: return "ideal-matrix";
    case Method::kSelectiveZ: return "selective-z";
    case Method::kQuadEvolution: return "quad-evolution";
  }
  return "?";
}

std::string_view class_name(OracleClass c) {
  return c == OracleClass::kConstant ? "constant" : "balanced";
}

OracleClass expected_class(OracleId id) {
  return id == OracleId::kF1 || id == OracleId::kF2 ? OracleClass::kConstant
                                                     : OracleClass::kBalanced;
}

ComplexMatrix oracle_matrix(OracleId id) {
  const bool flip_when_0 = id == OracleId::kF2 || id == OracleId::kF4;
  const bool flip_when_1 = id == OracleId::kF2 || id == OracleId::kF3;
  ComplexMatrix u = ComplexMatrix::Zero(4, 4);
  auto block = [&u](int a, int b, bool flip) {
    if (flip) {
      u(a, b) = 1.0;
      u(b, a) = 1.0;
    } else {
      u(a, a) = 1.0;
      u(b, b) = 1.0;
    }
  };
  block(k00, k01, flip_when_0);
  block(k11, k10, flip_when_1);
  return u;
}

seq::SequenceIR oracle_sequence(OracleId id, Method method,
                                const SpinSystem& sys) {
  if (method == Method::kIdealMatrix) {
    throw Error(ErrorCode::kInvalidArgument,
                "the ideal-matrix method has no pulse sequence");
  }
  if (sys.spin().twice() != 3) {
    throw Error(ErrorCode::kInvalidArgument, "oracles are defined for I=3/2");
  }
  seq::SequenceIR ir;
  ir.system = {sys.spin(), sys.lambda_hz(), sys.offset_hz()};
  auto& ev = ir.events;
  switch (id) {
    case OracleId::kF1:
      break;
    case OracleId::kF2:
      ev.push_back(outer_pi({k00, k01}, Axis::kX));
      ev.push_back(outer_pi({k10, k11}, Axis::kX));
      break;
    case OracleId::kF3:
    case OracleId::kF4: {
      const bool f3 = id == OracleId::kF3;
      const double phi = f3 ? 0.5 * kPi : -0.5 * kPi;
      if (method == Method::kSelectiveZ) {
        ev.push_back(zpulse(k00, k01, 0.25 * kPi));
        ev.push_back(zpulse(k10, k11, 0.25 * kPi));
        ev.push_back(zpulse(k01, k11, phi));
      } else {
        if (!(sys.lambda_hz() > 0.0)) {
          throw Error(ErrorCode::kInvalidArgument,
                      "quad-evolution oracles need a non-zero coupling");
        }
        ev.push_back(zpulse(k01, k11, phi));
        ev.push_back(event(seq::QuadDelay{controlled_phase_delay(sys)}));
      }
      ev.push_back(f3 ? outer_pi({k10, k11}, Axis::kMinusY)
                      : outer_pi({k00, k01}, Axis::kY));
      break;
    }
  }
  return ir;
}

ComplexVector superposition_state() {
  const double s = std::sqrt(3.0);
  ComplexVector v(4);
  v << 1.0, -s, s, -1.0;
  return v / (2.0 * std::sqrt(2.0));
}

ComplexVector ideal_state_after_oracle(OracleId id) {
  return oracle_matrix(id) * superposition_state();
}

ComplexMatrix scaled_post_oracle_density(OracleId id) {
  const ComplexVector psi = ideal_state_after_oracle(id);
  return 8.0 * psi * psi.adjoint();
}

OracleClass classify(const std::vector<Peak>& peaks) {
  if (peaks.size() != 3) {
    throw Error(ErrorCode::kInvalidArgument, "expected three peaks");
  }
  double largest = 0.0;
  for (const Peak& p : peaks) largest = std::max(largest, std::abs(p.real_integral));
  for (const Peak& p : peaks) {
    if (!(largest > 0.0) || std::abs(p.real_integral) < 1e-6 * largest) {
      throw Error(ErrorCode::kAmbiguousReadout,
                  "peak " + p.label + " is below the noise floor");
    }
  }
  if (peaks[0].sign != peaks[2].sign) {
    throw Error(ErrorCode::kAmbiguousReadout,
                "the two outer lines have opposite signs");
  }
  return peaks[1].sign == peaks[0].sign ? OracleClass::kConstant
                                        : OracleClass::kBalanced;
}

DJOutcome run_dj(OracleId id, const SpinSystem& sys, Method method,
                 const DJOptions& options) {
  DeviationDensityMatrix rho =
      pseudopure_00(sys, equilibrium_state(sys, options.scale));
  rho = evolve(rho, hard_pulse(sys, Axis::kMinusY, 0.5 * kPi));

  seq::SequenceIR ir;
  if (method == Method::kIdealMatrix) {
    ir.system = {sys.spin(), sys.lambda_hz(), sys.offset_hz()};
    rho = evolve(rho, oracle_matrix(id));
  } else {
    ir = oracle_sequence(id, method, sys);
  }
  ir.events.push_back(event(
      seq::Acquire{options.acquisition.points, options.acquisition.dwell_s}));

  seq::TrajectoryOptions traj;
  if (options.with_relaxation) {
    traj.relax = options.relax;
    // populations relax toward the thermal state the run started from
    traj.relax->equilibrium_scale = options.scale;
  }
  traj.shaped_default = options.shaped;
  traj.lb_hz = options.acquisition.lb_hz;
  const seq::Trajectory t = seq::run_trajectory(ir, sys, rho, traj);

  DJOutcome out;
  out.oracle = id;
  out.method = method;
  out.spectrum = spectrum(*t.fid);
  for (const Peak& p : out.spectrum.peaks) out.peak_integrals.push_back(p.real_integral);
  out.post_oracle = t.final_state();
  out.classification = classify(out.spectrum.peaks);
  return out;
}

namespace serial {

std::vector<DJOutcome> run_dj_batch(const SpinSystem& sys,
                                    const std::vector<DJJob>& jobs) {
  std::vector<DJOutcome> out;
  out.reserve(jobs.size());
  for (const DJJob& j : jobs) out.push_back(run_dj(j.oracle, sys, j.method, j.options));
  return out;
}

}  // namespace serial

namespace omp {

std::vector<DJOutcome> run_dj_batch(const SpinSystem& sys,
                                    const std::vector<DJJob>& jobs) {
  const long n = static_cast<long>(jobs.size());
  std::vector<DJOutcome> out(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
#pragma omp parallel for schedule(dynamic)
  for (long k = 0; k < n; ++k) {
    try {
      out[k] = run_dj(jobs[k].oracle, sys, jobs[k].method, jobs[k].options);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace omp

}  // namespace quadqc::dj
