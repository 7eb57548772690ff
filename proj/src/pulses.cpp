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

#include "quadqc/pulses.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include "quadqc/error.hpp"
#include "quadqc/kernels.hpp"

namespace quadqc {

namespace {

constexpr double kPi = std::numbers::pi;

ComplexMatrix block_of(const ComplexMatrix& m, const Transition& t) {
  ComplexMatrix out = ComplexMatrix::Zero(m.rows(), m.cols());
  out(t.upper, t.lower) = m(t.upper, t.lower);
  out(t.lower, t.upper) = m(t.lower, t.upper);
  return out;
}

void require_finite_angle(double angle) {
  if (!std::isfinite(angle)) {
    throw Error(ErrorCode::kInvalidArgument, "pulse angle must be finite");
  }
}

/// r.f. phase (radians from +x) of a physical field whose propagator
/// exp(-i theta (cos p Ix + sin p Iy)) matches the sign table.
double rf_phase(Axis axis) {
  switch (axis) {
    case Axis::kX: return kPi;
    case Axis::kMinusX: return 0.0;
    case Axis::kY: return 0.5 * kPi;
    case Axis::kMinusY: return -0.5 * kPi;
  }
  return 0.0;
}

Axis flipped(Axis axis) {
  switch (axis) {
    case Axis::kX: return Axis::kMinusX;
    case Axis::kMinusX: return Axis::kX;
    case Axis::kY: return Axis::kMinusY;
    case Axis::kMinusY: return Axis::kY;
  }
  return axis;
}

}  // namespace

Axis parse_axis(std::string_view text) {
  if (text == "x" || text == "+x") return Axis::kX;
  if (text == "-x") return Axis::kMinusX;
  if (text == "y" || text == "+y") return Axis::kY;
  if (text == "-y") return Axis::kMinusY;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown pulse axis '" + std::string(text) + "'");
}

std::string_view axis_name(Axis axis) {
  switch (axis) {
    case Axis::kX: return "x";
    case Axis::kMinusX: return "-x";
    case Axis::kY: return "y";
    case Axis::kMinusY: return "-y";
  }
  return "?";
}

ComplexMatrix pulse_generator(const ComplexMatrix& ix, const ComplexMatrix& iy,
                              Axis axis) {
  switch (axis) {
    case Axis::kX: return ix;
    case Axis::kMinusX: return -ix;
    case Axis::kY: return -iy;
    case Axis::kMinusY: return iy;
  }
  return ix;
}

ComplexMatrix hard_pulse(const SpinSystem& sys, Axis axis, double angle) {
  require_finite_angle(angle);
  const auto& ops = sys.operators();
  return expm_hermitian(pulse_generator(ops.ix, ops.iy, axis), angle);
}

ComplexMatrix selective_pulse(const SpinSystem& sys, LevelPair levels,
                              Axis axis, double angle) {
  require_finite_angle(angle);
  const Transition t = sys.transition(levels);
  const auto& ops = sys.operators();
  const ComplexMatrix g =
      pulse_generator(block_of(ops.ix, t), block_of(ops.iy, t), axis);
  return expm_hermitian(g, angle);
}

ComplexMatrix subspace_rotation(const SpinSystem& sys, LevelPair levels,
                                Axis axis, double rotation_angle) {
  const Transition t = sys.transition(levels);
  // The block of the raw generator is ix_element * sigma; rescale to sigma/2.
  return selective_pulse(sys, levels, axis,
                         rotation_angle / (2.0 * t.ix_element));
}

ComplexMatrix selective_z_pulse(const SpinSystem& sys, LevelPair levels,
                                double phi) {
  require_finite_angle(phi);
  const Transition t = sys.transition(levels);
  // The composite rotates e^{-i phi} onto the higher-m level; a pair written
  // lower-m first therefore takes -phi.
  const double signed_phi = levels.first == t.upper ? phi : -phi;
  const double el = t.ix_element;
  const ComplexMatrix first = selective_pulse(sys, levels, Axis::kMinusY, kPi / (4.0 * el));
  const ComplexMatrix middle = selective_pulse(sys, levels, Axis::kX, signed_phi / el);
  const ComplexMatrix last = selective_pulse(sys, levels, Axis::kY, kPi / (4.0 * el));
  return last * middle * first;
}

ComplexMatrix refocus_block(const SpinSystem& sys, double tau_s) {
  const ComplexMatrix half = free_evolution(sys, 0.5 * tau_s);
  return half * hard_pulse(sys, Axis::kX, kPi) * half;
}

DeviationDensityMatrix gradient_crush(const DeviationDensityMatrix& rho) {
  ComplexMatrix m = ComplexMatrix::Zero(rho.dim(), rho.dim());
  for (int k = 0; k < rho.dim(); ++k) m(k, k) = rho(k, k).real();
  return DeviationDensityMatrix(std::move(m));
}

// --- shaped pulses -----------------------------------------------------------

namespace {

void validate_shape(const GaussianShape& shape) {
  if (!(shape.duration_s > 0.0) || !std::isfinite(shape.duration_s)) {
    throw Error(ErrorCode::kInvalidArgument,
                "shaped pulse duration must be > 0");
  }
  if (shape.n_slices < kMinShapedSlices) {
    throw Error(ErrorCode::kInvalidArgument,
                "shaped pulse needs at least " +
                    std::to_string(kMinShapedSlices) + " slices");
  }
  if (!(shape.truncation_sigmas > 0.0) ||
      !std::isfinite(shape.truncation_sigmas)) {
    throw Error(ErrorCode::kUncalibratable,
                "Gaussian truncation must be a positive number of sigmas");
  }
}

kernels::SliceProblem make_problem(const SpinSystem& sys, LevelPair levels,
                                   Axis axis, double peak_rad_s,
                                   const GaussianShape& shape) {
  validate_shape(shape);
  const Transition t = sys.transition(levels);
  const auto& ops = sys.operators();
  kernels::SliceProblem p;
  p.carrier_rad_s = 2.0 * kPi * t.frequency_hz;
  p.static_h = hamiltonian(sys) - p.carrier_rad_s * ops.iz;
  const double phase = rf_phase(axis);
  p.drive = peak_rad_s * (std::cos(phase) * ops.ix + std::sin(phase) * ops.iy);
  p.frame_m = ops.iz.diagonal().real();
  p.dt = shape.duration_s / shape.n_slices;
  kernels::sample_envelope(p, shape.n_slices, [&shape](double time) {
    return gaussian_envelope(shape, time);
  });
  return p;
}

}  // namespace

double gaussian_envelope(const GaussianShape& shape, double t) {
  const double sigma = shape.duration_s / (2.0 * shape.truncation_sigmas);
  const double x = (t - 0.5 * shape.duration_s) / sigma;
  return std::exp(-0.5 * x * x);
}

double gaussian_envelope_area(const GaussianShape& shape) {
  const double sigma = shape.duration_s / (2.0 * shape.truncation_sigmas);
  return sigma * std::sqrt(2.0 * kPi) *
         std::erf(shape.truncation_sigmas / std::sqrt(2.0));
}

std::vector<ComplexMatrix> shaped_pulse_slices(const SpinSystem& sys,
                                               LevelPair levels, Axis axis,
                                               double peak_rad_s,
                                               const GaussianShape& shape) {
  if (!std::isfinite(peak_rad_s)) {
    throw Error(ErrorCode::kInvalidArgument, "r.f. amplitude must be finite");
  }
  return kernels::omp::slice_propagators(
      make_problem(sys, levels, axis, peak_rad_s, shape));
}

ComplexMatrix shaped_pulse_with_amplitude(const SpinSystem& sys,
                                          LevelPair levels, Axis axis,
                                          double peak_rad_s,
                                          const GaussianShape& shape) {
  const auto slices = shaped_pulse_slices(sys, levels, axis, peak_rad_s, shape);
  return kernels::ordered_product(slices);
}

double achieved_rotation(const ComplexMatrix& u, LevelPair levels) {
  const int a = std::min(levels.first, levels.second);
  const int b = std::max(levels.first, levels.second);
  return 2.0 * std::atan2(std::abs(u(a, b)), std::abs(u(a, a)));
}

double calibrate_shaped_amplitude(const SpinSystem& sys, LevelPair levels,
                                  Axis axis, double nominal_angle,
                                  const GaussianShape& shape) {
  validate_shape(shape);
  const Transition t = sys.transition(levels);
  if (nominal_angle < 0.0) {
    return -calibrate_shaped_amplitude(sys, levels, flipped(axis),
                                       -nominal_angle, shape);
  }
  const double target = 2.0 * t.ix_element * nominal_angle;
  if (!(target > 0.0) || target > kPi + 1e-9) {
    throw Error(ErrorCode::kUncalibratable,
                "two-level rotation " + std::to_string(target) +
                    " rad is outside (0, pi]");
  }
  const double area = gaussian_envelope_area(shape);
  if (!(area > 0.0) || !std::isfinite(area)) {
    throw Error(ErrorCode::kUncalibratable, "degenerate pulse envelope");
  }
  // isolated two-level estimate: rotation = 2 el * amp * area
  const double guess = nominal_angle / area;
  auto rotation_at = [&](double amp) {
    return achieved_rotation(
        shaped_pulse_with_amplitude(sys, levels, axis, amp, shape), levels);
  };
  constexpr double kAngleTol = 1e-6;

  if (target < kPi - 1e-3) {
    double lo = 0.0;
    double hi = guess * (target + kPi) / (2.0 * target);
    if (rotation_at(hi) > target) {
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double err = rotation_at(mid) - target;
        if (std::abs(err) < kAngleTol) return mid;
        (err > 0.0 ? hi : lo) = mid;
        if (hi - lo < 1e-15 * hi) break;
      }
      return 0.5 * (lo + hi);
    }
  }
  // Full inversion, or a line so perturbed by its neighbours that the target
  // may be out of reach: coarse scan, then golden-section refinement of
  // |rotation - target| around the best sample. The closest reachable
  // rotation is returned; ShapedPulse reports the residual.
  auto cost = [&](double amp) { return std::abs(rotation_at(amp) - target); };
  constexpr int kScan = 48;
  const double lo_scan = 0.25 * guess;
  const double step = (2.5 * guess - lo_scan) / kScan;
  int best_k = 0;
  double best_cost = cost(lo_scan);
  for (int k = 1; k <= kScan; ++k) {
    const double ck = cost(lo_scan + k * step);
    if (ck < best_cost) {
      best_cost = ck;
      best_k = k;
    }
  }
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo_scan + (best_k - 1) * step;
  double b = lo_scan + (best_k + 1) * step;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = cost(c);
  double fd = cost(d);
  for (int it = 0; it < 200 && (b - a) > 1e-13 * guess; ++it) {
    if (fc < fd) {
      b = d; d = c; fd = fc;
      c = b - inv_phi * (b - a);
      fc = cost(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + inv_phi * (b - a);
      fd = cost(d);
    }
    if (std::min(fc, fd) < kAngleTol) break;
  }
  return fc < fd ? c : d;
}

ShapedPulse shaped_pulse(const SpinSystem& sys, LevelPair levels, Axis axis,
                         double nominal_angle, const GaussianShape& shape) {
  using Key = std::tuple<int, double, double, int, int, int, double, double,
                         double, int>;
  static std::mutex mutex;
  static std::map<Key, double> cache;
  const Key key{sys.spin().twice(), sys.lambda_hz(), sys.offset_hz(),
                levels.first, levels.second, static_cast<int>(axis),
                nominal_angle, shape.duration_s, shape.truncation_sigmas,
                shape.n_slices};
  double amp = 0.0;
  bool found = false;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) {
      amp = it->second;
      found = true;
    }
  }
  if (!found) {
    amp = calibrate_shaped_amplitude(sys, levels, axis, nominal_angle, shape);
    std::lock_guard lock(mutex);
    cache.emplace(key, amp);
  }
  ShapedPulse out;
  out.peak_rad_s = amp;
  out.slices = shaped_pulse_slices(sys, levels, axis, amp, shape);
  out.propagator = kernels::ordered_product(out.slices);
  const Transition t = sys.transition(levels);
  out.rotation_error_rad = achieved_rotation(out.propagator, levels) -
                           2.0 * t.ix_element * std::abs(nominal_angle);
  return out;
}

}  // namespace quadqc
