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

#include <string_view>
#include <vector>

#include "quadqc/density.hpp"
#include "quadqc/linalg.hpp"
#include "quadqc/spin_system.hpp"

namespace quadqc {

enum class Axis { kX, kMinusX, kY, kMinusY };

/// "x", "-x", "y", "-y". Throws Error(kInvalidArgument) otherwise ("z" is
/// rejected here; z-rotations have their own entry points).
Axis parse_axis(std::string_view text);
std::string_view axis_name(Axis axis);

/// The operator convention shared by every r.f. pulse in this library:
///
///   x  -> exp(+i Ix theta)     -x -> exp(-i Ix theta)
///   y  -> exp(-i Iy theta)     -y -> exp(+i Iy theta)
///
/// With it, hard (pi/2)_{-y} on I=3/2 is the familiar pseudo-Hadamard
/// 1/(2 sqrt2) [[1, s, s, 1], [-s, -1, 1, s], [s, -1, -1, s], [-1, s, -s, 1]]
/// (s = sqrt 3), and two selective (pi/sqrt3)_x pulses on the outer lines
/// give i times the bit-flip of the second qubit.
///
/// Returns the signed generator G such that the pulse is exp(i G theta).
ComplexMatrix pulse_generator(const ComplexMatrix& ix, const ComplexMatrix& iy,
                              Axis axis);

/// Non-selective pulse on all levels.
ComplexMatrix hard_pulse(const SpinSystem& sys, Axis axis, double angle);

/// Ideal, instantaneous transition-selective pulse. The generator is the
/// full Ix/Iy restricted to the transition's 2x2 block, so an outer line of
/// I=3/2 (element sqrt3/2) needs angle pi/sqrt3 for a population inversion
/// while the central line (element 1) needs pi/2.
ComplexMatrix selective_pulse(const SpinSystem& sys, LevelPair levels,
                              Axis axis, double angle);

/// Two-level rotation by `rotation_angle` independent of the matrix element:
/// the block is exp(i s sigma/2 rotation_angle). With axis -y the block is
/// [[cos(a/2), sin(a/2)], [-sin(a/2), cos(a/2)]].
ComplexMatrix subspace_rotation(const SpinSystem& sys, LevelPair levels,
                                Axis axis, double rotation_angle);

/// Transition-selective z-rotation built from the composite
/// (pi/4)_y (phi)_x (pi/4)_{-y} (angles normalised to a unit matrix element).
/// The first-named level acquires e^{-i phi} and the second e^{+i phi}, so
/// "01-11" with phi = pi/2 is diag(1, -i, i, 1).
ComplexMatrix selective_z_pulse(const SpinSystem& sys, LevelPair levels,
                                double phi);

/// tau/2 free evolution, hard pi_x, tau/2 free evolution. Equals
/// hard_pi * quad_evolution(tau) whatever the offset.
ComplexMatrix refocus_block(const SpinSystem& sys, double tau_s);

/// Perfect crusher gradient: drops every coherence, keeps populations.
DeviationDensityMatrix gradient_crush(const DeviationDensityMatrix& rho);

// --- shaped (Gaussian) soft pulses ------------------------------------------

struct GaussianShape {
  double duration_s = 123e-6;
  /// Envelope spans +-truncation sigmas, i.e. sigma = duration / (2 trunc).
  double truncation_sigmas = 3.0;
  int n_slices = 1024;
};

inline constexpr int kMinShapedSlices = 64;

/// Envelope value (peak 1) at time t within [0, duration].
double gaussian_envelope(const GaussianShape& shape, double t);
/// Integral of the envelope over the pulse, seconds.
double gaussian_envelope_area(const GaussianShape& shape);

/// Per-slice propagators (time order) for a Gaussian pulse with peak r.f.
/// amplitude `peak_rad_s` driving the carrier at the frequency of `levels`,
/// integrated under the full Hamiltonian. Their ordered product is the pulse.
std::vector<ComplexMatrix> shaped_pulse_slices(const SpinSystem& sys,
                                               LevelPair levels, Axis axis,
                                               double peak_rad_s,
                                               const GaussianShape& shape);

/// Ordered product of shaped_pulse_slices.
ComplexMatrix shaped_pulse_with_amplitude(const SpinSystem& sys,
                                          LevelPair levels, Axis axis,
                                          double peak_rad_s,
                                          const GaussianShape& shape);

/// Peak amplitude (rad/s) at which the target transition receives the same
/// two-level rotation as selective_pulse(sys, levels, axis, nominal_angle).
/// When neighbouring levels keep the target out of reach (short pulses on a
/// small splitting), returns the amplitude of the closest reachable rotation.
/// Throws Error(kUncalibratable) when the rotation is outside (0, pi] or the
/// envelope is degenerate.
double calibrate_shaped_amplitude(const SpinSystem& sys, LevelPair levels,
                                  Axis axis, double nominal_angle,
                                  const GaussianShape& shape);

struct ShapedPulse {
  double peak_rad_s = 0.0;
  std::vector<ComplexMatrix> slices;
  ComplexMatrix propagator;
  /// Achieved minus requested two-level rotation, rad. Nonzero (beyond the
  /// calibration tolerance) when the requested rotation is unreachable.
  double rotation_error_rad = 0.0;
};

/// Calibrated shaped pulse (results are memoised per parameter set).
ShapedPulse shaped_pulse(const SpinSystem& sys, LevelPair levels, Axis axis,
                         double nominal_angle, const GaussianShape& shape);

/// Achieved two-level rotation angle on `levels` in [0, pi].
double achieved_rotation(const ComplexMatrix& u, LevelPair levels);

}  // namespace quadqc
