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

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "quadqc/density.hpp"
#include "quadqc/relaxation.hpp"
#include "quadqc/spin_system.hpp"

namespace quadqc {

struct AcquisitionParams {
  int points = 4096;       // power of two
  double dwell_s = 5e-6;   // 200 kHz spectral width
  double lb_hz = 200.0;    // exponential line broadening

  /// Throws Error(kInvalidArgument).
  void validate() const;
};

/// Single-quantum signal strength of each observable transition,
/// ix_element * rho(upper, lower), in observable_transitions() order.
std::vector<Complex> observable_amplitudes(const DeviationDensityMatrix& rho,
                                           const SpinSystem& sys);

struct Fid {
  double dwell_s = 0.0;
  double lb_hz = 0.0;
  std::vector<Complex> samples;
  /// Lines the signal was built from; the spectrum integrates around them.
  std::vector<Transition> lines;

  int points() const noexcept { return static_cast<int>(samples.size()); }
};

/// s(t_k) = sum_t a_t exp(i 2pi f_t t_k) exp(-t_k/T2_t) exp(-pi lb t_k).
/// Without `relax` there is no T2 decay. Throws Error(kNyquist) when a line
/// lies outside the spectral window.
Fid synthesize_fid(const std::vector<Complex>& amplitudes,
                   const SpinSystem& sys, const AcquisitionParams& params,
                   const std::optional<RelaxationParams>& relax = std::nullopt);

/// Unscaled forward DFT, X_k = sum_n x_n exp(-i 2pi k n / N) (FFTW).
std::vector<Complex> fourier_transform(const std::vector<Complex>& x);

struct Peak {
  std::string label;
  double frequency_hz = 0.0;            // from the transition table
  double estimated_frequency_hz = 0.0;  // grid point of the largest |value|
  Complex complex_integral{0.0, 0.0};   // before phasing
  double real_integral = 0.0;           // after zero-order phasing
  int sign = 0;
  double height = 0.0;                  // phased real value at the estimate
};

struct SpectrumOptions {
  /// Weight of the t=0 sample (0.5 removes the baseline offset of a
  /// discretely sampled decay).
  double first_point_scale = 0.5;
  /// Half-width of the integration window in linewidths (= lb, or one grid
  /// step when lb = 0).
  double integration_linewidths = 3.0;
};

/// Spectrum on a grid centred at 0 Hz. `amplitude` is the raw transform
/// (scaled by the dwell time) so it is linear in the FID; the zero-order
/// phase is stored separately and applied to the peak table and to phased().
struct Spectrum {
  std::vector<double> freq_hz;
  std::vector<Complex> amplitude;
  double zero_order_phase = 0.0;
  std::vector<Peak> peaks;

  Complex phased(std::size_t k) const;
  double grid_step_hz() const;
};

Spectrum spectrum(const Fid& fid, const SpectrumOptions& options = {});

/// Phase in [-pi/2, pi/2) maximising sum |Re(e^{i phi} I_t)|.
double choose_zero_order_phase(const std::vector<Complex>& integrals);

/// %.17g.
std::string format_number(double x);

/// Header "freq_hz,real,imag"; phased values.
void write_spectrum_csv(std::ostream& os, const Spectrum& s);
/// Header "transition,integral,sign".
void write_peaks_csv(std::ostream& os, const Spectrum& s);

}  // namespace quadqc
