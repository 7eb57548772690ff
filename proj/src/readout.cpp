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

#include "quadqc/readout.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <numbers>
#include <ostream>

#include "quadqc/error.hpp"
#include "quadqc/kernels.hpp"

namespace quadqc {

namespace {

constexpr double kPi = std::numbers::pi;

// FFTW's planner is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

double phase_cost(const std::vector<Complex>& integrals, double phi) {
  const Complex rot = std::exp(kI * phi);
  double sum = 0.0;
  for (const Complex& v : integrals) sum += std::abs((rot * v).real());
  return sum;
}

}  // namespace

void AcquisitionParams::validate() const {
  if (points < 2 || (points & (points - 1)) != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "acquisition points must be a power of two >= 2");
  }
  if (!(dwell_s > 0.0) || !std::isfinite(dwell_s)) {
    throw Error(ErrorCode::kInvalidArgument, "dwell time must be positive");
  }
  if (!(lb_hz >= 0.0) || !std::isfinite(lb_hz)) {
    throw Error(ErrorCode::kInvalidArgument, "line broadening must be >= 0");
  }
}

std::vector<Complex> observable_amplitudes(const DeviationDensityMatrix& rho,
                                           const SpinSystem& sys) {
  if (rho.dim() != sys.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "density matrix does not match the spin system");
  }
  std::vector<Complex> out;
  for (const Transition& t : observable_transitions(sys)) {
    out.push_back(t.ix_element * rho(t.upper, t.lower));
  }
  return out;
}

Fid synthesize_fid(const std::vector<Complex>& amplitudes,
                   const SpinSystem& sys, const AcquisitionParams& params,
                   const std::optional<RelaxationParams>& relax) {
  params.validate();
  if (relax) relax->validate();
  const auto transitions = observable_transitions(sys);
  if (amplitudes.size() != transitions.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "one amplitude per observable transition is required");
  }
  const double nyquist = 0.5 / params.dwell_s;
  std::vector<kernels::Line> lines;
  for (std::size_t k = 0; k < transitions.size(); ++k) {
    const Transition& t = transitions[k];
    if (std::abs(t.frequency_hz) >= nyquist) {
      throw Error(ErrorCode::kNyquist,
                  "line " + t.label() + " at " + format_number(t.frequency_hz) +
                      " Hz is outside the +-" + format_number(nyquist) +
                      " Hz spectral window");
    }
    double rate = kPi * params.lb_hz;
    if (relax) rate += 1.0 / coherence_t2(sys, *relax, t.upper, t.lower);
    lines.push_back({t.frequency_hz, amplitudes[k], rate});
  }
  Fid fid;
  fid.dwell_s = params.dwell_s;
  fid.lb_hz = params.lb_hz;
  fid.lines = transitions;
  fid.samples.resize(static_cast<std::size_t>(params.points));
  kernels::omp::synthesize_fid(lines, params.dwell_s, fid.samples);
  return fid;
}

std::vector<Complex> fourier_transform(const std::vector<Complex>& x) {
  const int n = static_cast<int>(x.size());
  std::vector<Complex> in(x);
  std::vector<Complex> out(x.size());
  if (n == 0) return out;
  auto* in_ptr = reinterpret_cast<fftw_complex*>(in.data());
  auto* out_ptr = reinterpret_cast<fftw_complex*>(out.data());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_1d(n, in_ptr, out_ptr, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

Complex Spectrum::phased(std::size_t k) const {
  return std::exp(kI * zero_order_phase) * amplitude.at(k);
}

double Spectrum::grid_step_hz() const {
  return freq_hz.size() < 2 ? 0.0 : freq_hz[1] - freq_hz[0];
}

double choose_zero_order_phase(const std::vector<Complex>& integrals) {
  constexpr int kSteps = 1800;
  const double lo = -0.5 * kPi;
  const double step = kPi / kSteps;
  double best = lo;
  double best_cost = -1.0;
  for (int k = 0; k < kSteps; ++k) {
    const double phi = lo + k * step;
    const double c = phase_cost(integrals, phi);
    // strict improvement keeps the earliest (and so exactly 0 for real data)
    if (c > best_cost * (1.0 + 1e-12)) {
      best_cost = c;
      best = phi;
    }
  }
  // golden-section refinement inside the neighbouring grid cells
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = best - step;
  double b = best + step;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = phase_cost(integrals, c);
  double fd = phase_cost(integrals, d);
  for (int it = 0; it < 80; ++it) {
    if (fc > fd) {
      b = d; d = c; fd = fc;
      c = b - inv_phi * (b - a);
      fc = phase_cost(integrals, c);
    } else {
      a = c; c = d; fc = fd;
      d = a + inv_phi * (b - a);
      fd = phase_cost(integrals, d);
    }
  }
  const double refined = 0.5 * (a + b);
  if (phase_cost(integrals, refined) > best_cost * (1.0 + 1e-12)) {
    best = refined;
  }
  if (best >= 0.5 * kPi) best -= kPi;
  if (best < -0.5 * kPi) best += kPi;
  return best;
}

Spectrum spectrum(const Fid& fid, const SpectrumOptions& options) {
  const int n = fid.points();
  if (n < 2 || !(fid.dwell_s > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "FID needs >= 2 points and a positive dwell time");
  }
  std::vector<Complex> x = fid.samples;
  x[0] *= options.first_point_scale;
  const std::vector<Complex> raw = fourier_transform(x);

  Spectrum s;
  const double df = 1.0 / (n * fid.dwell_s);
  s.freq_hz.resize(n);
  s.amplitude.resize(n);
  const int half = n / 2;
  for (int k = 0; k < n; ++k) {
    // shifted order: bin k holds frequency (k - n/2) df
    const int src = (k + half) % n;
    s.freq_hz[k] = (k - half) * df;
    s.amplitude[k] = fid.dwell_s * raw[src];
  }

  const double linewidth = fid.lb_hz > 0.0 ? fid.lb_hz : df;
  const double window = options.integration_linewidths * linewidth;
  std::vector<Complex> integrals;
  std::vector<std::pair<int, int>> ranges;
  for (const Transition& t : fid.lines) {
    const int lo = std::max(0, static_cast<int>(std::ceil((t.frequency_hz - window) / df)) + half);
    const int hi = std::min(n - 1, static_cast<int>(std::floor((t.frequency_hz + window) / df)) + half);
    Complex acc{0.0, 0.0};
    for (int k = lo; k <= hi; ++k) acc += s.amplitude[k];
    integrals.push_back(acc * df);
    ranges.emplace_back(lo, hi);
  }
  s.zero_order_phase = choose_zero_order_phase(integrals);
  const Complex rot = std::exp(kI * s.zero_order_phase);
  for (std::size_t i = 0; i < fid.lines.size(); ++i) {
    Peak p;
    p.label = fid.lines[i].label();
    p.frequency_hz = fid.lines[i].frequency_hz;
    p.complex_integral = integrals[i];
    p.real_integral = (rot * integrals[i]).real();
    p.sign = p.real_integral > 0.0 ? 1 : (p.real_integral < 0.0 ? -1 : 0);
    auto [lo, hi] = ranges[i];
    int best = lo;
    for (int k = lo; k <= hi; ++k) {
      if (std::abs(s.amplitude[k]) > std::abs(s.amplitude[best])) best = k;
    }
    if (lo <= hi) {
      p.estimated_frequency_hz = s.freq_hz[best];
      p.height = (rot * s.amplitude[best]).real();
    }
    s.peaks.push_back(std::move(p));
  }
  return s;
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_spectrum_csv(std::ostream& os, const Spectrum& s) {
  os << "freq_hz,real,imag\n";
  for (std::size_t k = 0; k < s.freq_hz.size(); ++k) {
    const Complex v = s.phased(k);
    os << format_number(s.freq_hz[k]) << ',' << format_number(v.real()) << ','
       << format_number(v.imag()) << '\n';
  }
}

void write_peaks_csv(std::ostream& os, const Spectrum& s) {
  os << "transition,integral,sign\n";
  for (const Peak& p : s.peaks) {
    os << p.label << ',' << format_number(p.real_integral) << ',' << p.sign
       << '\n';
  }
}

}  // namespace quadqc
