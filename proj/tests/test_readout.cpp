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

#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "quadqc/dj.hpp"
#include "quadqc/error.hpp"
#include "quadqc/kernels.hpp"
#include "quadqc/pulses.hpp"
#include "quadqc/readout.hpp"
#include "support.hpp"

using namespace quadqc;
using quadqc::testing::error_code_of;
using quadqc::testing::kPi;

namespace {

/// Real-part integral of a*exp(i2pi f t - R t) over |nu - f| <= w:
/// (a/pi) atan(2 pi w / R).
double lorentzian_window(double a, double rate, double w) {
  return a / kPi * std::atan(2 * kPi * w / rate);
}

double energy(const std::vector<Complex>& v) {
  double e = 0.0;
  for (const Complex& x : v) e += std::norm(x);
  return e;
}

}  // namespace

TEST_CASE("observable amplitudes") {
  const SpinSystem sys;
  const auto zero = observable_amplitudes(equilibrium_state(sys), sys);
  for (const Complex& a : zero) CHECK(std::abs(a) == 0.0);

  const auto rho = evolve(equilibrium_state(sys), hard_pulse(sys, Axis::kMinusY, kPi / 2));
  const auto a = observable_amplitudes(rho, sys);
  CHECK(std::abs(a[0]) / std::abs(a[1]) == doctest::Approx(0.75));
  CHECK(std::abs(a[2]) / std::abs(a[1]) == doctest::Approx(0.75));

  // the f3 post-oracle state: central sign opposite to both outer lines
  const ComplexMatrix s3 = dj::scaled_post_oracle_density(dj::OracleId::kF3);
  const ComplexMatrix traceless = s3 - (s3.trace() / 4.0) * identity(4);
  const auto a3 = observable_amplitudes(DeviationDensityMatrix(traceless), sys);
  CHECK(a3[0].real() < 0);
  CHECK(a3[1].real() > 0);
  CHECK(a3[2].real() < 0);
}

TEST_CASE("FID synthesis") {
  const SpinSystem sys = SpinSystem::from_lambda(Spin::from_twice(3), 0.0);
  AcquisitionParams acq;
  acq.points = 64;
  acq.lb_hz = 0.0;
  const Fid flat = synthesize_fid({0.0, 1.0, 0.0}, sys, acq);
  for (const Complex& s : flat.samples) CHECK(std::abs(s - Complex(1.0, 0.0)) < 1e-15);
  const Fid none = synthesize_fid({0.0, 0.0, 0.0}, sys, acq);
  CHECK(energy(none.samples) == 0.0);

  const SpinSystem wide = SpinSystem::from_splitting(Spin::from_twice(3), 120e3);
  CHECK(error_code_of([&] { synthesize_fid({1.0, 1.0, 1.0}, wide, AcquisitionParams{}); }) ==
        ErrorCode::kNyquist);
  acq.points = 100;
  CHECK(error_code_of([&] { synthesize_fid({1.0, 1.0, 1.0}, sys, acq); }) ==
        ErrorCode::kInvalidArgument);
}

TEST_CASE("FFTW transform matches the naive DFT and satisfies Parseval") {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> n;
  std::vector<Complex> x(512);
  for (auto& v : x) v = {n(rng), n(rng)};
  const auto fast = fourier_transform(x);
  std::vector<Complex> slow(x.size());
  kernels::serial::dft(x, slow);
  double diff = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) diff = std::max(diff, std::abs(fast[k] - slow[k]));
  CHECK(diff < 1e-9);
  CHECK(energy(fast) / static_cast<double>(x.size()) ==
        doctest::Approx(energy(x)).epsilon(1e-9));
}

TEST_CASE("spectrum of a single on-resonance line") {
  const SpinSystem sys = SpinSystem::from_lambda(Spin::from_twice(3), 0.0);
  const Fid fid = synthesize_fid({0.0, 1.0, 0.0}, sys, AcquisitionParams{});
  const Spectrum s = spectrum(fid);
  const auto peak = std::max_element(s.amplitude.begin(), s.amplitude.end(),
                                     [](Complex a, Complex b) { return std::abs(a) < std::abs(b); });
  CHECK(s.freq_hz[peak - s.amplitude.begin()] == 0.0);
  CHECK(s.grid_step_hz() == doctest::Approx(1.0 / (4096 * 5e-6)));
  CHECK(s.freq_hz.front() == doctest::Approx(-1e5));
}

TEST_CASE("3:4:3 Lorentzian integrals") {
  const SpinSystem sys;
  const AcquisitionParams acq;
  const Fid fid = synthesize_fid({3.0, 4.0, 3.0}, sys, acq);
  const Spectrum s = spectrum(fid);
  REQUIRE(s.peaks.size() == 3);
  const double rate = kPi * acq.lb_hz;
  const double w = 3 * acq.lb_hz;
  for (int k = 0; k < 3; ++k) {
    const double a = k == 1 ? 4.0 : 3.0;
    CHECK(s.peaks[k].real_integral == doctest::Approx(lorentzian_window(a, rate, w)).epsilon(0.01));
    CHECK(std::abs(s.peaks[k].estimated_frequency_hz - s.peaks[k].frequency_hz) <= s.grid_step_hz());
    CHECK(s.peaks[k].sign == 1);
  }
  CHECK(s.peaks[0].real_integral / s.peaks[1].real_integral == doctest::Approx(0.75).epsilon(0.01));
  CHECK(s.peaks[2].real_integral / s.peaks[1].real_integral == doctest::Approx(0.75).epsilon(0.01));
  CHECK(s.zero_order_phase == 0.0);
}

TEST_CASE("spectrum is linear in the FID") {
  const SpinSystem sys;
  const Fid a = synthesize_fid({1.0, Complex(0.0, 2.0), -0.5}, sys, AcquisitionParams{});
  const Fid b = synthesize_fid({Complex(0.3, -0.2), 0.7, 1.1}, sys, AcquisitionParams{});
  Fid sum = a;
  for (std::size_t k = 0; k < sum.samples.size(); ++k) sum.samples[k] += b.samples[k];
  const Spectrum sa = spectrum(a), sb = spectrum(b), ss = spectrum(sum);
  double diff = 0.0;
  for (std::size_t k = 0; k < ss.amplitude.size(); ++k) {
    diff = std::max(diff, std::abs(ss.amplitude[k] - sa.amplitude[k] - sb.amplitude[k]));
  }
  CHECK(diff < 1e-12);
}

TEST_CASE("zero-order phasing undoes a global receiver phase") {
  const SpinSystem sys;
  const Spectrum ref = spectrum(synthesize_fid({-1.0, 2.0, -1.0}, sys, AcquisitionParams{}));
  Fid fid = synthesize_fid({-1.0, 2.0, -1.0}, sys, AcquisitionParams{});
  for (auto& v : fid.samples) v *= std::exp(Complex(0.0, 0.4));
  const Spectrum s = spectrum(fid);
  CHECK(s.zero_order_phase == doctest::Approx(-0.4).epsilon(1e-6));
  for (int k = 0; k < 3; ++k) {
    CHECK(s.peaks[k].real_integral == doctest::Approx(ref.peaks[k].real_integral).epsilon(1e-9));
  }
  CHECK(choose_zero_order_phase({Complex(0.0, 1.0)}) == doctest::Approx(-kPi / 2));
}

TEST_CASE("relaxation during acquisition narrows the outer lines' integrals") {
  const SpinSystem sys;
  const auto none = spectrum(synthesize_fid({3.0, 4.0, 3.0}, sys, AcquisitionParams{}));
  const auto relaxed = spectrum(synthesize_fid({3.0, 4.0, 3.0}, sys, AcquisitionParams{},
                                               RelaxationParams::sodium_defaults()));
  const double central_scale = relaxed.peaks[1].real_integral / none.peaks[1].real_integral;
  for (int k : {0, 2}) {
    CHECK(relaxed.peaks[k].real_integral < none.peaks[k].real_integral * central_scale);
  }
}

TEST_CASE("CSV formats") {
  const SpinSystem sys;
  AcquisitionParams acq;
  acq.points = 8;
  acq.dwell_s = 1e-5;
  const Spectrum s = spectrum(synthesize_fid({1.0, 1.0, 1.0}, sys, acq));
  std::ostringstream spec, peaks;
  write_spectrum_csv(spec, s);
  write_peaks_csv(peaks, s);
  std::string line;
  std::istringstream in(spec.str());
  std::getline(in, line);
  CHECK(line == "freq_hz,real,imag");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 8);
  std::istringstream pin(peaks.str());
  std::getline(pin, line);
  CHECK(line == "transition,integral,sign");
  std::getline(pin, line);
  CHECK(line.rfind("00-01,", 0) == 0);
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(-16000.0) == "-16000");
}
