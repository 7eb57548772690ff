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

// Data-parallel inner loops. Every kernel has a straightforward serial
// version (the reference the tests check against) and an OpenMP version with
// the same signature. Results of the two agree to roundoff.

#include <span>
#include <vector>

#include "quadqc/linalg.hpp"

namespace quadqc::kernels {

/// One damped complex exponential a * exp((i 2pi f - rate) t).
struct Line {
  double frequency_hz = 0.0;
  Complex amplitude{0.0, 0.0};
  double decay_rate = 0.0;  // 1/s
};

/// Time-sliced Schroedinger problem in a frame rotating at `carrier_rad_s`
/// about z. Within slice k the carrier-frame Hamiltonian is
///   static_h + env(t) * drive
/// and the envelope is sampled at the two Gauss-Legendre nodes of the slice.
struct SliceProblem {
  ComplexMatrix static_h;
  ComplexMatrix drive;
  Eigen::VectorXd frame_m;  // diagonal of Iz
  double carrier_rad_s = 0.0;
  double dt = 0.0;
  std::vector<double> envelope_lo;
  std::vector<double> envelope_hi;
};

/// Builds a SliceProblem's envelope samples for `n` slices of length dt.
template <class Envelope>
void sample_envelope(SliceProblem& p, int n, Envelope&& env) {
  constexpr double kNodeOffset = 0.28867513459481287;  // sqrt(3)/6
  p.envelope_lo.resize(n);
  p.envelope_hi.resize(n);
  for (int k = 0; k < n; ++k) {
    const double mid = (k + 0.5) * p.dt;
    p.envelope_lo[k] = env(mid - kNodeOffset * p.dt);
    p.envelope_hi[k] = env(mid + kNodeOffset * p.dt);
  }
}

/// Fourth-order Magnus step for slice k, returned in the (non-carrier)
/// rotating frame.
ComplexMatrix slice_propagator(const SliceProblem& p, int k);

/// Product of slices, applying slices[0] first.
ComplexMatrix ordered_product(std::span<const ComplexMatrix> slices);

namespace serial {

void synthesize_fid(std::span<const Line> lines, double dwell_s,
                    std::span<Complex> out);

/// Naive O(N^2) forward DFT, X_k = sum_n x_n exp(-i 2pi k n / N).
void dft(std::span<const Complex> in, std::span<Complex> out);

std::vector<ComplexMatrix> slice_propagators(const SliceProblem& p);

}  // namespace serial

namespace omp {

void synthesize_fid(std::span<const Line> lines, double dwell_s,
                    std::span<Complex> out);

void dft(std::span<const Complex> in, std::span<Complex> out);

std::vector<ComplexMatrix> slice_propagators(const SliceProblem& p);

}  // namespace omp

}  // namespace quadqc::kernels
