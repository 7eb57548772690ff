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

#include <omp.h>

#include <cmath>
#include <numbers>

#include "quadqc/error.hpp"
#include "quadqc/kernels.hpp"

namespace quadqc::kernels::omp {

void synthesize_fid(std::span<const Line> lines, double dwell_s,
                    std::span<Complex> out) {
  const double two_pi = 2.0 * std::numbers::pi;
  const auto n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) * dwell_s;
    Complex acc{0.0, 0.0};
    for (const Line& l : lines) {
      acc += l.amplitude * std::exp(Complex(-l.decay_rate * t, two_pi * l.frequency_hz * t));
    }
    out[i] = acc;
  }
}

void dft(std::span<const Complex> in, std::span<Complex> out) {
  const std::size_t n = in.size();
  if (out.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "dft: size mismatch");
  }
  const double w = -2.0 * std::numbers::pi / static_cast<double>(n);
  const auto nn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < nn; ++k) {
    Complex acc{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) {
      const auto kj = static_cast<double>((static_cast<std::size_t>(k) * j) % n);
      acc += in[j] * std::polar(1.0, w * kj);
    }
    out[k] = acc;
  }
}

std::vector<ComplexMatrix> slice_propagators(const SliceProblem& p) {
  const int n = static_cast<int>(p.envelope_lo.size());
  std::vector<ComplexMatrix> out(n);
#pragma omp parallel for schedule(static)
  for (int k = 0; k < n; ++k) out[k] = slice_propagator(p, k);
  return out;
}

}  // namespace quadqc::kernels::omp
