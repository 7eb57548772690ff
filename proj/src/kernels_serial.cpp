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

#include <cmath>
#include <numbers>

#include "quadqc/error.hpp"
#include "quadqc/kernels.hpp"

namespace quadqc::kernels {

namespace {

ComplexMatrix frame_rotation(const Eigen::VectorXd& m, double angle) {
  const Eigen::Index d = m.size();
  ComplexMatrix r = ComplexMatrix::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k) r(k, k) = std::exp(-kI * (angle * m(k)));
  return r;
}

}  // namespace

ComplexMatrix slice_propagator(const SliceProblem& p, int k) {
  constexpr double kMagnusCoeff = 0.14433756729740643;  // sqrt(3)/12
  const ComplexMatrix h1 = p.static_h + p.envelope_lo[k] * p.drive;
  const ComplexMatrix h2 = p.static_h + p.envelope_hi[k] * p.drive;
  // Omega = -i dt G, G = (H1+H2)/2 - i sqrt3/12 dt [H2, H1]
  const ComplexMatrix g =
      0.5 * (h1 + h2) - kI * (kMagnusCoeff * p.dt) * (h2 * h1 - h1 * h2);
  const ComplexMatrix u_carrier = expm_hermitian(g, -p.dt, 1e-6 * (1.0 + g.cwiseAbs().maxCoeff()));
  const double t0 = k * p.dt;
  const double t1 = (k + 1) * p.dt;
  return frame_rotation(p.frame_m, p.carrier_rad_s * t1) * u_carrier *
         frame_rotation(p.frame_m, p.carrier_rad_s * t0).adjoint();
}

ComplexMatrix ordered_product(std::span<const ComplexMatrix> slices) {
  if (slices.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "ordered_product of no slices");
  }
  ComplexMatrix u = slices.front();
  for (std::size_t k = 1; k < slices.size(); ++k) u = slices[k] * u;
  return u;
}

namespace serial {

void synthesize_fid(std::span<const Line> lines, double dwell_s,
                    std::span<Complex> out) {
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t n = 0; n < out.size(); ++n) {
    const double t = static_cast<double>(n) * dwell_s;
    Complex acc{0.0, 0.0};
    for (const Line& l : lines) {
      acc += l.amplitude * std::exp(Complex(-l.decay_rate * t, two_pi * l.frequency_hz * t));
    }
    out[n] = acc;
  }
}

void dft(std::span<const Complex> in, std::span<Complex> out) {
  const std::size_t n = in.size();
  if (out.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "dft: size mismatch");
  }
  const double w = -2.0 * std::numbers::pi / static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    Complex acc{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) {
      // reduce k*j mod n first so the phase stays accurate for large n
      const auto kj = static_cast<double>((k * j) % n);
      acc += in[j] * std::polar(1.0, w * kj);
    }
    out[k] = acc;
  }
}

std::vector<ComplexMatrix> slice_propagators(const SliceProblem& p) {
  const int n = static_cast<int>(p.envelope_lo.size());
  std::vector<ComplexMatrix> out(n);
  for (int k = 0; k < n; ++k) out[k] = slice_propagator(p, k);
  return out;
}

}  // namespace serial
}  // namespace quadqc::kernels
