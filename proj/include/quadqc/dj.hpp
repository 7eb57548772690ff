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

#include <optional>
#include <string_view>
#include <vector>

#include "quadqc/density.hpp"
#include "quadqc/readout.hpp"
#include "quadqc/relaxation.hpp"
#include "quadqc/sequence.hpp"

namespace quadqc::dj {

/// The four one-bit functions: f1 = 0, f2 = 1, f3 = x, f4 = not x.
enum class OracleId { kF1, kF2, kF3, kF4 };
enum class OracleClass { kConstant, kBalanced };
enum class Method { kIdealMatrix, kSelectiveZ, kQuadEvolution };

inline constexpr OracleId kAllOracles[] = {OracleId::kF1, OracleId::kF2,
                                           OracleId::kF3, OracleId::kF4};
inline constexpr Method kAllMethods[] = {
    Method::kIdealMatrix, Method::kSelectiveZ, Method::kQuadEvolution};

/// "f1".."f4"; throws Error(kInvalidArgument).
OracleId parse_oracle(std::string_view text);
std::string_view oracle_name(OracleId id);
/// "ideal-matrix", "selective-z", "quad-evolution".
Method parse_method(std::string_view text);
std::string_view method_name(Method m);
std::string_view class_name(OracleClass c);
OracleClass expected_class(OracleId id);

/// U_f |x, y> = |x, y XOR f(x)> in the basis order 00, 01, 11, 10.
ComplexMatrix oracle_matrix(OracleId id);

/// Pulse-level realisation. f1 is empty and f2 is the same for both methods.
/// Compiled results: f2 -> i U2, f3 and f4 -> e^{-i pi/4} U. Throws
/// Error(kInvalidArgument) for kIdealMatrix, and for kQuadEvolution when the
/// system has no quadrupolar coupling.
seq::SequenceIR oracle_sequence(OracleId id, Method method,
                                const SpinSystem& sys);

/// (1, -sqrt3, sqrt3, -1) / (2 sqrt2): hard (pi/2)_{-y} applied to |00>.
ComplexVector superposition_state();
/// U_f applied to superposition_state().
ComplexVector ideal_state_after_oracle(OracleId id);
/// 8 |psi''><psi''|, the integer-valued form of the post-oracle state.
ComplexMatrix scaled_post_oracle_density(OracleId id);

struct DJOptions {
  bool with_relaxation = false;
  RelaxationParams relax = RelaxationParams::sodium_defaults();
  /// Replace ideal selective pulses by calibrated Gaussian pulses.
  std::optional<GaussianShape> shaped;
  /// Overall scale of the thermal state.
  double scale = 1.0;
  AcquisitionParams acquisition;
};

struct DJOutcome {
  OracleId oracle = OracleId::kF1;
  Method method = Method::kIdealMatrix;
  OracleClass classification = OracleClass::kConstant;
  /// Phased real integrals in observable_transitions() order.
  std::vector<double> peak_integrals;
  Spectrum spectrum;
  DeviationDensityMatrix post_oracle{ComplexMatrix::Zero(4, 4)};
};

/// Constant iff the central line has the sign of the two outer lines.
/// Throws Error(kAmbiguousReadout) if any integral is below 1e-6 of the
/// largest or the outer lines disagree.
OracleClass classify(const std::vector<Peak>& peaks);

/// Pseudopure |00> -> hard (pi/2)_{-y} -> oracle -> acquire -> spectrum.
DJOutcome run_dj(OracleId id, const SpinSystem& sys, Method method,
                 const DJOptions& options = {});

struct DJJob {
  OracleId oracle = OracleId::kF1;
  Method method = Method::kIdealMatrix;
  DJOptions options;
};

namespace serial {
std::vector<DJOutcome> run_dj_batch(const SpinSystem& sys,
                                    const std::vector<DJJob>& jobs);
}  // namespace serial

namespace omp {
/// One job per thread; the first exception (in job order) is rethrown.
std::vector<DJOutcome> run_dj_batch(const SpinSystem& sys,
                                    const std::vector<DJJob>& jobs);
}  // namespace omp

}  // namespace quadqc::dj
