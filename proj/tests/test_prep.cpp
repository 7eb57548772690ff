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

#include <random>

#include "quadqc/compiler.hpp"
#include "quadqc/density.hpp"
#include "quadqc/error.hpp"
#include "support.hpp"

using namespace quadqc;
using quadqc::testing::error_code_of;

TEST_CASE("deviation density matrix validation") {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = 1.0;
  CHECK(error_code_of([&] { DeviationDensityMatrix{m}; }) == ErrorCode::kInvalidArgument);
  m(1, 1) = -1.0;
  m(0, 1) = 0.5;
  CHECK(error_code_of([&] { DeviationDensityMatrix{m}; }) == ErrorCode::kNotHermitian);
  m(1, 0) = 0.5;
  CHECK_NOTHROW(DeviationDensityMatrix{m});
  // tolerances are relative: a large state is not rejected for roundoff
  ComplexMatrix big = 1e6 * m;
  big(0, 0) += 1e-8;
  CHECK_NOTHROW(DeviationDensityMatrix{big});
}

TEST_CASE("equilibrium state") {
  const SpinSystem sys;
  const auto rho = equilibrium_state(sys);
  CHECK(rho.populations() == std::vector<double>{1.5, 0.5, -0.5, -1.5});
  CHECK(std::abs(rho.matrix().trace()) == 0.0);
  CHECK(rho.is_diagonal());
  CHECK(equilibrium_state(sys, 2.0).populations()[0] == 3.0);
}

TEST_CASE("|00> pseudopure preparation") {
  const SpinSystem sys;
  const auto pp = pseudopure_00(sys, equilibrium_state(sys));
  const auto p = pp.populations();
  CHECK(p[0] == doctest::Approx(1.5).epsilon(1e-14));
  for (int k = 1; k < 4; ++k) CHECK(std::abs(p[k] + 0.5) < 1e-12);
  CHECK(std::abs(p[1] - p[2]) < 1e-12);
  CHECK(std::abs(p[2] - p[3]) < 1e-12);
  CHECK(pp.is_diagonal());
  CHECK(std::abs(pp.matrix().trace()) < 1e-12);
}

TEST_CASE("pseudopure preparation preconditions") {
  const SpinSystem sys;
  std::mt19937_64 rng(2);
  const DeviationDensityMatrix coherent(quadqc::testing::random_traceless_hermitian(rng, 4));
  CHECK(error_code_of([&] { pseudopure_00(sys, coherent); }) == ErrorCode::kInvalidArgument);
  const auto half = SpinSystem::from_lambda(Spin::from_twice(1), 0.0);
  CHECK(error_code_of([&] { pseudopure_00(half, equilibrium_state(half)); }) ==
        ErrorCode::kInvalidArgument);
}

TEST_CASE("scripted preparation matches the library route") {
  const auto ir = seq::parse_sequence_file(quadqc::testing::fixture_path("sequences/pseudopure.qseq"));
  const SpinSystem sys = ir.system.to_system();
  const auto t = seq::run_trajectory(ir, sys, equilibrium_state(sys));
  const auto direct = pseudopure_00(sys, equilibrium_state(sys));
  CHECK(max_abs_diff(t.final_state().matrix(), direct.matrix()) < 1e-12);
}

TEST_CASE("evolve checks dimensions") {
  const SpinSystem sys;
  CHECK(error_code_of([&] { evolve(equilibrium_state(sys), identity(2)); }) ==
        ErrorCode::kDimensionMismatch);
}
