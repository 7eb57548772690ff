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

#include <string>

#include "quadqc/linalg.hpp"

namespace quadqc {

/// Spin quantum number stored as 2I so half-integers stay exact.
class Spin {
 public:
  /// Throws Error(kInvalidSpin) unless 2I is a positive integer.
  static Spin from_double(double i);
  static Spin from_twice(int twice_i);

  int twice() const noexcept { return twice_; }
  double value() const noexcept { return 0.5 * twice_; }
  int dim() const noexcept { return twice_ + 1; }
  /// m of basis index k in the descending-m basis.
  double m(int k) const noexcept { return value() - k; }
  /// "3/2", "1", ...
  std::string to_string() const;

  friend bool operator==(Spin, Spin) = default;

 private:
  explicit Spin(int twice_i) : twice_(twice_i) {}
  int twice_;
};

/// Angular-momentum matrices (units of hbar) in the descending-m basis.
struct SpinOperators {
  Spin spin;
  ComplexMatrix ix;
  ComplexMatrix iy;
  ComplexMatrix iz;
  ComplexMatrix iplus;
  ComplexMatrix iminus;
};

SpinOperators spin_operators(Spin spin);
SpinOperators spin_operators(double i);

}  // namespace quadqc
