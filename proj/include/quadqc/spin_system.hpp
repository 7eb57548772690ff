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

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "quadqc/linalg.hpp"
#include "quadqc/spin.hpp"

namespace quadqc {

enum class TransitionKind { kObservable, kForbidden };

/// A pair of levels. `upper` is the higher-m level (smaller basis index).
struct Transition {
  int upper = 0;
  int lower = 0;
  std::string upper_label;
  std::string lower_label;
  TransitionKind kind = TransitionKind::kObservable;
  double frequency_hz = 0.0;  // (E_upper - E_lower) / 2pi
  double ix_element = 0.0;    // |<upper|Ix|lower>|

  std::string label() const { return upper_label + "-" + lower_label; }
  bool observable() const { return kind == TransitionKind::kObservable; }
};

/// Two levels in the order they were written, e.g. "10-11" gives first=|10>.
/// The order only matters for z-rotations.
struct LevelPair {
  int first = 0;
  int second = 0;
  friend bool operator==(LevelPair, LevelPair) = default;
};

/// A single quadrupolar nucleus in the rotating frame.
///
/// Frequencies are stored in Hz; hamiltonian() and the propagators work in
/// rad/s. Basis order is descending m. For 2I+1 = 2^N the default labels are
/// the N-bit Gray code of the basis index, which for I=3/2 gives
/// m = 3/2, 1/2, -1/2, -3/2 -> 00, 01, 11, 10.
class SpinSystem {
 public:
  static constexpr double kDefaultSplittingHz = 16e3;

  /// I=3/2, 16 kHz line splitting, carrier on the central line.
  SpinSystem();

  /// `splitting_hz` is the observed adjacent-line spacing, equal to 6*Lambda.
  static SpinSystem from_splitting(Spin spin, double splitting_hz,
                                   double offset_hz = 0.0);
  static SpinSystem from_lambda(Spin spin, double lambda_hz,
                                double offset_hz = 0.0);

  /// Replace the level labels. Throws unless they are distinct and non-empty.
  SpinSystem with_labels(std::vector<std::string> labels) const;

  Spin spin() const noexcept { return spin_; }
  int dim() const noexcept { return spin_.dim(); }
  double offset_hz() const noexcept { return offset_hz_; }
  double lambda_hz() const noexcept { return lambda_hz_; }
  double splitting_hz() const noexcept { return 6.0 * lambda_hz_; }
  /// Lambda in rad/s.
  double lambda_angular() const noexcept;

  const SpinOperators& operators() const noexcept { return *ops_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(int index) const { return labels_.at(index); }
  /// Basis index for a label, or -1.
  int index_of(std::string_view label) const;

  /// Parses "a-b". Throws kUnknownTransition for unknown labels and
  /// kForbiddenTransition when |dm| != 1.
  LevelPair levels(std::string_view pair) const;
  /// The transition touching both levels (any order). Throws
  /// kForbiddenTransition if the levels are not adjacent in m.
  Transition transition(LevelPair pair) const;

 private:
  SpinSystem(Spin spin, double lambda_hz, double offset_hz);

  Spin spin_;
  double lambda_hz_;
  double offset_hz_;
  std::vector<std::string> labels_;
  std::shared_ptr<const SpinOperators> ops_;
};

/// H = -2pi*offset*Iz + 2pi*Lambda*(3Iz^2 - I(I+1)), rad/s. Diagonal.
ComplexMatrix hamiltonian(const SpinSystem& sys);

/// Quadrupolar part only, rad/s.
ComplexMatrix quadrupolar_hamiltonian(const SpinSystem& sys);

/// All |dm| = 1 transitions (observable, in basis order), followed by the
/// single-label-flip pairs with |dm| > 1 (forbidden).
std::vector<Transition> transition_table(const SpinSystem& sys);

/// Only the observable transitions, in basis order.
std::vector<Transition> observable_transitions(const SpinSystem& sys);

/// True for the m=+1/2 <-> m=-1/2 line of a half-integer spin.
bool is_central(const SpinSystem& sys, const Transition& t);

/// exp(-i H_Q tau) with the Zeeman term excluded (on-resonance evolution).
/// For I=3/2 this is diag(e^{-i3L tau}, e^{i3L tau}, e^{i3L tau}, e^{-i3L tau})
/// with L the angular coupling.
ComplexMatrix quad_evolution(const SpinSystem& sys, double tau_s);

/// exp(-i H tau) with the full rotating-frame Hamiltonian, offset included.
ComplexMatrix free_evolution(const SpinSystem& sys, double tau_s);

/// Controlled-phase delay pi / (12 * Lambda_angular), seconds.
double controlled_phase_delay(const SpinSystem& sys);

}  // namespace quadqc
