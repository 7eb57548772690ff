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

// The .qseq pulse-sequence language. See docs/sequence-language.md for the
// grammar. Events are listed in the order they are applied.

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "quadqc/pulses.hpp"
#include "quadqc/spin_system.hpp"

namespace quadqc::seq {

struct SourceLocation {
  int line = 0;
  int column = 0;
};

struct SystemDecl {
  Spin spin = Spin::from_twice(3);
  /// Declared coupling; absent means the symbol `lambda` is unavailable and
  /// to_system() falls back to the default splitting.
  std::optional<double> lambda_hz;
  double offset_hz = 0.0;

  SpinSystem to_system() const;
  friend bool operator==(const SystemDecl&, const SystemDecl&) = default;
};

struct HardPulse {
  Axis axis = Axis::kX;
  double angle = 0.0;
  friend bool operator==(const HardPulse&, const HardPulse&) = default;
};

struct SelPulse {
  LevelPair levels;
  Axis axis = Axis::kX;
  double angle = 0.0;
  std::optional<GaussianShape> shape;
  friend bool operator==(const SelPulse& a, const SelPulse& b);
};

/// Negative angles rotate about -z.
struct ZPulse {
  LevelPair levels;
  double angle = 0.0;
  friend bool operator==(const ZPulse&, const ZPulse&) = default;
};

/// Free evolution under the quadrupolar coupling alone.
struct QuadDelay {
  double tau_s = 0.0;
  friend bool operator==(const QuadDelay&, const QuadDelay&) = default;
};

/// tau/2 - hard pi_x - tau/2.
struct Refocus {
  double tau_s = 0.0;
  friend bool operator==(const Refocus&, const Refocus&) = default;
};

struct Gradient {
  friend bool operator==(const Gradient&, const Gradient&) = default;
};

struct Acquire {
  int points = 4096;
  double dwell_s = 5e-6;
  friend bool operator==(const Acquire&, const Acquire&) = default;
};

using EventBody = std::variant<HardPulse, SelPulse, ZPulse, QuadDelay,
                               Refocus, Gradient, Acquire>;

struct Event {
  EventBody body;
  SourceLocation location;
};

struct SequenceIR {
  SystemDecl system;
  std::vector<Event> events;
};

/// Structural equality; source locations are ignored.
bool operator==(const SequenceIR& a, const SequenceIR& b);

/// Throws ParseError with a 1-based line/column and a machine-readable code.
SequenceIR parse_sequence(std::string_view text);

/// Reads and parses a file. Throws Error(kIo) if it cannot be read.
SequenceIR parse_sequence_file(const std::string& path);

/// Canonical text: numbers in %.17g, durations in seconds, frequencies in Hz.
/// parse_sequence(print_sequence(ir)) == ir.
std::string print_sequence(const SequenceIR& ir);

/// Evaluates an expression such as "pi/(12*lambda)" or "pi/sqrt(3)".
/// `lambda_rad_s` is the value of `lambda` (absent: using it is an error).
/// Throws ParseError with columns counted from 1 within `text`.
double evaluate_expression(std::string_view text,
                           std::optional<double> lambda_rad_s = std::nullopt);

}  // namespace quadqc::seq
