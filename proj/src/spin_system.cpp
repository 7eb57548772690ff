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

#include "quadqc/spin_system.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "quadqc/error.hpp"

namespace quadqc {

namespace {

std::vector<std::string> gray_labels(int dim) {
  int bits = 1;
  while ((1 << bits) < dim) ++bits;
  std::vector<std::string> out;
  out.reserve(dim);
  for (int k = 0; k < dim; ++k) {
    const int g = k ^ (k >> 1);
    std::string s(bits, '0');
    for (int b = 0; b < bits; ++b) {
      if (g & (1 << (bits - 1 - b))) s[b] = '1';
    }
    out.push_back(std::move(s));
  }
  return out;
}

int hamming(const std::string& a, const std::string& b) {
  if (a.size() != b.size()) return -1;
  int n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) n += a[i] != b[i];
  return n;
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(what) + " must be finite");
  }
}

}  // namespace

SpinSystem::SpinSystem()
    : SpinSystem(Spin::from_twice(3), kDefaultSplittingHz / 6.0, 0.0) {}

SpinSystem::SpinSystem(Spin spin, double lambda_hz, double offset_hz)
    : spin_(spin),
      lambda_hz_(lambda_hz),
      offset_hz_(offset_hz),
      labels_(gray_labels(spin.dim())),
      ops_(std::make_shared<const SpinOperators>(spin_operators(spin))) {
  require_finite(lambda_hz, "lambda_hz");
  require_finite(offset_hz, "offset_hz");
  if (lambda_hz < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "lambda_hz must be >= 0");
  }
}

SpinSystem SpinSystem::from_splitting(Spin spin, double splitting_hz,
                                      double offset_hz) {
  require_finite(splitting_hz, "splitting_hz");
  return SpinSystem(spin, splitting_hz / 6.0, offset_hz);
}

SpinSystem SpinSystem::from_lambda(Spin spin, double lambda_hz,
                                   double offset_hz) {
  return SpinSystem(spin, lambda_hz, offset_hz);
}

SpinSystem SpinSystem::with_labels(std::vector<std::string> labels) const {
  if (static_cast<int>(labels.size()) != dim()) {
    throw Error(ErrorCode::kInvalidArgument,
                "need exactly " + std::to_string(dim()) + " labels");
  }
  std::set<std::string> seen;
  for (const auto& l : labels) {
    if (l.empty() || l.find('-') != std::string::npos ||
        !seen.insert(l).second) {
      throw Error(ErrorCode::kInvalidArgument,
                  "labels must be distinct, non-empty and contain no '-'");
    }
  }
  SpinSystem copy = *this;
  copy.labels_ = std::move(labels);
  return copy;
}

double SpinSystem::lambda_angular() const noexcept {
  return 2.0 * std::numbers::pi * lambda_hz_;
}

int SpinSystem::index_of(std::string_view label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  return it == labels_.end() ? -1 : static_cast<int>(it - labels_.begin());
}

LevelPair SpinSystem::levels(std::string_view pair) const {
  const auto dash = pair.find('-');
  if (dash == std::string_view::npos) {
    throw Error(ErrorCode::kUnknownTransition,
                "transition '" + std::string(pair) + "' is not of the form a-b");
  }
  const int a = index_of(pair.substr(0, dash));
  const int b = index_of(pair.substr(dash + 1));
  if (a < 0 || b < 0 || a == b) {
    throw Error(ErrorCode::kUnknownTransition,
                "unknown transition '" + std::string(pair) + "'");
  }
  LevelPair lp{a, b};
  transition(lp);  // validates |dm| == 1
  return lp;
}

Transition SpinSystem::transition(LevelPair pair) const {
  const int upper = std::min(pair.first, pair.second);
  const int lower = std::max(pair.first, pair.second);
  if (upper < 0 || lower >= dim() || upper == lower) {
    throw Error(ErrorCode::kUnknownTransition, "level index out of range");
  }
  if (lower - upper != 1) {
    throw Error(ErrorCode::kForbiddenTransition,
                "transition " + labels_[upper] + "-" + labels_[lower] +
                    " has |dm| = " + std::to_string(lower - upper) +
                    " and cannot be driven by a single-quantum pulse");
  }
  for (const auto& t : observable_transitions(*this)) {
    if (t.upper == upper) return t;
  }
  throw Error(ErrorCode::kUnknownTransition, "transition not found");
}

ComplexMatrix quadrupolar_hamiltonian(const SpinSystem& sys) {
  const auto& ops = sys.operators();
  const double j = sys.spin().value();
  const ComplexMatrix t =
      3.0 * ops.iz * ops.iz - (j * (j + 1.0)) * identity(sys.dim());
  return sys.lambda_angular() * t;
}

ComplexMatrix hamiltonian(const SpinSystem& sys) {
  const double offset = 2.0 * std::numbers::pi * sys.offset_hz();
  return -offset * sys.operators().iz + quadrupolar_hamiltonian(sys);
}

std::vector<Transition> observable_transitions(const SpinSystem& sys) {
  const ComplexMatrix h = hamiltonian(sys);
  const auto& ix = sys.operators().ix;
  std::vector<Transition> out;
  for (int k = 0; k + 1 < sys.dim(); ++k) {
    Transition t;
    t.upper = k;
    t.lower = k + 1;
    t.upper_label = sys.label(k);
    t.lower_label = sys.label(k + 1);
    t.kind = TransitionKind::kObservable;
    t.frequency_hz =
        (h(k, k).real() - h(k + 1, k + 1).real()) / (2.0 * std::numbers::pi);
    t.ix_element = std::abs(ix(k, k + 1));
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<Transition> transition_table(const SpinSystem& sys) {
  std::vector<Transition> out = observable_transitions(sys);
  const ComplexMatrix h = hamiltonian(sys);
  for (int a = 0; a < sys.dim(); ++a) {
    for (int b = a + 2; b < sys.dim(); ++b) {
      if (hamming(sys.label(a), sys.label(b)) != 1) continue;
      Transition t;
      t.upper = a;
      t.lower = b;
      t.upper_label = sys.label(a);
      t.lower_label = sys.label(b);
      t.kind = TransitionKind::kForbidden;
      t.frequency_hz =
          (h(a, a).real() - h(b, b).real()) / (2.0 * std::numbers::pi);
      t.ix_element = 0.0;
      out.push_back(std::move(t));
    }
  }
  return out;
}

bool is_central(const SpinSystem& sys, const Transition& t) {
  if (sys.spin().twice() % 2 == 0) return false;
  return std::abs(sys.spin().m(t.upper) - 0.5) < 1e-12;
}

ComplexMatrix quad_evolution(const SpinSystem& sys, double tau_s) {
  if (!(tau_s >= 0.0) || !std::isfinite(tau_s)) {
    throw Error(ErrorCode::kInvalidArgument, "tau must be finite and >= 0");
  }
  const ComplexMatrix hq = quadrupolar_hamiltonian(sys);
  ComplexMatrix u = ComplexMatrix::Zero(sys.dim(), sys.dim());
  for (int k = 0; k < sys.dim(); ++k) {
    u(k, k) = std::exp(-kI * (hq(k, k).real() * tau_s));
  }
  return u;
}

ComplexMatrix free_evolution(const SpinSystem& sys, double tau_s) {
  if (!(tau_s >= 0.0) || !std::isfinite(tau_s)) {
    throw Error(ErrorCode::kInvalidArgument, "tau must be finite and >= 0");
  }
  const ComplexMatrix h = hamiltonian(sys);
  ComplexMatrix u = ComplexMatrix::Zero(sys.dim(), sys.dim());
  for (int k = 0; k < sys.dim(); ++k) {
    u(k, k) = std::exp(-kI * (h(k, k).real() * tau_s));
  }
  return u;
}

double controlled_phase_delay(const SpinSystem& sys) {
  const double l = sys.lambda_angular();
  if (l <= 0.0) {
    throw Error(ErrorCode::kInvalidArgument,
                "controlled-phase delay needs Lambda > 0");
  }
  return std::numbers::pi / (12.0 * l);
}

}  // namespace quadqc
