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

#include "quadqc/sequence.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "quadqc/error.hpp"
#include "quadqc/readout.hpp"

namespace quadqc::seq {

namespace {

constexpr double kPi = std::numbers::pi;

struct Field {
  std::string_view text;
  int column = 0;
};

[[noreturn]] void fail(ErrorCode code, const std::string& msg, int line,
                       int column) {
  throw ParseError(code, msg, line, column);
}

// Recursive-descent evaluator over one whitespace-free field.
class ExprParser {
 public:
  ExprParser(std::string_view text, std::optional<double> lambda, int line,
             int column)
      : s_(text), lambda_(lambda), line_(line), col0_(column) {}

  double parse() {
    const double v = expr();
    if (pos_ != s_.size()) error("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void error(const std::string& msg, ErrorCode code = ErrorCode::kSyntax) {
    fail(code, msg, line_, col0_ + static_cast<int>(pos_));
  }
  bool eat(char c) {
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  double expr() {
    double v = term();
    for (;;) {
      if (eat('+')) v += term();
      else if (eat('-')) v -= term();
      else return v;
    }
  }
  double term() {
    double v = unary();
    for (;;) {
      if (eat('*')) v *= unary();
      else if (eat('/')) v /= unary();
      else return v;
    }
  }
  double unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return primary();
  }
  double primary() {
    if (pos_ >= s_.size()) error("expression ends unexpectedly");
    const char c = s_[pos_];
    if (eat('(')) {
      const double v = expr();
      if (!eat(')')) error("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const std::string_view name = s_.substr(start, pos_ - start);
      if (name == "pi") return kPi;
      if (name == "lambda") {
        if (!lambda_) {
          pos_ = start;
          error("'lambda' used but the system declares no coupling",
                ErrorCode::kLambdaUndeclared);
        }
        return *lambda_;
      }
      if (name == "sqrt") {
        if (!eat('(')) error("expected '(' after sqrt");
        const double v = expr();
        if (!eat(')')) error("expected ')'");
        return std::sqrt(v);
      }
      pos_ = start;
      error("unknown name '" + std::string(name) + "'");
    }
    error("unexpected '" + std::string(1, c) + "'");
  }
  double number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    };
    digits();
    if (eat('.')) digits();
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      const std::size_t save = pos_;
      ++pos_;
      if (!eat('+')) eat('-');
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        digits();
      } else {
        pos_ = save;
      }
    }
    const std::string lit(s_.substr(start, pos_ - start));
    if (lit == ".") {
      pos_ = start;
      error("malformed number");
    }
    return std::stod(lit);
  }

  std::string_view s_;
  std::optional<double> lambda_;
  int line_;
  int col0_;
  std::size_t pos_ = 0;
};

struct Unit {
  std::string_view suffix;
  double scale;
};

constexpr Unit kTimeUnits[] = {{"ns", 1e-9}, {"us", 1e-6}, {"ms", 1e-3}, {"s", 1.0}};
constexpr Unit kFreqUnits[] = {{"MHz", 1e6}, {"kHz", 1e3}, {"Hz", 1.0}};

template <std::size_t N>
double quantity(const Field& f, const Unit (&units)[N],
                std::optional<double> lambda, int line) {
  std::string_view body = f.text;
  double scale = 1.0;
  for (const Unit& u : units) {
    if (body.size() > u.suffix.size() && body.ends_with(u.suffix)) {
      const char before = body[body.size() - u.suffix.size() - 1];
      if (std::isdigit(static_cast<unsigned char>(before)) || before == '.' ||
          before == ')') {
        body.remove_suffix(u.suffix.size());
        scale = u.scale;
        break;
      }
    }
  }
  const double v = ExprParser(body, lambda, line, f.column).parse() * scale;
  if (!std::isfinite(v)) fail(ErrorCode::kBadValue, "value is not finite", line, f.column);
  return v;
}

double angle_value(const Field& f, std::optional<double> lambda, int line) {
  const double v = ExprParser(f.text, lambda, line, f.column).parse();
  if (!std::isfinite(v)) fail(ErrorCode::kBadValue, "angle is not finite", line, f.column);
  return v;
}

double duration(const Field& f, std::optional<double> lambda, int line) {
  const double v = quantity(f, kTimeUnits, lambda, line);
  if (v < 0.0) fail(ErrorCode::kBadValue, "duration must be >= 0", line, f.column);
  return v;
}

std::vector<Field> split_fields(std::string_view line) {
  std::vector<Field> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && line[i] != '#' &&
           !std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
    }
    out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

/// Splits "key=value"; returns false if there is no '='.
bool key_value(const Field& f, std::string_view& key, Field& value) {
  const auto eq = f.text.find('=');
  if (eq == std::string_view::npos) return false;
  key = f.text.substr(0, eq);
  value = {f.text.substr(eq + 1), f.column + static_cast<int>(eq) + 1};
  return true;
}

Axis axis_field(const Field& f, int line) {
  if (f.text == "z" || f.text == "-z") {
    fail(ErrorCode::kSyntax, "z-rotations are written with 'zpulse'", line,
         f.column);
  }
  try {
    return parse_axis(f.text);
  } catch (const Error&) {
    fail(ErrorCode::kSyntax,
         "expected an axis (x, -x, y, -y), got '" + std::string(f.text) + "'",
         line, f.column);
  }
}

class Parser {
 public:
  SequenceIR run(std::string_view text) {
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const std::size_t nl = text.find('\n', pos);
      std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      ++line_no;
      statement(split_fields(line), line_no);
      if (nl == std::string_view::npos) break;
      pos = nl + 1;
    }
    if (!have_system_) {
      fail(ErrorCode::kMissingSystem, "a 'system' declaration is required", 1, 1);
    }
    return std::move(ir_);
  }

 private:
  std::optional<double> lambda_rad_s() const {
    if (!ir_.system.lambda_hz) return std::nullopt;
    return 2.0 * kPi * *ir_.system.lambda_hz;
  }

  void expect_count(const std::vector<Field>& f, std::size_t n, int line,
                    const char* usage) {
    if (f.size() != n) {
      const int col = f.size() > n ? f[n].column : f.back().column + static_cast<int>(f.back().text.size());
      fail(ErrorCode::kSyntax, std::string("expected: ") + usage, line, col);
    }
  }

  LevelPair transition_field(const Field& f, int line) {
    try {
      return sys_.levels(f.text);
    } catch (const Error& e) {
      fail(e.code(), e.what(), line, f.column);
    }
  }

  void statement(const std::vector<Field>& f, int line) {
    if (f.empty()) return;
    const std::string_view kw = f[0].text;
    if (kw == "system") return system(f, line);
    static constexpr std::string_view kEvents[] = {"pulse", "zpulse", "delay", "refocus", "gradient", "acquire"};
    bool known = false;
    for (auto k : kEvents) known |= (kw == k);
    if (!known) {
      fail(ErrorCode::kUnknownKeyword, "unknown keyword '" + std::string(kw) + "'", line, f[0].column);
    }
    if (!have_system_) {
      fail(ErrorCode::kMissingSystem, "events must follow a 'system' declaration", line, f[0].column);
    }
    if (have_acquire_) {
      if (kw == "acquire") {
        fail(ErrorCode::kDuplicateAcquire, "only one 'acquire' is allowed", line, f[0].column);
      }
      fail(ErrorCode::kAcquireNotLast, "'acquire' must be the last event", line, f[0].column);
    }
    Event ev;
    ev.location = {line, f[0].column};
    if (kw == "pulse") ev.body = pulse(f, line);
    else if (kw == "zpulse") {
      expect_count(f, 3, line, "zpulse <transition> <angle>");
      ev.body = ZPulse{transition_field(f[1], line), angle_value(f[2], lambda_rad_s(), line)};
    } else if (kw == "delay") {
      if (f.size() >= 2 && f[1].text != "quad") {
        fail(ErrorCode::kUnknownKeyword, "unknown delay kind '" + std::string(f[1].text) + "'", line, f[1].column);
      }
      expect_count(f, 3, line, "delay quad <duration>");
      ev.body = QuadDelay{duration(f[2], lambda_rad_s(), line)};
    } else if (kw == "refocus") {
      expect_count(f, 2, line, "refocus <duration>");
      ev.body = Refocus{duration(f[1], lambda_rad_s(), line)};
    } else if (kw == "gradient") {
      expect_count(f, 1, line, "gradient");
      ev.body = Gradient{};
    } else {
      expect_count(f, 3, line, "acquire <points> <dwell>");
      const double pts = angle_value(f[1], lambda_rad_s(), line);
      if (pts < 2 || pts > (1 << 26) || pts != std::floor(pts) ||
          (static_cast<long>(pts) & (static_cast<long>(pts) - 1)) != 0) {
        fail(ErrorCode::kBadValue, "points must be a power of two >= 2", line, f[1].column);
      }
      const double dwell = duration(f[2], lambda_rad_s(), line);
      if (dwell <= 0.0) fail(ErrorCode::kBadValue, "dwell must be > 0", line, f[2].column);
      ev.body = Acquire{static_cast<int>(pts), dwell};
      have_acquire_ = true;
    }
    ir_.events.push_back(std::move(ev));
  }

  EventBody pulse(const std::vector<Field>& f, int line) {
    if (f.size() < 2) fail(ErrorCode::kSyntax, "expected 'hard' or 'sel' after 'pulse'", line, f[0].column + 5);
    if (f[1].text == "hard") {
      expect_count(f, 4, line, "pulse hard <axis> <angle>");
      return HardPulse{axis_field(f[2], line), angle_value(f[3], lambda_rad_s(), line)};
    }
    if (f[1].text != "sel") {
      fail(ErrorCode::kUnknownKeyword, "unknown pulse kind '" + std::string(f[1].text) + "'", line, f[1].column);
    }
    if (f.size() != 5 && (f.size() < 7 || f[5].text != "gauss")) {
      const int col = f.size() > 5 ? f[5].column : f.back().column + static_cast<int>(f.back().text.size());
      fail(ErrorCode::kSyntax, "expected: pulse sel <transition> <axis> <angle> [gauss <duration> [slices=N] [trunc=X]]", line, col);
    }
    SelPulse p{transition_field(f[2], line), axis_field(f[3], line),
               angle_value(f[4], lambda_rad_s(), line), std::nullopt};
    if (f.size() > 5) {
      GaussianShape shape;
      shape.duration_s = duration(f[6], lambda_rad_s(), line);
      if (shape.duration_s <= 0.0) fail(ErrorCode::kBadValue, "shaped pulse duration must be > 0", line, f[6].column);
      for (std::size_t k = 7; k < f.size(); ++k) {
        std::string_view key;
        Field value;
        if (!key_value(f[k], key, value)) {
          fail(ErrorCode::kSyntax, "expected slices=N or trunc=X", line, f[k].column);
        }
        const double v = angle_value(value, lambda_rad_s(), line);
        if (key == "slices") {
          if (v != std::floor(v) || v < kMinShapedSlices || v > 1e7) {
            fail(ErrorCode::kBadValue, "slices must be an integer >= " + std::to_string(kMinShapedSlices), line, value.column);
          }
          shape.n_slices = static_cast<int>(v);
        } else if (key == "trunc") {
          if (!(v > 0.0)) fail(ErrorCode::kBadValue, "trunc must be > 0", line, value.column);
          shape.truncation_sigmas = v;
        } else {
          fail(ErrorCode::kUnknownKeyword, "unknown shape option '" + std::string(key) + "'", line, f[k].column);
        }
      }
      p.shape = shape;
    }
    return p;
  }

  void system(const std::vector<Field>& f, int line) {
    if (have_system_) fail(ErrorCode::kSyntax, "duplicate 'system' declaration", line, f[0].column);
    if (!ir_.events.empty()) fail(ErrorCode::kSyntax, "'system' must come before any event", line, f[0].column);
    SystemDecl decl;
    bool have_spin = false;
    for (std::size_t k = 1; k < f.size(); ++k) {
      std::string_view key;
      Field value;
      if (!key_value(f[k], key, value)) fail(ErrorCode::kSyntax, "expected key=value", line, f[k].column);
      if (key == "I") {
        const double i = angle_value(value, std::nullopt, line);
        try {
          decl.spin = Spin::from_double(i);
        } catch (const Error& e) {
          fail(ErrorCode::kBadValue, e.what(), line, value.column);
        }
        have_spin = true;
      } else if (key == "splitting" || key == "lambda") {
        if (decl.lambda_hz) fail(ErrorCode::kSyntax, "give either splitting or lambda, once", line, f[k].column);
        const double v = quantity(value, kFreqUnits, std::nullopt, line);
        if (v < 0.0) fail(ErrorCode::kBadValue, "coupling must be >= 0", line, value.column);
        decl.lambda_hz = key == "splitting" ? v / 6.0 : v;
      } else if (key == "offset") {
        decl.offset_hz = quantity(value, kFreqUnits, std::nullopt, line);
      } else {
        fail(ErrorCode::kUnknownKeyword, "unknown system parameter '" + std::string(key) + "'", line, f[k].column);
      }
    }
    if (!have_spin) fail(ErrorCode::kSyntax, "system needs I=<spin>", line, f[0].column);
    ir_.system = decl;
    sys_ = decl.to_system();
    have_system_ = true;
  }

  SequenceIR ir_;
  SpinSystem sys_;
  bool have_system_ = false;
  bool have_acquire_ = false;
};

std::string transition_text(const SpinSystem& sys, LevelPair p) {
  return sys.label(p.first) + "-" + sys.label(p.second);
}

}  // namespace

bool operator==(const SelPulse& a, const SelPulse& b) {
  if (!(a.levels == b.levels && a.axis == b.axis && a.angle == b.angle)) return false;
  if (a.shape.has_value() != b.shape.has_value()) return false;
  if (!a.shape) return true;
  return a.shape->duration_s == b.shape->duration_s &&
         a.shape->truncation_sigmas == b.shape->truncation_sigmas &&
         a.shape->n_slices == b.shape->n_slices;
}

SpinSystem SystemDecl::to_system() const {
  if (lambda_hz) return SpinSystem::from_lambda(spin, *lambda_hz, offset_hz);
  return SpinSystem::from_splitting(spin, SpinSystem::kDefaultSplittingHz, offset_hz);
}

bool operator==(const SequenceIR& a, const SequenceIR& b) {
  if (!(a.system == b.system) || a.events.size() != b.events.size()) return false;
  for (std::size_t k = 0; k < a.events.size(); ++k) {
    if (!(a.events[k].body == b.events[k].body)) return false;
  }
  return true;
}

SequenceIR parse_sequence(std::string_view text) { return Parser().run(text); }

SequenceIR parse_sequence_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_sequence(ss.str());
}

double evaluate_expression(std::string_view text,
                           std::optional<double> lambda_rad_s) {
  return ExprParser(text, lambda_rad_s, 1, 1).parse();
}

std::string print_sequence(const SequenceIR& ir) {
  const SpinSystem sys = ir.system.to_system();
  std::ostringstream os;
  os << "system I=" << ir.system.spin.to_string();
  if (ir.system.lambda_hz) os << " lambda=" << format_number(*ir.system.lambda_hz) << "Hz";
  if (ir.system.offset_hz != 0.0) os << " offset=" << format_number(ir.system.offset_hz) << "Hz";
  os << '\n';
  for (const Event& ev : ir.events) {
    std::visit(
        [&](const auto& e) {
          using T = std::decay_t<decltype(e)>;
          if constexpr (std::is_same_v<T, HardPulse>) {
            os << "pulse hard " << axis_name(e.axis) << ' ' << format_number(e.angle);
          } else if constexpr (std::is_same_v<T, SelPulse>) {
            os << "pulse sel " << transition_text(sys, e.levels) << ' '
               << axis_name(e.axis) << ' ' << format_number(e.angle);
            if (e.shape) {
              os << " gauss " << format_number(e.shape->duration_s)
                 << " slices=" << e.shape->n_slices
                 << " trunc=" << format_number(e.shape->truncation_sigmas);
            }
          } else if constexpr (std::is_same_v<T, ZPulse>) {
            os << "zpulse " << transition_text(sys, e.levels) << ' ' << format_number(e.angle);
          } else if constexpr (std::is_same_v<T, QuadDelay>) {
            os << "delay quad " << format_number(e.tau_s);
          } else if constexpr (std::is_same_v<T, Refocus>) {
            os << "refocus " << format_number(e.tau_s);
          } else if constexpr (std::is_same_v<T, Gradient>) {
            os << "gradient";
          } else {
            os << "acquire " << e.points << ' ' << format_number(e.dwell_s);
          }
        },
        ev.body);
    os << '\n';
  }
  return os.str();
}

}  // namespace quadqc::seq
