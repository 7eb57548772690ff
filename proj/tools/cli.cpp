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

#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "quadqc/compiler.hpp"
#include "quadqc/dj.hpp"
#include "quadqc/error.hpp"
#include "quadqc/pulses.hpp"
#include "quadqc/readout.hpp"
#include "quadqc/sequence.hpp"

namespace quadqc::cli {

namespace {

// Console values are rounded to 12 significant digits; files keep full
// precision through format_number.
std::string display(double x) {
  if (std::abs(x) < 1e-13) x = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

namespace fs = std::filesystem;

constexpr double kPi = std::numbers::pi;
constexpr double kFidelityBar = 1.0 - 1e-9;

struct Config {
  double splitting_hz = SpinSystem::kDefaultSplittingHz;
  double offset_hz = 0.0;
  bool relax = false;
  RelaxationParams relax_params = RelaxationParams::sodium_defaults();
  AcquisitionParams acquisition;
  std::string out_dir;
  std::string spectrum_out;
  std::string peaks_out;
  // dj
  std::string oracle = "all";
  std::string method = "all";
  bool shaped = false;
  GaussianShape shape;
  // compile-check / run
  std::string file;
  std::string against;
  bool strict = false;
};

SpinSystem make_system(const Config& c, std::ostream& err) {
  if (c.splitting_hz == 0.0) {
    err << "warning[W_DEGENERATE]: zero splitting, all lines coincide and "
           "peak integrals overlap\n";
  }
  return SpinSystem::from_splitting(Spin::from_twice(3), c.splitting_hz,
                                    c.offset_hz);
}

std::optional<RelaxationParams> relaxation(const Config& c) {
  if (!c.relax) return std::nullopt;
  c.relax_params.validate();
  return c.relax_params;
}

fs::path output_path(const Config& c, const std::string& explicit_path,
                     const std::string& default_name) {
  if (!explicit_path.empty()) return explicit_path;
  fs::path dir = c.out_dir.empty() ? fs::path(".") : fs::path(c.out_dir);
  return dir / default_name;
}

template <class Writer>
void write_file(const fs::path& path, Writer&& writer) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorCode::kIo, "cannot write '" + path.string() + "'");
  writer(os);
  if (!os) throw Error(ErrorCode::kIo, "failed writing '" + path.string() + "'");
}

void write_spectrum_files(const Config& c, const Spectrum& s,
                          const std::string& stem) {
  write_file(output_path(c, c.spectrum_out, stem + "_spectrum.csv"),
             [&](std::ostream& os) { write_spectrum_csv(os, s); });
  write_file(output_path(c, c.peaks_out, stem + "_peaks.csv"),
             [&](std::ostream& os) { write_peaks_csv(os, s); });
}

// --- subcommands -------------------------------------------------------------

int cmd_equilibrium(const Config& c, std::ostream& out, std::ostream& err) {
  const SpinSystem sys = make_system(c, err);
  const DeviationDensityMatrix rho =
      evolve(equilibrium_state(sys), hard_pulse(sys, Axis::kMinusY, 0.5 * kPi));
  const Fid fid = synthesize_fid(observable_amplitudes(rho, sys), sys,
                                 c.acquisition, relaxation(c));
  const Spectrum s = spectrum(fid);
  write_spectrum_files(c, s, "equilibrium");
  const double central = s.peaks.at(1).real_integral;
  out << "transition frequency_hz integral ratio_to_central_x4\n";
  for (const Peak& p : s.peaks) {
    out << p.label << ' ' << display(p.frequency_hz) << ' '
        << display(p.real_integral) << ' '
        << display(4.0 * p.real_integral / central) << '\n';
  }
  return 0;
}

int cmd_pseudopure(const Config& c, std::ostream& out, std::ostream& err) {
  const SpinSystem sys = make_system(c, err);
  const DeviationDensityMatrix pp = pseudopure_00(sys, equilibrium_state(sys));
  const auto pops = pp.populations();
  write_file(output_path(c, c.spectrum_out, "pseudopure_populations.csv"),
             [&](std::ostream& os) {
               os << "level,m,population\n";
               for (int k = 0; k < sys.dim(); ++k) {
                 os << sys.label(k) << ',' << format_number(sys.spin().m(k))
                    << ',' << format_number(pops[k]) << '\n';
               }
             });
  for (int k = 0; k < sys.dim(); ++k) {
    out << sys.label(k) << ' ' << display(pops[k]) << '\n';
  }
  return 0;
}

int cmd_dj(const Config& c, std::ostream& out, std::ostream& err) {
  const SpinSystem sys = make_system(c, err);
  std::vector<dj::OracleId> oracles;
  if (c.oracle == "all") {
    oracles.assign(std::begin(dj::kAllOracles), std::end(dj::kAllOracles));
  } else {
    oracles.push_back(dj::parse_oracle(c.oracle));
  }
  std::vector<dj::Method> methods;
  if (c.method == "all") {
    methods.assign(std::begin(dj::kAllMethods), std::end(dj::kAllMethods));
  } else {
    methods.push_back(dj::parse_method(c.method));
  }
  const bool single = oracles.size() == 1 && methods.size() == 1;
  if (!single && (!c.spectrum_out.empty() || !c.peaks_out.empty())) {
    throw Error(ErrorCode::kInvalidArgument,
                "--spectrum-out/--peaks-out need a single --oracle and --method");
  }
  dj::DJOptions options;
  options.with_relaxation = c.relax;
  if (c.relax) {
    c.relax_params.validate();
    options.relax = c.relax_params;
  }
  options.acquisition = c.acquisition;
  if (c.shaped) options.shaped = c.shape;

  std::vector<dj::DJJob> jobs;
  for (auto id : oracles) {
    for (auto m : methods) jobs.push_back({id, m, options});
  }
  const auto outcomes = dj::omp::run_dj_batch(sys, jobs);
  for (const auto& o : outcomes) {
    const std::string stem = "dj_" + std::string(dj::oracle_name(o.oracle)) +
                             "_" + std::string(dj::method_name(o.method));
    write_spectrum_files(c, o.spectrum, stem);
    if (single) {
      out << dj::class_name(o.classification) << '\n';
    } else {
      out << dj::oracle_name(o.oracle) << ' ' << dj::method_name(o.method)
          << ' ' << dj::class_name(o.classification) << '\n';
    }
  }
  return 0;
}

ComplexMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read matrix file '" + path + "'");
  std::vector<std::vector<Complex>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<Complex> row;
    std::string entry;
    while (ls >> entry) {
      const auto comma = entry.find(',');
      try {
        const double re = std::stod(entry.substr(0, comma));
        const double im = comma == std::string::npos ? 0.0 : std::stod(entry.substr(comma + 1));
        row.emplace_back(re, im);
      } catch (const std::exception&) {
        throw Error(ErrorCode::kInvalidArgument,
                    "bad matrix entry '" + entry + "' in " + path);
      }
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  const auto n = static_cast<Eigen::Index>(rows.size());
  ComplexMatrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    if (static_cast<Eigen::Index>(rows[r].size()) != n) {
      throw Error(ErrorCode::kDimensionMismatch, "matrix file must be square");
    }
    for (Eigen::Index k = 0; k < n; ++k) m(r, k) = rows[r][k];
  }
  return m;
}

ComplexMatrix target_matrix(const std::string& against) {
  static const std::pair<const char*, dj::OracleId> kTargets[] = {
      {"u1", dj::OracleId::kF1}, {"u2", dj::OracleId::kF2},
      {"u3", dj::OracleId::kF3}, {"u4", dj::OracleId::kF4}};
  for (const auto& [name, id] : kTargets) {
    if (against == name) return dj::oracle_matrix(id);
  }
  return read_matrix_file(against);
}

int cmd_compile_check(const Config& c, std::ostream& out, std::ostream&) {
  const seq::SequenceIR ir = seq::parse_sequence_file(c.file);
  seq::CompileOptions options;
  if (c.shaped) options.shaped_default = c.shape;
  const ComplexMatrix u = seq::compile_unitary(ir, options);
  const ComplexMatrix target = target_matrix(c.against);
  if (target.rows() != u.rows() || target.cols() != u.cols()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "target is " + std::to_string(target.rows()) + "x" +
                    std::to_string(target.cols()) + ", sequence is " +
                    std::to_string(u.rows()) + "x" + std::to_string(u.cols()));
  }
  const double f = gate_fidelity_global_phase(target, u);
  const bool ok = f >= kFidelityBar;
  out << std::fixed << std::setprecision(12) << "fidelity " << f << '\n';
  if (f > 1e-12) {
    out << "global_phase_over_pi " << global_phase(target, u) / kPi << '\n';
  }
  out << (ok ? "MATCH" : "MISMATCH") << '\n';
  out.unsetf(std::ios::floatfield);
  return ok || !c.strict ? 0 : 2;
}

int cmd_run(const Config& c, std::ostream& out, std::ostream&) {
  const seq::SequenceIR ir = seq::parse_sequence_file(c.file);
  const SpinSystem sys = ir.system.to_system();
  seq::TrajectoryOptions options;
  options.relax = relaxation(c);
  options.lb_hz = c.acquisition.lb_hz;
  if (c.shaped) options.shaped_default = c.shape;
  const seq::Trajectory t =
      seq::run_trajectory(ir, sys, equilibrium_state(sys), options);
  const auto& m = t.final_state().matrix();
  out << "final state (real part)\n";
  for (int r = 0; r < m.rows(); ++r) {
    out << sys.label(r);
    for (int k = 0; k < m.cols(); ++k) out << ' ' << display(m(r, k).real());
    out << '\n';
  }
  if (t.fid) {
    const Spectrum s = spectrum(*t.fid);
    const std::string stem = fs::path(c.file).stem().string();
    write_spectrum_files(c, s, stem);
    for (const Peak& p : s.peaks) {
      out << p.label << ' ' << display(p.real_integral) << ' ' << p.sign << '\n';
    }
  }
  return 0;
}

// --- option wiring -----------------------------------------------------------

void add_system_options(CLI::App& app, Config& c) {
  app.add_option("--splitting", c.splitting_hz, "adjacent-line splitting, Hz (6*Lambda)")
      ->capture_default_str();
  app.add_option("--offset", c.offset_hz, "rotating-frame offset, Hz")->capture_default_str();
}

void add_relaxation_options(CLI::App& app, Config& c) {
  app.add_flag("--relax", c.relax, "enable T1/T2 relaxation");
  auto on = [&c](double) { c.relax = true; };
  app.add_option_function<double>("--t1", [&c, on](double v) { c.relax_params.t1_s = v; on(v); },
                                  "T1, seconds (implies --relax; default 0.016)");
  app.add_option_function<double>("--t2-central", [&c, on](double v) { c.relax_params.t2_central_s = v; on(v); },
                                  "central-line T2, seconds (implies --relax; default 0.014)");
  app.add_option_function<double>("--t2-outer", [&c, on](double v) {
        c.relax_params.t2_outer_s = v;
        c.relax_params.t2_multi_quantum_s = v;
        on(v);
      },
      "outer-line and multiple-quantum T2, seconds (implies --relax; default 0.004)");
}

void add_acquisition_options(CLI::App& app, Config& c) {
  app.add_option("--points", c.acquisition.points, "FID points (power of two)")->capture_default_str();
  app.add_option("--dwell", c.acquisition.dwell_s, "dwell time, seconds")->capture_default_str();
  app.add_option("--lb", c.acquisition.lb_hz, "exponential line broadening, Hz")->capture_default_str();
}

void add_output_options(CLI::App& app, Config& c) {
  app.add_option("--out-dir", c.out_dir, "output directory (default $QUADQC_OUT_DIR or .)");
  app.add_option("--spectrum-out", c.spectrum_out, "spectrum CSV path");
  app.add_option("--peaks-out", c.peaks_out, "peak table CSV path");
}

void add_shape_options(CLI::App& app, Config& c) {
  app.add_flag("--shaped", c.shaped, "use calibrated Gaussian selective pulses");
  app.add_option("--shaped-duration", c.shape.duration_s, "Gaussian pulse length, seconds")
      ->capture_default_str();
  app.add_option("--shaped-slices", c.shape.n_slices, "time slices per Gaussian pulse")
      ->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  Config c;
  if (const char* env = std::getenv("QUADQC_OUT_DIR")) c.out_dir = env;

  CLI::App app{"quadqc: two-qubit quantum computing on a spin-3/2 nucleus"};
  app.require_subcommand(1);

  auto* eq = app.add_subcommand("equilibrium", "hard pi/2 spectrum of the thermal state");
  add_system_options(*eq, c);
  add_relaxation_options(*eq, c);
  add_acquisition_options(*eq, c);
  add_output_options(*eq, c);

  auto* pp = app.add_subcommand("pseudopure", "|00> pseudopure populations");
  add_system_options(*pp, c);
  pp->add_option("--out-dir", c.out_dir, "output directory (default $QUADQC_OUT_DIR or .)");
  pp->add_option("--populations-out", c.spectrum_out, "population CSV path");

  auto* djc = app.add_subcommand("dj", "Deutsch-Jozsa runs with spectral readout");
  add_system_options(*djc, c);
  add_relaxation_options(*djc, c);
  add_acquisition_options(*djc, c);
  add_output_options(*djc, c);
  add_shape_options(*djc, c);
  djc->add_option("--oracle", c.oracle, "f1, f2, f3, f4 or all")->capture_default_str();
  djc->add_option("--method", c.method, "ideal-matrix, selective-z, quad-evolution or all")
      ->capture_default_str();

  auto* cc = app.add_subcommand("compile-check", "compile a .qseq file and compare with a target");
  cc->add_option("file", c.file, ".qseq file")->required();
  cc->add_option("--against", c.against, "u1..u4 or a matrix file")->required();
  cc->add_flag("--strict", c.strict, "exit 2 when the fidelity is below 1 - 1e-9");
  add_shape_options(*cc, c);

  auto* rn = app.add_subcommand("run", "run a .qseq file from the thermal state");
  rn->add_option("file", c.file, ".qseq file")->required();
  add_relaxation_options(*rn, c);
  add_output_options(*rn, c);
  add_shape_options(*rn, c);
  rn->add_option("--lb", c.acquisition.lb_hz, "exponential line broadening, Hz")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error[E_USAGE]: " << e.what() << '\n';
    return 1;
  }

  try {
    if (eq->parsed()) return cmd_equilibrium(c, out, err);
    if (pp->parsed()) return cmd_pseudopure(c, out, err);
    if (djc->parsed()) return cmd_dj(c, out, err);
    if (cc->parsed()) return cmd_compile_check(c, out, err);
    return cmd_run(c, out, err);
  } catch (const ParseError& e) {
    err << "error[" << error_code_name(e.code()) << "]: " << c.file << ':'
        << e.line() << ':' << e.column() << ": " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    err << "error[" << error_code_name(e.code()) << "]: " << e.what() << '\n';
    return e.code() == ErrorCode::kAmbiguousReadout ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error[E_INTERNAL]: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace quadqc::cli
