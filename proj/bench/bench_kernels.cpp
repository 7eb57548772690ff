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

// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "quadqc/dj.hpp"
#include "quadqc/kernels.hpp"
#include "quadqc/spin_system.hpp"

namespace {

using quadqc::Complex;
using quadqc::ComplexMatrix;
namespace k = quadqc::kernels;

std::vector<k::Line> three_lines() {
  return {{16e3, {0.75, 0.0}, 250.0}, {0.0, {1.0, 0.0}, 71.0}, {-16e3, {0.75, 0.0}, 250.0}};
}

template <auto Fn>
void BM_Fid(benchmark::State& state) {
  const auto lines = three_lines();
  std::vector<Complex> out(state.range(0));
  for (auto _ : state) {
    Fn(lines, 5e-6, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Fn>
void BM_Dft(benchmark::State& state) {
  std::vector<Complex> in(state.range(0)), out(state.range(0));
  for (std::size_t n = 0; n < in.size(); ++n) in[n] = std::polar(1.0, 0.01 * n);
  for (auto _ : state) {
    Fn(in, out);
    benchmark::DoNotOptimize(out.data());
  }
}

k::SliceProblem gaussian_problem(int n) {
  const quadqc::SpinSystem sys;
  const auto& ops = sys.operators();
  k::SliceProblem p;
  p.static_h = ComplexMatrix::Zero(4, 4);
  p.static_h.diagonal() << 1e5, -1e5, -1e5, 1e5;
  p.drive = 2e4 * ops.ix;
  p.frame_m = ops.iz.diagonal().real();
  p.carrier_rad_s = 2 * M_PI * 16e3;
  p.dt = 123e-6 / n;
  k::sample_envelope(p, n, [](double t) { return std::exp(-0.5 * std::pow((t - 61.5e-6) / 20.5e-6, 2)); });
  return p;
}

template <auto Fn>
void BM_Slices(benchmark::State& state) {
  const auto p = gaussian_problem(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Fn(p));
}

template <bool Parallel>
void BM_DjBatch(benchmark::State& state) {
  const quadqc::SpinSystem sys;
  std::vector<quadqc::dj::DJJob> jobs;
  for (auto id : quadqc::dj::kAllOracles)
    for (auto m : quadqc::dj::kAllMethods) jobs.push_back({id, m, {}});
  for (auto _ : state) {
    if constexpr (Parallel) {
      benchmark::DoNotOptimize(quadqc::dj::omp::run_dj_batch(sys, jobs));
    } else {
      benchmark::DoNotOptimize(quadqc::dj::serial::run_dj_batch(sys, jobs));
    }
  }
}

BENCHMARK(BM_Fid<k::serial::synthesize_fid>)->Name("fid/serial")->Arg(4096)->Arg(65536);
BENCHMARK(BM_Fid<k::omp::synthesize_fid>)->Name("fid/omp")->Arg(4096)->Arg(65536);
BENCHMARK(BM_Dft<k::serial::dft>)->Name("dft/serial")->Arg(1024)->Arg(4096);
BENCHMARK(BM_Dft<k::omp::dft>)->Name("dft/omp")->Arg(1024)->Arg(4096);
BENCHMARK(BM_Slices<k::serial::slice_propagators>)->Name("slices/serial")->Arg(1024)->Arg(8192);
BENCHMARK(BM_Slices<k::omp::slice_propagators>)->Name("slices/omp")->Arg(1024)->Arg(8192);
BENCHMARK(BM_DjBatch<false>)->Name("dj_batch/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DjBatch<true>)->Name("dj_batch/omp")->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
