// Copyright 2026 The ltc Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <vector>

#include <benchmark/benchmark.h>

#include "ltc/lattice.h"
#include "ltc/pmf.h"
#include "ltc/pmf_builders.h"
#include "ltc/random.h"
#include "ltc/rans.h"

namespace ltc {
namespace {

void BM_Nearest(benchmark::State& state) {
  const Lattice lat(static_cast<LatticeKind>(state.range(0)), 1.0);
  const int v = lat.dim();
  Rng rng(1);
  std::vector<double> pts(4096 * v);
  for (double& p : pts) p = rng.Uniform(-10.0, 10.0);
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lat.Nearest(std::span<const double>(pts.data() + i * v, v)));
    i = (i + 1) % 4096;
  }
  state.SetItemsProcessed(state.iterations());
  state.SetLabel(std::string(LatticeName(lat.kind())));
}
BENCHMARK(BM_Nearest)->Arg(1)->Arg(2)->Arg(3);

struct RansInput {
  TablePool pool;
  std::vector<uint32_t> codes, index;
};

RansInput MakeRansInput(size_t n) {
  RansInput in;
  const Dictionary d =
      Dictionary::Enumerate(Lattice(LatticeKind::kInteger1D, 1.0), SymmetricBox(1, 12.0));
  in.pool.tables.push_back(PmfScalar(GaussianMassFn(0.0, 2.0), 1.0, d));
  Rng rng(2);
  for (size_t i = 0; i < n; ++i) {
    in.codes.push_back(
        static_cast<uint32_t>(in.pool.tables[0].Lookup(rng.NextU64() % in.pool.tables[0].total())));
    in.index.push_back(0);
  }
  return in;
}

void BM_RansEncode(benchmark::State& state) {
  const RansInput in = MakeRansInput(static_cast<size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(RansEncode(in.codes, in.pool, in.index));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RansEncode)->Arg(1 << 16)->Arg(1 << 20);

void BM_RansDecode(benchmark::State& state) {
  const RansInput in = MakeRansInput(static_cast<size_t>(state.range(0)));
  const std::vector<uint8_t> bytes = RansEncode(in.codes, in.pool, in.index);
  const auto n = static_cast<uint32_t>(in.codes.size());
  for (auto _ : state) benchmark::DoNotOptimize(RansDecode(bytes, n, in.pool, in.index));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RansDecode)->Arg(1 << 16)->Arg(1 << 20);

void BM_PmfHex(benchmark::State& state) {
  const Lattice hex(LatticeKind::kHex2D, 1.0);
  const double s = static_cast<double>(state.range(0)) / 10.0;
  const Dictionary d = Dictionary::Enumerate(hex, SymmetricBox(2, 6.0 * s));
  const double mu[] = {0.1, -0.2};
  const double sigma[] = {s, s};
  for (auto _ : state) benchmark::DoNotOptimize(PmfHex(mu, sigma, d));
  state.counters["codes"] = static_cast<double>(d.size());
}
BENCHMARK(BM_PmfHex)->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_PmfMonteCarloOct(benchmark::State& state) {
  const Lattice oct(LatticeKind::kTruncOct3D, 1.0);
  const Dictionary d = Dictionary::Enumerate(oct, SymmetricBox(3, 6.0));
  const double mu[] = {0.0, 0.0, 0.0};
  const double sigma[] = {1.0, 1.0, 1.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(PmfMonteCarlo(mu, sigma, d, state.range(0), 9));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PmfMonteCarloOct)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace ltc

BENCHMARK_MAIN();
