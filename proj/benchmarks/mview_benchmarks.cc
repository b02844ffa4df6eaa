// Copyright 2026 The mview Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Wall-clock microbenchmarks. Communication counts are attached as counters;
// the `mview bench` subcommand produces the full per-phase report.

#include <numeric>
#include <random>

#include <benchmark/benchmark.h>

#include "mview/ga.hpp"
#include "mview/oblivious.hpp"
#include "mview/view.hpp"

namespace {

using namespace mview;

Relation table(std::size_t n, std::size_t d, std::size_t offset, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Ring> k(n), g(n), v(n);
  std::iota(k.begin(), k.end(), offset);
  std::shuffle(k.begin(), k.end(), rng);
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = rng() % d;
    v[i] = rng() & 0xffff;
  }
  return make_relation("t", {"k", "g", "v"}, {k, g, v}, "k");
}

void report(benchmark::State& state, const Transcript& t) {
  state.counters["wire_bits"] = static_cast<double>(t.wire_bits());
  state.counters["rounds"] = static_cast<double>(t.wire_rounds);
  state.counters["hybrid_bits"] = static_cast<double>(t.hybrid_bits);
}

void BM_OsnPlain(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(7);
  std::vector<Ring> x(n);
  for (auto& v : x) v = rng();
  const IndexMap pi = IndexMap::random(n, rng);
  Transcript last;
  for (auto _ : state) {
    auto run = run_protocol(SessionConfig{}, [&](Party& p) {
      PlainColumn col{{Flavor::Arithmetic, 64}, p.is(0) ? x : std::vector<Ring>{}};
      return osn_plain(p, 1, p.is(1) ? pi : IndexMap{}, {&col, 1}, n).size();
    });
    last = std::move(run.transcript);
  }
  report(state, last);
}
BENCHMARK(BM_OsnPlain)->RangeMultiplier(4)->Range(256, 4096)->Unit(benchmark::kMillisecond);

void BM_GenView(benchmark::State& state) {
  const auto level = level_from_int(static_cast<int>(state.range(0)));
  const auto n = static_cast<std::size_t>(state.range(1));
  const Relation r0 = table(n, 4, 0, 1);
  const Relation r1 = table(n, 4, n / 2, 2);
  Transcript last;
  for (auto _ : state) {
    auto run = run_protocol(SessionConfig{}, [&](Party& p) {
      return gen_pkpk(p, level, p.is(0) ? r0 : r1).size();
    });
    last = std::move(run.transcript);
  }
  report(state, last);
}
BENCHMARK(BM_GenView)
    ->ArgsProduct({{0, 1, 2}, {256, 1024}})
    ->ArgNames({"level", "n"})
    ->Unit(benchmark::kMillisecond);

void BM_GroupAggregate(benchmark::State& state) {
  const auto proto = static_cast<GaProtocol>(state.range(0));
  const auto d = static_cast<std::size_t>(state.range(1));
  const std::size_t n = 512;
  const Relation r0 = table(n, d, 0, 3);
  const Relation r1 = table(n, d, n / 2, 4);
  auto views = run_protocol(SessionConfig{}, [&](Party& p) {
    return gen_pkpk(p, SecurityLevel::Sec, p.is(0) ? r0 : r1);
  });
  JgaQuery q;
  q.g0 = "g";
  q.g1 = "g";
  q.aggs = {{0, "v", Agg::Sum}};
  Transcript last;
  for (auto _ : state) {
    auto run = run_protocol(SessionConfig{}, [&](Party& p) {
      return run_ga(p, views.out[p.id()], q, proto).rows.size();
    });
    last = std::move(run.transcript);
  }
  state.SetLabel(protocol_name(proto));
  report(state, last);
}
BENCHMARK(BM_GroupAggregate)
    ->ArgsProduct({{static_cast<int>(GaProtocol::Sorting),
                    static_cast<int>(GaProtocol::OSorting),
                    static_cast<int>(GaProtocol::BSorting),
                    static_cast<int>(GaProtocol::Mix),
                    static_cast<int>(GaProtocol::Bitmap)},
                   {4, 16}})
    ->ArgNames({"protocol", "d"})
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
