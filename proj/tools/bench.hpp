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


#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "mview/ga.hpp"
#include "mview/session.hpp"

namespace mview::cli {

struct BenchGrid {
  std::vector<std::size_t> sizes{256, 1024};
  // Domain sizes; each runs as a (d, d) cell.
  std::vector<std::size_t> domains{4, 8, 40};
  std::vector<GaProtocol> protocols{GaProtocol::Sorting, GaProtocol::OSorting,
                                    GaProtocol::BSorting, GaProtocol::Mix,
                                    GaProtocol::Bitmap};
  Agg agg = Agg::Sum;
  SessionConfig session;
};

struct BenchPhase {
  std::string path;
  std::uint64_t wire_bits = 0;
  std::uint64_t rounds = 0;
  std::uint64_t hybrid_bits = 0;
};

struct BenchRow {
  std::string kind;      // view, osn, perm, ga
  std::string protocol;
  std::size_t n = 0;
  std::size_t d0 = 0;
  std::size_t d1 = 0;
  std::string agg;
  std::string status = "ok";
  std::uint64_t wire_bits = 0;
  std::uint64_t rounds = 0;
  std::uint64_t hybrid_bits = 0;
  std::vector<BenchPhase> phases;
};

struct BenchRatio {
  std::string name;
  std::string law;
  double value = 0;
  double lo = 0;
  double hi = 0;
  bool in_range() const { return value >= lo && value <= hi; }
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::vector<BenchRatio> ratios;
  const BenchRow* find(std::string_view kind, std::string_view protocol,
                       std::size_t n, std::size_t d = 0) const;
};

BenchReport run_bench(const BenchGrid& grid);

// One line per phase plus a "total" line per cell.
void write_bench_csv(std::ostream& out, const BenchReport& report);
void write_bench_markdown(std::ostream& out, const BenchReport& report);

}  // namespace mview::cli
