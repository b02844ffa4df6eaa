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


#include "bench.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <fmt/format.h>

#include "mview/errors.hpp"
#include "mview/oblivious.hpp"
#include "mview/view.hpp"

namespace mview::cli {
namespace {

// Left keys 0..n-1, right keys n/2..n/2+n-1: half the rows join.
Relation bench_table(std::size_t n, std::size_t d, std::size_t offset,
                     std::uint64_t seed, const char* name) {
  std::mt19937_64 rng(seed);
  std::vector<Ring> k(n), g(n), v(n);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t i = 0; i < n; ++i) {
    k[i] = offset + order[i];
    g[i] = d == 0 ? 0 : rng() % d;
    v[i] = rng() & 0xffffffffu;
  }
  return make_relation(name, {"k", "g", "v"}, {k, g, v}, "k");
}

BenchRow to_row(std::string kind, std::string protocol, std::size_t n,
                std::size_t d0, std::size_t d1, std::string agg,
                const Transcript& t) {
  BenchRow row{std::move(kind), std::move(protocol), n, d0, d1, std::move(agg)};
  row.wire_bits = t.wire_bits();
  row.rounds = t.wire_rounds;
  row.hybrid_bits = t.hybrid_bits;
  for (const auto& ph : t.phases) {
    row.phases.push_back({ph.path, ph.bits(), ph.rounds, ph.hybrid_bits});
  }
  return row;
}

PlainColumn column_of(Party& p, PartyId owner, const std::vector<Ring>& x) {
  return {{Flavor::Arithmetic, 64}, p.is(owner) ? x : std::vector<Ring>{}};
}

void add_ratio(BenchReport& r, std::string name, std::string law,
               const BenchRow* num, const BenchRow* den, double lo, double hi) {
  if (!num || !den || num->status != "ok" || den->status != "ok" ||
      den->wire_bits == 0) {
    return;
  }
  r.ratios.push_back({std::move(name), std::move(law),
                      static_cast<double>(num->wire_bits) /
                          static_cast<double>(den->wire_bits),
                      lo, hi});
}

}  // namespace

const BenchRow* BenchReport::find(std::string_view kind,
                                  std::string_view protocol, std::size_t n,
                                  std::size_t d) const {
  for (const auto& row : rows) {
    if (row.kind == kind && row.protocol == protocol && row.n == n &&
        row.d0 == d) {
      return &row;
    }
  }
  return nullptr;
}

BenchReport run_bench(const BenchGrid& grid) {
  BenchReport report;
  const SessionConfig& cfg = grid.session;

  for (std::size_t n : grid.sizes) {
    const Relation r0 = bench_table(n, 1, 0, cfg.seed0, "left");
    const Relation r1 = bench_table(n, 1, n / 2, cfg.seed1, "right");
    for (int level : {0, 1, 2}) {
      auto run = run_protocol(cfg, [&](Party& p) {
        return gen_pkpk(p, level_from_int(level), p.is(0) ? r0 : r1).size();
      });
      const char* names[] = {"psiV", "pidV", "secV"};
      report.rows.push_back(to_row("view", names[level], n, 0, 0, "", run.transcript));
    }

    std::mt19937_64 rng(cfg.seed_dealer ^ n);
    std::vector<Ring> x(n);
    for (auto& v : x) v = rng();
    const IndexMap pi = IndexMap::random(n, rng);

    auto osn = run_protocol(cfg, [&](Party& p) {
      PlainColumn col = column_of(p, 0, x);
      return osn_plain(p, 1, p.is(1) ? pi : IndexMap{}, {&col, 1}, n).size();
    });
    report.rows.push_back(to_row("osn", "osn", n, 0, 0, "", osn.transcript));

    // The permutation is held in the clear by party 0 as its share; the
    // other share is zero. Costs do not depend on the share values.
    auto pi_share = [&](Party& p) {
      return SharedVector(Flavor::Arithmetic, 64, p.id(),
                          p.is(0) ? pi.as_ring() : std::vector<Ring>(n, 0));
    };
    auto shared = run_protocol(cfg, [&](Party& p) {
      SharedVector col(Flavor::Arithmetic, 64, p.id(),
                       p.is(0) ? x : std::vector<Ring>(n, 0));
      return perm_shared(p, pi_share(p), {&col, 1}).size();
    });
    report.rows.push_back(to_row("perm", "perm_shared", n, 0, 0, "", shared.transcript));
    auto plain = run_protocol(cfg, [&](Party& p) {
      PlainColumn col = column_of(p, 0, x);
      return perm_plain(p, 0, pi_share(p), {&col, 1}).size();
    });
    report.rows.push_back(to_row("perm", "perm_plain", n, 0, 0, "", plain.transcript));

    for (std::size_t d : grid.domains) {
      const Relation g0 = bench_table(n, d, 0, cfg.seed0 + d, "left");
      const Relation g1 = bench_table(n, d, n / 2, cfg.seed1 + d, "right");
      auto views = run_protocol(cfg, [&](Party& p) {
        return gen_pkpk(p, SecurityLevel::Sec, p.is(0) ? g0 : g1);
      });
      JgaQuery q;
      q.g0 = "g";
      q.g1 = "g";
      q.aggs = {{0, "v", grid.agg}};
      for (GaProtocol proto : grid.protocols) {
        BenchRow row{"ga", protocol_name(proto), n, d, d, agg_name(grid.agg)};
        try {
          auto run = run_protocol(cfg, [&](Party& p) {
            return run_ga(p, views.out[p.id()], q, proto).rows.size();
          });
          row = to_row("ga", protocol_name(proto), n, d, d, agg_name(grid.agg),
                       run.transcript);
        } catch (const Error& e) {
          row.status = std::string(to_string(e.code()));
        }
        report.rows.push_back(std::move(row));
      }
    }
  }

  if (grid.sizes.size() >= 2) {
    const std::size_t lo = grid.sizes.front();
    const std::size_t hi = grid.sizes.back();
    const double growth = static_cast<double>(hi) / static_cast<double>(lo);
    const double nlogn = growth * std::log2(static_cast<double>(hi)) /
                         std::log2(static_cast<double>(lo));
    add_ratio(report, fmt::format("osn n={}/{}", hi, lo), fmt::format("n log n ~ {:.2f}", nlogn),
              report.find("osn", "osn", hi), report.find("osn", "osn", lo),
              0.8 * nlogn, 1.2 * nlogn);
    for (const char* gen : {"psiV", "pidV", "secV"}) {
      add_ratio(report, fmt::format("{} n={}/{}", gen, hi, lo),
                fmt::format("grows at least like n ({:.0f})", growth),
                report.find("view", gen, hi), report.find("view", gen, lo),
                growth, 2 * growth * growth);
    }
  }
  for (std::size_t n : grid.sizes) {
    add_ratio(report, fmt::format("bitmap (8,8)/(4,4) n={}", n), "d0*d1 ~ 4",
              report.find("ga", "bitmap", n, 8), report.find("ga", "bitmap", n, 4),
              3.2, 4.8);
    add_ratio(report, fmt::format("perm_plain/perm_shared n={}", n), "about half",
              report.find("perm", "perm_plain", n), report.find("perm", "perm_shared", n),
              0.35, 0.65);
    add_ratio(report, fmt::format("psiV/secV n={}", n), "below 1",
              report.find("view", "psiV", n), report.find("view", "secV", n),
              0.0, 0.999999);
  }
  return report;
}

void write_bench_csv(std::ostream& out, const BenchReport& report) {
  out << "kind,protocol,n,d0,d1,agg,status,phase,wire_bits,rounds,hybrid_bits\n";
  for (const auto& row : report.rows) {
    const auto prefix = fmt::format("{},{},{},{},{},{},{}", row.kind, row.protocol,
                                    row.n, row.d0, row.d1, row.agg, row.status);
    for (const auto& ph : row.phases) {
      out << fmt::format("{},{},{},{},{}\n", prefix, ph.path, ph.wire_bits,
                         ph.rounds, ph.hybrid_bits);
    }
    out << fmt::format("{},total,{},{},{}\n", prefix, row.wire_bits, row.rounds,
                       row.hybrid_bits);
  }
}

void write_bench_markdown(std::ostream& out, const BenchReport& report) {
  out << "| kind | protocol | n | d0 | d1 | agg | status | wire_bits | rounds | hybrid_bits |\n"
      << "|---|---|---|---|---|---|---|---|---|---|\n";
  for (const auto& row : report.rows) {
    out << fmt::format("| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |\n",
                       row.kind, row.protocol, row.n, row.d0, row.d1, row.agg,
                       row.status, row.wire_bits, row.rounds, row.hybrid_bits);
  }
  if (report.ratios.empty()) return;
  out << "\n| ratio | law | value | range | ok |\n|---|---|---|---|---|\n";
  for (const auto& r : report.ratios) {
    out << fmt::format("| {} | {} | {:.3f} | [{:.2f}, {:.2f}] | {} |\n", r.name,
                       r.law, r.value, r.lo, r.hi, r.in_range() ? "yes" : "no");
  }
}

}  // namespace mview::cli
