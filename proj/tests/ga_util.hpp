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

#include <random>
#include <vector>

#include "mview/ga.hpp"
#include "mview/oracle.hpp"
#include "view_util.hpp"

namespace mview::testing {

struct GaRun {
  GroupResult result;
  Transcript transcript;
  std::size_t view_size = 0;
};

inline GaRun run_pkpk_ga(const Relation& r0, const Relation& r1,
                         SecurityLevel level, const JgaQuery& q, GaProtocol proto,
                         SessionConfig cfg = {}, const GaLimits& limits = {}) {
  auto views = run_protocol(cfg, [&](Party& p) {
    return gen_pkpk(p, level, p.is(0) ? r0 : r1);
  });
  auto run = run_protocol(cfg, [&](Party& p) {
    return run_ga(p, views.out[p.id()], q, proto, limits);
  });
  return {run.out[1], run.transcript, views.out[0].size()};
}

inline GaRun run_pkfk_ga(const Relation& r0, const Relation& r1,
                         const JgaQuery& q, GaProtocol proto,
                         SessionConfig cfg = {}, const PkFkOptions& opts = {}) {
  auto views = run_protocol(cfg, [&](Party& p) {
    return gen_pkfk(p, p.is(0) ? r0 : r1, opts);
  });
  auto run = run_protocol(cfg, [&](Party& p) {
    return run_ga(p, views.out[p.id()], q, proto);
  });
  return {run.out[1], run.transcript, views.out[0].size()};
}

// Aggregates over the "v" columns of both sides, random kinds.
inline std::vector<AggSpec> random_aggs(std::mt19937_64& rng, bool additive_only = false) {
  const Agg kinds[] = {Agg::Sum, Agg::Count, Agg::Max, Agg::Min};
  std::vector<AggSpec> out;
  const std::size_t m = 1 + rng() % 3;
  for (std::size_t a = 0; a < m; ++a) {
    const Agg agg = kinds[rng() % (additive_only ? 2 : 4)];
    out.push_back({static_cast<PartyId>(rng() % 2), "v", agg});
  }
  return out;
}

inline JgaQuery two_side_query(std::vector<AggSpec> aggs) {
  JgaQuery q;
  q.g0 = "g";
  q.g1 = "g";
  q.aggs = std::move(aggs);
  return q;
}

}  // namespace mview::testing
