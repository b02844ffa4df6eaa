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


#include "mview/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <unordered_map>

#include "fmt/format.h"

namespace mview {

namespace {

Ring combine(Agg agg, Ring acc, Ring v) {
  switch (agg) {
    case Agg::Sum:
    case Agg::Count: return acc + v;
    case Agg::Max: return std::max(acc, v);
    case Agg::Min: return std::min(acc, v);
    case Agg::Xor: return acc ^ v;
  }
  return acc;
}

Ring start_value(Agg agg) { return agg == Agg::Min ? ~Ring{0} : 0; }

std::vector<std::size_t> stable_order(std::size_t n, auto key_less) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), key_less);
  return idx;
}

std::vector<Ring> ranks_of(const std::vector<std::size_t>& gather) {
  std::vector<Ring> dest(gather.size());
  for (std::size_t pos = 0; pos < gather.size(); ++pos) dest[gather[pos]] = pos;
  return dest;
}

void need(const PrimitiveArgs& a, std::size_t vectors) {
  require(a.vectors.size() >= vectors, ErrorCode::PreconditionViolated,
          "oracle primitive arguments");
}

}  // namespace

GroupResult eval_jga(const Relation& r0, const Relation& r1, const JgaQuery& q) {
  r0.validate();
  r1.validate();
  require(r0.kind == KeyKind::PrimaryKey, ErrorCode::PreconditionViolated,
          "left table must carry a primary key");
  if (q.kind == JoinKind::PkPk) {
    require(r1.kind == KeyKind::PrimaryKey, ErrorCode::DuplicatePrimaryKey,
            "PK-PK join over a foreign key");
  }
  std::unordered_map<Ring, std::size_t> left;
  for (std::size_t i = 0; i < r0.rows(); ++i) left.emplace(r0.keys()[i], i);

  std::map<std::pair<Ring, Ring>, std::vector<Ring>> groups;
  for (std::size_t i1 = 0; i1 < r1.rows(); ++i1) {
    const auto hit = left.find(r1.keys()[i1]);
    if (hit == left.end()) continue;
    const std::size_t i0 = hit->second;
    const std::pair<Ring, Ring> g{q.g0 ? r0.column(*q.g0)[i0] : 0,
                                  q.g1 ? r1.column(*q.g1)[i1] : 0};
    auto [it, fresh] = groups.try_emplace(g);
    if (fresh) {
      for (const auto& a : q.aggs) it->second.push_back(start_value(a.agg));
    }
    for (std::size_t a = 0; a < q.aggs.size(); ++a) {
      const AggSpec& spec = q.aggs[a];
      Ring v = 1;
      if (spec.agg != Agg::Count) {
        v = spec.side == 0 ? r0.column(spec.column)[i0] : r1.column(spec.column)[i1];
      }
      it->second[a] = combine(spec.agg, it->second[a], v);
    }
  }
  GroupResult out;
  out.canonical = true;
  for (auto& [g, aggs] : groups) out.rows.push_back({true, g.first, g.second, aggs});
  return out;
}

std::size_t first_of_group(std::span<const Ring> keys, std::size_t i) {
  while (i > 0 && keys[i - 1] == keys[i]) --i;
  return i;
}

std::vector<std::vector<Ring>> oracle_primitive(std::string_view name,
                                                const PrimitiveArgs& args) {
  const auto& v = args.vectors;
  if (name == "osn" || name == "shuffle" || name == "perm" || name == "invp") {
    need(args, 1);
    const auto& pi = v[0];
    std::vector<std::vector<Ring>> out;
    for (std::size_t c = 1; c < v.size(); ++c) {
      std::vector<Ring> y(pi.size());
      for (std::size_t i = 0; i < pi.size(); ++i) {
        if (name == "invp") {
          y[pi[i]] = v[c][i];
        } else {
          y[i] = v[c][pi[i]];
        }
      }
      out.push_back(std::move(y));
    }
    return out;
  }
  if (name == "per_gen" || name == "bit_sort") {
    need(args, 1);
    const std::size_t n = v[0].size();
    std::vector<Ring> bucket(n, 0);
    for (std::size_t j = 0; j < v.size(); ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        if (v[j][i]) bucket[i] = name == "per_gen" ? 1 : j + 1;
      }
    }
    return {ranks_of(stable_order(n, [&](std::size_t a, std::size_t b) {
      return bucket[a] < bucket[b];
    }))};
  }
  if (name == "stable_sort") {
    need(args, 1);
    const std::size_t n = v[0].size();
    auto order = stable_order(n, [&](std::size_t a, std::size_t b) {
      for (const auto& limb : v) {
        if (limb[a] != limb[b]) return limb[a] < limb[b];
      }
      return false;
    });
    return {std::vector<Ring>(order.begin(), order.end())};
  }
  if (name == "trav") {
    need(args, 1);
    require(!args.params.empty(), ErrorCode::PreconditionViolated, "trav agg");
    const Agg agg = static_cast<Agg>(args.params[0]);
    const auto& values = v.back();
    const std::size_t n = values.size();
    std::vector<Ring> out(n);
    for (std::size_t i = 0; i < n; ++i) {
      const bool head = i == 0 || std::any_of(v.begin(), v.end() - 1, [&](const auto& k) {
                          return k[i] != k[i - 1];
                        });
      out[i] = head ? values[i] : combine(agg, out[i - 1], values[i]);
    }
    return {out};
  }
  if (name == "cpsi") {
    need(args, 3);
    std::unordered_map<Ring, std::size_t> sender;
    for (std::size_t i = 0; i < v[1].size(); ++i) sender.emplace(v[1][i], i);
    std::vector<Ring> e(v[0].size(), 0), z(v[0].size(), 0);
    for (std::size_t i = 0; i < v[0].size(); ++i) {
      if (auto it = sender.find(v[0][i]); it != sender.end()) {
        e[i] = 1;
        z[i] = v[2][it->second];
      }
    }
    return {e, z};
  }
  if (name == "psi" || name == "pid-size") {
    need(args, 2);
    const std::set<Ring> x(v[0].begin(), v[0].end());
    const std::set<Ring> y(v[1].begin(), v[1].end());
    if (name == "psi") {
      std::vector<Ring> out;
      std::set_intersection(x.begin(), x.end(), y.begin(), y.end(),
                            std::back_inserter(out));
      return {out};
    }
    std::set<Ring> u = x;
    u.insert(y.begin(), y.end());
    return {{static_cast<Ring>(u.size())}};
  }
  fail(ErrorCode::UnknownPrimitive, fmt::format("no oracle for '{}'", name));
}

}  // namespace mview
