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


#include <algorithm>
#include <charconv>
#include <map>

#include "fmt/format.h"
#include "ga_internal.hpp"
#include "mview/gates.hpp"

namespace mview {

void canonicalize(GroupResult& r) {
  std::erase_if(r.rows, [](const GroupRow& row) { return !row.valid; });
  std::sort(r.rows.begin(), r.rows.end());
  r.canonical = true;
}

std::string agg_name(Agg agg) {
  switch (agg) {
    case Agg::Sum: return "sum";
    case Agg::Count: return "count";
    case Agg::Max: return "max";
    case Agg::Min: return "min";
    case Agg::Xor: return "xor";
  }
  return "?";
}

Agg parse_agg(std::string_view name) {
  for (Agg a : {Agg::Sum, Agg::Count, Agg::Max, Agg::Min}) {
    if (agg_name(a) == name) return a;
  }
  fail(ErrorCode::ParseError, fmt::format("unknown aggregate '{}'", name));
}

void write_result_csv(std::ostream& out, const GroupResult& r,
                      const JgaQuery& q) {
  std::vector<std::string> header;
  std::vector<PartyId> side;
  if (q.g0) header.push_back(*q.g0), side.push_back(0);
  if (q.g1) header.push_back(*q.g1), side.push_back(1);
  for (const auto& a : q.aggs) {
    header.push_back(a.agg == Agg::Count ? "count"
                                         : fmt::format("{}_{}", agg_name(a.agg), a.column));
    side.push_back(a.side);
  }
  // Labels shared by both sides get the side appended.
  const auto bare = header;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (std::count(bare.begin(), bare.end(), bare[c]) > 1) {
      header[c] += fmt::format("_{}", side[c]);
    }
  }
  std::vector<std::vector<Ring>> cols(header.size());
  for (const auto& row : r.rows) {
    std::size_t c = 0;
    if (q.g0) cols[c++].push_back(row.g0);
    if (q.g1) cols[c++].push_back(row.g1);
    for (Ring v : row.aggs) cols[c++].push_back(v);
  }
  write_csv(out, header, cols);
}

std::string protocol_name(GaProtocol p) {
  switch (p) {
    case GaProtocol::Sorting: return "sorting";
    case GaProtocol::OSorting: return "osorting";
    case GaProtocol::BSorting: return "bsorting";
    case GaProtocol::Mix: return "mix";
    case GaProtocol::Bitmap: return "bitmap";
    case GaProtocol::OneSide: return "oneside";
  }
  return "?";
}

GaProtocol parse_protocol(std::string_view name) {
  for (auto p : {GaProtocol::Sorting, GaProtocol::OSorting, GaProtocol::BSorting,
                 GaProtocol::Mix, GaProtocol::Bitmap, GaProtocol::OneSide}) {
    if (protocol_name(p) == name) return p;
  }
  fail(ErrorCode::ParseError, fmt::format("unknown protocol '{}'", name));
}

GroupResult run_ga(Party& p, ViewRef view, const JgaQuery& q,
                   GaProtocol protocol, const GaLimits& limits) {
  switch (protocol) {
    case GaProtocol::Sorting: return ga_sorting(p, view, q);
    case GaProtocol::OSorting: return ga_osorting(p, view, q);
    case GaProtocol::BSorting: return ga_bsorting(p, view, q, limits);
    case GaProtocol::Mix: return ga_mix(p, view, q, limits);
    case GaProtocol::Bitmap: return ga_bitmap(p, view, q, limits);
    case GaProtocol::OneSide: return ga_oneside(p, view, q);
  }
  fail(ErrorCode::Unsupported, "protocol");
}

namespace detail {

GaCtx::GaCtx(Party& party, ViewRef view, const JgaQuery& query)
    : p(party), q(query), kind(view.kind()), n(view.size()) {
  require(!q.aggs.empty(), ErrorCode::PreconditionViolated, "no aggregates");
  require(q.g0 || q.g1, ErrorCode::PreconditionViolated, "no grouping column");
  require(q.kind == kind, ErrorCode::PreconditionViolated,
          "query join kind does not match the view");
  if (const auto* v = view.pkpk()) {
    e = v->e;
    j[p.id()] = &v->j;
  } else {
    fk = view.pkfk();
    e = fk->e;
    if (p.is(1)) j[1] = &fk->j1;
  }
  for (const auto& a : q.aggs) {
    require(a.agg != Agg::Xor, ErrorCode::Unsupported, "xor aggregate");
  }
  // Column checks that every party can make without interaction.
  for (PartyId u : {0, 1}) {
    std::vector<std::string> cols;
    if (group(u)) cols.push_back(*group(u));
    for (const auto& a : q.aggs) {
      if (a.agg != Agg::Count && a.side == u) cols.push_back(a.column);
    }
    for (const auto& col : cols) {
      if (!plain(u)) {
        const auto& names = fk->payload_columns;
        const bool found = std::find(names.begin(), names.end(), col) != names.end();
        require(found || (group(0) && col == *group(0)), ErrorCode::ParseError,
                "column missing from the PK-FK view");
      } else if (p.is(u)) {
        require(j[u]->has_column(col), ErrorCode::ParseError,
                "query column missing from the view");
      }
    }
  }
}

std::vector<Ring> GaCtx::values(PartyId u, const std::string& col) const {
  if (!p.is(u)) return {};
  require(plain(u), ErrorCode::Unsupported, "column is secret-shared");
  return j[u]->column(col);
}

std::vector<Ring> GaCtx::group_values(PartyId u) const {
  if (!p.is(u)) return {};
  if (!group(u)) return std::vector<Ring>(n, 0);
  return values(u, *group(u));
}

SharedVector GaCtx::shared(PartyId u, const std::string& col, Flavor flavor) {
  if (plain(u)) {
    return SharedVector::from_plain(flavor, kRingBits, p.id(), u, values(u, col), n);
  }
  const auto& names = fk->payload_columns;
  const auto it = std::find(names.begin(), names.end(), col);
  require(it != names.end(), ErrorCode::ParseError, "column missing from the view");
  const SharedVector& x = fk->j0[it - names.begin()];
  return flavor == Flavor::Binary ? arith_to_bin(p, x) : x;
}

PlainColumn GaCtx::plain_column(PartyId u, const std::vector<Ring>& v,
                                ColumnSpec spec) const {
  return {spec, p.is(u) ? v : std::vector<Ring>{}};
}

PartyId GaCtx::agg_side(std::size_t a) const {
  return q.aggs[a].agg == Agg::Count ? 1 : q.aggs[a].side;
}

std::vector<Ring> GaCtx::agg_values(std::size_t a) const {
  if (q.aggs[a].agg == Agg::Count) {
    return p.is(1) ? std::vector<Ring>(n, 1) : std::vector<Ring>{};
  }
  return values(q.aggs[a].side, q.aggs[a].column);
}

SharedVector GaCtx::agg_shared(std::size_t a) {
  const Flavor f = agg_flavor(q.aggs[a].agg);
  const PartyId u = agg_side(a);
  if (q.aggs[a].agg == Agg::Count || plain(u)) {
    return SharedVector::from_plain(f, kRingBits, p.id(), u, agg_values(a), n);
  }
  return shared(u, q.aggs[a].column, f);
}

std::vector<Agg> GaCtx::aggs() const {
  std::vector<Agg> out;
  for (const auto& a : q.aggs) out.push_back(a.agg);
  return out;
}

SharedVector group_shared(GaCtx& c, PartyId u, Flavor flavor) {
  if (!c.group(u)) return SharedVector::zeros(flavor, kRingBits, c.p.id(), c.n);
  return c.shared(u, *c.group(u), flavor);
}

std::vector<Ring> group_domain(GaCtx& c, PartyId u, const GaLimits& limits) {
  if (c.domains[u]) return *c.domains[u];
  std::vector<Ring> dom;
  const auto& given = u == 0 ? c.q.g0_domain : c.q.g1_domain;
  if (!c.group(u)) {
    dom = {0};
  } else if (given) {
    dom = *given;
  } else if (!c.plain(u)) {
    const std::string prefix = *c.group(u) + "#";
    for (const auto& name : c.fk->payload_columns) {
      if (!name.starts_with(prefix)) continue;
      Ring v = 0;
      const char* b = name.data() + prefix.size();
      const auto [ptr, ec] = std::from_chars(b, name.data() + name.size(), v);
      if (ec == std::errc{} && ptr == name.data() + name.size()) dom.push_back(v);
    }
    require(!dom.empty(), ErrorCode::PreconditionViolated,
            "PK-FK view lacks bitmap columns for the grouping attribute");
  } else {
    auto ph = c.p.phase("domain");
    if (c.p.is(u)) {
      dom = c.group_values(u);
      std::sort(dom.begin(), dom.end());
      dom.erase(std::unique(dom.begin(), dom.end()), dom.end());
      const Ring size = dom.size();
      c.p.send({&size, 1}, kRingBits);
      c.p.send(dom, kRingBits);
    } else {
      const Ring size = c.p.recv(1, kRingBits).front();
      require(size <= limits.bitmap_cap * 16, ErrorCode::DomainTooLarge,
              "announced domain");
      dom = c.p.recv(size, kRingBits);
    }
  }
  std::sort(dom.begin(), dom.end());
  dom.erase(std::unique(dom.begin(), dom.end()), dom.end());
  c.domains[u] = dom;
  return dom;
}

PartyId bitmap_side(GaCtx& c, const GaLimits& limits) {
  if (c.kind == JoinKind::PkFk) return 0;
  if (!c.q.g0) return 0;
  if (!c.q.g1) return 1;
  return group_domain(c, 1, limits).size() < group_domain(c, 0, limits).size() ? 1 : 0;
}

std::vector<std::vector<Ring>> plain_bitmap(const GaCtx& c, PartyId u,
                                            const std::vector<Ring>& domain) {
  if (!c.p.is(u)) return {};
  std::vector<std::vector<Ring>> plain(domain.size(), std::vector<Ring>(c.n, 0));
  const auto g = c.group_values(u);
  for (std::size_t i = 0; i < c.n; ++i) {
    const auto it = std::lower_bound(domain.begin(), domain.end(), g[i]);
    require(it != domain.end() && *it == g[i], ErrorCode::PreconditionViolated,
            "grouping value outside the declared domain");
    plain[it - domain.begin()][i] = 1;
  }
  return plain;
}

std::vector<SharedVector> group_bitmap(GaCtx& c, PartyId u,
                                       const std::vector<Ring>& domain) {
  const PartyId me = c.p.id();
  std::vector<SharedVector> bits;
  if (!c.group(u)) {
    const std::vector<Ring> ones(c.n, 1);
    bits.push_back(SharedVector::constant(Flavor::Binary, 1, me, ones));
    return bits;
  }
  if (!c.plain(u)) {
    for (Ring v : domain) {
      bits.push_back(low_bit(c.shared(u, bitmap_column_name(*c.group(u), v),
                                      Flavor::Arithmetic)));
    }
    return bits;
  }
  auto plain = plain_bitmap(c, u, domain);
  plain.resize(domain.size());
  for (const auto& col : plain) {
    bits.push_back(SharedVector::from_plain(Flavor::Binary, 1, me, u, col, c.n));
  }
  return bits;
}

IndexMap local_group_sort(const GaCtx& c, PartyId sorter) {
  if (!c.p.is(sorter)) return {};
  const auto g = c.group_values(sorter);
  std::vector<std::size_t> idx(c.n);
  for (std::size_t i = 0; i < c.n; ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return g[a] < g[b]; });
  return IndexMap(std::move(idx));
}

std::vector<SharedVector> final_shuffle(Party& p,
                                        std::span<const SharedVector> cols) {
  const std::size_t n = cols.empty() ? 0 : cols.front().size();
  auto ph = p.phase("shuffle");
  const IndexMap alpha = p.is(0) ? IndexMap::random(n, p.rng()) : IndexMap{};
  return osn_shared(p, 0, alpha, cols);
}

GroupResult empty_result(const Party& p) {
  GroupResult r;
  r.canonical = p.is(1);
  return r;
}

GroupResult sorted_tail(GaCtx& c, SortedTable t, bool suffix_sums) {
  Party& p = c.p;
  const std::size_t n = c.n;
  const std::vector<Agg> aggs = c.aggs();
  const std::vector<SharedVector> keys{t.e, t.g[0], t.g[1]};

  SharedVector f;
  {
    auto ph = p.phase("valid");
    std::vector<SharedVector> lo, hi;
    for (const auto& k : keys) {
      lo.push_back(k.slice(0, n - 1));
      hi.push_back(k.slice(1, n));
    }
    const SharedVector boundary = bit_not(eq_fields(p, lo, hi));
    if (suffix_sums) {
      // First valid row of each group.
      f = t.e.slice(0, 1);
      f.append(and_gate(p, t.e.slice(1, n), boundary));
    } else {
      // Last valid row of each group.
      f = and_gate(p, t.e.slice(0, n - 1), boundary);
      f.append(t.e.slice(n - 1, n));
    }
  }

  std::vector<SharedVector> r;
  {
    auto ph = p.phase("trav");
    if (suffix_sums) {
      for (auto v : t.values) {
        for (std::size_t i = n - 1; i-- > 0;) v[i] += v[i + 1];
        r.push_back(std::move(v));
      }
    } else {
      r = trav_columns(p, keys, t.values, aggs);
    }
  }

  GroupResult out = reveal_groups(c, f, t.g[0], t.g[1], std::move(r), true, true);
  if (suffix_sums && p.is(1)) {
    for (std::size_t i = 0; i + 1 < out.rows.size(); ++i) {
      for (std::size_t a = 0; a < aggs.size(); ++a) {
        out.rows[i].aggs[a] -= out.rows[i + 1].aggs[a];
      }
    }
  }
  return out;
}

GroupResult reveal_groups(GaCtx& c, const SharedVector& f, const SharedVector& g0,
                          const SharedVector& g1, std::vector<SharedVector> r,
                          bool mask, bool shuffle) {
  Party& p = c.p;
  const std::size_t rows = f.size();
  std::vector<SharedVector> cols{g0, g1};
  cols.insert(cols.end(), std::make_move_iterator(r.begin()),
              std::make_move_iterator(r.end()));
  if (mask) {
    auto ph = p.phase("mask");
    cols = mask_columns(p, f, cols, std::vector<Ring>(cols.size(), 0));
  }
  cols.insert(cols.begin(), f);
  if (shuffle) cols = final_shuffle(p, cols);
  p.probe("ga/valid", cols[0]);

  std::vector<std::vector<Ring>> open_cols;
  {
    auto ph = p.phase("reveal");
    for (const auto& col : cols) open_cols.push_back(reveal_to(p, col, 1));
  }
  GroupResult out = empty_result(p);
  if (!p.is(1)) return out;
  out.revealed_rows = rows;
  for (std::size_t i = 0; i < rows; ++i) {
    GroupRow row{open_cols[0][i] != 0, open_cols[1][i], open_cols[2][i], {}};
    for (std::size_t a = 3; a < open_cols.size(); ++a) row.aggs.push_back(open_cols[a][i]);
    out.rows.push_back(std::move(row));
  }
  canonicalize(out);
  return out;
}

std::vector<Ring> repeat(std::span<const Ring> v, std::size_t times) {
  std::vector<Ring> out;
  out.reserve(v.size() * times);
  for (std::size_t t = 0; t < times; ++t) out.insert(out.end(), v.begin(), v.end());
  return out;
}

SharedVector repeat(const SharedVector& v, std::size_t times) {
  return SharedVector(v.flavor(), v.width(), v.owner(), repeat(v.data(), times));
}

}  // namespace detail
}  // namespace mview
