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

#include "ga_internal.hpp"
#include "mview/gates.hpp"

namespace mview {

using detail::GaCtx;
using detail::SortedTable;

namespace {

std::vector<Ring> sorted_plain(const GaCtx& c, const IndexMap& sigma,
                               const std::vector<Ring>& v) {
  (void)c;
  return sigma.empty() ? v : sigma.apply(v);
}

// Columns of party u in σ order, trivially shared by u.
SharedVector share_sorted(GaCtx& c, PartyId u, const IndexMap& sigma,
                          const std::vector<Ring>& v, Flavor f) {
  return SharedVector::from_plain(f, kRingBits, c.p.id(), u,
                                  c.p.is(u) ? sigma.apply(v) : std::vector<Ring>{}, c.n);
}

bool all_additive(const JgaQuery& q) {
  return std::all_of(q.aggs.begin(), q.aggs.end(), [](const AggSpec& a) {
    return a.agg == Agg::Sum || a.agg == Agg::Count;
  });
}

}  // namespace

GroupResult ga_sorting(Party& p, ViewRef view, const JgaQuery& q) {
  GaCtx c(p, view, q);
  if (c.n == 0) return detail::empty_result(p);
  const std::size_t m = q.aggs.size();
  const IndexMap sigma = detail::local_group_sort(c, 1);

  SortedTable t;
  std::vector<SharedVector> v1(m);
  SharedVector g1;
  {
    auto ph = p.phase("local-sort");
    g1 = share_sorted(c, 1, sigma, c.group_values(1), Flavor::Arithmetic);
    for (std::size_t a = 0; a < m; ++a) {
      if (c.agg_side(a) == 1) {
        v1[a] = share_sorted(c, 1, sigma, c.agg_values(a), agg_flavor(q.aggs[a].agg));
      }
    }
  }
  std::vector<SharedVector> moved;
  {
    auto ph = p.phase("osn");
    std::vector<SharedVector> cols{c.e, detail::group_shared(c, 0, Flavor::Binary)};
    for (std::size_t a = 0; a < m; ++a) {
      if (c.agg_side(a) == 0) cols.push_back(c.agg_shared(a));
    }
    moved = osn_shared(p, 1, sigma, cols);
  }
  SortResult sorted;
  {
    auto ph = p.phase("sorting");
    sorted = stable_sort(p, std::span<const SharedVector>(moved.data(), 2));
  }
  {
    auto ph = p.phase("perm");
    std::vector<SharedVector> cols{g1};
    std::size_t next0 = 2;
    for (std::size_t a = 0; a < m; ++a) {
      cols.push_back(c.agg_side(a) == 0 ? moved[next0++] : v1[a]);
    }
    auto out = perm_shared(p, sorted.perm, cols);
    t.e = sorted.keys[0];
    t.g[0] = sorted.keys[1];
    t.g[1] = out[0];
    t.values.assign(out.begin() + 1, out.end());
  }
  return detail::sorted_tail(c, std::move(t), false);
}

GroupResult ga_osorting(Party& p, ViewRef view, const JgaQuery& q) {
  GaCtx c(p, view, q);
  if (c.n == 0) return detail::empty_result(p);
  const std::size_t m = q.aggs.size();
  const IndexMap sigma = detail::local_group_sort(c, 1);

  std::vector<SharedVector> moved;
  {
    auto ph = p.phase("osn");
    moved = osn_shared(p, 1, sigma,
                       std::vector<SharedVector>{c.e, detail::group_shared(c, 0, Flavor::Binary)});
  }
  SortResult sorted;
  {
    auto ph = p.phase("sorting");
    sorted = stable_sort(p, moved);
  }
  SortedTable t;
  t.e = sorted.keys[0];
  t.g[0] = sorted.keys[1];
  t.values.resize(m);
  SharedVector rho;
  {
    // Party 1's columns and σ itself ride through the sorting permutation;
    // the permuted σ is the composite needed for party 0's columns.
    auto ph = p.phase("perm-p1");
    std::vector<PlainColumn> cols{
        c.plain_column(1, sorted_plain(c, sigma, c.group_values(1)))};
    for (std::size_t a = 0; a < m; ++a) {
      if (c.agg_side(a) != 1) continue;
      cols.push_back(c.plain_column(1, sorted_plain(c, sigma, c.agg_values(a)),
                                    {agg_flavor(q.aggs[a].agg), kRingBits}));
    }
    cols.push_back(c.plain_column(1, p.is(1) ? sigma.as_ring() : std::vector<Ring>{}));
    auto out = perm_plain(p, 1, sorted.perm, cols);
    t.g[1] = out[0];
    rho = out.back();
    std::size_t next = 1;
    for (std::size_t a = 0; a < m; ++a) {
      if (c.agg_side(a) == 1) t.values[a] = out[next++];
    }
  }
  {
    auto ph = p.phase("perm-p0");
    std::vector<std::size_t> idx;
    for (std::size_t a = 0; a < m; ++a) {
      if (c.agg_side(a) == 0) idx.push_back(a);
    }
    if (!idx.empty()) {
      std::vector<SharedVector> out;
      if (c.plain(0)) {
        std::vector<PlainColumn> cols;
        for (std::size_t a : idx) {
          cols.push_back(c.plain_column(0, c.agg_values(a),
                                        {agg_flavor(q.aggs[a].agg), kRingBits}));
        }
        out = perm_plain(p, 0, rho, cols);
      } else {
        std::vector<SharedVector> cols;
        for (std::size_t a : idx) cols.push_back(c.agg_shared(a));
        out = perm_shared(p, rho, cols);
      }
      for (std::size_t k = 0; k < idx.size(); ++k) t.values[idx[k]] = out[k];
    }
  }
  return detail::sorted_tail(c, std::move(t), all_additive(q));
}

GroupResult ga_bsorting(Party& p, ViewRef view, const JgaQuery& q,
                        const GaLimits& limits) {
  GaCtx c(p, view, q);
  if (c.n == 0) return detail::empty_result(p);
  const std::size_t m = q.aggs.size();
  const PartyId o = detail::bitmap_side(c, limits);
  const PartyId s = 1 - o;
  const std::vector<Ring> dom = detail::group_domain(c, o, limits);
  require(dom.size() <= limits.bitmap_cap, ErrorCode::DomainTooLarge,
          "grouping domain exceeds the bitmap cap");
  const IndexMap sigma = detail::local_group_sort(c, s);

  std::vector<SharedVector> bits = detail::group_bitmap(c, o, dom);
  const std::size_t d = bits.size();
  {
    // Rows outside the join fall into the leading empty bucket.
    auto ph = p.phase("bitmap");
    const SharedVector all = and_gate(p, detail::repeat(c.e, d), concat(bits));
    for (std::size_t j = 0; j < d; ++j) bits[j] = all.slice(j * c.n, (j + 1) * c.n);
  }
  SharedVector pi;
  {
    auto ph = p.phase("osn");
    bits = osn_shared(p, s, sigma, bits);
  }
  {
    auto ph = p.phase("sorting");
    pi = bit_sort(p, bits);
  }
  SortedTable t;
  t.values.resize(m);
  SharedVector rho;
  {
    auto ph = p.phase("perm-s");
    std::vector<PlainColumn> cols{c.plain_column(s, sorted_plain(c, sigma, c.group_values(s)))};
    for (std::size_t a = 0; a < m; ++a) {
      if (c.agg_side(a) != s) continue;
      cols.push_back(c.plain_column(s, sorted_plain(c, sigma, c.agg_values(a)),
                                    {agg_flavor(q.aggs[a].agg), kRingBits}));
    }
    cols.push_back(c.plain_column(s, p.is(s) ? sigma.as_ring() : std::vector<Ring>{}));
    auto out = invp_plain(p, s, pi, cols);
    t.g[s] = out[0];
    rho = out.back();
    std::size_t next = 1;
    for (std::size_t a = 0; a < m; ++a) {
      if (c.agg_side(a) == s) t.values[a] = out[next++];
    }
  }
  {
    auto ph = p.phase("perm-o");
    std::vector<std::size_t> idx;
    for (std::size_t a = 0; a < m; ++a) {
      if (c.agg_side(a) == o) idx.push_back(a);
    }
    std::vector<SharedVector> out;
    if (c.plain(o)) {
      std::vector<PlainColumn> cols{c.plain_column(o, c.group_values(o))};
      for (std::size_t a : idx) {
        cols.push_back(c.plain_column(o, c.agg_values(a),
                                      {agg_flavor(q.aggs[a].agg), kRingBits}));
      }
      out = perm_plain(p, o, rho, cols);
    } else {
      std::vector<SharedVector> cols{detail::group_shared(c, o, Flavor::Arithmetic)};
      for (std::size_t a : idx) cols.push_back(c.agg_shared(a));
      out = perm_shared(p, rho, cols);
    }
    t.g[o] = out[0];
    for (std::size_t k = 0; k < idx.size(); ++k) t.values[idx[k]] = out[k + 1];
  }
  {
    auto ph = p.phase("perm-e");
    t.e = perm_shared(p, rho, std::vector<SharedVector>{c.e}).front();
  }
  return detail::sorted_tail(c, std::move(t), false);
}

GroupResult ga_oneside(Party& p, ViewRef view, const JgaQuery& q) {
  GaCtx c(p, view, q);
  require(q.one_side(), ErrorCode::PreconditionViolated,
          "one-side aggregation needs exactly one grouping column");
  const PartyId s = q.g0 ? 0 : 1;
  require(c.plain(s), ErrorCode::Unsupported,
          "grouping column is secret-shared in this view");
  if (c.n == 0) return detail::empty_result(p);
  const std::size_t n = c.n;
  const std::size_t m = q.aggs.size();
  const PartyId me = p.id();
  const IndexMap sigma = detail::local_group_sort(c, s);

  SharedVector g, boundary;
  std::vector<SharedVector> vals(m);
  {
    auto ph = p.phase("local-sort");
    std::vector<Ring> gs = sorted_plain(c, sigma, c.group_values(s));
    g = SharedVector::from_plain(Flavor::Arithmetic, kRingBits, me, s, gs, n);
    std::vector<Ring> b;
    if (p.is(s)) {
      b.assign(n, 1);
      for (std::size_t i = 0; i + 1 < n; ++i) b[i] = gs[i] != gs[i + 1];
    }
    boundary = SharedVector::from_plain(Flavor::Binary, 1, me, s, b, n);
    for (std::size_t a = 0; a < m; ++a) {
      if (c.agg_side(a) == s) {
        vals[a] = share_sorted(c, s, sigma, c.agg_values(a), agg_flavor(q.aggs[a].agg));
      }
    }
  }
  SharedVector e;
  {
    auto ph = p.phase("osn");
    std::vector<SharedVector> cols{c.e};
    for (std::size_t a = 0; a < m; ++a) {
      if (c.agg_side(a) != s) cols.push_back(c.agg_shared(a));
    }
    auto out = osn_shared(p, s, sigma, cols);
    e = out[0];
    std::size_t next = 1;
    for (std::size_t a = 0; a < m; ++a) {
      if (c.agg_side(a) != s) vals[a] = out[next++];
    }
  }
  std::vector<Agg> aggs = c.aggs();
  {
    // Rows outside the join become the aggregate's identity.
    auto ph = p.phase("exclude");
    std::vector<SharedVector> ids;
    for (std::size_t a = 0; a < m; ++a) {
      ids.push_back(SharedVector::constant(vals[a].flavor(), kRingBits, me,
                                           std::vector<Ring>(n, agg_identity(aggs[a]))));
    }
    vals = mux_columns(p, e, vals, ids);
  }
  std::vector<SharedVector> r;
  {
    auto ph = p.phase("trav");
    vals.push_back(e);
    aggs.push_back(Agg::Max);
    r = trav_columns(p, std::span<const SharedVector>(&g, 1), vals, aggs);
  }
  SharedVector f;
  {
    auto ph = p.phase("valid");
    f = and_gate(p, boundary, r.back());
    r.pop_back();
  }
  const SharedVector zero = SharedVector::zeros(Flavor::Arithmetic, kRingBits, me, n);
  return detail::reveal_groups(c, f, s == 0 ? g : zero, s == 1 ? g : zero,
                               std::move(r), true, true);
}

}  // namespace mview
