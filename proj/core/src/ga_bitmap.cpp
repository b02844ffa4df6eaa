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
using detail::repeat;

namespace {

SharedVector gather(const SharedVector& v, std::span<const std::size_t> idx) {
  std::vector<Ring> out(idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k) out[k] = v[idx[k]];
  return SharedVector(v.flavor(), v.width(), v.owner(), std::move(out));
}

// Column made of `blocks` constant runs of length n.
SharedVector block_constant(PartyId me, std::span<const Ring> per_block,
                            std::size_t n) {
  std::vector<Ring> v;
  v.reserve(per_block.size() * n);
  for (Ring x : per_block) v.insert(v.end(), n, x);
  return SharedVector::constant(Flavor::Arithmetic, kRingBits, me, v);
}

// Max/min over each of `blocks` runs of length `len`, pairwise by tree levels.
// All columns are 64-bit binary and advance together.
std::vector<SharedVector> tree_reduce(Party& p, std::vector<SharedVector> cols,
                                      std::span<const Agg> aggs,
                                      std::size_t blocks, std::size_t len) {
  while (len > 1) {
    const std::size_t half = len / 2;
    std::vector<std::size_t> ia, ib;
    for (std::size_t b = 0; b < blocks; ++b) {
      for (std::size_t k = 0; k < half; ++k) {
        ia.push_back(b * len + 2 * k);
        ib.push_back(b * len + 2 * k + 1);
      }
    }
    std::vector<SharedVector> a, bv, hi, lo;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      a.push_back(gather(cols[c], ia));
      bv.push_back(gather(cols[c], ib));
      const bool is_max = aggs[c] == Agg::Max;
      hi.push_back(is_max ? bv.back() : a.back());
      lo.push_back(is_max ? a.back() : bv.back());
    }
    const SharedVector lt = less_than(p, concat(a), concat(bv));
    const SharedVector picked = mux(p, lt, concat(hi), concat(lo));
    const std::size_t m = ia.size();
    const std::size_t next = half + len % 2;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      std::vector<Ring> out;
      out.reserve(blocks * next);
      for (std::size_t b = 0; b < blocks; ++b) {
        for (std::size_t k = 0; k < half; ++k) out.push_back(picked[c * m + b * half + k]);
        if (len % 2) out.push_back(cols[c][b * len + len - 1]);
      }
      cols[c] = SharedVector(cols[c].flavor(), cols[c].width(), cols[c].owner(),
                             std::move(out));
    }
    len = next;
  }
  return cols;
}

std::vector<Ring> block_sums(const SharedVector& v, std::size_t blocks,
                             std::size_t len) {
  std::vector<Ring> out(blocks, 0);
  for (std::size_t b = 0; b < blocks; ++b) {
    for (std::size_t i = 0; i < len; ++i) out[b] += v[b * len + i];
  }
  return out;
}

}  // namespace

GroupResult ga_mix(Party& p, ViewRef view, const JgaQuery& q,
                   const GaLimits& limits) {
  GaCtx c(p, view, q);
  if (c.n == 0) return detail::empty_result(p);
  const std::size_t n = c.n;
  const std::size_t m = q.aggs.size();
  const PartyId me = p.id();
  const PartyId o = detail::bitmap_side(c, limits);
  const PartyId s = 1 - o;
  const std::vector<Ring> dom = detail::group_domain(c, o, limits);
  require(dom.size() <= limits.bitmap_cap, ErrorCode::DomainTooLarge,
          "grouping domain exceeds the bitmap cap");
  const std::size_t d = dom.size();
  const IndexMap sigma = detail::local_group_sort(c, s);

  SharedVector g, boundary;
  std::vector<SharedVector> vals(m);
  {
    auto ph = p.phase("local-sort");
    std::vector<Ring> gs = c.group_values(s);
    if (p.is(s)) gs = sigma.apply(gs);
    g = SharedVector::from_plain(Flavor::Arithmetic, kRingBits, me, s, gs, n);
    std::vector<Ring> b;
    if (p.is(s)) {
      b.assign(n, 1);
      for (std::size_t i = 0; i + 1 < n; ++i) b[i] = gs[i] != gs[i + 1];
    }
    boundary = SharedVector::from_plain(Flavor::Binary, 1, me, s, b, n);
    for (std::size_t a = 0; a < m; ++a) {
      if (c.agg_side(a) != s) continue;
      std::vector<Ring> v = c.agg_values(a);
      if (p.is(s)) v = sigma.apply(v);
      vals[a] = SharedVector::from_plain(agg_flavor(q.aggs[a].agg), kRingBits, me, s, v, n);
    }
  }
  SharedVector w;
  {
    auto ph = p.phase("osn");
    std::vector<SharedVector> cols{c.e};
    auto bits = detail::group_bitmap(c, o, dom);
    cols.insert(cols.end(), bits.begin(), bits.end());
    for (std::size_t a = 0; a < m; ++a) {
      if (c.agg_side(a) == o) cols.push_back(c.agg_shared(a));
    }
    auto out = osn_shared(p, s, sigma, cols);
    std::size_t next = 1 + d;
    for (std::size_t a = 0; a < m; ++a) {
      if (c.agg_side(a) == o) vals[a] = out[next++];
    }
    auto ph2 = p.phase("bitmap");
    w = and_gate(p, repeat(out[0], d),
                 concat(std::span<const SharedVector>(out.data() + 1, d)));
  }
  std::vector<Agg> aggs = c.aggs();
  std::vector<SharedVector> xs;
  {
    // Bucket j keeps only joined rows whose grouping value is dom[j].
    auto ph = p.phase("exclude");
    std::vector<SharedVector> ids;
    for (std::size_t a = 0; a < m; ++a) {
      xs.push_back(repeat(vals[a], d));
      ids.push_back(SharedVector::constant(
          xs.back().flavor(), kRingBits, me,
          std::vector<Ring>(n * d, agg_identity(aggs[a]))));
    }
    xs = mux_columns(p, w, xs, ids);
  }
  std::vector<SharedVector> r;
  {
    auto ph = p.phase("trav");
    std::vector<Ring> bucket_ids(d);
    for (std::size_t j = 0; j < d; ++j) bucket_ids[j] = j;
    const std::vector<SharedVector> keys{repeat(g, d), block_constant(me, bucket_ids, n)};
    xs.push_back(w);
    aggs.push_back(Agg::Max);
    r = trav_columns(p, keys, xs, aggs);
  }
  SharedVector f;
  {
    auto ph = p.phase("valid");
    f = and_gate(p, repeat(boundary, d), r.back());
    r.pop_back();
  }
  const SharedVector go = block_constant(me, dom, n);
  const SharedVector gs = repeat(g, d);
  return detail::reveal_groups(c, f, o == 0 ? go : gs, o == 0 ? gs : go,
                               std::move(r), true, s == 0);
}

GroupResult ga_bitmap(Party& p, ViewRef view, const JgaQuery& q,
                      const GaLimits& limits) {
  GaCtx c(p, view, q);
  if (c.n == 0) return detail::empty_result(p);
  const std::size_t n = c.n;
  const std::size_t m = q.aggs.size();
  const PartyId me = p.id();
  const std::vector<Ring> dom0 = detail::group_domain(c, 0, limits);
  const std::vector<Ring> dom1 = detail::group_domain(c, 1, limits);
  const std::size_t d0 = dom0.size(), d1 = dom1.size(), pairs = d0 * d1;
  require(pairs <= limits.pair_cap, ErrorCode::DomainTooLarge,
          "grouping domains exceed the bitmap pair cap");
  const std::size_t len = pairs * n;

  // Plaintext pair-major bit columns: block (j, p) holds b0^j or b1^p.
  auto expand = [&](PartyId u, const std::vector<Ring>& dom) {
    std::vector<Ring> out;
    if (!p.is(u)) return out;
    std::vector<std::vector<Ring>> bits;
    if (c.group(u)) {
      bits = detail::plain_bitmap(c, u, dom);
    } else {
      bits.assign(1, std::vector<Ring>(n, 1));
    }
    out.reserve(len);
    for (std::size_t j = 0; j < d0; ++j) {
      for (std::size_t k = 0; k < d1; ++k) {
        const auto& col = bits[u == 0 ? j : k];
        out.insert(out.end(), col.begin(), col.end());
      }
    }
    return out;
  };
  auto scaled = [&](const std::vector<Ring>& bits, const std::vector<Ring>& v) {
    std::vector<Ring> out(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) out[i] = bits[i] * v[i % n];
    return out;
  };
  const std::vector<Ring> b1 = expand(1, dom1);
  const std::vector<Ring> b0 = c.plain(0) ? expand(0, dom0) : std::vector<Ring>{};
  SharedVector b0s;  // PK-FK only: party 0's bitmap is secret-shared
  if (!c.plain(0)) {
    auto bits = detail::group_bitmap(c, 0, dom0);
    std::vector<SharedVector> blocks;
    for (std::size_t j = 0; j < d0; ++j) {
      for (std::size_t k = 0; k < d1; ++k) blocks.push_back(bits[j]);
    }
    b0s = concat(blocks);
  }
  const SharedVector e_rep = repeat(c.e, pairs);
  const std::vector<Agg> aggs = c.aggs();

  std::vector<SharedVector> additive{SharedVector{}};
  std::vector<std::size_t> additive_of(m, 0), cmp_of(m, 0);
  std::vector<SharedVector> cmp_vals;
  std::vector<Agg> cmp_aggs;
  {
    auto ph = p.phase("cross");
    // Count witness b0 * b1 and products b0 * b1 * v.
    auto cross = [&](PartyId u, const std::vector<Ring>& v) -> SharedVector {
      if (c.plain(0)) {
        const PartyId holder = 1 - u;
        const auto& bits = holder == 0 ? b0 : b1;
        std::vector<Ring> vals;
        if (p.is(u)) vals = scaled(u == 0 ? b0 : b1, v);
        return asym_mul(p, holder, bits, vals, len);
      }
      if (u == 1) {
        const auto x = SharedVector::from_plain(Flavor::Arithmetic, kRingBits, me, 1,
                                                p.is(1) ? scaled(b1, v) : v, len);
        return mux(p, b0s, x, SharedVector::zeros(Flavor::Arithmetic, kRingBits, me, len));
      }
      return SharedVector{};
    };
    std::vector<Ring> ones(p.is(1) ? n : 0, 1);
    additive[0] = cross(1, ones);
    for (std::size_t a = 0; a < m; ++a) {
      if (aggs[a] == Agg::Count) continue;
      if (aggs[a] == Agg::Sum) {
        additive_of[a] = additive.size();
        const PartyId u = c.agg_side(a);
        if (c.plain(0) || u == 1) {
          additive.push_back(cross(u, c.agg_values(a)));
        } else {
          const SharedVector t = mux(p, b0s, repeat(c.agg_shared(a), pairs),
                                     SharedVector::zeros(Flavor::Arithmetic, kRingBits, me, len));
          const auto b1s = SharedVector::from_plain(Flavor::Binary, 1, me, 1, b1, len);
          additive.push_back(mux(p, b1s, t, SharedVector::zeros(Flavor::Arithmetic,
                                                                kRingBits, me, len)));
        }
      } else {
        cmp_of[a] = cmp_vals.size();
        cmp_vals.push_back(repeat(c.agg_shared(a), pairs));
        cmp_aggs.push_back(aggs[a]);
      }
    }
  }
  std::vector<std::vector<Ring>> sums;
  std::vector<SharedVector> extremes;
  SharedVector f;
  {
    auto ph = p.phase("aggregate");
    const std::vector<SharedVector> zeros(
        additive.size(), SharedVector::zeros(Flavor::Arithmetic, kRingBits, me, len));
    const auto masked = mux_columns(p, e_rep, additive, zeros);
    for (const auto& col : masked) sums.push_back(block_sums(col, pairs, n));
    const SharedVector count(Flavor::Arithmetic, kRingBits, me, sums[0]);
    f = bit_not(eq(p, count, SharedVector::zeros(Flavor::Arithmetic, kRingBits, me, pairs)));

    if (!cmp_vals.empty()) {
      SharedVector bb;
      if (c.plain(0)) {
        bb = asym_mul(p, 0, b0, b1, len, Flavor::Binary, 1);
      } else {
        bb = and_gate(p, b0s, SharedVector::from_plain(Flavor::Binary, 1, me, 1, b1, len));
      }
      const SharedVector live = and_gate(p, e_rep, bb);
      std::vector<SharedVector> ids;
      for (Agg a : cmp_aggs) {
        ids.push_back(SharedVector::constant(Flavor::Binary, kRingBits, me,
                                             std::vector<Ring>(len, agg_identity(a))));
      }
      extremes = tree_reduce(p, mux_columns(p, live, cmp_vals, ids), cmp_aggs, pairs, n);
    }
  }
  std::vector<SharedVector> r;
  for (std::size_t a = 0; a < m; ++a) {
    if (aggs[a] == Agg::Max || aggs[a] == Agg::Min) {
      r.push_back(extremes[cmp_of[a]]);
    } else {
      r.emplace_back(Flavor::Arithmetic, kRingBits, me, sums[additive_of[a]]);
    }
  }
  std::vector<Ring> g0v, g1v;
  for (std::size_t j = 0; j < d0; ++j) {
    for (std::size_t k = 0; k < d1; ++k) {
      g0v.push_back(dom0[j]);
      g1v.push_back(dom1[k]);
    }
  }
  return detail::reveal_groups(
      c, f, SharedVector::constant(Flavor::Arithmetic, kRingBits, me, g0v),
      SharedVector::constant(Flavor::Arithmetic, kRingBits, me, g1v), std::move(r),
      false, false);
}

}  // namespace mview
