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


#include <map>

#include "mview/gates.hpp"
#include "mview/oblivious.hpp"

namespace mview {

Flavor agg_flavor(Agg agg) {
  return agg == Agg::Sum || agg == Agg::Count ? Flavor::Arithmetic
                                              : Flavor::Binary;
}

Ring agg_identity(Agg agg) { return agg == Agg::Min ? ~Ring{0} : Ring{0}; }

// Segmented Hillis-Steele scan over (head flag, value) pairs. A row's head
// flag is set when its key differs from its predecessor's; combining
// (h1, v1) then (h2, v2) yields (h1 | h2, h2 ? v2 : v1 op v2).
std::vector<SharedVector> trav_columns(Party& p,
                                       std::span<const SharedVector> keys,
                                       std::span<const SharedVector> values,
                                       std::span<const Agg> aggs) {
  if (values.size() != aggs.size()) {
    fail(ErrorCode::SizeMismatch, "one agg per trav column");
  }
  if (values.empty()) return {};
  const std::size_t n = values.front().size();
  for (const auto& k : keys) {
    if (k.size() != n) fail(ErrorCode::SizeMismatch, "trav keys and values");
  }
  for (std::size_t c = 0; c < values.size(); ++c) {
    if (values[c].size() != n) fail(ErrorCode::SizeMismatch, "trav columns");
    if (values[c].flavor() != agg_flavor(aggs[c])) {
      fail(ErrorCode::FlavorMismatch, "trav value flavor does not fit the agg");
    }
  }
  std::vector<SharedVector> v(values.begin(), values.end());
  if (n <= 1) return v;

  std::vector<SharedVector> cur, prev;
  for (const auto& k : keys) {
    cur.push_back(k.slice(1, n));
    prev.push_back(k.slice(0, n - 1));
  }
  SharedVector head = SharedVector::constant(Flavor::Binary, 1, p.id(),
                                             std::vector<Ring>{1});
  if (!keys.empty()) {
    head.append(bit_not(eq_fields(p, cur, prev)));
  } else {
    head.append(SharedVector::zeros(Flavor::Binary, 1, p.id(), n - 1));
  }

  // Max/min columns of one width share a single comparison call per level.
  std::map<unsigned, std::vector<std::size_t>> cmp_groups;
  for (std::size_t c = 0; c < v.size(); ++c) {
    if (aggs[c] == Agg::Max || aggs[c] == Agg::Min) {
      cmp_groups[v[c].width()].push_back(c);
    }
  }

  for (std::size_t d = 1; d < n; d *= 2) {
    const std::size_t m = n - d;
    const SharedVector h_prev = head.slice(0, m);
    const SharedVector h_cur = head.slice(d, n);
    std::vector<SharedVector> v_prev(v.size()), v_cur(v.size()), combined(v.size());
    for (std::size_t c = 0; c < v.size(); ++c) {
      v_prev[c] = v[c].slice(0, m);
      v_cur[c] = v[c].slice(d, n);
      if (aggs[c] == Agg::Sum || aggs[c] == Agg::Count) {
        combined[c] = v_prev[c] + v_cur[c];
      } else if (aggs[c] == Agg::Xor) {
        combined[c] = v_prev[c] ^ v_cur[c];
      }
    }
    for (const auto& [w, cols] : cmp_groups) {
      std::vector<SharedVector> a, b;
      for (std::size_t c : cols) {
        a.push_back(v_prev[c]);
        b.push_back(v_cur[c]);
      }
      const SharedVector lt = less_than(p, concat(a), concat(b));
      std::vector<SharedVector> hi, lo;
      for (std::size_t k = 0; k < cols.size(); ++k) {
        const std::size_t c = cols[k];
        const bool is_max = aggs[c] == Agg::Max;
        hi.push_back(is_max ? v_cur[c] : v_prev[c]);
        lo.push_back(is_max ? v_prev[c] : v_cur[c]);
      }
      // One mux per group: lt ? hi : lo.
      const SharedVector picked = mux(p, lt, concat(hi), concat(lo));
      for (std::size_t k = 0; k < cols.size(); ++k) {
        combined[cols[k]] = picked.slice(k * m, (k + 1) * m);
      }
    }
    // Select per row and fold the head flags: h_cur ? (v_cur, 1) : (comb, h_prev).
    std::vector<SharedVector> xs(v_cur.begin(), v_cur.end());
    std::vector<SharedVector> ys(combined.begin(), combined.end());
    xs.push_back(SharedVector::constant(Flavor::Binary, 1, p.id(),
                                        std::vector<Ring>(m, 1)));
    ys.push_back(h_prev);
    const auto sel = mux_columns(p, h_cur, xs, ys);
    for (std::size_t c = 0; c < v.size(); ++c) {
      for (std::size_t i = 0; i < m; ++i) v[c][d + i] = sel[c][i];
    }
    for (std::size_t i = 0; i < m; ++i) head[d + i] = sel.back()[i];
  }
  return v;
}

SharedVector trav(Party& p, std::span<const SharedVector> keys,
                  const SharedVector& values, Agg agg) {
  const Agg aggs[1] = {agg};
  return std::move(trav_columns(p, keys, {&values, 1}, aggs)[0]);
}

}  // namespace mview
