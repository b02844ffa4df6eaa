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
#include <numeric>
#include <unordered_map>

#include <fmt/format.h>

#include "mview/gates.hpp"
#include "mview/oblivious.hpp"
#include "view_internal.hpp"

namespace mview {

std::string bitmap_column_name(const std::string& column, Ring value) {
  return fmt::format("{}#{}", column, value);
}

void append_bitmap(Relation& r, const BitmapSpec& spec) {
  const auto& g = r.column(spec.column);
  for (Ring d : spec.domain) {
    std::vector<Ring> bits(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) bits[i] = g[i] == d ? 1 : 0;
    r.add_column(bitmap_column_name(spec.column, d), std::move(bits));
  }
}

namespace {

constexpr Ring kMaxBaseKey = Ring{1} << (63 - kCounterBits);
constexpr Ring kMaxFanOut = (Ring{1} << kCounterBits) - 1;

// Composite keys: k || 1 on the PK side, k || running counter on the FK side.
std::vector<Ring> composite_keys(const Relation& r, PartyId party) {
  std::vector<Ring> out(r.rows());
  std::unordered_map<Ring, Ring> count;
  for (std::size_t i = 0; i < r.rows(); ++i) {
    const Ring k = r.keys()[i];
    if (k >= kMaxBaseKey) {
      fail(ErrorCode::KeyOutOfRange,
           fmt::format("PK-FK join key {} is not below 2^{}", k, 63 - kCounterBits));
    }
    const Ring s = party == 0 ? 1 : ++count[k];
    if (s > kMaxFanOut) {
      fail(ErrorCode::KeyOutOfRange,
           fmt::format("foreign key {} repeats more than {} times", k, kMaxFanOut));
    }
    out[i] = (k << kCounterBits) | s;
  }
  return out;
}

// Column names travel as length-prefixed words, eight bytes per word.
std::vector<std::string> announce_names(Party& p, PartyId from,
                                        const std::vector<std::string>& names) {
  if (p.is(from)) {
    std::vector<Ring> words{names.size()};
    for (const auto& s : names) {
      words.push_back(s.size());
      for (std::size_t i = 0; i < s.size(); i += 8) {
        Ring w = 0;
        for (std::size_t b = 0; b < 8 && i + b < s.size(); ++b) {
          w |= Ring{static_cast<unsigned char>(s[i + b])} << (8 * b);
        }
        words.push_back(w);
      }
    }
    const Ring count[1] = {words.size()};
    p.send(count, 32);
    p.send(words, kRingBits);
    return names;
  }
  const std::size_t total = p.recv(1, 32)[0];
  const auto words = p.recv(total, kRingBits);
  std::vector<std::string> out(words.at(0));
  std::size_t at = 1;
  for (auto& s : out) {
    const std::size_t len = words.at(at++);
    for (std::size_t i = 0; i < len; i += 8, ++at) {
      for (std::size_t b = 0; b < 8 && i + b < len; ++b) {
        s.push_back(static_cast<char>((words.at(at) >> (8 * b)) & 0xff));
      }
    }
  }
  return out;
}

std::vector<std::string> payload_names(const Relation& r) {
  std::vector<std::string> out;
  for (std::size_t c = 0; c < r.width(); ++c) {
    if (c != r.key) out.push_back(r.columns[c]);
  }
  return out;
}

// Party 1's transcript before sorting: pi · R^1 plus the counter column.
std::pair<Relation, std::vector<Ring>> fk_transcript(const Relation& own,
                                                     const IndexMap& pi) {
  Relation d = detail::materialize(own, pi, 1);
  const auto comp = composite_keys(own, 1);
  std::vector<Ring> s(pi.size(), 0);
  for (std::size_t i = 0; i < pi.size(); ++i) {
    if (pi(i) < own.rows()) s[i] = comp[pi(i)] & kMaxFanOut;
  }
  return {std::move(d), std::move(s)};
}

Relation reorder(const Relation& r, const IndexMap& sigma) {
  Relation out = r;
  for (auto& c : out.data) c = sigma.apply(c);
  return out;
}

// Switches the PK payload and the step-1 flag into party 1's
// sorted order, then copies each matched PK payload down its FK group.
void switch_and_duplicate(Party& p, PkFkView& v, const Relation& own) {
  const std::size_t n = v.pi.size();
  const std::size_t width = v.payload_columns.size();
  std::vector<SharedVector> j0;
  SharedVector e1;
  {
    auto ph = p.phase("switch");
    std::vector<PlainColumn> cols;
    Relation d;
    if (p.is(0)) d = detail::materialize(own, v.pi, 0);
    for (std::size_t c = 0; c < width; ++c) {
      PlainColumn col{{Flavor::Arithmetic, kRingBits}, {}};
      if (p.is(0)) col.values = d.column(v.payload_columns[c]);
      cols.push_back(std::move(col));
    }
    cols.push_back({{Flavor::Binary, 1},
                    p.is(0) ? v.e_step1.data() : std::vector<Ring>{}});
    auto moved = osn_plain(p, 1, p.is(1) ? v.sigma : IndexMap{}, cols, n);
    e1 = std::move(moved.back());
    moved.pop_back();
    if (p.is(1)) {
      e1 = e1 ^ SharedVector(Flavor::Binary, 1, 1, v.sigma.apply(v.e_step1.data()));
    }
    j0 = std::move(moved);
  }
  {
    auto ph = p.phase("duplicate");
    j0 = mask_columns(p, e1, j0, std::vector<Ring>(width, 0));
    const std::vector<Ring> keys = p.is(1) ? v.j1.keys() : std::vector<Ring>{};
    const SharedVector k = SharedVector::from_plain(Flavor::Binary, kRingBits,
                                                    p.id(), 1, keys, n);
    std::vector<SharedVector> cols{e1};
    cols.insert(cols.end(), j0.begin(), j0.end());
    std::vector<Agg> aggs{Agg::Xor};
    aggs.resize(cols.size(), Agg::Sum);
    auto out = trav_columns(p, {&k, 1}, cols, aggs);
    v.e = std::move(out.front());
    v.j0.assign(std::make_move_iterator(out.begin() + 1),
                std::make_move_iterator(out.end()));
  }
}

void check_fresh(const PkFkView& v, const Relation& own) {
  if (key_hash(own) != v.key_hash || own.rows() != v.base_rows) {
    fail(ErrorCode::ViewStale, "base table keys differ from the view");
  }
}

}  // namespace

PkFkView gen_pkfk(Party& p, const Relation& own_in, const PkFkOptions& opts) {
  Relation own = own_in;
  if (p.is(0) && opts.bitmap) append_bitmap(own, *opts.bitmap);
  own.validate();
  if (p.is(0) && own.kind != KeyKind::PrimaryKey) {
    fail(ErrorCode::PreconditionViolated, "party 0 must hold the primary key table");
  }
  check_key_range(own);

  PkFkView v;
  v.party = p.id();
  v.level = opts.inner;
  v.base_rows = own.rows();
  v.key_hash = key_hash(own);

  const auto comp = composite_keys(own, p.id());
  std::size_t n_fk = 0;
  {
    auto ph = p.phase("mapping");
    v.payload_columns = announce_names(p, 0, p.is(0) ? payload_names(own)
                                                      : std::vector<std::string>{});
    const auto sizes = detail::exchange_sizes(p, own.rows());
    n_fk = sizes[1];
    const std::size_t n_max = std::max(sizes[0], sizes[1]);
    const Relation keyed = make_relation(own.name, {"key"}, {comp}, "key");
    IndexMap pi;
    if (opts.step1_pi) {
      pi = *opts.step1_pi;
      const Relation j = detail::materialize(keyed, pi, p.id());
      const std::size_t n = pi.size();
      auto x = SharedVector::from_plain(Flavor::Binary, kRingBits, p.id(), 0, j.keys(), n);
      auto y = SharedVector::from_plain(Flavor::Binary, kRingBits, p.id(), 1, j.keys(), n);
      v.e_step1 = eq(p, x, y);
    } else {
      PkPkView inner = gen_pkpk(p, opts.inner, keyed);
      pi = std::move(inner.pi);
      v.e_step1 = std::move(inner.e);
    }
    // Grow the mapping so every FK row owns a slot.
    if (pi.size() < n_fk) {
      std::vector<std::size_t> t = pi.targets();
      if (p.is(1)) {
        std::vector<bool> used(n_fk, false);
        for (std::size_t x : t) used[x] = true;
        for (std::size_t x = 0; x < n_fk; ++x) {
          if (!used[x]) t.push_back(x);
        }
        pi = IndexMap(std::move(t), n_fk);
      } else {
        std::vector<bool> used(n_max, false);
        for (std::size_t x : t) used[x] = true;
        std::vector<std::size_t> free;
        for (std::size_t x = 0; x < n_max; ++x) {
          if (!used[x]) free.push_back(x);
        }
        std::shuffle(free.begin(), free.end(), p.rng());
        const std::size_t need = n_fk - pi.size();
        t.insert(t.end(), free.begin(), free.begin() + need);
        pi = IndexMap(std::move(t), n_max);
      }
      v.e_step1.resize(n_fk);
    }
    v.pi = std::move(pi);
  }

  if (p.is(1)) {
    auto [d, s] = fk_transcript(own, v.pi);
    const auto& k = d.keys();
    std::vector<std::size_t> order(v.pi.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return k[a] != k[b] ? k[a] < k[b] : s[a] < s[b];
    });
    v.sigma = IndexMap(std::move(order));
    v.j1 = reorder(d, v.sigma);
  }
  switch_and_duplicate(p, v, own);
  return v;
}

void refresh_pkfk(Party& p, PkFkView& view, Relation& own,
                  const UpdateSet& updates) {
  Relation base = own;
  apply_updates(base, updates);
  // Bitmap columns, when present, are recomputed from the refreshed table.
  Relation with_bitmaps = base;
  if (p.is(0)) {
    for (const auto& name : view.payload_columns) {
      if (with_bitmaps.has_column(name)) continue;
      const auto hash = name.rfind('#');
      if (hash == std::string::npos) {
        fail(ErrorCode::SizeMismatch, fmt::format("payload column '{}' is missing", name));
      }
      const std::string col = name.substr(0, hash);
      const Ring value = std::stoull(name.substr(hash + 1));
      append_bitmap(with_bitmaps, BitmapSpec{col, {value}});
    }
  }
  check_fresh(view, with_bitmaps);
  if (p.is(1)) {
    view.j1 = reorder(fk_transcript(with_bitmaps, view.pi).first, view.sigma);
  }
  switch_and_duplicate(p, view, with_bitmaps);
  own = std::move(base);
}

}  // namespace mview
