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
#include <unordered_map>

#include <fmt/format.h>

#include "mview/gates.hpp"
#include "mview/oblivious.hpp"
#include "mview/setops.hpp"
#include "view_internal.hpp"

namespace mview {

SecurityLevel level_from_int(int level) {
  if (level < 0 || level > 2) {
    fail(ErrorCode::ParseError, fmt::format("security level {} is not 0, 1 or 2", level));
  }
  return static_cast<SecurityLevel>(level);
}

Ring dummy_key(PartyId party, std::size_t i) {
  return kKeyLimit + (party == 0 ? 0 : (Ring{1} << 62)) + i;
}

void check_key_range(const Relation& r) {
  for (Ring k : r.keys()) {
    if (k >= kKeyLimit) {
      fail(ErrorCode::KeyOutOfRange,
           fmt::format("join key {} in '{}' is not below 2^63", k, r.name));
    }
  }
}

namespace detail {

std::array<std::size_t, 2> exchange_sizes(Party& p, std::size_t own) {
  const Ring mine[1] = {own};
  const auto peer = p.exchange(mine, kRingBits);
  std::array<std::size_t, 2> s{};
  s[p.id()] = own;
  s[p.peer()] = peer[0];
  return s;
}

Relation materialize(const Relation& base, const IndexMap& pi, PartyId party) {
  Relation j;
  j.name = base.name;
  j.columns = base.columns;
  j.key = base.key;
  j.kind = base.kind;
  j.data.assign(base.width(), std::vector<Ring>(pi.size(), 0));
  const std::size_t n = base.rows();
  for (std::size_t i = 0; i < pi.size(); ++i) {
    const std::size_t t = pi(i);
    if (t < n) {
      for (std::size_t c = 0; c < base.width(); ++c) j.data[c][i] = base.data[c][t];
    } else {
      j.data[j.key][i] = dummy_key(party, t - n);
    }
  }
  return j;
}

std::vector<std::size_t> slots_of(const IndexMap& pi, std::size_t base_rows) {
  std::vector<std::size_t> slot(base_rows, static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < pi.size(); ++i) {
    if (pi(i) < base_rows) slot[pi(i)] = i;
  }
  return slot;
}

}  // namespace detail

namespace {

PkPkView finish(PartyId party, SecurityLevel level, const Relation& own,
                IndexMap pi, SharedVector e) {
  PkPkView v;
  v.party = party;
  v.level = level;
  v.j = detail::materialize(own, pi, party);
  v.pi = std::move(pi);
  v.e = std::move(e);
  v.base_rows = own.rows();
  v.key_hash = key_hash(own);
  return v;
}

void check_input(const Relation& own) {
  own.validate();
  if (own.kind != KeyKind::PrimaryKey) {
    fail(ErrorCode::PreconditionViolated, "PK-PK views need primary keys");
  }
  check_key_range(own);
}

}  // namespace

PkPkView gen_psiV(Party& p, const Relation& own) {
  check_input(own);
  std::vector<Ring> inter;
  {
    auto ph = p.phase("psi");
    inter = f_psi(p, own.keys());
  }
  std::unordered_map<Ring, std::size_t> row;
  for (std::size_t r = 0; r < own.rows(); ++r) row[own.keys()[r]] = r;
  std::vector<std::size_t> targets;
  for (Ring k : inter) targets.push_back(row.at(k));
  // The flag is public here; party 0 holds it, party 1 holds zeros.
  auto e = SharedVector::constant(Flavor::Binary, 1, p.id(),
                                  std::vector<Ring>(inter.size(), 1));
  return finish(p.id(), SecurityLevel::Psi, own,
                IndexMap(std::move(targets), own.rows()), std::move(e));
}

PkPkView gen_pidV(Party& p, const Relation& own) {
  check_input(own);
  PidOutput pid;
  {
    auto ph = p.phase("pid");
    pid = f_pid(p, own.keys());
  }
  std::unordered_map<Ring, std::size_t> row_of_id;
  for (std::size_t r = 0; r < own.rows(); ++r) {
    row_of_id[pid.mapping.at(own.keys()[r])] = r;
  }
  std::vector<std::size_t> targets;
  std::size_t dummies = 0;
  for (Ring id : pid.ri_star) {
    auto it = row_of_id.find(id);
    targets.push_back(it != row_of_id.end() ? it->second : own.rows() + dummies++);
  }
  IndexMap pi(std::move(targets), own.rows() + dummies);
  const Relation j = detail::materialize(own, pi, p.id());
  SharedVector e;
  {
    auto ph = p.phase("eq");
    const std::size_t n = pi.size();
    const auto& keys = j.keys();
    auto x = SharedVector::from_plain(Flavor::Binary, kRingBits, p.id(), 0, keys, n);
    auto y = SharedVector::from_plain(Flavor::Binary, kRingBits, p.id(), 1, keys, n);
    e = eq(p, x, y);
  }
  return finish(p.id(), SecurityLevel::Pid, own, std::move(pi), std::move(e));
}

PkPkView gen_secV(Party& p, const Relation& own, const SecVHooks& hooks) {
  check_input(own);
  const auto sizes = detail::exchange_sizes(p, own.rows());
  // The larger side plays the receiver of the first circuit PSI.
  const PartyId a = sizes[0] >= sizes[1] ? 0 : 1;
  const PartyId b = 1 - a;
  const std::size_t na = sizes[a];
  const std::size_t nb = sizes[b];
  const bool is_a = p.is(a);

  CpsiOutput first;
  {
    auto ph = p.phase("cpsi-1");
    std::vector<Ring> index;
    if (!is_a) {
      for (std::size_t j = 0; j < nb; ++j) index.push_back(j + 1);
    }
    first = f_cpsi(p, a, own.keys(), index);
  }
  IndexMap pi_a;
  SharedVector e, z;
  {
    auto ph = p.phase("osn");
    if (is_a) pi_a = hooks.pi0 ? *hooks.pi0 : IndexMap::random(na, p.rng());
    const SharedVector cols[2] = {first.e, first.z};
    auto moved = osn_shared(p, a, pi_a, cols);
    e = std::move(moved[0]);
    z = std::move(moved[1]);
  }
  p.probe("secV/E", e);

  SharedVector f;
  {
    auto ph = p.phase("cpsi-2");
    f = f_cpsi(p, b, own.keys(), {}, false).e;
    f.resize(na);
  }
  SharedVector fs, l;
  {
    auto ph = p.phase("shuffle");
    std::vector<Ring> idx(na);
    for (std::size_t i = 0; i < na; ++i) idx[i] = i + 1;
    const SharedVector cols[2] = {
        f, SharedVector::constant(Flavor::Arithmetic, kRingBits, p.id(), idx)};
    auto sh = shuffle(p, cols, hooks.shuffle_local);
    fs = std::move(sh.cols[0]);
    l = std::move(sh.cols[1]);
  }
  SharedVector p0;
  {
    auto ph = p.phase("sorting");
    const SharedVector s1 = per_gen(p, fs);
    SharedVector p1 = invp_shared(p, s1, {&l, 1})[0];
    p.probe("secV/P1", p1);
    const SharedVector s0 = per_gen(p, e);
    p0 = perm_shared(p, s0, {&p1, 1})[0];
  }
  IndexMap pi;
  {
    auto ph = p.phase("mux");
    const SharedVector target = mux(p, e, z, p0);
    auto revealed = reveal_to(p, target, b);
    if (is_a) {
      pi = std::move(pi_a);
    } else {
      std::vector<std::size_t> t(na);
      for (std::size_t i = 0; i < na; ++i) t[i] = static_cast<std::size_t>(revealed[i] - 1);
      pi = IndexMap(std::move(t), na);
    }
  }
  return finish(p.id(), SecurityLevel::Sec, own, std::move(pi), std::move(e));
}

PkPkView gen_pkpk(Party& p, SecurityLevel level, const Relation& own) {
  switch (level) {
    case SecurityLevel::Psi:
      return gen_psiV(p, own);
    case SecurityLevel::Pid:
      return gen_pidV(p, own);
    case SecurityLevel::Sec:
      break;
  }
  return gen_secV(p, own);
}

void refresh_pkpk(PkPkView& view, Relation& own, const UpdateSet& updates) {
  if (key_hash(own) != view.key_hash || own.rows() != view.base_rows) {
    fail(ErrorCode::ViewStale, "base table keys differ from the view");
  }
  apply_updates(own, updates);
  const auto slot = detail::slots_of(view.pi, view.base_rows);
  for (const auto& u : updates) {
    const std::size_t i = slot[u.row];
    if (i == static_cast<std::size_t>(-1)) continue;
    for (std::size_t c = 0; c < own.width(); ++c) view.j.data[c][i] = u.tuple[c];
  }
}

}  // namespace mview
