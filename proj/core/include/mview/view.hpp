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
#include <optional>
#include <string>
#include <vector>

#include "mview/permutation.hpp"
#include "mview/relation.hpp"
#include "mview/session.hpp"
#include "mview/shared_vector.hpp"

namespace mview {

// 0 reveals the intersection, 1 reveals the union size, 2 reveals only the
// input sizes.
enum class SecurityLevel : int { Psi = 0, Pid = 1, Sec = 2 };

SecurityLevel level_from_int(int level);

// Join keys must stay below 2^63; dummy rows take keys from disjoint
// per-party ranges above it so they never match anything.
inline constexpr Ring kKeyLimit = Ring{1} << 63;
Ring dummy_key(PartyId party, std::size_t i);
void check_key_range(const Relation& r);

// One party's half of a PK-PK join view. Slot i pairs own row pi(i) with the
// peer's row at the same slot; e holds this party's share of the match flag.
// Targets at or beyond the base table size denote dummy rows.
struct PkPkView {
  PartyId party = 0;
  SecurityLevel level = SecurityLevel::Sec;
  IndexMap pi;
  SharedVector e;
  Relation j;  // pi applied to the base table, dummy rows filled in
  std::size_t base_rows = 0;
  std::uint64_t key_hash = 0;

  std::size_t size() const { return pi.size(); }
};

// Test hooks for the fully secure generator. Each party supplies its own.
struct SecVHooks {
  std::optional<IndexMap> pi0;            // used by the larger side
  std::optional<IndexMap> shuffle_local;  // this party's shuffle pass
};

PkPkView gen_psiV(Party& p, const Relation& own);
PkPkView gen_pidV(Party& p, const Relation& own);
PkPkView gen_secV(Party& p, const Relation& own, const SecVHooks& hooks = {});
PkPkView gen_pkpk(Party& p, SecurityLevel level, const Relation& own);

// Local refresh: applies payload updates to the base table and to the view
// transcript. No interaction.
void refresh_pkpk(PkPkView& view, Relation& own, const UpdateSet& updates);

// Bitmap columns appended to the PK side before PK-FK generation, one per
// listed domain value of `column`.
struct BitmapSpec {
  std::string column;
  std::vector<Ring> domain;
};

std::string bitmap_column_name(const std::string& column, Ring value);
void append_bitmap(Relation& r, const BitmapSpec& spec);

struct PkFkOptions {
  SecurityLevel inner = SecurityLevel::Sec;
  std::optional<BitmapSpec> bitmap;  // consumed by party 0
  std::optional<IndexMap> step1_pi;  // test hook: replaces the inner map
};

// PK-FK view. Party 0 holds the primary-key table. The PK payload J^0 stays
// secret-shared and is aligned with party 1's sorted transcript J^1.
struct PkFkView {
  PartyId party = 0;
  SecurityLevel level = SecurityLevel::Sec;
  IndexMap pi;      // extended step-1 map
  IndexMap sigma;   // party 1: local sort of pi·R^1 by (key, counter)
  SharedVector e_step1;
  SharedVector e;
  std::vector<std::string> payload_columns;
  std::vector<SharedVector> j0;
  Relation j1;      // party 1 only
  std::size_t base_rows = 0;
  std::uint64_t key_hash = 0;

  std::size_t size() const { return e.size(); }
};

inline constexpr unsigned kCounterBits = 16;

PkFkView gen_pkfk(Party& p, const Relation& own, const PkFkOptions& opts = {});
// Re-runs the switch and duplicate steps after payload updates on either
// side. The step-1 mapping is reused.
void refresh_pkfk(Party& p, PkFkView& view, Relation& own,
                  const UpdateSet& updates);

}  // namespace mview
