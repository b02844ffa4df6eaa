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

#include <optional>
#include <string>
#include <vector>

#include "mview/ga.hpp"
#include "mview/oblivious.hpp"

namespace mview::detail {

// Slot-aligned inputs of a GA run as seen by one party. Party 1's columns are
// always plaintext at party 1; party 0's are plaintext for PK-PK views and
// secret-shared for PK-FK views.
struct GaCtx {
  GaCtx(Party& party, ViewRef view, const JgaQuery& query);

  Party& p;
  const JgaQuery& q;
  JoinKind kind;
  std::size_t n;
  SharedVector e;
  const Relation* j[2] = {nullptr, nullptr};
  const PkFkView* fk = nullptr;
  std::optional<std::vector<Ring>> domains[2];

  bool plain(PartyId u) const { return u == 1 || kind == JoinKind::PkPk; }
  const std::optional<std::string>& group(PartyId u) const {
    return u == 0 ? q.g0 : q.g1;
  }
  // Owner-only plaintext; empty at the other party.
  std::vector<Ring> values(PartyId u, const std::string& col) const;
  std::vector<Ring> group_values(PartyId u) const;
  SharedVector shared(PartyId u, const std::string& col, Flavor flavor);
  PlainColumn plain_column(PartyId u, const std::vector<Ring>& v,
                           ColumnSpec spec = {}) const;

  PartyId agg_side(std::size_t a) const;
  std::vector<Ring> agg_values(std::size_t a) const;
  SharedVector agg_shared(std::size_t a);
  std::vector<Agg> aggs() const;
};

std::vector<Ring> group_domain(GaCtx& c, PartyId u, const GaLimits& limits);
// One 1-bit binary column per domain value; an absent grouping column yields a
// single all-ones column.
SharedVector group_shared(GaCtx& c, PartyId u, Flavor flavor);
// Owner-only plaintext bitmap; empty at the other party.
std::vector<std::vector<Ring>> plain_bitmap(const GaCtx& c, PartyId u,
                                            const std::vector<Ring>& domain);
// Side whose grouping column is bitmap-encoded in bSorting and mix.
PartyId bitmap_side(GaCtx& c, const GaLimits& limits);
std::vector<SharedVector> group_bitmap(GaCtx& c, PartyId u,
                                       const std::vector<Ring>& domain);

// Party `sorter` orders its rows by its grouping column; σ in gather form.
IndexMap local_group_sort(const GaCtx& c, PartyId sorter);

// Working table sorted by (e, g0, g1).
struct SortedTable {
  SharedVector e;
  SharedVector g[2];
  std::vector<SharedVector> values;
};

GroupResult sorted_tail(GaCtx& c, SortedTable t, bool suffix_sums);

// Masks rows with f = 0 (optional), shuffles (optional) and reveals
// (f, g0, g1, r...) to party 1, which canonicalizes.
GroupResult reveal_groups(GaCtx& c, const SharedVector& f, const SharedVector& g0,
                          const SharedVector& g1, std::vector<SharedVector> r,
                          bool mask, bool shuffle);

// Random OSN pass with party 0 as receiver.
std::vector<SharedVector> final_shuffle(Party& p,
                                        std::span<const SharedVector> cols);

GroupResult empty_result(const Party& p);

std::vector<Ring> repeat(std::span<const Ring> v, std::size_t times);
SharedVector repeat(const SharedVector& v, std::size_t times);

}  // namespace mview::detail
