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

#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mview/oblivious.hpp"
#include "mview/session.hpp"
#include "mview/view.hpp"

namespace mview {

enum class JoinKind { PkPk, PkFk };

// One aggregate. Count ignores `column` and aggregates an implicit column of
// ones; `side` names the party owning `column`.
struct AggSpec {
  PartyId side = 1;
  std::string column;
  Agg agg = Agg::Sum;
};

struct JgaQuery {
  std::optional<std::string> g0;  // grouping column of party 0's table
  std::optional<std::string> g1;  // grouping column of party 1's table
  std::vector<AggSpec> aggs;
  JoinKind kind = JoinKind::PkPk;
  // Public grouping domains. When absent, the owner announces the distinct
  // values of its column.
  std::optional<std::vector<Ring>> g0_domain;
  std::optional<std::vector<Ring>> g1_domain;

  bool one_side() const { return g0.has_value() != g1.has_value(); }
};

struct GroupRow {
  bool valid = true;
  Ring g0 = 0;
  Ring g1 = 0;
  std::vector<Ring> aggs;

  auto operator<=>(const GroupRow&) const = default;
};

struct GroupResult {
  std::vector<GroupRow> rows;
  bool canonical = false;
  std::size_t revealed_rows = 0;  // table size seen by party 1 before cleanup

  bool operator==(const GroupResult& o) const {
    return rows == o.rows && canonical == o.canonical;
  }
};

// Drops invalid rows and sorts by (g0, g1).
void canonicalize(GroupResult& r);

// Header: g0, g1 (when present), then one column per aggregate.
void write_result_csv(std::ostream& out, const GroupResult& r,
                      const JgaQuery& q);
std::string agg_name(Agg agg);
Agg parse_agg(std::string_view name);

enum class GaProtocol { Sorting, OSorting, BSorting, Mix, Bitmap, OneSide };

std::string protocol_name(GaProtocol p);
GaProtocol parse_protocol(std::string_view name);

struct GaLimits {
  std::size_t bitmap_cap = std::size_t{1} << 12;  // d for bSorting and mix
  std::size_t pair_cap = std::size_t{1} << 10;    // d0 * d1 for bitmap
};

// Borrowed view handle accepted by every GA protocol.
class ViewRef {
 public:
  ViewRef(const PkPkView& v) : pkpk_(&v) {}  // NOLINT(runtime/explicit)
  ViewRef(const PkFkView& v) : pkfk_(&v) {}  // NOLINT(runtime/explicit)

  const PkPkView* pkpk() const { return pkpk_; }
  const PkFkView* pkfk() const { return pkfk_; }
  JoinKind kind() const { return pkpk_ ? JoinKind::PkPk : JoinKind::PkFk; }
  std::size_t size() const { return pkpk_ ? pkpk_->size() : pkfk_->size(); }

 private:
  const PkPkView* pkpk_ = nullptr;
  const PkFkView* pkfk_ = nullptr;
};

// Every protocol reveals the result to party 1 in canonical form; party 0
// gets an empty result.
GroupResult ga_sorting(Party& p, ViewRef view, const JgaQuery& q);
GroupResult ga_osorting(Party& p, ViewRef view, const JgaQuery& q);
GroupResult ga_bsorting(Party& p, ViewRef view, const JgaQuery& q,
                        const GaLimits& limits = {});
GroupResult ga_mix(Party& p, ViewRef view, const JgaQuery& q,
                   const GaLimits& limits = {});
GroupResult ga_bitmap(Party& p, ViewRef view, const JgaQuery& q,
                      const GaLimits& limits = {});
GroupResult ga_oneside(Party& p, ViewRef view, const JgaQuery& q);

GroupResult run_ga(Party& p, ViewRef view, const JgaQuery& q,
                   GaProtocol protocol, const GaLimits& limits = {});

// Domain sizes of 0 mark an absent grouping column.
GaProtocol select_protocol(std::size_t n, std::size_t d0, std::size_t d1,
                           std::span<const Agg> aggs);

}  // namespace mview
