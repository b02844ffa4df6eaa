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
#include <span>
#include <vector>

#include "mview/permutation.hpp"
#include "mview/session.hpp"
#include "mview/shared_vector.hpp"

namespace mview {

struct ColumnSpec {
  Flavor flavor = Flavor::Arithmetic;
  unsigned width = kRingBits;
};

// A plaintext column owned by one party. The other party passes the same
// spec with empty values.
struct PlainColumn {
  ColumnSpec spec;
  std::vector<Ring> values;
};

// ---- oblivious switching -------------------------------------------------

// Receiver holds π, sender holds X; output shares of y_i = x_{π(i)}.
std::vector<SharedVector> osn_plain(Party& p, PartyId receiver,
                                    const IndexMap& perm,
                                    std::span<const PlainColumn> cols,
                                    std::size_t n);
std::vector<SharedVector> osn_shared(Party& p, PartyId receiver,
                                     const IndexMap& perm,
                                     std::span<const SharedVector> cols);

struct ShuffleResult {
  std::vector<SharedVector> cols;
  IndexMap local;  // the permutation this party fed into its OSN pass
};
// Optional per-party permutations replace the random ones (test hook).
ShuffleResult shuffle(Party& p, std::span<const SharedVector> cols,
                      const std::optional<IndexMap>& fixed = std::nullopt);

// Shared permutations hold 0-based indices in arithmetic shares.
std::vector<SharedVector> perm_shared(Party& p, const SharedVector& pi,
                                      std::span<const SharedVector> cols);
std::vector<SharedVector> invp_shared(Party& p, const SharedVector& pi,
                                      std::span<const SharedVector> cols);
std::vector<SharedVector> perm_plain(Party& p, PartyId sender,
                                     const SharedVector& pi,
                                     std::span<const PlainColumn> cols);
std::vector<SharedVector> invp_plain(Party& p, PartyId sender,
                                     const SharedVector& pi,
                                     std::span<const PlainColumn> cols);

// ---- sorting ----------------------------------------------------------------

// Destination ranks (0-based) of a stable sort of one-hot bitmaps: rows with
// no set bit first, then bucket 1, ..., bucket d.
SharedVector bit_sort(Party& p, std::span<const SharedVector> bitmaps);
SharedVector per_gen(Party& p, const SharedVector& bits);

struct SortResult {
  SharedVector perm;  // gather form: sorted_i = input_{perm(i)}
  std::vector<SharedVector> keys;
  std::vector<SharedVector> carried;
};
// Stable ascending sort on binary key limbs (most significant first).
SortResult stable_sort(Party& p, std::span<const SharedVector> keys,
                       std::span<const SharedVector> carried = {});

// ---- traversal -----------------------------------------------------------

enum class Agg { Sum, Count, Max, Min, Xor };

Flavor agg_flavor(Agg agg);
Ring agg_identity(Agg agg);

// y_i aggregates v over the run of equal adjacent keys ending at i.
SharedVector trav(Party& p, std::span<const SharedVector> keys,
                  const SharedVector& values, Agg agg);
// Several scans over the same keys; head flags are computed once and every
// column advances through the scan levels together.
std::vector<SharedVector> trav_columns(Party& p,
                                       std::span<const SharedVector> keys,
                                       std::span<const SharedVector> values,
                                       std::span<const Agg> aggs);

}  // namespace mview
