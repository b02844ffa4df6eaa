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

#include <array>

#include "mview/view.hpp"

namespace mview::detail {

// Exchanges row counts; both parties learn both sizes.
std::array<std::size_t, 2> exchange_sizes(Party& p, std::size_t own);

// pi · R with dummy rows (sentinel key, zero payload) for targets beyond R.
Relation materialize(const Relation& base, const IndexMap& pi, PartyId party);

// Slot of each base row under pi, or npos for rows outside the view.
std::vector<std::size_t> slots_of(const IndexMap& pi, std::size_t base_rows);

}  // namespace mview::detail
