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

#include "mview/ga.hpp"

namespace mview {

GaProtocol select_protocol(std::size_t n, std::size_t d0, std::size_t d1,
                           std::span<const Agg> aggs) {
  (void)n;
  if (d0 == 0 || d1 == 0) return GaProtocol::OneSide;
  // Count aggregates a column of ones and costs the same as sum.
  const bool additive = std::all_of(aggs.begin(), aggs.end(), [](Agg a) {
    return a == Agg::Sum || a == Agg::Count;
  });
  const std::size_t small = std::min(d0, d1);
  if (additive && d0 < (1u << 3) && d1 < (1u << 3)) return GaProtocol::Bitmap;
  if (additive && small < (1u << 7)) return GaProtocol::Mix;
  if (small < (1u << 12)) return GaProtocol::BSorting;
  return GaProtocol::OSorting;
}

}  // namespace mview
