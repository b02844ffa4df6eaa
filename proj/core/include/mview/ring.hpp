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
#include <random>
#include <utility>

#include "mview/errors.hpp"

namespace mview {

// Ring elements live in Z_{2^64}; unsigned overflow is the modular reduction.
using Ring = std::uint64_t;
using PartyId = int;

inline constexpr unsigned kRingBits = 64;

enum class Flavor : std::uint8_t { Arithmetic, Binary };

inline constexpr Ring width_mask(unsigned width) {
  return width >= 64 ? ~Ring{0} : ((Ring{1} << width) - 1);
}

// One party's half of a single shared ring element.
struct Share {
  Flavor flavor = Flavor::Arithmetic;
  unsigned width = kRingBits;
  PartyId owner = 0;
  Ring value = 0;
};

// Splits x into two halves; the first half is drawn from rng.
std::pair<Share, Share> share(Ring x, Flavor flavor, std::mt19937_64& rng,
                              unsigned width = kRingBits);

Ring reconstruct(const Share& s0, const Share& s1);

struct BeaverTriple {
  Share a;
  Share b;
  Share c;
};

}  // namespace mview
