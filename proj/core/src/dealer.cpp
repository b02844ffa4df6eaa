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
// Dealer-side generation of correlated randomness. Each request index has
// its own RNG stream derived from the dealer seed, so both halves are a
// pure function of (seed, request index, request shape).

#include <fmt/format.h>

#include "mview/session.hpp"
#include "session_state.hpp"

namespace mview {

namespace {

using Halves = std::array<std::vector<std::vector<Ring>>, 2>;

}  // namespace

ArithTriples Party::arith_triples(std::size_t n) {
  s_->count_triples(id_, n);
  auto gen = [n](std::mt19937_64& rng) {
    Halves h;
    h[0].assign(3, std::vector<Ring>(n));
    h[1].assign(3, std::vector<Ring>(n));
    for (std::size_t i = 0; i < n; ++i) {
      const Ring a0 = rng(), a1 = rng(), b0 = rng(), b1 = rng(), c0 = rng();
      h[0][0][i] = a0;
      h[1][0][i] = a1;
      h[0][1][i] = b0;
      h[1][1][i] = b1;
      h[0][2][i] = c0;
      h[1][2][i] = (a0 + a1) * (b0 + b1) - c0;
    }
    return h;
  };
  const std::uint64_t bits = 3 * kRingBits * n;
  auto half = s_->correlation(id_, fmt::format("arith-triple:{}", n), gen,
                              {bits, bits});
  return {std::move(half[0]), std::move(half[1]), std::move(half[2])};
}

BinTriples Party::bin_triples(std::size_t n, unsigned width) {
  s_->count_triples(id_, n);
  const Ring m = width_mask(width);
  auto gen = [n, m](std::mt19937_64& rng) {
    Halves h;
    h[0].assign(3, std::vector<Ring>(n));
    h[1].assign(3, std::vector<Ring>(n));
    for (std::size_t i = 0; i < n; ++i) {
      const Ring a0 = rng() & m, a1 = rng() & m;
      const Ring b0 = rng() & m, b1 = rng() & m;
      const Ring c0 = rng() & m;
      h[0][0][i] = a0;
      h[1][0][i] = a1;
      h[0][1][i] = b0;
      h[1][1][i] = b1;
      h[0][2][i] = c0;
      h[1][2][i] = ((a0 ^ a1) & (b0 ^ b1)) ^ c0;
    }
    return h;
  };
  const std::uint64_t bits = 3ull * width * n;
  auto half = s_->correlation(id_, fmt::format("bin-triple:{}:{}", n, width),
                              gen, {bits, bits});
  return {std::move(half[0]), std::move(half[1]), std::move(half[2])};
}

DaBits Party::dabits(std::size_t n) {
  auto gen = [n](std::mt19937_64& rng) {
    Halves h;
    h[0].assign(2, std::vector<Ring>(n));
    h[1].assign(2, std::vector<Ring>(n));
    for (std::size_t i = 0; i < n; ++i) {
      const Ring r = rng() & 1;
      const Ring b0 = rng() & 1;
      const Ring x0 = rng();
      h[0][0][i] = b0;
      h[1][0][i] = r ^ b0;
      h[0][1][i] = x0;
      h[1][1][i] = r - x0;
    }
    return h;
  };
  const std::uint64_t bits = (1 + kRingBits) * n;
  auto half =
      s_->correlation(id_, fmt::format("dabit:{}", n), gen, {bits, bits});
  return {std::move(half[0]), std::move(half[1])};
}

RandomOt Party::random_ot(std::size_t n,
                          std::span<const unsigned> column_widths,
                          PartyId receiver) {
  const std::size_t cols = column_widths.size();
  std::vector<Ring> masks;
  std::uint64_t row_bits = 0;
  std::string desc = fmt::format("rot:{}:r{}", n, receiver);
  for (unsigned w : column_widths) {
    masks.push_back(width_mask(w));
    row_bits += w;
    desc += fmt::format(":{}", w);
  }
  auto gen = [n, cols, &masks, receiver](std::mt19937_64& rng) {
    Halves h;
    auto& snd = h[1 - receiver];
    auto& rcv = h[receiver];
    snd.assign(2, std::vector<Ring>(n * cols));
    rcv.assign(2, std::vector<Ring>());
    rcv[0].resize(n);
    rcv[1].resize(n * cols);
    for (std::size_t i = 0; i < n; ++i) {
      const Ring c = rng() & 1;
      rcv[0][i] = c;
      for (std::size_t j = 0; j < cols; ++j) {
        const Ring k0 = rng() & masks[j];
        const Ring k1 = rng() & masks[j];
        snd[0][i * cols + j] = k0;
        snd[1][i * cols + j] = k1;
        rcv[1][i * cols + j] = c ? k1 : k0;
      }
    }
    return h;
  };
  std::array<std::uint64_t, 2> bits{};
  bits[1 - receiver] = 2 * row_bits * n;
  bits[receiver] = (1 + row_bits) * n;
  auto half = s_->correlation(id_, desc, gen, bits);
  RandomOt out;
  out.columns = cols;
  if (id_ == receiver) {
    out.choice = std::move(half[0]);
    out.chosen = std::move(half[1]);
  } else {
    out.k0 = std::move(half[0]);
    out.k1 = std::move(half[1]);
  }
  return out;
}

}  // namespace mview
