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
#include <bit>

#include <fmt/format.h>

#include "mview/gates.hpp"
#include "mview/oblivious.hpp"

namespace mview {

SharedVector bit_sort(Party& p, std::span<const SharedVector> bitmaps) {
  if (bitmaps.empty()) fail(ErrorCode::SizeMismatch, "bit_sort needs a bitmap");
  check_same_size(bitmaps);
  const std::size_t n = bitmaps.front().size();
  const std::size_t d = bitmaps.size();
  // Bucket 0 is the complement (no bit set), then the d given buckets.
  SharedVector none = SharedVector::zeros(Flavor::Binary, 1, p.id(), n);
  for (const auto& b : bitmaps) {
    if (b.flavor() != Flavor::Binary || b.width() != 1) {
      fail(ErrorCode::WidthMismatch, "bit_sort takes 1-bit binary vectors");
    }
    none = none ^ b;
  }
  none = bit_not(none);
  std::vector<SharedVector> buckets{none};
  buckets.insert(buckets.end(), bitmaps.begin(), bitmaps.end());
  const SharedVector arith = b2a(p, concat(buckets));

  // Running count over (bucket, row) in bucket-major order gives each set
  // bit its 1-based destination rank.
  std::vector<std::pair<SharedVector, SharedVector>> prods;
  Ring acc = 0;
  for (std::size_t j = 0; j <= d; ++j) {
    std::vector<Ring> bits(n), ranks(n);
    for (std::size_t i = 0; i < n; ++i) {
      bits[i] = arith[j * n + i];
      acc += bits[i];
      ranks[i] = acc;
    }
    prods.emplace_back(SharedVector(Flavor::Arithmetic, kRingBits, p.id(), bits),
                       SharedVector(Flavor::Arithmetic, kRingBits, p.id(), ranks));
  }
  auto terms = mul_batch(p, prods);
  SharedVector v = SharedVector::zeros(Flavor::Arithmetic, kRingBits, p.id(), n);
  for (const auto& t : terms) v = v + t;
  return add_public(v, Ring{0} - 1);
}

SharedVector per_gen(Party& p, const SharedVector& bits) {
  const SharedVector one[1] = {bits};
  return bit_sort(p, one);
}

SortResult stable_sort(Party& p, std::span<const SharedVector> keys,
                       std::span<const SharedVector> carried) {
  if (keys.empty()) fail(ErrorCode::SizeMismatch, "stable_sort needs keys");
  check_same_size(keys);
  const std::size_t n = keys.front().size();
  for (const auto& c : carried) {
    if (c.size() != n) fail(ErrorCode::SizeMismatch, "carried column length");
  }
  for (const auto& k : keys) {
    if (k.flavor() != Flavor::Binary) {
      fail(ErrorCode::FlavorMismatch, "sort keys must be binary shares");
    }
  }
  SortResult res;
  if (n == 0) {
    res.perm = SharedVector::zeros(Flavor::Arithmetic, kRingBits, p.id(), 0);
    res.keys.assign(keys.begin(), keys.end());
    res.carried.assign(carried.begin(), carried.end());
    return res;
  }
  const std::size_t big = std::bit_ceil(n);
  const unsigned idx_width =
      std::max(1u, static_cast<unsigned>(std::bit_width(big - 1)));

  // Columns: key limbs, index limb, carried. Padding rows get maximal keys
  // and indices >= n, so they settle after every real row.
  std::vector<SharedVector> cols;
  for (const auto& k : keys) {
    SharedVector c = k;
    std::vector<Ring> pad(big - n, k.mask());
    c.append(SharedVector::constant(Flavor::Binary, k.width(), p.id(), pad));
    cols.push_back(std::move(c));
  }
  std::vector<Ring> idx(big);
  for (std::size_t i = 0; i < big; ++i) idx[i] = i;
  cols.push_back(SharedVector::constant(Flavor::Binary, idx_width, p.id(), idx));
  const std::size_t limbs = keys.size() + 1;
  for (const auto& c : carried) {
    SharedVector x = c;
    x.resize(big);
    cols.push_back(std::move(x));
  }

  auto gather = [](const SharedVector& c, const std::vector<std::size_t>& at) {
    std::vector<Ring> v(at.size());
    for (std::size_t i = 0; i < at.size(); ++i) v[i] = c[at[i]];
    return SharedVector(c.flavor(), c.width(), c.owner(), std::move(v));
  };

  for (std::size_t k = 2; k <= big; k <<= 1) {
    for (std::size_t j = k >> 1; j > 0; j >>= 1) {
      std::vector<std::size_t> lo, hi;
      std::vector<std::size_t> first, second;  // swap when first < second
      for (std::size_t i = 0; i < big; ++i) {
        const std::size_t l = i ^ j;
        if (l <= i) continue;
        lo.push_back(i);
        hi.push_back(l);
        const bool ascending = (i & k) == 0;
        first.push_back(ascending ? l : i);
        second.push_back(ascending ? i : l);
      }
      std::vector<SharedVector> xs, ys;
      for (std::size_t c = 0; c < limbs; ++c) {
        xs.push_back(gather(cols[c], first));
        ys.push_back(gather(cols[c], second));
      }
      const SharedVector swap = less_than(p, xs, ys);
      std::vector<SharedVector> a, b;
      for (const auto& c : cols) {
        a.push_back(gather(c, lo));
        b.push_back(gather(c, hi));
      }
      auto new_lo = mux_columns(p, swap, b, a);
      for (std::size_t c = 0; c < cols.size(); ++c) {
        const SharedVector new_hi =
            a[c].flavor() == Flavor::Arithmetic ? a[c] + b[c] - new_lo[c]
                                                : a[c] ^ b[c] ^ new_lo[c];
        for (std::size_t t = 0; t < lo.size(); ++t) {
          cols[c][lo[t]] = new_lo[c][t];
          cols[c][hi[t]] = new_hi[t];
        }
      }
    }
  }

  for (auto& c : cols) c.resize(n);
  for (std::size_t c = 0; c < keys.size(); ++c) res.keys.push_back(cols[c]);
  res.perm = bin_to_arith(p, cols[keys.size()]);
  for (std::size_t c = limbs; c < cols.size(); ++c) res.carried.push_back(cols[c]);
  return res;
}

}  // namespace mview
