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
#include <numeric>
#include <random>

#include "gtest/gtest.h"
#include "mview/gates.hpp"
#include "mview/oblivious.hpp"
#include "test_util.hpp"

namespace mview {
namespace {

using testing::join;
using testing::SplitVec;

std::vector<Ring> run_bit_sort(const std::vector<std::vector<Ring>>& bitmaps,
                               std::uint64_t seed = 1) {
  std::vector<SplitVec> sv;
  for (std::size_t j = 0; j < bitmaps.size(); ++j) {
    sv.emplace_back(bitmaps[j], Flavor::Binary, 1, seed + j);
  }
  auto run = run_protocol(SessionConfig{}, [&](Party& p) {
    std::vector<SharedVector> cols;
    for (auto& s : sv) cols.push_back(s.half[p.id()]);
    return bit_sort(p, cols);
  });
  return join(run.out[0], run.out[1]);
}

TEST(PerGenTest, WorkedExample) {
  SplitVec v({1, 0, 1, 0}, Flavor::Binary, 1);
  auto run = run_protocol(SessionConfig{}, [&](Party& p) {
    return per_gen(p, v.half[p.id()]);
  });
  auto pi = join(run.out[0], run.out[1]);
  // One-based (3, 1, 4, 2).
  EXPECT_EQ(pi, (std::vector<Ring>{2, 0, 3, 1}));
  EXPECT_EQ(run.transcript.wire_rounds, 2u);
}

TEST(PerGenTest, AllZerosIsIdentity) {
  EXPECT_EQ(run_bit_sort({{0, 0, 0, 0, 0}}), (std::vector<Ring>{0, 1, 2, 3, 4}));
}

TEST(PerGenTest, SortsWithInverse) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 1 + rng() % 8;
    auto v = testing::random_values(n, rng, 1);
    std::vector<Ring> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    SplitVec sv(v, Flavor::Binary, 1, t);
    SplitVec si(idx, Flavor::Arithmetic, 64, t + 100);
    auto run = run_protocol(SessionConfig{}, [&](Party& p) {
      auto pi = per_gen(p, sv.half[p.id()]);
      std::vector<SharedVector> cols{b2a(p, sv.half[p.id()]), si.half[p.id()]};
      return invp_shared(p, pi, cols);
    });
    auto bits = join(run.out[0][0], run.out[1][0]);
    auto order = join(run.out[0][1], run.out[1][1]);
    ASSERT_TRUE(std::is_sorted(bits.begin(), bits.end()));
    for (std::size_t i = 1; i < n; ++i) {
      if (bits[i] == bits[i - 1]) ASSERT_LT(order[i - 1], order[i]);
    }
  }
}

TEST(BitSortTest, EmptyBucketsIdentity) {
  EXPECT_EQ(run_bit_sort({{0, 0, 0}, {0, 0, 0}}), (std::vector<Ring>{0, 1, 2}));
}

TEST(BitSortTest, AgreesWithBucketOracle) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 1 + rng() % 8;
    const std::size_t d = 1 + rng() % 3;
    std::vector<std::vector<Ring>> bm(d, std::vector<Ring>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t b = rng() % (d + 1);
      if (b > 0) bm[b - 1][i] = 1;
    }
    ASSERT_EQ(run_bit_sort(bm, t), testing::bucket_ranks(bm, n));
  }
}

std::vector<Ring> plain_stable_order(const std::vector<std::vector<Ring>>& keys) {
  const std::size_t n = keys.front().size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    for (const auto& k : keys) {
      if (k[a] != k[b]) return k[a] < k[b];
    }
    return false;
  });
  return std::vector<Ring>(order.begin(), order.end());
}

struct SortOut {
  std::vector<Ring> perm;
  std::vector<std::vector<Ring>> keys, carried;
};

SortOut run_sort(const std::vector<std::vector<Ring>>& keys,
                 const std::vector<unsigned>& widths,
                 const std::vector<Ring>& carried) {
  std::vector<SplitVec> sk;
  for (std::size_t c = 0; c < keys.size(); ++c) {
    sk.emplace_back(keys[c], Flavor::Binary, widths[c], 10 + c);
  }
  SplitVec sc(carried, Flavor::Arithmetic, 64, 99);
  auto run = run_protocol(SessionConfig{}, [&](Party& p) {
    std::vector<SharedVector> k;
    for (auto& s : sk) k.push_back(s.half[p.id()]);
    std::vector<SharedVector> c{sc.half[p.id()]};
    return stable_sort(p, k, c);
  });
  SortOut out;
  out.perm = join(run.out[0].perm, run.out[1].perm);
  for (std::size_t c = 0; c < keys.size(); ++c) {
    out.keys.push_back(join(run.out[0].keys[c], run.out[1].keys[c]));
  }
  out.carried.push_back(join(run.out[0].carried[0], run.out[1].carried[0]));
  return out;
}

TEST(StableSortTest, SortedAndEqualKeysAreIdentity) {
  std::vector<Ring> id{0, 1, 2, 3, 4};
  EXPECT_EQ(run_sort({{1, 2, 3, 4, 5}}, {8}, {9, 9, 9, 9, 9}).perm, id);
  EXPECT_EQ(run_sort({{7, 7, 7, 7, 7}}, {8}, {9, 9, 9, 9, 9}).perm, id);
}

TEST(StableSortTest, AgreesWithPlainSort) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 25; ++t) {
    const std::size_t n = 1 + rng() % 16;
    std::vector<Ring> k0(n), k1(n);
    for (std::size_t i = 0; i < n; ++i) k0[i] = rng() % 3, k1[i] = rng() % 4;
    auto carried = testing::random_values(n, rng);
    auto out = run_sort({k0, k1}, {t % 2 ? 64u : 2u, 2}, carried);
    auto want = plain_stable_order({k0, k1});
    ASSERT_EQ(out.perm, want);
    for (std::size_t i = 0; i < n; ++i) {
      ASSERT_EQ(out.keys[0][i], k0[want[i]]);
      ASSERT_EQ(out.keys[1][i], k1[want[i]]);
      ASSERT_EQ(out.carried[0][i], carried[want[i]]);
    }
  }
}

}  // namespace
}  // namespace mview
