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
#include "mview/benes.hpp"
#include "mview/permutation.hpp"

namespace mview {
namespace {

std::vector<std::size_t> iota(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

TEST(IndexMapTest, OneBasedRoundTrip) {
  std::vector<std::size_t> t{3, 1, 4, 2};
  auto m = IndexMap::from_one_based(t);
  EXPECT_EQ(m.targets(), (std::vector<std::size_t>{2, 0, 3, 1}));
  EXPECT_EQ(m.one_based(), t);
  EXPECT_TRUE(m.is_permutation());
}

TEST(IndexMapTest, ApplyAndInverse) {
  auto m = IndexMap::from_one_based(std::vector<std::size_t>{2, 3, 1});
  std::vector<int> x{10, 20, 30};
  EXPECT_EQ(m.apply(x), (std::vector<int>{20, 30, 10}));
  EXPECT_EQ(m.inverse().apply(m.apply(x)), x);
  EXPECT_EQ(compose(m, m.inverse()), IndexMap::identity(3));
}

TEST(IndexMapTest, ComposeMatchesSequentialApply) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    auto a = IndexMap::random(9, rng);
    auto b = IndexMap::random(9, rng);
    std::vector<int> x(9);
    std::iota(x.begin(), x.end(), 100);
    EXPECT_EQ(b.apply(a.apply(x)), compose(a, b).apply(x));
  }
}

TEST(IndexMapTest, Injective) {
  IndexMap m({4, 0}, 6);
  EXPECT_FALSE(m.is_permutation());
  EXPECT_EQ(m.codomain(), 6u);
  EXPECT_THROW(IndexMap({1, 1}, 3), Error);
  EXPECT_THROW(IndexMap({0, 5}, 3), Error);
}

TEST(IndexMapTest, FromRingRejectsNonPermutation) {
  std::vector<Ring> bad{0, 0, 1};
  try {
    permutation_from_ring(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotAPermutation);
  }
}

TEST(BenesTest, AllPermutationsUpToSix) {
  for (std::size_t n = 1; n <= 6; ++n) {
    auto p = iota(n);
    do {
      SwitchProgram prog{IndexMap(p)};
      std::vector<int> x(n);
      std::iota(x.begin(), x.end(), 1);
      auto y = prog.evaluate(x);
      for (std::size_t i = 0; i < n; ++i) ASSERT_EQ(y[i], x[p[i]]);
    } while (std::next_permutation(p.begin(), p.end()));
  }
}

TEST(BenesTest, RandomLarge) {
  std::mt19937_64 rng(5);
  for (std::size_t n : {7u, 64u, 100u, 1000u}) {
    auto m = IndexMap::random(n, rng);
    SwitchProgram prog(m);
    std::vector<std::size_t> x = iota(n);
    EXPECT_EQ(prog.evaluate(x), m.targets());
    EXPECT_EQ(prog.padded_size(), std::bit_ceil(n));
  }
}

TEST(BenesTest, TopologyMatchesRouting) {
  std::mt19937_64 rng(6);
  auto m = IndexMap::random(13, rng);
  SwitchProgram prog(m);
  auto topo = SwitchProgram::topology(13);
  ASSERT_EQ(prog.switches().size(), topo.switches().size());
  for (std::size_t i = 0; i < prog.switches().size(); ++i) {
    const auto& a = prog.switches()[i];
    const auto& b = topo.switches()[i];
    ASSERT_EQ(a.in0, b.in0);
    ASSERT_EQ(a.in1, b.in1);
    ASSERT_EQ(a.out0, b.out0);
    ASSERT_EQ(a.out1, b.out1);
  }
  EXPECT_EQ(prog.outputs(), topo.outputs());
}

}  // namespace
}  // namespace mview
