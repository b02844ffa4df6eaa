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
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "gtest/gtest.h"
#include "mview/gates.hpp"
#include "mview/oblivious.hpp"
#include "test_util.hpp"

namespace mview {
namespace {

using testing::join;
using testing::SplitVec;

std::vector<std::size_t> iota(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

std::vector<Ring> osn_plain_run(const std::vector<std::size_t>& perm,
                                const std::vector<Ring>& x, PartyId receiver,
                                Flavor fl = Flavor::Arithmetic,
                                unsigned width = 64) {
  auto run = run_protocol(SessionConfig{}, [&](Party& p) {
    PlainColumn col{{fl, width}, p.is(receiver) ? std::vector<Ring>{} : x};
    return osn_plain(p, receiver, p.is(receiver) ? IndexMap(perm) : IndexMap{},
                     {&col, 1}, x.size())[0];
  });
  return join(run.out[0], run.out[1]);
}

TEST(OsnTest, PlainIdentity) {
  EXPECT_EQ(osn_plain_run(iota(3), {1, 2, 3}, 0), (std::vector<Ring>{1, 2, 3}));
}

TEST(OsnTest, PlainUnrolled) {
  // (2,3,1) one-based picks x2, x3, x1.
  EXPECT_EQ(osn_plain_run({1, 2, 0}, {11, 22, 0}, 1),
            (std::vector<Ring>{22, 0, 11}));
}

TEST(OsnTest, PlainExhaustive) {
  std::mt19937_64 rng(1);
  for (std::size_t n = 1; n <= 5; ++n) {
    auto x = testing::random_values(n, rng);
    auto perm = iota(n);
    int k = 0;
    do {
      const PartyId r = (k++) & 1;
      const Flavor fl = (k & 2) ? Flavor::Binary : Flavor::Arithmetic;
      ASSERT_EQ(osn_plain_run(perm, x, r, fl), testing::gather(x, perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST(OsnTest, PlainSizeMismatch) {
  EXPECT_THROW(osn_plain_run({0, 1}, {1, 2, 3}, 0), Error);
}

TEST(OsnTest, SharedAndComposition) {
  std::mt19937_64 rng(2);
  auto x = testing::random_values(4, rng);
  SplitVec sx(x, Flavor::Arithmetic, 64);
  auto pi = IndexMap::random(4, rng);
  auto sigma = IndexMap::random(4, rng);
  auto run = run_protocol(SessionConfig{}, [&](Party& p) {
    auto y = osn_shared(p, 0, p.is(0) ? pi : IndexMap{}, {&sx.half[p.id()], 1});
    auto id = osn_shared(p, 1, p.is(1) ? IndexMap::identity(4) : IndexMap{},
                         {&sx.half[p.id()], 1});
    auto z = osn_shared(p, 1, p.is(1) ? sigma : IndexMap{}, y);
    return std::vector<SharedVector>{y[0], z[0], id[0]};
  });
  EXPECT_EQ(join(run.out[0][0], run.out[1][0]), pi.apply(x));
  EXPECT_EQ(join(run.out[0][1], run.out[1][1]), compose(pi, sigma).apply(x));
  EXPECT_EQ(join(run.out[0][2], run.out[1][2]), x);
}

TEST(OsnTest, ConstantRounds) {
  std::mt19937_64 rng(3);
  auto x = testing::random_values(200, rng);
  auto run = run_protocol(SessionConfig{}, [&](Party& p) {
    PlainColumn col{{Flavor::Arithmetic, 64}, p.is(0) ? x : std::vector<Ring>{}};
    return osn_plain(p, 1, p.is(1) ? IndexMap::random(200, p.rng()) : IndexMap{},
                     {&col, 1}, 200)[0];
  });
  EXPECT_EQ(run.transcript.wire_rounds, 2u);
}

TEST(OsnTest, BitScaling) {
  auto bits = [](std::size_t n) {
    auto run = run_protocol(SessionConfig{}, [&](Party& p) {
      std::vector<Ring> x(n, 5);
      PlainColumn col{{Flavor::Arithmetic, 64}, p.is(0) ? x : std::vector<Ring>{}};
      return osn_plain(p, 1, p.is(1) ? IndexMap::random(n, p.rng()) : IndexMap{},
                       {&col, 1}, n)[0];
    });
    return static_cast<double>(run.transcript.wire_bits());
  };
  const double ratio = bits(1024) / bits(256);
  EXPECT_GE(ratio, 4.0);
  EXPECT_LE(ratio, 6.0);
}

TEST(ShuffleTest, Singleton) {
  SplitVec x({42}, Flavor::Arithmetic, 64);
  auto run = run_protocol(SessionConfig{}, [&](Party& p) {
    return shuffle(p, {&x.half[p.id()], 1}).cols[0];
  });
  EXPECT_EQ(join(run.out[0], run.out[1]), std::vector<Ring>{42});
}

TEST(ShuffleTest, CoShuffleKeepsPairs) {
  std::mt19937_64 rng(4);
  auto x = testing::random_values(20, rng);
  std::vector<Ring> idx(20);
  std::iota(idx.begin(), idx.end(), 0);
  SplitVec sx(x, Flavor::Arithmetic, 64);
  SplitVec si(idx, Flavor::Binary, 5, 9);
  auto run = run_protocol(SessionConfig{}, [&](Party& p) {
    std::vector<SharedVector> cols{sx.half[p.id()], si.half[p.id()]};
    return shuffle(p, cols).cols;
  });
  auto y = join(run.out[0][0], run.out[1][0]);
  auto j = join(run.out[0][1], run.out[1][1]);
  auto ys = y, xs = x;
  std::sort(ys.begin(), ys.end());
  std::sort(xs.begin(), xs.end());
  EXPECT_EQ(ys, xs);
  for (std::size_t i = 0; i < 20; ++i) EXPECT_EQ(y[i], x[j[i]]);
}

TEST(ShuffleTest, CoversAllPermutationsOfThree) {
  std::map<std::vector<Ring>, int> seen;
  SplitVec tag({0, 1, 2}, Flavor::Arithmetic, 64);
  for (std::uint64_t s = 0; s < 600; ++s) {
    SessionConfig cfg{s + 1, s + 1000, s + 5000};
    auto run = run_protocol(cfg, [&](Party& p) {
      return shuffle(p, {&tag.half[p.id()], 1}).cols[0];
    });
    ++seen[join(run.out[0], run.out[1])];
  }
  EXPECT_EQ(seen.size(), 6u);
}


TEST(PermTest, SharedAndPlainExhaustive) {
  std::mt19937_64 rng(5);
  for (std::size_t n = 1; n <= 4; ++n) {
    auto x = testing::random_values(n, rng);
    auto perm = iota(n);
    do {
      IndexMap pi(perm);
      SplitVec sp(pi.as_ring(), Flavor::Arithmetic, 64, n);
      SplitVec sx(x, Flavor::Arithmetic, 64, n + 10);
      auto run = run_protocol(SessionConfig{}, [&](Party& p) {
        const int u = p.id();
        std::vector<SharedVector> out;
        out.push_back(perm_shared(p, sp.half[u], {&sx.half[u], 1})[0]);
        out.push_back(invp_shared(p, sp.half[u], {&sx.half[u], 1})[0]);
        PlainColumn col{{Flavor::Arithmetic, 64}, p.is(0) ? x : std::vector<Ring>{}};
        out.push_back(perm_plain(p, 0, sp.half[u], {&col, 1})[0]);
        out.push_back(invp_plain(p, 0, sp.half[u], {&col, 1})[0]);
        PlainColumn col1{{Flavor::Binary, 64}, p.is(1) ? x : std::vector<Ring>{}};
        out.push_back(perm_plain(p, 1, sp.half[u], {&col1, 1})[0]);
        out.push_back(invp_plain(p, 1, sp.half[u], {&col1, 1})[0]);
        // Round trip: perm then invp.
        auto there = perm_shared(p, sp.half[u], {&sx.half[u], 1});
        out.push_back(invp_shared(p, sp.half[u], there)[0]);
        return out;
      });
      const auto fwd = pi.apply(x);
      const auto back = pi.inverse().apply(x);
      for (int k : {0, 2, 4}) {
        ASSERT_EQ(join(run.out[0][k], run.out[1][k]), fwd) << k;
        ASSERT_EQ(join(run.out[0][k + 1], run.out[1][k + 1]), back) << k;
      }
      ASSERT_EQ(join(run.out[0][6], run.out[1][6]), x);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST(PermTest, IdentityShared) {
  SplitVec id(IndexMap::identity(5).as_ring(), Flavor::Arithmetic, 64);
  SplitVec x({5, 4, 3, 2, 1}, Flavor::Binary, 8, 3);
  auto run = run_protocol(SessionConfig{}, [&](Party& p) {
    return perm_shared(p, id.half[p.id()], {&x.half[p.id()], 1})[0];
  });
  EXPECT_EQ(join(run.out[0], run.out[1]), (std::vector<Ring>{5, 4, 3, 2, 1}));
}

TEST(PermTest, PlainCostsAboutHalf) {
  const std::size_t n = 256;
  std::mt19937_64 rng(6);
  auto pi = IndexMap::random(n, rng);
  auto x = testing::random_values(n, rng);
  SplitVec sp(pi.as_ring(), Flavor::Arithmetic, 64);
  SplitVec sx(x, Flavor::Arithmetic, 64, 2);
  auto shared = run_protocol(SessionConfig{}, [&](Party& p) {
    return perm_shared(p, sp.half[p.id()], {&sx.half[p.id()], 1})[0];
  });
  auto plain = run_protocol(SessionConfig{}, [&](Party& p) {
    PlainColumn col{{Flavor::Arithmetic, 64}, p.is(0) ? x : std::vector<Ring>{}};
    return perm_plain(p, 0, sp.half[p.id()], {&col, 1})[0];
  });
  const double ratio = static_cast<double>(plain.transcript.wire_bits()) /
                       static_cast<double>(shared.transcript.wire_bits());
  EXPECT_GE(ratio, 0.35);
  EXPECT_LE(ratio, 0.65);
  EXPECT_EQ(join(plain.out[0], plain.out[1]), pi.apply(x));
}

}  // namespace
}  // namespace mview
