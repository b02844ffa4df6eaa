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

#include <random>
#include <set>

#include "gtest/gtest.h"
#include "mview/gates.hpp"
#include "test_util.hpp"

namespace mview {
namespace {

using testing::join;
using testing::SplitVec;

template <class Fn>
std::vector<Ring> eval(Fn&& fn, SessionConfig cfg = {}) {
  auto run = run_protocol(cfg, fn);
  return join(run.out[0], run.out[1]);
}

TEST(GatesTest, MulSmall) {
  SplitVec x({3, 77}, Flavor::Arithmetic, 64);
  SplitVec y({4, 0}, Flavor::Arithmetic, 64, 3);
  auto z = eval([&](Party& p) { return mul(p, x.half[p.id()], y.half[p.id()]); });
  EXPECT_EQ(z, (std::vector<Ring>{12, 0}));
}

TEST(GatesTest, MulRandom) {
  std::mt19937_64 rng(1);
  auto xs = testing::random_values(1000, rng);
  auto ys = testing::random_values(1000, rng);
  SplitVec x(xs, Flavor::Arithmetic, 64);
  SplitVec y(ys, Flavor::Arithmetic, 64, 3);
  auto run = run_protocol(SessionConfig{}, [&](Party& p) {
    return mul(p, x.half[p.id()], y.half[p.id()]);
  });
  auto z = join(run.out[0], run.out[1]);
  for (std::size_t i = 0; i < xs.size(); ++i) ASSERT_EQ(z[i], xs[i] * ys[i]);
  EXPECT_EQ(run.transcript.wire_rounds, 1u);
}

TEST(GatesTest, AndExhaustive4Bit) {
  std::vector<Ring> xs, ys;
  for (Ring a = 0; a < 16; ++a)
    for (Ring b = 0; b < 16; ++b) xs.push_back(a), ys.push_back(b);
  SplitVec x(xs, Flavor::Binary, 4);
  SplitVec y(ys, Flavor::Binary, 4, 5);
  auto z = eval([&](Party& p) { return and_gate(p, x.half[p.id()], y.half[p.id()]); });
  for (std::size_t i = 0; i < xs.size(); ++i) ASSERT_EQ(z[i], xs[i] & ys[i]);
}

TEST(GatesTest, MuxSmall) {
  SplitVec f({1, 0}, Flavor::Binary, 1);
  SplitVec x({9, 9}, Flavor::Arithmetic, 64, 2);
  SplitVec y({4, 4}, Flavor::Arithmetic, 64, 3);
  auto z = eval([&](Party& p) {
    return mux(p, f.half[p.id()], x.half[p.id()], y.half[p.id()]);
  });
  EXPECT_EQ(z, (std::vector<Ring>{9, 4}));
  SplitVec xb({9, 9}, Flavor::Binary, 64, 2);
  SplitVec yb({4, 4}, Flavor::Binary, 64, 3);
  auto zb = eval([&](Party& p) {
    return mux(p, f.half[p.id()], xb.half[p.id()], yb.half[p.id()]);
  });
  EXPECT_EQ(zb, (std::vector<Ring>{9, 4}));
}

TEST(GatesTest, MuxRandom) {
  std::mt19937_64 rng(2);
  auto fs = testing::random_values(500, rng, 1);
  auto xs = testing::random_values(500, rng);
  auto ys = testing::random_values(500, rng);
  for (Flavor fl : {Flavor::Arithmetic, Flavor::Binary}) {
    SplitVec f(fs, Flavor::Binary, 1);
    SplitVec x(xs, fl, 64, 2);
    SplitVec y(ys, fl, 64, 3);
    auto z = eval([&](Party& p) {
      return mux(p, f.half[p.id()], x.half[p.id()], y.half[p.id()]);
    });
    for (std::size_t i = 0; i < xs.size(); ++i) {
      ASSERT_EQ(z[i], fs[i] ? xs[i] : ys[i]);
    }
  }
}

TEST(GatesTest, MuxWidth) {
  SplitVec f({1}, Flavor::Binary, 8);
  SplitVec x({9}, Flavor::Arithmetic, 64, 2);
  EXPECT_THROW(eval([&](Party& p) {
                 return mux(p, f.half[p.id()], x.half[p.id()], x.half[p.id()]);
               }),
               Error);
}

TEST(GatesTest, EqSmall) {
  SplitVec x({7, 7}, Flavor::Binary, 64);
  SplitVec y({7, 8}, Flavor::Binary, 64, 2);
  auto z = eval([&](Party& p) { return eq(p, x.half[p.id()], y.half[p.id()]); });
  EXPECT_EQ(z, (std::vector<Ring>{1, 0}));
}

TEST(GatesTest, EqAndLessThanExhaustive4Bit) {
  std::vector<Ring> xs, ys;
  for (Ring a = 0; a < 16; ++a)
    for (Ring b = 0; b < 16; ++b) xs.push_back(a), ys.push_back(b);
  for (Flavor fl : {Flavor::Binary, Flavor::Arithmetic}) {
    const unsigned w = fl == Flavor::Binary ? 4 : 64;
    SplitVec x(xs, fl, w);
    SplitVec y(ys, fl, w, 5);
    auto e = eval([&](Party& p) { return eq(p, x.half[p.id()], y.half[p.id()]); });
    for (std::size_t i = 0; i < xs.size(); ++i) ASSERT_EQ(e[i], Ring(xs[i] == ys[i]));
  }
  SplitVec x(xs, Flavor::Binary, 4);
  SplitVec y(ys, Flavor::Binary, 4, 5);
  auto lt = eval([&](Party& p) { return less_than(p, x.half[p.id()], y.half[p.id()]); });
  for (std::size_t i = 0; i < xs.size(); ++i) ASSERT_EQ(lt[i], Ring(xs[i] < ys[i]));
}

TEST(GatesTest, EqWidthMismatch) {
  SplitVec x({7}, Flavor::Binary, 64);
  SplitVec y({7}, Flavor::Binary, 8);
  EXPECT_THROW(eval([&](Party& p) { return eq(p, x.half[p.id()], y.half[p.id()]); }),
               Error);
}

TEST(GatesTest, MultiLimbCompare) {
  std::mt19937_64 rng(9);
  std::vector<Ring> a0, a1, b0, b1;
  for (int i = 0; i < 400; ++i) {
    a0.push_back(rng() % 3), b0.push_back(rng() % 3);
    a1.push_back(rng() % 5), b1.push_back(rng() % 5);
  }
  SplitVec x0(a0, Flavor::Binary, 64), x1(a1, Flavor::Binary, 3, 2);
  SplitVec y0(b0, Flavor::Binary, 64, 3), y1(b1, Flavor::Binary, 3, 4);
  auto run = run_protocol(SessionConfig{}, [&](Party& p) {
    const int u = p.id();
    std::vector<SharedVector> xs{x0.half[u], x1.half[u]};
    std::vector<SharedVector> ys{y0.half[u], y1.half[u]};
    return std::vector<SharedVector>{less_than(p, xs, ys), eq_fields(p, xs, ys)};
  });
  auto lt = join(run.out[0][0], run.out[1][0]);
  auto e = join(run.out[0][1], run.out[1][1]);
  for (std::size_t i = 0; i < a0.size(); ++i) {
    const bool want = a0[i] < b0[i] || (a0[i] == b0[i] && a1[i] < b1[i]);
    ASSERT_EQ(lt[i], Ring(want));
    ASSERT_EQ(e[i], Ring(a0[i] == b0[i] && a1[i] == b1[i]));
  }
}

TEST(GatesTest, AsymMul) {
  std::vector<Ring> bits{0, 1, 1, 0};
  std::vector<Ring> vals{99, 99, 5, 7};
  for (PartyId holder : {0, 1}) {
    auto z = eval([&](Party& p) {
      std::vector<Ring> mine = p.is(holder) ? bits : vals;
      return asym_mul(p, holder, p.is(holder) ? mine : std::vector<Ring>{},
                      p.is(holder) ? std::vector<Ring>{} : mine, 4);
    });
    EXPECT_EQ(z, (std::vector<Ring>{0, 99, 5, 0}));
  }
}

TEST(GatesTest, AsymMulRandomBinary) {
  std::mt19937_64 rng(4);
  auto bits = testing::random_values(300, rng, 1);
  auto vals = testing::random_values(300, rng, 20);
  auto run = run_protocol(SessionConfig{}, [&](Party& p) {
    return asym_mul(p, 1, p.is(1) ? bits : std::vector<Ring>{},
                    p.is(0) ? vals : std::vector<Ring>{}, 300, Flavor::Binary, 20);
  });
  auto z = join(run.out[0], run.out[1]);
  for (std::size_t i = 0; i < bits.size(); ++i) ASSERT_EQ(z[i], bits[i] ? vals[i] : 0);
}

TEST(GatesTest, Conversions) {
  SplitVec bit({1, 0}, Flavor::Binary, 1);
  auto a = eval([&](Party& p) { return b2a(p, bit.half[p.id()]); });
  EXPECT_EQ(a, (std::vector<Ring>{1, 0}));

  std::mt19937_64 rng(6);
  auto xs = testing::random_values(300, rng);
  SplitVec x(xs, Flavor::Arithmetic, 64);
  auto rt = eval([&](Party& p) {
    auto b = convert(p, x.half[p.id()], Flavor::Binary);
    EXPECT_EQ(b.flavor(), Flavor::Binary);
    return convert(p, b, Flavor::Arithmetic);
  });
  EXPECT_EQ(rt, xs);

  auto xs16 = testing::random_values(300, rng, 16);
  SplitVec xb(xs16, Flavor::Binary, 16);
  auto ar = eval([&](Party& p) { return bin_to_arith(p, xb.half[p.id()]); });
  EXPECT_EQ(ar, xs16);
  auto nb = eval([&](Party& p) {
    return arith_to_bin(p, bin_to_arith(p, xb.half[p.id()]), 16);
  });
  EXPECT_EQ(nb, xs16);
}

TEST(GatesTest, OutputShareLooksRandom) {
  // The same secret under 1000 dealer seeds: party 0's output half of a
  // product must vary.
  SplitVec x({6}, Flavor::Arithmetic, 64);
  SplitVec y({7}, Flavor::Arithmetic, 64, 2);
  std::set<Ring> seen;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    SessionConfig cfg{1, 2, 100 + s};
    auto run = run_protocol(cfg, [&](Party& p) {
      return mul(p, x.half[p.id()], y.half[p.id()]);
    });
    seen.insert(run.out[0][0]);
    ASSERT_EQ(run.out[0][0] + run.out[1][0], 42u);
  }
  EXPECT_GE(seen.size(), 2u);
  EXPECT_GT(seen.size(), 990u);
}

TEST(GatesTest, RevealTo) {
  SplitVec x({5, 6}, Flavor::Arithmetic, 64);
  auto run = run_protocol(SessionConfig{}, [&](Party& p) {
    return reveal_to(p, x.half[p.id()], 1);
  });
  EXPECT_TRUE(run.out[0].empty());
  EXPECT_EQ(run.out[1], (std::vector<Ring>{5, 6}));
  EXPECT_EQ(run.transcript.wire_bits_sent[1], 0u);
  EXPECT_EQ(run.transcript.wire_rounds, 1u);
}

}  // namespace
}  // namespace mview
