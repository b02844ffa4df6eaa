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

#include "gtest/gtest.h"
#include "mview/gates.hpp"
#include "mview/session.hpp"
#include "test_util.hpp"

namespace mview {
namespace {

TEST(SessionTest, MulIsOneRound) {
  testing::SplitVec x({3}, Flavor::Arithmetic, 64);
  testing::SplitVec y({4}, Flavor::Arithmetic, 64, 8);
  auto run = run_protocol(SessionConfig{}, [&](Party& p) {
    return mul(p, x.half[p.id()], y.half[p.id()]);
  });
  EXPECT_EQ(run.transcript.wire_rounds, 1u);
  EXPECT_EQ(testing::join(run.out[0], run.out[1]), std::vector<Ring>{12});
  // Each party opens two masked 64-bit values.
  EXPECT_EQ(run.transcript.wire_bits(), 4u * 64);
  EXPECT_EQ(run.transcript.hybrid_bits, 2u * 3 * 64);
}

TEST(SessionTest, LocalProgramIsFree) {
  testing::SplitVec x({3, 4}, Flavor::Arithmetic, 64);
  auto run = run_protocol(SessionConfig{}, [&](Party& p) {
    auto ph = p.phase("local");
    return x.half[p.id()] + x.half[p.id()];
  });
  EXPECT_EQ(run.transcript.wire_bits(), 0u);
  EXPECT_EQ(run.transcript.wire_rounds, 0u);
  EXPECT_EQ(run.transcript.phase_bits("local"), 0u);
}

TEST(SessionTest, SendRecvBitsAndRounds) {
  auto run = run_protocol(SessionConfig{}, [](Party& p) {
    std::vector<Ring> v{1, 2, 3};
    if (p.is(0)) {
      p.send(v, 5);
      return p.recv(1, 64);
    }
    auto got = p.recv(3, 5);
    p.send(std::vector<Ring>{got[0] + got[1] + got[2]}, 64);
    return got;
  });
  EXPECT_EQ(run.out[0], std::vector<Ring>{6});
  EXPECT_EQ(run.out[1], (std::vector<Ring>{1, 2, 3}));
  EXPECT_EQ(run.transcript.wire_bits_sent[0], 15u);
  EXPECT_EQ(run.transcript.wire_bits_sent[1], 64u);
  EXPECT_EQ(run.transcript.wire_rounds, 2u);
}

TEST(SessionTest, ParallelMessagesShareARound) {
  auto run = run_protocol(SessionConfig{}, [](Party& p) {
    std::vector<Ring> v{p.id() + 1u};
    p.send(v, 8);
    p.send(v, 8);
    auto a = p.recv(1, 8);
    auto b = p.recv(1, 8);
    return a[0] + b[0];
  });
  EXPECT_EQ(run.out[0], 4u);
  EXPECT_EQ(run.out[1], 2u);
  EXPECT_EQ(run.transcript.wire_rounds, 1u);
}

TEST(SessionTest, DesyncIsDetected) {
  for (auto mode : {SchedulerMode::Cooperative, SchedulerMode::Threaded}) {
    SessionConfig cfg;
    cfg.mode = mode;
    try {
      run_protocol(cfg, [](Party& p) { return p.recv(1, 64); });
      FAIL() << "expected a desync";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::ProtocolDesync);
    }
  }
}

TEST(SessionTest, ShapeMismatchIsDesync) {
  try {
    run_protocol(SessionConfig{}, [](Party& p) {
      if (p.is(0)) {
        p.send(std::vector<Ring>{1, 2}, 64);
      } else {
        p.recv(3, 64);
      }
    });
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ProtocolDesync);
  }
}

TEST(SessionTest, ThreadedMatchesCooperative) {
  std::mt19937_64 rng(11);
  auto xs = testing::random_values(16, rng);
  auto ys = testing::random_values(16, rng);
  testing::SplitVec x(xs, Flavor::Arithmetic, 64);
  testing::SplitVec y(ys, Flavor::Arithmetic, 64, 12);
  auto prog = [&](Party& p) {
    auto ph = p.phase("mul");
    auto z = mul(p, x.half[p.id()], y.half[p.id()]);
    return arith_to_bin(p, z);
  };
  SessionConfig a;
  SessionConfig b;
  b.mode = SchedulerMode::Threaded;
  auto ra = run_protocol(a, prog);
  auto rb = run_protocol(b, prog);
  EXPECT_EQ(ra.out[0].data(), rb.out[0].data());
  EXPECT_EQ(ra.out[1].data(), rb.out[1].data());
  EXPECT_EQ(ra.transcript, rb.transcript);
}

TEST(SessionTest, DeterministicReplay) {
  testing::SplitVec x({5, 6, 7}, Flavor::Arithmetic, 64);
  auto prog = [&](Party& p) { return mul(p, x.half[p.id()], x.half[p.id()]); };
  SessionConfig cfg{10, 20, 30};
  auto r1 = run_protocol(cfg, prog);
  auto r2 = run_protocol(cfg, prog);
  EXPECT_EQ(r1.out[0].data(), r2.out[0].data());
  EXPECT_EQ(r1.transcript.serialize(), r2.transcript.serialize());
  SessionConfig other{10, 20, 31};
  auto r3 = run_protocol(other, prog);
  EXPECT_NE(r1.out[0].data(), r3.out[0].data());
  EXPECT_EQ(testing::join(r3.out[0], r3.out[1]),
            (std::vector<Ring>{25, 36, 49}));
}

TEST(SessionTest, NestedPhasesPartitionBits) {
  testing::SplitVec x({5, 6, 7}, Flavor::Arithmetic, 64);
  auto run = run_protocol(SessionConfig{}, [&](Party& p) {
    auto outer = p.phase("outer");
    SharedVector z;
    {
      auto a = p.phase("a");
      z = mul(p, x.half[p.id()], x.half[p.id()]);
    }
    {
      auto b = p.phase("b");
      z = mul(p, z, x.half[p.id()]);
    }
    { auto e = p.phase("empty"); }
    return z;
  });
  const auto& t = run.transcript;
  EXPECT_EQ(t.phase_bits("outer"), t.wire_bits());
  EXPECT_EQ(t.phase_bits("a") + t.phase_bits("b"), t.phase_bits("outer"));
  EXPECT_EQ(t.phase_bits("empty"), 0u);
  EXPECT_EQ(t.phase_rounds("outer"), 2u);
  EXPECT_EQ(t.labels_at_depth(1),
            (std::vector<std::string>{"a", "b", "empty"}));
}

TEST(SessionTest, TripleBudget) {
  SessionConfig cfg;
  cfg.triple_budget = 2;
  testing::SplitVec x({1, 2, 3}, Flavor::Arithmetic, 64);
  try {
    run_protocol(cfg, [&](Party& p) { return mul(p, x.half[p.id()], x.half[p.id()]); });
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DealerExhausted);
  }
}

TEST(SessionTest, HybridLedgerOnly) {
  HybridFn fn = [](const std::array<HybridPayload, 2>& in, std::mt19937_64&) {
    HybridResult r;
    r.out[0].vectors = {{in[1].vectors[0][0]}};
    r.out[1].vectors = {{in[0].vectors[0][0]}};
    r.delivered_bits = {64, 64};
    return r;
  };
  auto run = run_protocol(SessionConfig{}, [&](Party& p) {
    HybridPayload in;
    in.vectors = {{Ring(100 + p.id())}};
    return p.hybrid("swap", in, fn).vectors[0][0];
  });
  EXPECT_EQ(run.out[0], 101u);
  EXPECT_EQ(run.out[1], 100u);
  EXPECT_EQ(run.transcript.wire_bits(), 0u);
  EXPECT_EQ(run.transcript.hybrid_bits, 128u);
}

TEST(SessionTest, FaultInjectionFlipsShare) {
  SessionConfig cfg;
  cfg.fault = FaultInjection{"x", 1, 0, 1};
  testing::SplitVec x({4, 4}, Flavor::Arithmetic, 64);
  auto run = run_protocol(cfg, [&](Party& p) {
    SharedVector v = x.half[p.id()];
    p.probe("x", v);
    return v;
  });
  auto got = testing::join(run.out[0], run.out[1]);
  EXPECT_NE(got[0], 4u);
  EXPECT_EQ(got[1], 4u);
  EXPECT_EQ(run.probes.reconstruct("x"), got);
}

}  // namespace
}  // namespace mview
