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


#include <set>
#include <sstream>

#include "gtest/gtest.h"
#include "mview/view.hpp"
#include "mview/view_io.hpp"
#include "view_util.hpp"

namespace mview {
namespace {

using testing::join;

// a < b < c < d < f
constexpr Ring a = 1, b = 2, c = 3, d = 4, f = 6;

Relation table0() {
  return make_relation("R0", {"k", "x"}, {{a, b, c, d}, {10, 20, 30, 40}}, "k");
}
Relation table1() {
  return make_relation("R1", {"k", "y"}, {{c, a, f}, {7, 8, 9}}, "k");
}

template <class Gen>
auto gen_views(const Relation& r0, const Relation& r1, Gen gen,
               SessionConfig cfg = {}) {
  return run_protocol(cfg, [&](Party& p) { return gen(p, p.is(0) ? r0 : r1); });
}

TEST(SecVTest, WorkedExample) {
  SecVHooks hooks[2];
  hooks[0].pi0 = IndexMap::from_one_based(std::vector<std::size_t>{3, 2, 4, 1});
  hooks[0].shuffle_local = IndexMap::from_one_based(std::vector<std::size_t>{3, 2, 4, 1});
  hooks[1].shuffle_local = IndexMap::identity(4);
  const Relation r0 = table0(), r1 = table1();
  auto run = gen_views(r0, r1, [&](Party& p, const Relation& r) {
    return gen_secV(p, r, hooks[p.id()]);
  });
  EXPECT_EQ(run.probes.reconstruct("secV/E"), (std::vector<Ring>{1, 0, 0, 1}));
  EXPECT_EQ(run.probes.reconstruct("secV/P1"), (std::vector<Ring>{3, 4, 2, 1}));
  EXPECT_EQ(run.out[0].pi.one_based(), (std::vector<std::size_t>{3, 2, 4, 1}));
  EXPECT_EQ(run.out[1].pi.one_based(), (std::vector<std::size_t>{1, 3, 4, 2}));
  EXPECT_EQ(join(run.out[0].e, run.out[1].e), (std::vector<Ring>{1, 0, 0, 1}));
  testing::check_pkpk_view(run.out[0], run.out[1], r0, r1);
  // Slot 3 of party 1 is a dummy row.
  EXPECT_GE(run.out[1].j.keys()[2], kKeyLimit);
  EXPECT_EQ(run.out[1].j.data[1][2], 0u);
}

TEST(SecVTest, PhasesInOrder) {
  auto run = gen_views(table0(), table1(), [](Party& p, const Relation& r) {
    return gen_secV(p, r);
  });
  EXPECT_EQ(run.transcript.labels_at_depth(0),
            (std::vector<std::string>{"cpsi-1", "osn", "cpsi-2", "shuffle",
                                      "sorting", "mux"}));
  EXPECT_EQ(run.transcript.phase_bits("cpsi-1"), 0u);
  EXPECT_GT(run.transcript.phase_hybrid_bits("cpsi-1"), 0u);
}

TEST(ViewGenTest, LevelSizesOnExample) {
  const Relation r0 = table0(), r1 = table1();
  auto psi = gen_views(r0, r1, gen_psiV);
  EXPECT_EQ(psi.out[0].size(), 2u);
  EXPECT_EQ(psi.out[0].pi.one_based(), (std::vector<std::size_t>{1, 3}));
  EXPECT_EQ(psi.out[1].pi.one_based(), (std::vector<std::size_t>{2, 1}));
  EXPECT_EQ(join(psi.out[0].e, psi.out[1].e), (std::vector<Ring>{1, 1}));
  auto pid = gen_views(r0, r1, gen_pidV);
  EXPECT_EQ(pid.out[0].size(), 5u);
  testing::check_pkpk_view(pid.out[0], pid.out[1], r0, r1);
  auto sec = gen_views(r0, r1, [](Party& p, const Relation& r) { return gen_secV(p, r); });
  EXPECT_EQ(sec.out[0].size(), 4u);
}

TEST(ViewGenTest, DegenerateSets) {
  const Relation x = make_relation("X", {"k"}, {{1, 2, 3}}, "k");
  const Relation y = make_relation("Y", {"k"}, {{4, 5}}, "k");
  for (int level = 0; level < 3; ++level) {
    auto gen = [level](Party& p, const Relation& r) {
      return gen_pkpk(p, level_from_int(level), r);
    };
    auto same = gen_views(x, x, gen);
    auto e = testing::check_pkpk_view(same.out[0], same.out[1], x, x);
    EXPECT_EQ(e, std::vector<Ring>(3, 1));
    auto disjoint = gen_views(x, y, gen);
    auto e2 = testing::check_pkpk_view(disjoint.out[0], disjoint.out[1], x, y);
    const std::size_t want[3] = {0, 5, 3};
    EXPECT_EQ(e2.size(), want[level]);
    EXPECT_EQ(std::count(e2.begin(), e2.end(), 1u), 0);
  }
}

TEST(ViewGenTest, RandomInvariants) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 40; ++t) {
    const std::size_t nx = 1 + rng() % 16, ny = 1 + rng() % 16;
    const Relation r0 = testing::random_pk_table(rng, nx, 40, 4, "R0");
    const Relation r1 = testing::random_pk_table(rng, ny, 40, 4, "R1");
    for (int level = 0; level < 3; ++level) {
      SessionConfig cfg{t + 1ull, t + 2ull, t + 3ull};
      auto run = gen_views(r0, r1, [level](Party& p, const Relation& r) {
        return gen_pkpk(p, level_from_int(level), r);
      }, cfg);
      testing::check_pkpk_view(run.out[0], run.out[1], r0, r1);
      const std::size_t want[3] = {testing::intersection_size(r0, r1),
                                   testing::union_size(r0, r1), std::max(nx, ny)};
      ASSERT_EQ(run.out[0].size(), want[level]) << "level " << level;
    }
  }
}

TEST(ViewGenTest, KeyRange) {
  const Relation big = make_relation("B", {"k"}, {{kKeyLimit}}, "k");
  EXPECT_THROW(gen_views(big, big, gen_psiV), Error);
}

TEST(SecVTest, LeakageShape) {
  std::mt19937_64 rng(5);
  const Relation a0 = testing::random_pk_table(rng, 12, 20, 3, "A0");
  const Relation a1 = testing::random_pk_table(rng, 9, 20, 3, "A1");
  const Relation b0 = testing::random_pk_table(rng, 12, 1000, 3, "B0");
  const Relation b1 = testing::random_pk_table(rng, 9, 1000, 3, "B1");
  auto gen = [](Party& p, const Relation& r) { return gen_secV(p, r); };
  auto ra = gen_views(a0, a1, gen);
  auto rb = gen_views(b0, b1, gen);
  EXPECT_NE(testing::intersection_size(a0, a1), testing::intersection_size(b0, b1));
  EXPECT_EQ(ra.transcript.shape(), rb.transcript.shape());
  EXPECT_EQ(ra.transcript.wire_bits(), rb.transcript.wire_bits());
}

TEST(SecVTest, RoleSwap) {
  const Relation r0 = table1(), r1 = table0();
  auto run = gen_views(r0, r1, [](Party& p, const Relation& r) { return gen_secV(p, r); });
  EXPECT_EQ(run.out[0].size(), 4u);
  testing::check_pkpk_view(run.out[0], run.out[1], r0, r1);
}

TEST(SecVTest, CompletionsCoverAllAssignments) {
  const Relation x = make_relation("X", {"k"}, {{1, 2, 3}}, "k");
  const Relation y = make_relation("Y", {"k"}, {{3, 8, 9}}, "k");
  std::set<std::vector<std::pair<std::size_t, std::size_t>>> seen;
  for (std::uint64_t s = 0; s < 600; ++s) {
    SessionConfig cfg{s + 1, s + 7777, s + 99};
    auto run = gen_views(x, y, [](Party& p, const Relation& r) { return gen_secV(p, r); }, cfg);
    const auto e = join(run.out[0].e, run.out[1].e);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < 3; ++i) {
      if (!e[i]) pairs.emplace_back(run.out[0].pi(i), run.out[1].pi(i));
    }
    std::sort(pairs.begin(), pairs.end());
    seen.insert(pairs);
  }
  // Rows {0, 1} of X pair with rows {1, 2} of Y in one of two ways.
  EXPECT_EQ(seen.size(), 2u);
}

TEST(RefreshTest, PkPkIsLocal) {
  const Relation r0 = table0(), r1 = table1();
  auto run = gen_views(r0, r1, [](Party& p, const Relation& r) { return gen_secV(p, r); });
  PkPkView v0 = run.out[0];
  Relation base = r0;
  const PkPkView before = v0;
  refresh_pkpk(v0, base, {});
  EXPECT_EQ(v0.j.data, before.j.data);
  // a is row 0; its slot under pi0 = (3,2,4,1) is 4 (0-based 3).
  refresh_pkpk(v0, base, {{0, {a, 111}}});
  EXPECT_EQ(base.data[1][0], 111u);
  std::size_t changed = 0;
  for (std::size_t i = 0; i < v0.size(); ++i) changed += v0.j.data[1][i] != before.j.data[1][i];
  EXPECT_EQ(changed, 1u);
  EXPECT_EQ(v0.j.data[1][3], 111u);
  try {
    refresh_pkpk(v0, base, {{0, {b, 1}}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::KeyModified);
  }
}

TEST(ViewIoTest, RoundTrip) {
  const Relation r0 = table0(), r1 = table1();
  auto run = gen_views(r0, r1, [](Party& p, const Relation& r) { return gen_secV(p, r); });
  std::stringstream ss;
  write_view(ss, run.out[1]);
  const auto back = std::get<PkPkView>(read_view(ss));
  EXPECT_EQ(back.pi, run.out[1].pi);
  EXPECT_EQ(back.e.data(), run.out[1].e.data());
  EXPECT_EQ(back.j.data, run.out[1].j.data);
  EXPECT_EQ(back.j.columns, run.out[1].j.columns);
  EXPECT_NO_THROW(check_fresh(StoredView{back}, r1));
  Relation other = r1;
  other.data[0][0] = 77;
  EXPECT_THROW(check_fresh(StoredView{back}, other), Error);
  std::stringstream bad("garbage");
  EXPECT_THROW(read_view(bad), Error);
}

}  // namespace
}  // namespace mview
