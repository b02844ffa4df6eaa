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


#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <variant>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "bench.hpp"
#include "json.hpp"
#include "mview/errors.hpp"
#include "mview/ga.hpp"
#include "mview/oracle.hpp"
#include "mview/view.hpp"
#include "mview/view_io.hpp"

namespace mview::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct TableSpec {
  fs::path path;
  std::string key = "k";
  std::optional<std::string> group;
  std::optional<std::vector<Ring>> domain;
};

struct QuerySpec {
  std::array<TableSpec, 2> tables;
  JoinKind join = JoinKind::PkPk;
  std::vector<AggSpec> aggs;
  int level = 2;
  std::string protocol = "auto";
  SessionConfig session;
  fs::path views;
};

// Flags shared by the spec-driven subcommands.
struct Flags {
  std::string spec;
  int level = -1;
  std::string protocol;
  bool verify = false;
  std::optional<std::uint64_t> seed0, seed1, seed_dealer;
  std::string out;
  std::string views;
  std::string updates[2];
  bool inject_fault = false;
};

template <class T>
T field(const json& j, const char* name, T fallback) {
  return j.contains(name) && !j[name].is_null() ? j[name].get<T>() : fallback;
}

TableSpec parse_table(const json& j, const fs::path& base) {
  if (!j.is_object() || !j.contains("path")) {
    fail(ErrorCode::ParseError, "table entry needs a \"path\"");
  }
  TableSpec t;
  t.path = base / j["path"].get<std::string>();
  t.key = field<std::string>(j, "key", "k");
  if (j.contains("group") && !j["group"].is_null()) t.group = j["group"].get<std::string>();
  if (j.contains("domain") && !j["domain"].is_null()) {
    t.domain = j["domain"].get<std::vector<Ring>>();
  }
  return t;
}

QuerySpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, fmt::format("cannot open spec '{}'", path));
  QuerySpec s;
  const fs::path base = fs::path(path).parent_path();
  try {
    const json j = json::parse(in);
    s.tables[0] = parse_table(j.at("left"), base);
    s.tables[1] = parse_table(j.at("right"), base);
    const auto join = field<std::string>(j, "join", "pkpk");
    if (join == "pkfk") {
      s.join = JoinKind::PkFk;
    } else if (join != "pkpk") {
      fail(ErrorCode::ParseError, fmt::format("unknown join '{}'", join));
    }
    for (const auto& a : j.value("aggs", json::array())) {
      AggSpec agg;
      agg.agg = parse_agg(a.at("agg").get<std::string>());
      agg.side = static_cast<PartyId>(field<int>(a, "side", 1));
      agg.column = field<std::string>(a, "column", "");
      if (agg.side > 1) fail(ErrorCode::ParseError, "aggregate side must be 0 or 1");
      s.aggs.push_back(std::move(agg));
    }
    s.level = field<int>(j, "level", 2);
    s.protocol = field<std::string>(j, "protocol", "auto");
    if (j.contains("seeds")) {
      const auto& seeds = j["seeds"];
      s.session.seed0 = field<std::uint64_t>(seeds, "seed0", s.session.seed0);
      s.session.seed1 = field<std::uint64_t>(seeds, "seed1", s.session.seed1);
      s.session.seed_dealer = field<std::uint64_t>(seeds, "seedD", s.session.seed_dealer);
    }
    s.views = base / field<std::string>(j, "views", "views");
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, fmt::format("spec '{}': {}", path, e.what()));
  }
  return s;
}

void apply_flags(QuerySpec& s, const Flags& f) {
  if (f.level >= 0) s.level = f.level;
  if (!f.protocol.empty()) s.protocol = f.protocol;
  if (f.seed0) s.session.seed0 = *f.seed0;
  if (f.seed1) s.session.seed1 = *f.seed1;
  if (f.seed_dealer) s.session.seed_dealer = *f.seed_dealer;
  if (!f.views.empty()) s.views = f.views;
  level_from_int(s.level);
  if (s.protocol != "auto") parse_protocol(s.protocol);
}

std::array<Relation, 2> load_tables(const QuerySpec& s) {
  std::array<Relation, 2> r{
      read_csv(s.tables[0].path.string(), s.tables[0].key),
      read_csv(s.tables[1].path.string(), s.tables[1].key,
               s.join == JoinKind::PkFk ? KeyKind::ForeignKey : KeyKind::PrimaryKey)};
  for (PartyId u : {0, 1}) {
    const auto& t = s.tables[u];
    if (t.group) r[u].column_index(*t.group);
    for (const auto& a : s.aggs) {
      if (a.side == u && a.agg != Agg::Count) r[u].column_index(a.column);
    }
  }
  return r;
}

std::vector<Ring> group_domain(const TableSpec& t, const Relation& r) {
  if (t.domain) return *t.domain;
  const auto& col = r.column(*t.group);
  std::set<Ring> distinct(col.begin(), col.end());
  return {distinct.begin(), distinct.end()};
}

fs::path view_path(const fs::path& dir, PartyId u) {
  return dir / fmt::format("party{}.view", u);
}

std::array<StoredView, 2> load_views(const QuerySpec& s) {
  return {load_view(view_path(s.views, 0).string()),
          load_view(view_path(s.views, 1).string())};
}

JgaQuery make_query(const QuerySpec& s) {
  JgaQuery q;
  q.g0 = s.tables[0].group;
  q.g1 = s.tables[1].group;
  q.g0_domain = s.tables[0].domain;
  q.g1_domain = s.tables[1].domain;
  q.aggs = s.aggs;
  q.kind = s.join;
  return q;
}

bool has_bitmap(const StoredView& v, const std::string& column) {
  const auto* fk = std::get_if<PkFkView>(&v);
  if (!fk) return true;
  return std::any_of(fk->payload_columns.begin(), fk->payload_columns.end(),
                     [&](const std::string& c) { return c.rfind(column + "#", 0) == 0; });
}

GaProtocol choose_protocol(const QuerySpec& s, const std::array<Relation, 2>& r,
                           const StoredView& view, std::size_t n) {
  if (s.protocol != "auto") return parse_protocol(s.protocol);
  std::size_t d[2] = {0, 0};
  for (PartyId u : {0, 1}) {
    if (s.tables[u].group) d[u] = std::max<std::size_t>(1, group_domain(s.tables[u], r[u]).size());
  }
  std::vector<Agg> aggs;
  for (const auto& a : s.aggs) aggs.push_back(a.agg);
  GaProtocol p = select_protocol(n, d[0], d[1], aggs);
  const bool needs_bitmap =
      p == GaProtocol::BSorting || p == GaProtocol::Mix || p == GaProtocol::Bitmap;
  if (needs_bitmap && s.tables[0].group && !has_bitmap(view, *s.tables[0].group)) {
    p = GaProtocol::OSorting;
  }
  return p;
}

void write_table(const Relation& r, const fs::path& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::ParseError, fmt::format("cannot write '{}'", path.string()));
  write_csv(out, r.columns, r.data);
}

// ---- subcommands -----------------------------------------------------------

int cmd_genview(const Flags& f, std::ostream& out) {
  QuerySpec s = load_spec(f.spec);
  apply_flags(s, f);
  const fs::path dir = f.out.empty() ? s.views : fs::path(f.out);
  const auto tables = load_tables(s);
  const SecurityLevel level = level_from_int(s.level);
  fs::create_directories(dir);

  Transcript t;
  std::size_t n_e = 0;
  if (s.join == JoinKind::PkPk) {
    auto run = run_protocol(s.session, [&](Party& p) {
      return gen_pkpk(p, level, tables[p.id()]);
    });
    for (PartyId u : {0, 1}) save_view(view_path(dir, u).string(), run.out[u]);
    n_e = run.out[0].size();
    t = std::move(run.transcript);
  } else {
    PkFkOptions opts;
    opts.inner = level;
    if (const auto& g = s.tables[0].group) {
      auto domain = group_domain(s.tables[0], tables[0]);
      if (domain.size() <= GaLimits{}.bitmap_cap) opts.bitmap = BitmapSpec{*g, domain};
    }
    auto run = run_protocol(s.session, [&](Party& p) {
      return gen_pkfk(p, tables[p.id()], opts);
    });
    for (PartyId u : {0, 1}) save_view(view_path(dir, u).string(), run.out[u]);
    n_e = run.out[0].size();
    t = std::move(run.transcript);
  }
  out << "n_e=" << n_e << "\n" << t.summary() << "\n" << t.table();
  return kExitOk;
}

int cmd_refresh(const Flags& f, std::ostream& out) {
  QuerySpec s = load_spec(f.spec);
  apply_flags(s, f);
  const fs::path dir = f.out.empty() ? s.views : fs::path(f.out);
  auto tables = load_tables(s);
  auto views = load_views(s);
  std::array<UpdateSet, 2> updates;
  for (PartyId u : {0, 1}) {
    check_fresh(views[u], tables[u]);
    if (f.updates[u].empty()) continue;
    std::ifstream in(f.updates[u]);
    if (!in) fail(ErrorCode::ParseError, fmt::format("cannot open '{}'", f.updates[u]));
    updates[u] = parse_updates(in, tables[u]);
  }

  Transcript t;
  if (s.join == JoinKind::PkPk) {
    for (PartyId u : {0, 1}) {
      refresh_pkpk(std::get<PkPkView>(views[u]), tables[u], updates[u]);
    }
  } else if (!updates[0].empty() || !updates[1].empty()) {
    auto run = run_protocol(s.session, [&](Party& p) {
      refresh_pkfk(p, std::get<PkFkView>(views[p.id()]), tables[p.id()],
                   updates[p.id()]);
    });
    t = std::move(run.transcript);
  }

  fs::create_directories(dir);
  for (PartyId u : {0, 1}) {
    save_view(view_path(dir, u).string(), views[u]);
    if (updates[u].empty()) continue;
    const fs::path target = f.out.empty() ? s.tables[u].path
                                           : dir / s.tables[u].path.filename();
    write_table(tables[u], target);
  }
  out << t.summary() << "\n" << t.table();
  return kExitOk;
}

int cmd_query(const Flags& f, std::ostream& out, std::ostream& err) {
  QuerySpec s = load_spec(f.spec);
  apply_flags(s, f);
  const auto tables = load_tables(s);
  const auto views = load_views(s);
  for (PartyId u : {0, 1}) check_fresh(views[u], tables[u]);
  const JgaQuery q = make_query(s);
  const std::size_t n = std::visit([](const auto& v) { return v.size(); }, views[0]);
  const GaProtocol proto = choose_protocol(s, tables, views[0], n);

  SessionConfig cfg = s.session;
  if (f.inject_fault) cfg.fault = FaultInjection{"ga/valid", 0, 0, 1};
  auto run = run_protocol(cfg, [&](Party& p) {
    const ViewRef ref =
        std::visit([](const auto& v) -> ViewRef { return v; }, views[p.id()]);
    return run_ga(p, ref, q, proto);
  });
  const GroupResult& result = run.out[1];

  std::ostream& info = f.out.empty() ? err : out;
  if (f.out.empty()) {
    write_result_csv(out, result, q);
  } else {
    std::ofstream file(f.out);
    if (!file) fail(ErrorCode::ParseError, fmt::format("cannot write '{}'", f.out));
    write_result_csv(file, result, q);
  }
  info << "protocol=" << protocol_name(proto) << " n=" << n
       << " groups=" << result.rows.size() << "\n"
       << run.transcript.summary() << "\n";

  if (!f.verify) return kExitOk;
  const GroupResult expected = eval_jga(tables[0], tables[1], q);
  if (expected == result) {
    info << "verify=ok\n";
    return kExitOk;
  }
  info << fmt::format("verify=mismatch expected_groups={} got_groups={}\n",
                      expected.rows.size(), result.rows.size());
  return kExitMismatch;
}

std::array<Relation, 2> demo_tables() {
  // Keys a,b,c,d on the left and c,a,f on the right, encoded as 1,2,3,4,6.
  return {make_relation("left", {"k", "g", "v"},
                        {{1, 2, 3, 4}, {10, 10, 11, 11}, {5, 6, 7, 8}}, "k"),
          make_relation("right", {"k", "g", "v"},
                        {{3, 1, 6}, {20, 21, 20}, {1, 2, 3}}, "k")};
}

json demo_spec() {
  return {{"left", {{"path", "left.csv"}, {"key", "k"}, {"group", "g"}}},
          {"right", {{"path", "right.csv"}, {"key", "k"}, {"group", "g"}}},
          {"join", "pkpk"},
          {"aggs", json::array({{{"agg", "sum"}, {"side", 0}, {"column", "v"}},
                                {{"agg", "count"}},
                                {{"agg", "max"}, {"side", 1}, {"column", "v"}}})},
          {"level", 2},
          {"protocol", "auto"},
          {"views", "views"}};
}

int cmd_demo(const Flags& f, std::ostream& out) {
  const auto tables = demo_tables();
  SessionConfig cfg;
  if (f.seed0) cfg.seed0 = *f.seed0;
  if (f.seed1) cfg.seed1 = *f.seed1;
  if (f.seed_dealer) cfg.seed_dealer = *f.seed_dealer;

  if (!f.out.empty()) {
    const fs::path dir(f.out);
    fs::create_directories(dir);
    write_table(tables[0], dir / "left.csv");
    write_table(tables[1], dir / "right.csv");
    std::ofstream(dir / "spec.json") << demo_spec().dump(2) << "\n";
    out << "wrote " << (dir / "spec.json").string() << "\n";
  }

  const char* names[] = {"psiV", "pidV", "secV"};
  std::optional<PkPkView> secv[2];
  for (int level = 0; level <= 2; ++level) {
    auto run = run_protocol(cfg, [&](Party& p) {
      return gen_pkpk(p, level_from_int(level), tables[p.id()]);
    });
    out << fmt::format("level {} ({}): n_e={}  {}\n", level, names[level],
                       run.out[0].size(), run.transcript.summary());
    if (level == 2) {
      secv[0] = std::move(run.out[0]);
      secv[1] = std::move(run.out[1]);
    }
  }

  QuerySpec s;
  s.tables[0].group = "g";
  s.tables[1].group = "g";
  s.aggs = {{0, "v", Agg::Sum}, {1, "", Agg::Count}, {1, "v", Agg::Max}};
  const JgaQuery q = make_query(s);
  const GroupResult expected = eval_jga(tables[0], tables[1], q);
  bool all_ok = true;
  for (GaProtocol proto : {GaProtocol::Sorting, GaProtocol::OSorting,
                           GaProtocol::BSorting, GaProtocol::Mix, GaProtocol::Bitmap}) {
    auto run = run_protocol(cfg, [&](Party& p) {
      return run_ga(p, *secv[p.id()], q, proto);
    });
    const bool ok = run.out[1] == expected;
    all_ok = all_ok && ok;
    out << fmt::format("{:<9} {}  verify={}\n", protocol_name(proto),
                       run.transcript.summary(), ok ? "ok" : "mismatch");
  }
  write_result_csv(out, expected, q);
  return all_ok ? kExitOk : kExitMismatch;
}

int cmd_bench(const Flags& f, const std::vector<std::size_t>& sizes,
              const std::vector<std::size_t>& domains,
              const std::vector<std::string>& protocols, const std::string& agg,
              const std::string& format, std::ostream& out) {
  BenchGrid grid;
  if (!sizes.empty()) grid.sizes = sizes;
  if (!domains.empty()) grid.domains = domains;
  if (!protocols.empty()) {
    grid.protocols.clear();
    for (const auto& p : protocols) grid.protocols.push_back(parse_protocol(p));
  }
  grid.agg = parse_agg(agg);
  if (f.seed0) grid.session.seed0 = *f.seed0;
  if (f.seed1) grid.session.seed1 = *f.seed1;
  if (f.seed_dealer) grid.session.seed_dealer = *f.seed_dealer;

  const BenchReport report = run_bench(grid);
  if (format == "csv") {
    write_bench_csv(out, report);
  } else {
    write_bench_markdown(out, report);
  }
  if (!f.out.empty()) {
    std::ofstream file(f.out);
    if (!file) fail(ErrorCode::ParseError, fmt::format("cannot write '{}'", f.out));
    write_bench_csv(file, report);
  }
  return kExitOk;
}

void add_seeds(CLI::App* cmd, Flags& f) {
  cmd->add_option("--seed0", f.seed0, "party 0 PRNG seed");
  cmd->add_option("--seed1", f.seed1, "party 1 PRNG seed");
  cmd->add_option("--seedD", f.seed_dealer, "dealer PRNG seed");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Secure join-group-aggregate over materialized views", "mview"};
  app.require_subcommand(1);
  Flags f;

  auto* genview = app.add_subcommand("genview", "generate both parties' views");
  genview->add_option("spec", f.spec, "query spec (JSON)")->required();
  genview->add_option("--level", f.level, "0=psiV 1=pidV 2=secV");
  genview->add_option("--out", f.out, "output directory for the view files");
  add_seeds(genview, f);

  auto* refresh = app.add_subcommand("refresh", "apply payload updates to stored views");
  refresh->add_option("spec", f.spec, "query spec (JSON)")->required();
  refresh->add_option("--updates0", f.updates[0], "updates CSV for the left table");
  refresh->add_option("--updates1", f.updates[1], "updates CSV for the right table");
  refresh->add_option("--views", f.views, "view directory (overrides the spec)");
  refresh->add_option("--out", f.out, "destination directory (default: in place)");
  add_seeds(refresh, f);

  auto* query = app.add_subcommand("query", "run a grouped aggregation on stored views");
  query->add_option("spec", f.spec, "query spec (JSON)")->required();
  query->add_option("--protocol", f.protocol,
                    "auto, sorting, osorting, bsorting, mix, bitmap, oneside");
  query->add_option("--views", f.views, "view directory (overrides the spec)");
  query->add_flag("--verify", f.verify, "compare against the plaintext evaluator");
  query->add_option("--out", f.out, "result CSV path (default: stdout)");
  query->add_flag("--inject-fault", f.inject_fault)->group("");
  add_seeds(query, f);

  std::vector<std::size_t> sizes, domains;
  std::vector<std::string> protocols;
  std::string agg = "sum", format = "md";
  auto* bench = app.add_subcommand("bench", "communication report over a size grid");
  bench->add_option("--n", sizes, "table sizes");
  bench->add_option("--d", domains, "group domain sizes, run as (d, d)");
  bench->add_option("--protocol", protocols, "GA protocols to run");
  bench->add_option("--agg", agg, "aggregate function");
  bench->add_option("--format", format, "md or csv")->check(CLI::IsMember({"md", "csv"}));
  bench->add_option("--out", f.out, "also write the CSV report here");
  add_seeds(bench, f);

  auto* demo = app.add_subcommand("demo", "worked example on two small tables");
  demo->add_flag("--verify", f.verify, "accepted for symmetry; the demo always verifies");
  demo->add_option("--out", f.out, "write the demo tables and spec here");
  add_seeds(demo, f);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*genview) return cmd_genview(f, out);
    if (*refresh) return cmd_refresh(f, out);
    if (*query) return cmd_query(f, out, err);
    if (*bench) return cmd_bench(f, sizes, domains, protocols, agg, format, out);
    return cmd_demo(f, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace mview::cli
