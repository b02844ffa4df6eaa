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


#include "mview/view_io.hpp"

#include <array>
#include <fstream>
#include <istream>
#include <ostream>

#include <fmt/format.h>

namespace mview {

namespace {

constexpr std::array<char, 8> kMagic = {'M', 'V', 'I', 'E', 'W', 'C', 'T', 'R'};

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}

  void u64(std::uint64_t v) {
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out_.write(b, 8);
  }
  void str(const std::string& s) {
    u64(s.size());
    out_.write(s.data(), static_cast<std::streamsize>(s.size()));
  }
  void ring(const std::vector<Ring>& v) {
    u64(v.size());
    for (Ring x : v) u64(x);
  }
  void index_map(const IndexMap& m) {
    u64(m.codomain());
    u64(m.size());
    for (std::size_t t : m.targets()) u64(t);
  }
  void shares(const SharedVector& s) {
    u64(static_cast<std::uint64_t>(s.flavor()));
    u64(s.width());
    u64(static_cast<std::uint64_t>(s.owner()));
    ring(s.data());
  }
  void relation(const Relation& r) {
    str(r.name);
    u64(static_cast<std::uint64_t>(r.kind));
    u64(r.key);
    u64(r.columns.size());
    for (std::size_t c = 0; c < r.columns.size(); ++c) {
      str(r.columns[c]);
      ring(r.data[c]);
    }
  }

 private:
  std::ostream& out_;
};

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  std::uint64_t u64() {
    unsigned char b[8];
    if (!in_.read(reinterpret_cast<char*>(b), 8)) {
      fail(ErrorCode::ParseError, "truncated view container");
    }
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t{b[i]} << (8 * i);
    return v;
  }
  std::size_t count() {
    const auto n = u64();
    if (n > (std::uint64_t{1} << 40)) fail(ErrorCode::ParseError, "corrupt length");
    return static_cast<std::size_t>(n);
  }
  std::string str() {
    std::string s(count(), '\0');
    if (!in_.read(s.data(), static_cast<std::streamsize>(s.size()))) {
      fail(ErrorCode::ParseError, "truncated view container");
    }
    return s;
  }
  std::vector<Ring> ring() {
    std::vector<Ring> v(count());
    for (auto& x : v) x = u64();
    return v;
  }
  IndexMap index_map() {
    const std::size_t codomain = count();
    std::vector<std::size_t> t(count());
    for (auto& x : t) x = static_cast<std::size_t>(u64());
    return IndexMap(std::move(t), codomain);
  }
  SharedVector shares() {
    const auto flavor = static_cast<Flavor>(u64());
    const auto width = static_cast<unsigned>(u64());
    const auto owner = static_cast<PartyId>(u64());
    return SharedVector(flavor, width, owner, ring());
  }
  Relation relation() {
    Relation r;
    r.name = str();
    r.kind = static_cast<KeyKind>(u64());
    r.key = count();
    const std::size_t cols = count();
    for (std::size_t c = 0; c < cols; ++c) {
      r.columns.push_back(str());
      r.data.push_back(ring());
    }
    if (cols > 0 && r.key >= cols) fail(ErrorCode::ParseError, "bad key column");
    return r;
  }

 private:
  std::istream& in_;
};

}  // namespace

void write_view(std::ostream& out, const StoredView& view) {
  out.write(kMagic.data(), kMagic.size());
  Writer w(out);
  w.u64(kViewFormatVersion);
  if (const auto* v = std::get_if<PkPkView>(&view)) {
    w.u64(0);
    w.u64(static_cast<std::uint64_t>(v->party));
    w.u64(static_cast<std::uint64_t>(v->level));
    w.u64(v->base_rows);
    w.u64(v->key_hash);
    w.index_map(v->pi);
    w.shares(v->e);
    w.relation(v->j);
  } else {
    const auto& f = std::get<PkFkView>(view);
    w.u64(1);
    w.u64(static_cast<std::uint64_t>(f.party));
    w.u64(static_cast<std::uint64_t>(f.level));
    w.u64(f.base_rows);
    w.u64(f.key_hash);
    w.index_map(f.pi);
    w.index_map(f.sigma);
    w.shares(f.e_step1);
    w.shares(f.e);
    w.u64(f.payload_columns.size());
    for (std::size_t c = 0; c < f.payload_columns.size(); ++c) {
      w.str(f.payload_columns[c]);
      w.shares(f.j0[c]);
    }
    w.relation(f.j1);
  }
  if (!out) fail(ErrorCode::ParseError, "failed to write view container");
}

StoredView read_view(std::istream& in) {
  std::array<char, 8> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    fail(ErrorCode::ParseError, "not a view container");
  }
  Reader r(in);
  const auto version = r.u64();
  if (version != kViewFormatVersion) {
    fail(ErrorCode::ParseError, fmt::format("unsupported view format version {}", version));
  }
  const auto kind = r.u64();
  if (kind == 0) {
    PkPkView v;
    v.party = static_cast<PartyId>(r.u64());
    v.level = level_from_int(static_cast<int>(r.u64()));
    v.base_rows = r.count();
    v.key_hash = r.u64();
    v.pi = r.index_map();
    v.e = r.shares();
    v.j = r.relation();
    return v;
  }
  if (kind != 1) fail(ErrorCode::ParseError, "unknown view kind");
  PkFkView f;
  f.party = static_cast<PartyId>(r.u64());
  f.level = level_from_int(static_cast<int>(r.u64()));
  f.base_rows = r.count();
  f.key_hash = r.u64();
  f.pi = r.index_map();
  f.sigma = r.index_map();
  f.e_step1 = r.shares();
  f.e = r.shares();
  const std::size_t cols = r.count();
  for (std::size_t c = 0; c < cols; ++c) {
    f.payload_columns.push_back(r.str());
    f.j0.push_back(r.shares());
  }
  f.j1 = r.relation();
  return f;
}

void save_view(const std::string& path, const StoredView& view) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::ParseError, fmt::format("cannot write '{}'", path));
  write_view(out, view);
}

StoredView load_view(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::ParseError, fmt::format("cannot open '{}'", path));
  return read_view(in);
}

void check_fresh(const StoredView& view, const Relation& base) {
  const auto [hash, rows] = std::visit(
      [](const auto& v) { return std::pair{v.key_hash, v.base_rows}; }, view);
  if (hash != key_hash(base) || rows != base.rows()) {
    fail(ErrorCode::ViewStale,
         fmt::format("table '{}' no longer matches its view", base.name));
  }
}

}  // namespace mview
