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

#include "mview/relation.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

namespace mview {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    cells.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

Ring parse_cell(const std::string& s, std::size_t line) {
  Ring v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) {
    fail(ErrorCode::ParseError,
         fmt::format("line {}: '{}' is not an unsigned 64-bit integer", line, s));
  }
  return v;
}

}  // namespace

std::size_t Relation::column_index(std::string_view col) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == col) return i;
  }
  fail(ErrorCode::ParseError,
       fmt::format("table '{}' has no column '{}'", name, col));
}

bool Relation::has_column(std::string_view col) const {
  return std::find(columns.begin(), columns.end(), col) != columns.end();
}

const std::vector<Ring>& Relation::column(std::string_view col) const {
  return data[column_index(col)];
}

std::vector<Ring> Relation::row(std::size_t i) const {
  std::vector<Ring> t(columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) t[c] = data[c][i];
  return t;
}

void Relation::add_column(std::string col, std::vector<Ring> values) {
  if (!data.empty() && values.size() != rows()) {
    fail(ErrorCode::SizeMismatch, "new column length differs from the table");
  }
  columns.push_back(std::move(col));
  data.push_back(std::move(values));
}

void Relation::validate() const {
  if (columns.size() != data.size() || key >= columns.size()) {
    fail(ErrorCode::SizeMismatch, fmt::format("table '{}' is malformed", name));
  }
  for (const auto& c : data) {
    if (c.size() != rows()) {
      fail(ErrorCode::SizeMismatch, fmt::format("table '{}' is ragged", name));
    }
  }
  if (kind == KeyKind::PrimaryKey) {
    std::vector<Ring> k = keys();
    std::sort(k.begin(), k.end());
    auto dup = std::adjacent_find(k.begin(), k.end());
    if (dup != k.end()) {
      fail(ErrorCode::DuplicatePrimaryKey,
           fmt::format("table '{}' repeats primary key {}", name, *dup));
    }
  }
}

Relation make_relation(std::string name, std::vector<std::string> columns,
                       std::vector<std::vector<Ring>> data,
                       std::string_view key_column, KeyKind kind) {
  Relation r;
  r.name = std::move(name);
  r.columns = std::move(columns);
  r.data = std::move(data);
  r.kind = kind;
  r.key = r.column_index(key_column);
  r.validate();
  return r;
}

Relation parse_csv(std::istream& in, std::string_view key_column, KeyKind kind,
                   std::string name) {
  std::string line;
  if (!std::getline(in, line)) fail(ErrorCode::ParseError, "missing CSV header");
  auto header = split_line(line);
  std::vector<std::vector<Ring>> data(header.size());
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto cells = split_line(line);
    if (cells.size() != header.size()) {
      fail(ErrorCode::ParseError,
           fmt::format("line {}: expected {} cells, got {}", lineno,
                       header.size(), cells.size()));
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      data[c].push_back(parse_cell(cells[c], lineno));
    }
  }
  return make_relation(std::move(name), std::move(header), std::move(data),
                       key_column, kind);
}

Relation read_csv(const std::string& path, std::string_view key_column,
                  KeyKind kind) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, fmt::format("cannot open '{}'", path));
  return parse_csv(in, key_column, kind, path);
}

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<Ring>>& columns) {
  for (std::size_t c = 0; c < header.size(); ++c) {
    out << (c ? "," : "") << header[c];
  }
  out << '\n';
  const std::size_t n = columns.empty() ? 0 : columns.front().size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      out << (c ? "," : "") << columns[c][i];
    }
    out << '\n';
  }
}

std::uint64_t key_hash(const Relation& r) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (Ring k : r.keys()) {
    for (int b = 0; b < 8; ++b) {
      h ^= (k >> (8 * b)) & 0xff;
      h *= 0x100000001b3ull;
    }
  }
  return h;
}

void apply_updates(Relation& r, const UpdateSet& updates) {
  for (const auto& u : updates) {
    if (u.row >= r.rows() || u.tuple.size() != r.width()) {
      fail(ErrorCode::SizeMismatch,
           fmt::format("update for row {} does not fit table '{}'", u.row, r.name));
    }
    if (u.tuple[r.key] != r.data[r.key][u.row]) {
      fail(ErrorCode::KeyModified,
           fmt::format("update for row {} changes the join key", u.row));
    }
  }
  for (const auto& u : updates) {
    for (std::size_t c = 0; c < r.width(); ++c) r.data[c][u.row] = u.tuple[c];
  }
}

UpdateSet parse_updates(std::istream& in, const Relation& base) {
  Relation raw = parse_csv(in, "row", KeyKind::ForeignKey, "updates");
  std::vector<std::size_t> at(base.width());
  for (std::size_t c = 0; c < base.width(); ++c) {
    at[c] = raw.column_index(base.columns[c]);
  }
  UpdateSet out;
  for (std::size_t i = 0; i < raw.rows(); ++i) {
    RowUpdate u;
    u.row = raw.keys()[i];
    for (std::size_t c = 0; c < base.width(); ++c) u.tuple.push_back(raw.data[at[c]][i]);
    out.push_back(std::move(u));
  }
  return out;
}

}  // namespace mview
