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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "mview/ring.hpp"

namespace mview {

enum class KeyKind { PrimaryKey, ForeignKey };

// A column-major table of 64-bit cells with one designated join-key column.
struct Relation {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Ring>> data;
  std::size_t key = 0;
  KeyKind kind = KeyKind::PrimaryKey;

  std::size_t rows() const { return data.empty() ? 0 : data.front().size(); }
  std::size_t width() const { return columns.size(); }
  std::size_t column_index(std::string_view col) const;  // ParseError if absent
  bool has_column(std::string_view col) const;
  const std::vector<Ring>& column(std::string_view col) const;
  const std::vector<Ring>& keys() const { return data.at(key); }
  std::vector<Ring> row(std::size_t i) const;

  void add_column(std::string col, std::vector<Ring> values);
  // Checks the shape and, for primary keys, distinctness.
  void validate() const;
};

Relation make_relation(std::string name, std::vector<std::string> columns,
                       std::vector<std::vector<Ring>> data,
                       std::string_view key_column,
                       KeyKind kind = KeyKind::PrimaryKey);

Relation parse_csv(std::istream& in, std::string_view key_column,
                   KeyKind kind = KeyKind::PrimaryKey, std::string name = {});
Relation read_csv(const std::string& path, std::string_view key_column,
                  KeyKind kind = KeyKind::PrimaryKey);
void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<Ring>>& columns);

// FNV-1a over the little-endian bytes of the key column.
std::uint64_t key_hash(const Relation& r);

// Payload update of one base-table row; the tuple covers every column.
struct RowUpdate {
  std::size_t row = 0;
  std::vector<Ring> tuple;
};
using UpdateSet = std::vector<RowUpdate>;

// Applies updates in order. Fails with KeyModified when a tuple changes the
// join key and with SizeMismatch on a bad row or tuple width.
void apply_updates(Relation& r, const UpdateSet& updates);

// Reads an update CSV: a "row" column (0-based) followed by the table's
// columns in any order.
UpdateSet parse_updates(std::istream& in, const Relation& base);

}  // namespace mview
