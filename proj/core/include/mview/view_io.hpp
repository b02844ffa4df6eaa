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

#include <iosfwd>
#include <string>
#include <variant>

#include "mview/view.hpp"

namespace mview {

// Versioned binary container holding one party's view.
using StoredView = std::variant<PkPkView, PkFkView>;

inline constexpr std::uint32_t kViewFormatVersion = 1;

void write_view(std::ostream& out, const StoredView& view);
StoredView read_view(std::istream& in);

void save_view(const std::string& path, const StoredView& view);
StoredView load_view(const std::string& path);

// ViewStale unless the table's key column hashes to the recorded value.
void check_fresh(const StoredView& view, const Relation& base);

}  // namespace mview
