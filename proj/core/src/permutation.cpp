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
#include "mview/permutation.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

namespace mview {

IndexMap::IndexMap(std::vector<std::size_t> targets, std::size_t codomain)
    : targets_(std::move(targets)), codomain_(codomain) {
  if (codomain_ < targets_.size()) {
    fail(ErrorCode::NotAPermutation, "codomain smaller than domain");
  }
  std::vector<bool> seen(codomain_, false);
  for (std::size_t t : targets_) {
    if (t >= codomain_ || seen[t]) {
      fail(ErrorCode::NotAPermutation,
           fmt::format("target {} repeated or outside [0, {})", t, codomain_));
    }
    seen[t] = true;
  }
}

IndexMap::IndexMap(std::vector<std::size_t> targets)
    : IndexMap(targets, targets.size()) {}

IndexMap IndexMap::identity(std::size_t n) {
  std::vector<std::size_t> t(n);
  std::iota(t.begin(), t.end(), std::size_t{0});
  IndexMap m;
  m.targets_ = std::move(t);
  m.codomain_ = n;
  return m;
}

IndexMap IndexMap::random(std::size_t n, std::mt19937_64& rng) {
  IndexMap m = identity(n);
  // Fisher-Yates with explicit draws keeps runs reproducible across
  // standard library implementations.
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = rng() % i;
    std::swap(m.targets_[i - 1], m.targets_[j]);
  }
  return m;
}

IndexMap IndexMap::from_one_based(std::span<const std::size_t> targets) {
  return from_one_based(targets, targets.size());
}

IndexMap IndexMap::from_one_based(std::span<const std::size_t> targets,
                                  std::size_t codomain) {
  std::vector<std::size_t> t(targets.size());
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] == 0) fail(ErrorCode::NotAPermutation, "0 in 1-based map");
    t[i] = targets[i] - 1;
  }
  return IndexMap(std::move(t), codomain);
}

std::vector<std::size_t> IndexMap::one_based() const {
  std::vector<std::size_t> out(targets_.size());
  for (std::size_t i = 0; i < targets_.size(); ++i) out[i] = targets_[i] + 1;
  return out;
}

std::vector<Ring> IndexMap::as_ring() const {
  return std::vector<Ring>(targets_.begin(), targets_.end());
}

IndexMap IndexMap::inverse() const {
  if (!is_permutation()) {
    fail(ErrorCode::NotAPermutation, "inverse of a non-surjective map");
  }
  std::vector<std::size_t> inv(targets_.size());
  for (std::size_t i = 0; i < targets_.size(); ++i) inv[targets_[i]] = i;
  IndexMap m;
  m.targets_ = std::move(inv);
  m.codomain_ = codomain_;
  return m;
}

IndexMap compose(const IndexMap& a, const IndexMap& b) {
  if (b.codomain() > a.size()) {
    fail(ErrorCode::SizeMismatch, "compose: inner codomain exceeds domain");
  }
  std::vector<std::size_t> t(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) t[i] = a(b(i));
  return IndexMap(std::move(t), a.codomain());
}

IndexMap permutation_from_ring(std::span<const Ring> values) {
  std::vector<std::size_t> t(values.begin(), values.end());
  for (Ring v : values) {
    if (v >= values.size()) {
      fail(ErrorCode::NotAPermutation,
           fmt::format("value {} outside [0, {})", v, values.size()));
    }
  }
  return IndexMap(std::move(t));
}

}  // namespace mview
