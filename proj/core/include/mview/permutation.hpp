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

#include <cstddef>
#include <random>
#include <span>
#include <vector>

#include "mview/ring.hpp"

namespace mview {

// Injective map [n] -> [m], stored 0-based. Applying π to X gives
// y_i = x_{π(i)}; targets at or beyond |X| select padding.
class IndexMap {
 public:
  IndexMap() = default;
  IndexMap(std::vector<std::size_t> targets, std::size_t codomain);
  explicit IndexMap(std::vector<std::size_t> targets);  // permutation

  static IndexMap identity(std::size_t n);
  static IndexMap random(std::size_t n, std::mt19937_64& rng);
  static IndexMap from_one_based(std::span<const std::size_t> targets);
  static IndexMap from_one_based(std::span<const std::size_t> targets,
                                 std::size_t codomain);

  std::size_t size() const { return targets_.size(); }
  std::size_t codomain() const { return codomain_; }
  bool empty() const { return targets_.empty(); }
  bool is_permutation() const { return codomain_ == targets_.size(); }
  std::size_t operator()(std::size_t i) const { return targets_[i]; }
  std::size_t operator[](std::size_t i) const { return targets_[i]; }
  const std::vector<std::size_t>& targets() const { return targets_; }
  std::vector<std::size_t> one_based() const;
  std::vector<Ring> as_ring() const;

  IndexMap inverse() const;  // permutations only

  template <class T>
  std::vector<T> apply(std::span<const T> x, const T& pad = T{}) const {
    std::vector<T> y(targets_.size(), pad);
    for (std::size_t i = 0; i < targets_.size(); ++i) {
      if (targets_[i] < x.size()) y[i] = x[targets_[i]];
    }
    return y;
  }
  template <class T>
  std::vector<T> apply(const std::vector<T>& x, const T& pad = T{}) const {
    return apply(std::span<const T>(x), pad);
  }

  bool operator==(const IndexMap&) const = default;

 private:
  std::vector<std::size_t> targets_;
  std::size_t codomain_ = 0;
};

// (a ∘ b)(i) = a(b(i)), so applying the result equals applying a, then b.
IndexMap compose(const IndexMap& a, const IndexMap& b);

// Checks that `values` is a permutation of [n] (0-based) and wraps it.
IndexMap permutation_from_ring(std::span<const Ring> values);

}  // namespace mview
