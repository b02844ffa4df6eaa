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

#include <span>
#include <string_view>
#include <vector>

#include "mview/ga.hpp"
#include "mview/relation.hpp"

namespace mview {

// Inner equi-join on the key columns (foreign keys repeat), grouped by
// (g0, g1); canonical result.
GroupResult eval_jga(const Relation& r0, const Relation& r1, const JgaQuery& q);

// Index of the first row of the run of equal keys containing row i.
std::size_t first_of_group(std::span<const Ring> keys, std::size_t i);

struct PrimitiveArgs {
  std::vector<std::vector<Ring>> vectors;
  std::vector<Ring> params;
};

// Plaintext reference for the oblivious building blocks. Permutations are
// 0-based; gather form y_i = x_{π(i)} unless noted.
//   osn, shuffle, perm   vectors = {π, cols...}      -> permuted cols
//   invp                 vectors = {π, cols...}      -> y_{π(i)} = x_i
//   per_gen              vectors = {bits}            -> destination ranks
//   bit_sort             vectors = bitmaps           -> destination ranks
//   stable_sort          vectors = key limbs (MSB)   -> gather permutation
//   trav                 vectors = {keys..., values}, params = {agg}
//   cpsi                 vectors = {receiver keys, sender keys, payload}
//                                                    -> {e, z}
//   psi                  vectors = {x, y}            -> sorted intersection
//   pid-size             vectors = {x, y}            -> {|x ∪ y|}
// Throws UnknownPrimitive for any other name.
std::vector<std::vector<Ring>> oracle_primitive(std::string_view name,
                                                const PrimitiveArgs& args);

}  // namespace mview
