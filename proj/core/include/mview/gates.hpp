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
#include <utility>
#include <vector>

#include "mview/session.hpp"
#include "mview/shared_vector.hpp"

namespace mview {

// Reveals to `to`; the other party gets an empty vector.
std::vector<Ring> reveal_to(Party& p, const SharedVector& x, PartyId to);
std::vector<Ring> open(Party& p, const SharedVector& x);

// Beaver products. Batched variants share one round across all pairs.
SharedVector mul(Party& p, const SharedVector& x, const SharedVector& y);
SharedVector and_gate(Party& p, const SharedVector& x, const SharedVector& y);
std::vector<SharedVector> mul_batch(
    Party& p, std::span<const std::pair<SharedVector, SharedVector>> pairs);
std::vector<SharedVector> and_batch(
    Party& p, std::span<const std::pair<SharedVector, SharedVector>> pairs);
SharedVector or_gate(Party& p, const SharedVector& x, const SharedVector& y);

// 1-bit binary -> arithmetic 0/1.
SharedVector b2a(Party& p, const SharedVector& bit);
// w-bit binary -> arithmetic value.
SharedVector bin_to_arith(Party& p, const SharedVector& x);
// Arithmetic -> w-bit binary via a parallel-prefix adder.
SharedVector arith_to_bin(Party& p, const SharedVector& x,
                          unsigned width = kRingBits);
SharedVector convert(Party& p, const SharedVector& x, Flavor target,
                     unsigned width = kRingBits);

// f ? x : y, where f is a 1-bit binary share.
SharedVector mux(Party& p, const SharedVector& f, const SharedVector& x,
                 const SharedVector& y);
// Column-wise mux sharing the flag conversion across all columns.
std::vector<SharedVector> mux_columns(Party& p, const SharedVector& f,
                                      std::span<const SharedVector> xs,
                                      std::span<const SharedVector> ys);
// Replaces rows with f = 0 by `fill` (a public constant).
std::vector<SharedVector> mask_columns(Party& p, const SharedVector& f,
                                       std::span<const SharedVector> xs,
                                       std::span<const Ring> fill);

// 1-bit binary equality indicator. Arithmetic inputs are compared without
// conversion by testing x0 - y0 == y1 - x1 bitwise.
SharedVector eq(Party& p, const SharedVector& x, const SharedVector& y);
// AND of field-wise equality, i.e. equality of the concatenated keys.
SharedVector eq_fields(Party& p, std::span<const SharedVector> xs,
                       std::span<const SharedVector> ys);
// Lexicographic x < y over binary limbs, most significant limb first.
SharedVector less_than(Party& p, std::span<const SharedVector> xs,
                       std::span<const SharedVector> ys);
SharedVector less_than(Party& p, const SharedVector& x, const SharedVector& y);

// f ? x : 0 with f a plaintext bit at `bit_holder` and x a plaintext value
// at the other party, via one random oblivious transfer.
SharedVector asym_mul(Party& p, PartyId bit_holder, std::span<const Ring> bits,
                      std::span<const Ring> values, std::size_t n,
                      Flavor flavor = Flavor::Arithmetic,
                      unsigned width = kRingBits);

}  // namespace mview
