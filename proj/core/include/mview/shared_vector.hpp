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
#include <span>
#include <vector>

#include "mview/ring.hpp"

namespace mview {

// One party's half of a shared vector. Binary halves always have the bits
// above `width` cleared, which lets comparison circuits treat padding bits
// as equal without extra masking.
class SharedVector {
 public:
  SharedVector() = default;
  SharedVector(Flavor flavor, unsigned width, PartyId owner,
               std::vector<Ring> data);

  static SharedVector zeros(Flavor flavor, unsigned width, PartyId owner,
                            std::size_t n);
  // Party 0 holds the values, party 1 holds zeros.
  static SharedVector constant(Flavor flavor, unsigned width, PartyId owner,
                               std::span<const Ring> values);
  // The owner of the plaintext holds it, the other party holds zeros.
  static SharedVector from_plain(Flavor flavor, unsigned width, PartyId owner,
                                 PartyId holder, std::span<const Ring> values,
                                 std::size_t n);

  Flavor flavor() const { return flavor_; }
  unsigned width() const { return width_; }
  PartyId owner() const { return owner_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  Ring operator[](std::size_t i) const { return data_[i]; }
  Ring& operator[](std::size_t i) { return data_[i]; }
  const std::vector<Ring>& data() const { return data_; }
  std::vector<Ring>& data() { return data_; }
  Ring mask() const { return width_mask(width_); }

  Share at(std::size_t i) const { return {flavor_, width_, owner_, data_[i]}; }

  SharedVector slice(std::size_t begin, std::size_t end) const;
  void append(const SharedVector& other);
  void resize(std::size_t n);  // new entries are shares of zero

 private:
  Flavor flavor_ = Flavor::Arithmetic;
  unsigned width_ = kRingBits;
  PartyId owner_ = 0;
  std::vector<Ring> data_;
};

// Local (non-interactive) operations. All throw on flavor/width/size mismatch.
SharedVector operator+(const SharedVector& a, const SharedVector& b);
SharedVector operator-(const SharedVector& a, const SharedVector& b);
SharedVector operator^(const SharedVector& a, const SharedVector& b);
SharedVector negate(const SharedVector& a);
SharedVector scale(const SharedVector& a, Ring c);
SharedVector add_public(const SharedVector& a, std::span<const Ring> c);
SharedVector add_public(const SharedVector& a, Ring c);
SharedVector xor_public(const SharedVector& a, Ring c);
SharedVector bit_not(const SharedVector& a);
// Binary: shares restricted to the low bit; arithmetic 0/1 values become
// binary bits for free since the low bit of a sum is the XOR of low bits.
SharedVector low_bit(const SharedVector& a);
// Binary 1-bit flag expanded to an all-ones mask of the given width.
SharedVector broadcast_bit(const SharedVector& bit, unsigned width);
SharedVector concat(std::span<const SharedVector> parts);

// Test/oracle helpers combining both halves.
Ring reconstruct_at(const SharedVector& a, const SharedVector& b,
                    std::size_t i);
std::vector<Ring> reconstruct(const SharedVector& a, const SharedVector& b);

void check_same_shape(const SharedVector& a, const SharedVector& b);
void check_same_size(std::span<const SharedVector> cols);

}  // namespace mview
