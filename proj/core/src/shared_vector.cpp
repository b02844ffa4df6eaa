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
#include "mview/shared_vector.hpp"

#include <fmt/format.h>

namespace mview {

SharedVector::SharedVector(Flavor flavor, unsigned width, PartyId owner,
                           std::vector<Ring> data)
    : flavor_(flavor), width_(width), owner_(owner), data_(std::move(data)) {
  if (width_ == 0 || width_ > kRingBits) {
    fail(ErrorCode::WidthMismatch, fmt::format("width {} out of range", width));
  }
  if (flavor_ == Flavor::Binary && width_ < kRingBits) {
    const Ring m = width_mask(width_);
    for (auto& v : data_) v &= m;
  }
}

SharedVector SharedVector::zeros(Flavor flavor, unsigned width, PartyId owner,
                                 std::size_t n) {
  return SharedVector(flavor, width, owner, std::vector<Ring>(n, 0));
}

SharedVector SharedVector::constant(Flavor flavor, unsigned width,
                                    PartyId owner,
                                    std::span<const Ring> values) {
  return from_plain(flavor, width, owner, 0, values, values.size());
}

SharedVector SharedVector::from_plain(Flavor flavor, unsigned width,
                                      PartyId owner, PartyId holder,
                                      std::span<const Ring> values,
                                      std::size_t n) {
  if (owner != holder) return zeros(flavor, width, owner, n);
  if (values.size() != n) {
    fail(ErrorCode::SizeMismatch,
         fmt::format("plain input has {} values, expected {}", values.size(),
                     n));
  }
  return SharedVector(flavor, width, owner,
                      std::vector<Ring>(values.begin(), values.end()));
}

SharedVector SharedVector::slice(std::size_t begin, std::size_t end) const {
  if (begin > end || end > data_.size()) {
    fail(ErrorCode::SizeMismatch, "slice out of range");
  }
  return SharedVector(flavor_, width_, owner_,
                      std::vector<Ring>(data_.begin() + begin,
                                        data_.begin() + end));
}

void SharedVector::append(const SharedVector& other) {
  if (other.flavor_ != flavor_) {
    fail(ErrorCode::FlavorMismatch, "append across flavors");
  }
  if (other.width_ != width_) fail(ErrorCode::WidthMismatch, "append widths");
  data_.insert(data_.end(), other.data_.begin(), other.data_.end());
}

void SharedVector::resize(std::size_t n) { data_.resize(n, 0); }

Ring reconstruct_at(const SharedVector& a, const SharedVector& b,
                    std::size_t i) {
  return reconstruct(a.at(i), b.at(i));
}

std::vector<Ring> reconstruct(const SharedVector& a, const SharedVector& b) {
  check_same_shape(a, b);
  std::vector<Ring> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = reconstruct_at(a, b, i);
  return out;
}

void check_same_shape(const SharedVector& a, const SharedVector& b) {
  if (a.flavor() != b.flavor()) {
    fail(ErrorCode::FlavorMismatch, "operands carry different flavors");
  }
  if (a.width() != b.width()) {
    fail(ErrorCode::WidthMismatch,
         fmt::format("operand widths {} and {}", a.width(), b.width()));
  }
  if (a.size() != b.size()) {
    fail(ErrorCode::SizeMismatch,
         fmt::format("operand lengths {} and {}", a.size(), b.size()));
  }
}

void check_same_size(std::span<const SharedVector> cols) {
  for (const auto& c : cols) {
    if (c.size() != cols.front().size()) {
      fail(ErrorCode::SizeMismatch, "columns differ in length");
    }
  }
}

namespace {

template <class Op>
SharedVector zip(const SharedVector& a, const SharedVector& b, Op op) {
  check_same_shape(a, b);
  std::vector<Ring> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = op(a[i], b[i]);
  return SharedVector(a.flavor(), a.width(), a.owner(), std::move(out));
}

}  // namespace

SharedVector operator+(const SharedVector& a, const SharedVector& b) {
  if (a.flavor() == Flavor::Binary) return a ^ b;
  return zip(a, b, [](Ring x, Ring y) { return x + y; });
}

SharedVector operator-(const SharedVector& a, const SharedVector& b) {
  if (a.flavor() == Flavor::Binary) return a ^ b;
  return zip(a, b, [](Ring x, Ring y) { return x - y; });
}

SharedVector operator^(const SharedVector& a, const SharedVector& b) {
  if (a.flavor() != Flavor::Binary) {
    fail(ErrorCode::FlavorMismatch, "xor needs binary shares");
  }
  return zip(a, b, [](Ring x, Ring y) { return x ^ y; });
}

SharedVector negate(const SharedVector& a) {
  if (a.flavor() == Flavor::Binary) return a;
  std::vector<Ring> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = Ring{0} - a[i];
  return SharedVector(a.flavor(), a.width(), a.owner(), std::move(out));
}

SharedVector scale(const SharedVector& a, Ring c) {
  if (a.flavor() != Flavor::Arithmetic) {
    fail(ErrorCode::FlavorMismatch, "scale needs arithmetic shares");
  }
  std::vector<Ring> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * c;
  return SharedVector(a.flavor(), a.width(), a.owner(), std::move(out));
}

SharedVector add_public(const SharedVector& a, std::span<const Ring> c) {
  if (c.size() != a.size()) fail(ErrorCode::SizeMismatch, "public operand");
  SharedVector out = a;
  if (a.owner() != 0) return out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.flavor() == Flavor::Arithmetic) {
      out[i] += c[i];
    } else {
      out[i] = (out[i] ^ c[i]) & a.mask();
    }
  }
  return out;
}

SharedVector add_public(const SharedVector& a, Ring c) {
  std::vector<Ring> cs(a.size(), c);
  return add_public(a, cs);
}

SharedVector xor_public(const SharedVector& a, Ring c) {
  if (a.flavor() != Flavor::Binary) {
    fail(ErrorCode::FlavorMismatch, "xor needs binary shares");
  }
  return add_public(a, c);
}

SharedVector bit_not(const SharedVector& a) {
  return xor_public(a, a.mask());
}

SharedVector low_bit(const SharedVector& a) {
  std::vector<Ring> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] & 1;
  return SharedVector(Flavor::Binary, 1, a.owner(), std::move(out));
}

SharedVector broadcast_bit(const SharedVector& bit, unsigned width) {
  if (bit.flavor() != Flavor::Binary || bit.width() != 1) {
    fail(ErrorCode::WidthMismatch, "broadcast needs a 1-bit binary share");
  }
  const Ring m = width_mask(width);
  std::vector<Ring> out(bit.size());
  for (std::size_t i = 0; i < bit.size(); ++i) out[i] = (Ring{0} - bit[i]) & m;
  return SharedVector(Flavor::Binary, width, bit.owner(), std::move(out));
}

SharedVector concat(std::span<const SharedVector> parts) {
  if (parts.empty()) return {};
  SharedVector out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out.append(parts[i]);
  return out;
}

}  // namespace mview
