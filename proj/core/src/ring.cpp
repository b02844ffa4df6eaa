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
#include "mview/ring.hpp"

#include <fmt/format.h>

namespace mview {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::FlavorMismatch: return "FlavorMismatch";
    case ErrorCode::WidthMismatch: return "WidthMismatch";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::DealerExhausted: return "DealerExhausted";
    case ErrorCode::ProtocolDesync: return "ProtocolDesync";
    case ErrorCode::NotAPermutation: return "NotAPermutation";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::UnknownPrimitive: return "UnknownPrimitive";
    case ErrorCode::DuplicatePrimaryKey: return "DuplicatePrimaryKey";
    case ErrorCode::KeyOutOfRange: return "KeyOutOfRange";
    case ErrorCode::KeyModified: return "KeyModified";
    case ErrorCode::DomainTooLarge: return "DomainTooLarge";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ViewStale: return "ViewStale";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(fmt::format("{}: {}", to_string(code), what)),
      code_(code) {}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

std::pair<Share, Share> share(Ring x, Flavor flavor, std::mt19937_64& rng,
                              unsigned width) {
  if (width == 0 || width > kRingBits) {
    fail(ErrorCode::WidthMismatch, fmt::format("width {} out of range", width));
  }
  const Ring m = width_mask(width);
  Share s0{flavor, width, 0, 0};
  Share s1{flavor, width, 1, 0};
  if (flavor == Flavor::Arithmetic) {
    s0.value = rng();
    s1.value = x - s0.value;
  } else {
    s0.value = rng() & m;
    s1.value = (x & m) ^ s0.value;
  }
  return {s0, s1};
}

Ring reconstruct(const Share& s0, const Share& s1) {
  if (s0.flavor != s1.flavor) {
    fail(ErrorCode::FlavorMismatch, "share halves carry different flavors");
  }
  if (s0.width != s1.width) {
    fail(ErrorCode::WidthMismatch, "share halves carry different widths");
  }
  if (s0.flavor == Flavor::Arithmetic) return s0.value + s1.value;
  return (s0.value ^ s1.value) & width_mask(s0.width);
}

}  // namespace mview
