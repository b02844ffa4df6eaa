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

#include <stdexcept>
#include <string>
#include <string_view>

namespace mview {

enum class ErrorCode {
  FlavorMismatch,
  WidthMismatch,
  SizeMismatch,
  DealerExhausted,
  ProtocolDesync,
  NotAPermutation,
  PreconditionViolated,
  UnknownPrimitive,
  DuplicatePrimaryKey,
  KeyOutOfRange,
  KeyModified,
  DomainTooLarge,
  Unsupported,
  ParseError,
  ViewStale,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

inline void require(bool cond, ErrorCode code, const char* what) {
  if (!cond) fail(code, what);
}

}  // namespace mview
