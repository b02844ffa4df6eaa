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

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mview {

// Counters attributed to one phase scope. Bits and rounds are inclusive of
// nested scopes; `path` joins enclosing labels with '/'.
struct PhaseRecord {
  std::string path;
  int depth = 0;
  std::array<std::uint64_t, 2> bits_sent{};
  std::uint64_t rounds = 0;
  std::uint64_t hybrid_bits = 0;
  std::uint64_t messages = 0;

  std::uint64_t bits() const { return bits_sent[0] + bits_sent[1]; }
  std::string_view label() const;
  bool operator==(const PhaseRecord&) const = default;
};

struct Transcript {
  std::array<std::uint64_t, 2> wire_bits_sent{};
  std::uint64_t wire_rounds = 0;
  std::uint64_t hybrid_bits = 0;
  std::uint64_t messages = 0;
  std::vector<PhaseRecord> phases;

  std::uint64_t wire_bits() const {
    return wire_bits_sent[0] + wire_bits_sent[1];
  }
  // First record whose path equals `path`, or nullptr.
  const PhaseRecord* find(std::string_view path) const;
  // Sum of bits over every record whose last label equals `label` at the
  // given depth (-1 matches any depth). Absent phases contribute 0.
  std::uint64_t phase_bits(std::string_view label, int depth = -1) const;
  std::uint64_t phase_rounds(std::string_view label, int depth = -1) const;
  std::uint64_t phase_hybrid_bits(std::string_view label, int depth = -1) const;
  std::vector<std::string> labels_at_depth(int depth) const;

  // Per-phase (bits, rounds) shape, used for leakage-shape comparisons.
  std::vector<std::array<std::uint64_t, 3>> shape() const;

  std::vector<std::uint8_t> serialize() const;
  std::string summary() const;
  std::string table() const;

  bool operator==(const Transcript&) const = default;
};

}  // namespace mview
