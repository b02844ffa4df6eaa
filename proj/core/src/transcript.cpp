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
#include "mview/transcript.hpp"

#include <fmt/format.h>

namespace mview {

std::string_view PhaseRecord::label() const {
  std::string_view p = path;
  auto pos = p.rfind('/');
  return pos == std::string_view::npos ? p : p.substr(pos + 1);
}

const PhaseRecord* Transcript::find(std::string_view path) const {
  for (const auto& r : phases) {
    if (r.path == path) return &r;
  }
  return nullptr;
}

namespace {

template <class Get>
std::uint64_t sum_matching(const std::vector<PhaseRecord>& phases,
                           std::string_view label, int depth, Get get) {
  std::uint64_t total = 0;
  for (const auto& r : phases) {
    if (r.label() == label && (depth < 0 || r.depth == depth)) total += get(r);
  }
  return total;
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

}  // namespace

std::uint64_t Transcript::phase_bits(std::string_view label, int depth) const {
  return sum_matching(phases, label, depth,
                      [](const PhaseRecord& r) { return r.bits(); });
}

std::uint64_t Transcript::phase_rounds(std::string_view label,
                                       int depth) const {
  return sum_matching(phases, label, depth,
                      [](const PhaseRecord& r) { return r.rounds; });
}

std::uint64_t Transcript::phase_hybrid_bits(std::string_view label,
                                            int depth) const {
  return sum_matching(phases, label, depth,
                      [](const PhaseRecord& r) { return r.hybrid_bits; });
}

std::vector<std::string> Transcript::labels_at_depth(int depth) const {
  std::vector<std::string> out;
  for (const auto& r : phases) {
    if (r.depth == depth) out.emplace_back(r.label());
  }
  return out;
}

std::vector<std::array<std::uint64_t, 3>> Transcript::shape() const {
  std::vector<std::array<std::uint64_t, 3>> out;
  out.reserve(phases.size());
  for (const auto& r : phases) out.push_back({r.bits(), r.rounds, r.hybrid_bits});
  return out;
}

std::vector<std::uint8_t> Transcript::serialize() const {
  std::vector<std::uint8_t> out;
  put_u64(out, wire_bits_sent[0]);
  put_u64(out, wire_bits_sent[1]);
  put_u64(out, wire_rounds);
  put_u64(out, hybrid_bits);
  put_u64(out, messages);
  put_u64(out, phases.size());
  for (const auto& r : phases) {
    put_u64(out, r.path.size());
    out.insert(out.end(), r.path.begin(), r.path.end());
    put_u64(out, static_cast<std::uint64_t>(r.depth));
    put_u64(out, r.bits_sent[0]);
    put_u64(out, r.bits_sent[1]);
    put_u64(out, r.rounds);
    put_u64(out, r.hybrid_bits);
    put_u64(out, r.messages);
  }
  return out;
}

std::string Transcript::summary() const {
  return fmt::format(
      "wire_bits={} (p0={}, p1={}) wire_rounds={} hybrid_bits={} messages={}",
      wire_bits(), wire_bits_sent[0], wire_bits_sent[1], wire_rounds,
      hybrid_bits, messages);
}

std::string Transcript::table() const {
  std::string out = fmt::format("{:<40} {:>14} {:>8} {:>14}\n", "phase",
                                "wire_bits", "rounds", "hybrid_bits");
  for (const auto& r : phases) {
    std::string name(static_cast<std::size_t>(2 * r.depth), ' ');
    name += r.label();
    out += fmt::format("{:<40} {:>14} {:>8} {:>14}\n", name, r.bits(),
                       r.rounds, r.hybrid_bits);
  }
  out += fmt::format("{:<40} {:>14} {:>8} {:>14}\n", "total", wire_bits(),
                     wire_rounds, hybrid_bits);
  return out;
}

}  // namespace mview
