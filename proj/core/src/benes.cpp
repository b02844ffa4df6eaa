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
#include "mview/benes.hpp"

#include <bit>

namespace mview {

SwitchProgram::SwitchProgram(const IndexMap& perm) {
  if (!perm.is_permutation()) {
    fail(ErrorCode::NotAPermutation, "switch programs need a permutation");
  }
  n_ = perm.size();
  padded_ = n_ == 0 ? 0 : std::bit_ceil(n_);
  wires_ = padded_;
  std::vector<std::size_t> p(padded_);
  for (std::size_t i = 0; i < padded_; ++i) p[i] = i < n_ ? perm(i) : i;
  std::vector<std::uint32_t> in(padded_);
  for (std::size_t i = 0; i < padded_; ++i) in[i] = static_cast<std::uint32_t>(i);
  outputs_ = route(in, p, false);
  outputs_.resize(n_);
}

SwitchProgram SwitchProgram::topology(std::size_t n) {
  SwitchProgram sp;
  sp.n_ = n;
  sp.padded_ = n == 0 ? 0 : std::bit_ceil(n);
  sp.wires_ = sp.padded_;
  std::vector<std::size_t> p(sp.padded_);
  std::vector<std::uint32_t> in(sp.padded_);
  for (std::size_t i = 0; i < sp.padded_; ++i) {
    p[i] = i;
    in[i] = static_cast<std::uint32_t>(i);
  }
  sp.outputs_ = sp.route(in, p, true);
  sp.outputs_.resize(n);
  return sp;
}

// Looping algorithm: output pairs and input pairs each split across the
// upper and lower half-networks, then recurse on both halves.
std::vector<std::uint32_t> SwitchProgram::route(
    const std::vector<std::uint32_t>& in, const std::vector<std::size_t>& perm,
    bool topology_only) {
  const std::size_t n = in.size();
  if (n <= 1) return in;
  auto fresh = [this] { return static_cast<std::uint32_t>(wires_++); };
  if (n == 2) {
    Switch s{in[0], in[1], fresh(), fresh(), !topology_only && perm[0] == 1};
    switches_.push_back(s);
    return {s.out0, s.out1};
  }
  const std::size_t half = n / 2;
  std::vector<int> out_side(n, 0), in_side(n, 0);
  if (!topology_only) {
    std::vector<std::size_t> inv(n);
    for (std::size_t j = 0; j < n; ++j) inv[perm[j]] = j;
    std::fill(out_side.begin(), out_side.end(), -1);
    for (std::size_t start = 0; start < n; start += 2) {
      if (out_side[start] != -1) continue;
      std::size_t o = start;
      const int side = 0;
      while (true) {
        out_side[o] = side;
        out_side[o ^ 1] = 1 - side;
        const std::size_t s = perm[o];
        in_side[s] = side;
        in_side[s ^ 1] = 1 - side;
        const std::size_t o2 = inv[s ^ 1];
        if (out_side[o2] != -1) break;
        o = o2 ^ 1;
      }
    }
  }
  std::vector<std::uint32_t> upper_in(half), lower_in(half);
  for (std::size_t k = 0; k < half; ++k) {
    Switch s{in[2 * k], in[2 * k + 1], fresh(), fresh(), in_side[2 * k] == 1};
    switches_.push_back(s);
    upper_in[k] = s.out0;
    lower_in[k] = s.out1;
  }
  std::vector<std::size_t> upper_perm(half), lower_perm(half);
  for (std::size_t k = 0; k < half; ++k) {
    const std::size_t up = out_side[2 * k] == 0 ? 2 * k : 2 * k + 1;
    const std::size_t lo = up ^ 1;
    upper_perm[k] = topology_only ? k : perm[up] >> 1;
    lower_perm[k] = topology_only ? k : perm[lo] >> 1;
  }
  const auto upper_out = route(upper_in, upper_perm, topology_only);
  const auto lower_out = route(lower_in, lower_perm, topology_only);
  std::vector<std::uint32_t> out(n);
  for (std::size_t k = 0; k < half; ++k) {
    Switch s{upper_out[k], lower_out[k], fresh(), fresh(), out_side[2 * k] == 1};
    switches_.push_back(s);
    out[2 * k] = s.out0;
    out[2 * k + 1] = s.out1;
  }
  return out;
}

}  // namespace mview
