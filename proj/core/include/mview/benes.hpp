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
#include <cstdint>
#include <vector>

#include "mview/permutation.hpp"

namespace mview {

struct Switch {
  std::uint32_t in0, in1, out0, out1;
  bool cross;  // out0 <- in1 and out1 <- in0
};

// Beneš network routing of a permutation, padded to a power of two with
// fixed points. Wires 0..size-1 are the network inputs; switches are listed
// in evaluation order.
class SwitchProgram {
 public:
  explicit SwitchProgram(const IndexMap& perm);
  // Topology only (all switches straight), used by the party that does not
  // know the permutation.
  static SwitchProgram topology(std::size_t n);

  std::size_t size() const { return n_; }
  std::size_t padded_size() const { return padded_; }
  std::size_t wire_count() const { return wires_; }
  const std::vector<Switch>& switches() const { return switches_; }
  const std::vector<std::uint32_t>& outputs() const { return outputs_; }

  // Plaintext evaluation, y_i = x_{π(i)}.
  template <class T>
  std::vector<T> evaluate(const std::vector<T>& x) const {
    std::vector<T> wire(wires_);
    for (std::size_t i = 0; i < padded_; ++i) wire[i] = i < x.size() ? x[i] : T{};
    for (const auto& s : switches_) {
      wire[s.out0] = s.cross ? wire[s.in1] : wire[s.in0];
      wire[s.out1] = s.cross ? wire[s.in0] : wire[s.in1];
    }
    std::vector<T> y(n_);
    for (std::size_t i = 0; i < n_; ++i) y[i] = wire[outputs_[i]];
    return y;
  }

 private:
  SwitchProgram() = default;
  std::vector<std::uint32_t> route(const std::vector<std::uint32_t>& in,
                                   const std::vector<std::size_t>& perm,
                                   bool topology_only);

  std::size_t n_ = 0;
  std::size_t padded_ = 0;
  std::size_t wires_ = 0;
  std::vector<Switch> switches_;
  std::vector<std::uint32_t> outputs_;
};

}  // namespace mview
