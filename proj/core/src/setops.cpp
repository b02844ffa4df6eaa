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

#include "mview/setops.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

namespace mview {

namespace {

void require_distinct(std::span<const Ring> keys) {
  std::vector<Ring> k(keys.begin(), keys.end());
  std::sort(k.begin(), k.end());
  if (std::adjacent_find(k.begin(), k.end()) != k.end()) {
    fail(ErrorCode::DuplicatePrimaryKey, "set operation input has duplicate keys");
  }
}

HybridPayload pack(std::vector<std::vector<Ring>> v) {
  HybridPayload h;
  h.vectors = std::move(v);
  return h;
}

}  // namespace

std::vector<Ring> f_psi(Party& p, std::span<const Ring> own_keys) {
  require_distinct(own_keys);
  HybridFn fn = [](const std::array<HybridPayload, 2>& in, std::mt19937_64&) {
    std::set<Ring> a(in[0].vectors[0].begin(), in[0].vectors[0].end());
    std::vector<Ring> both;
    for (Ring y : in[1].vectors[0]) {
      if (a.count(y)) both.push_back(y);
    }
    std::sort(both.begin(), both.end());
    HybridResult r;
    r.out[0] = pack({both});
    r.out[1] = pack({both});
    r.delivered_bits = {both.size() * kRingBits, both.size() * kRingBits};
    return r;
  };
  auto out = p.hybrid("psi", pack({{own_keys.begin(), own_keys.end()}}), fn);
  return out.vectors[0];
}

PidOutput f_pid(Party& p, std::span<const Ring> own_keys) {
  require_distinct(own_keys);
  HybridFn fn = [](const std::array<HybridPayload, 2>& in, std::mt19937_64& rng) {
    std::set<Ring> uni(in[0].vectors[0].begin(), in[0].vectors[0].end());
    uni.insert(in[1].vectors[0].begin(), in[1].vectors[0].end());
    std::unordered_map<Ring, Ring> id;
    std::set<Ring> used;
    for (Ring z : uni) {
      Ring r;
      do {
        r = rng();
      } while (!used.insert(r).second);
      id[z] = r;
    }
    std::vector<Ring> ri(used.begin(), used.end());
    HybridResult res;
    for (int u = 0; u < 2; ++u) {
      std::vector<Ring> ids;
      for (Ring x : in[u].vectors[0]) ids.push_back(id.at(x));
      res.delivered_bits[u] = (ids.size() + ri.size()) * kRingBits;
      res.out[u] = pack({std::move(ids), ri});
    }
    return res;
  };
  auto out = p.hybrid("pid", pack({{own_keys.begin(), own_keys.end()}}), fn);
  PidOutput res;
  for (std::size_t i = 0; i < own_keys.size(); ++i) {
    res.mapping[own_keys[i]] = out.vectors[0][i];
  }
  res.ri_star = std::move(out.vectors[1]);
  return res;
}

CpsiOutput f_cpsi(Party& p, PartyId receiver, std::span<const Ring> keys,
                  std::span<const Ring> payload, bool with_payload) {
  require_distinct(keys);
  HybridPayload input;
  if (p.id() == receiver) {
    input = pack({{keys.begin(), keys.end()}});
  } else {
    if (with_payload && payload.size() != keys.size()) {
      fail(ErrorCode::SizeMismatch, "cpsi payload must align with the key set");
    }
    input = pack({{keys.begin(), keys.end()},
                  with_payload ? std::vector<Ring>(payload.begin(), payload.end())
                               : std::vector<Ring>{}});
  }
  HybridFn fn = [receiver, with_payload](const std::array<HybridPayload, 2>& in,
                                         std::mt19937_64& rng) {
    const auto& xs = in[receiver].vectors[0];
    const auto& ys = in[1 - receiver].vectors[0];
    const auto& ps = in[1 - receiver].vectors[1];
    std::unordered_map<Ring, std::size_t> where;
    for (std::size_t j = 0; j < ys.size(); ++j) where[ys[j]] = j;
    const std::size_t n = xs.size();
    std::vector<Ring> e[2], z[2];
    for (int u = 0; u < 2; ++u) {
      e[u].resize(n);
      if (with_payload) z[u].resize(n);
    }
    for (std::size_t i = 0; i < n; ++i) {
      auto it = where.find(xs[i]);
      const Ring ev = it != where.end() ? 1 : 0;
      const Ring zv = (it != where.end() && with_payload) ? ps[it->second] : 0;
      e[0][i] = rng() & 1;
      e[1][i] = e[0][i] ^ ev;
      if (with_payload) {
        z[0][i] = rng();
        z[1][i] = zv - z[0][i];
      }
    }
    HybridResult r;
    const std::uint64_t bits = n * (1 + (with_payload ? kRingBits : 0));
    for (int u = 0; u < 2; ++u) {
      r.out[u] = pack({std::move(e[u]), std::move(z[u])});
      r.delivered_bits[u] = bits;
    }
    return r;
  };
  auto out = p.hybrid("cpsi", std::move(input), fn);
  CpsiOutput res;
  res.e = SharedVector(Flavor::Binary, 1, p.id(), std::move(out.vectors[0]));
  res.z = SharedVector(Flavor::Arithmetic, kRingBits, p.id(),
                       std::move(out.vectors[1]));
  return res;
}

}  // namespace mview
