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
#include <fmt/format.h>

#include "mview/benes.hpp"
#include "mview/gates.hpp"
#include "mview/oblivious.hpp"

namespace mview {

namespace {

Ring combine(Flavor f, Ring a, Ring b, Ring m) {
  return f == Flavor::Arithmetic ? (a + b) & m : (a ^ b) & m;
}

Ring difference(Flavor f, Ring a, Ring b, Ring m) {
  return f == Flavor::Arithmetic ? (a - b) & m : (a ^ b) & m;
}

std::vector<PlainColumn> as_plain(std::span<const SharedVector> cols) {
  std::vector<PlainColumn> out;
  out.reserve(cols.size());
  for (const auto& c : cols) {
    out.push_back({{c.flavor(), c.width()}, c.data()});
  }
  return out;
}

std::vector<PlainColumn> specs_only(std::span<const PlainColumn> cols) {
  std::vector<PlainColumn> out;
  for (const auto& c : cols) out.push_back({c.spec, {}});
  return out;
}

}  // namespace

// Masked-switch evaluation: the sender masks every wire with fresh randomness
// and, for each switch, offers the two mask corrections (straight, cross)
// through a random OT keyed on the receiver's control bit. The receiver
// walks the network on masked values; the sender keeps the output masks.
std::vector<SharedVector> osn_plain(Party& p, PartyId receiver,
                                    const IndexMap& perm,
                                    std::span<const PlainColumn> cols,
                                    std::size_t n) {
  const PartyId sender = 1 - receiver;
  std::vector<SharedVector> out;
  if (p.id() == receiver && perm.size() != n) {
    fail(ErrorCode::SizeMismatch,
         fmt::format("osn: permutation of {} for {} rows", perm.size(), n));
  }
  if (p.id() == sender) {
    for (const auto& c : cols) {
      if (c.values.size() != n) {
        fail(ErrorCode::SizeMismatch,
             fmt::format("osn: column of {} for {} rows", c.values.size(), n));
      }
    }
  }
  if (n == 0 || cols.empty()) {
    for (const auto& c : cols) {
      out.push_back(SharedVector::zeros(c.spec.flavor, c.spec.width, p.id(), n));
    }
    return out;
  }
  const SwitchProgram prog = p.id() == receiver
                                 ? SwitchProgram(perm)
                                 : SwitchProgram::topology(n);
  const auto& sw = prog.switches();
  const std::size_t ns = sw.size();
  const std::size_t nc = cols.size();
  const std::size_t padded = prog.padded_size();

  std::vector<unsigned> ot_widths;
  for (const auto& c : cols) {
    ot_widths.push_back(c.spec.width);
    ot_widths.push_back(c.spec.width);
  }
  const std::size_t oc = ot_widths.size();
  RandomOt ot = ns > 0 ? p.random_ot(ns, ot_widths, receiver) : RandomOt{};

  if (p.id() == receiver) {
    std::vector<Ring> d(ns);
    for (std::size_t s = 0; s < ns; ++s) {
      d[s] = static_cast<Ring>(sw[s].cross) ^ ot.choice[s];
    }
    if (ns > 0) p.send(d, 1);
    for (std::size_t c = 0; c < nc; ++c) {
      const auto& spec = cols[c].spec;
      const Ring m = width_mask(spec.width);
      auto masked = p.recv(padded, spec.width);
      auto enc = ns > 0 ? p.recv(4 * ns, spec.width) : std::vector<Ring>{};
      std::vector<Ring> wire(prog.wire_count());
      for (std::size_t i = 0; i < padded; ++i) wire[i] = masked[i];
      for (std::size_t s = 0; s < ns; ++s) {
        const std::size_t b = sw[s].cross ? 1 : 0;
        const Ring m0 = difference(spec.flavor, enc[4 * s + 2 * b],
                                   ot.chosen[s * oc + 2 * c], m);
        const Ring m1 = difference(spec.flavor, enc[4 * s + 2 * b + 1],
                                   ot.chosen[s * oc + 2 * c + 1], m);
        const Ring src0 = sw[s].cross ? wire[sw[s].in1] : wire[sw[s].in0];
        const Ring src1 = sw[s].cross ? wire[sw[s].in0] : wire[sw[s].in1];
        wire[sw[s].out0] = combine(spec.flavor, src0, m0, m);
        wire[sw[s].out1] = combine(spec.flavor, src1, m1, m);
      }
      std::vector<Ring> y(n);
      for (std::size_t i = 0; i < n; ++i) y[i] = wire[prog.outputs()[i]];
      out.emplace_back(spec.flavor, spec.width, p.id(), std::move(y));
    }
    return out;
  }

  auto d = ns > 0 ? p.recv(ns, 1) : std::vector<Ring>{};
  for (std::size_t c = 0; c < nc; ++c) {
    const auto& spec = cols[c].spec;
    const Ring m = width_mask(spec.width);
    std::vector<Ring> r(prog.wire_count());
    for (auto& v : r) v = p.rng()() & m;
    std::vector<Ring> masked(padded);
    for (std::size_t i = 0; i < padded; ++i) {
      const Ring x = i < n ? cols[c].values[i] : 0;
      masked[i] = combine(spec.flavor, x, r[i], m);
    }
    std::vector<Ring> enc(4 * ns);
    for (std::size_t s = 0; s < ns; ++s) {
      const Switch& q = sw[s];
      // corrections[b][t]: mask fix-up for output t when the switch is in
      // position b (0 straight, 1 cross)
      const Ring corr[2][2] = {
          {difference(spec.flavor, r[q.out0], r[q.in0], m),
           difference(spec.flavor, r[q.out1], r[q.in1], m)},
          {difference(spec.flavor, r[q.out0], r[q.in1], m),
           difference(spec.flavor, r[q.out1], r[q.in0], m)}};
      for (std::size_t b = 0; b < 2; ++b) {
        const bool key1 = (b ^ d[s]) != 0;
        for (std::size_t t = 0; t < 2; ++t) {
          const std::size_t k = s * oc + 2 * c + t;
          const Ring key = key1 ? ot.k1[k] : ot.k0[k];
          enc[4 * s + 2 * b + t] = combine(spec.flavor, corr[b][t], key, m);
        }
      }
    }
    p.send(masked, spec.width);
    if (ns > 0) p.send(enc, spec.width);
    std::vector<Ring> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      const Ring rm = r[prog.outputs()[i]];
      y[i] = spec.flavor == Flavor::Arithmetic ? (Ring{0} - rm) & m : rm;
    }
    out.emplace_back(spec.flavor, spec.width, p.id(), std::move(y));
  }
  return out;
}

std::vector<SharedVector> osn_shared(Party& p, PartyId receiver,
                                     const IndexMap& perm,
                                     std::span<const SharedVector> cols) {
  check_same_size(cols);
  const std::size_t n = cols.empty() ? 0 : cols.front().size();
  std::vector<PlainColumn> plain =
      p.id() == receiver ? specs_only(as_plain(cols)) : as_plain(cols);
  auto out = osn_plain(p, receiver, perm, plain, n);
  if (p.id() == receiver) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      const auto moved = perm.apply(cols[c].data());
      out[c] = out[c] + SharedVector(cols[c].flavor(), cols[c].width(), p.id(),
                                     moved);
    }
  }
  return out;
}

ShuffleResult shuffle(Party& p, std::span<const SharedVector> cols,
                      const std::optional<IndexMap>& fixed) {
  check_same_size(cols);
  const std::size_t n = cols.empty() ? 0 : cols.front().size();
  ShuffleResult res;
  res.local = fixed ? *fixed : IndexMap::random(n, p.rng());
  auto first = osn_shared(p, 0, res.local, cols);
  res.cols = osn_shared(p, 1, res.local, first);
  return res;
}

namespace {

std::size_t rows_of(std::span<const SharedVector> cols, const SharedVector& pi) {
  for (const auto& c : cols) {
    if (c.size() != pi.size()) {
      fail(ErrorCode::SizeMismatch, "permutation and columns differ in length");
    }
  }
  return pi.size();
}

std::vector<SharedVector> apply_local(const IndexMap& m,
                                      std::span<const SharedVector> cols) {
  std::vector<SharedVector> out;
  for (const auto& c : cols) {
    out.emplace_back(c.flavor(), c.width(), c.owner(), m.apply(c.data()));
  }
  return out;
}

SharedVector arith_perm(const SharedVector& pi, Party& p) {
  return pi.flavor() == Flavor::Arithmetic ? pi : bin_to_arith(p, pi);
}

}  // namespace

std::vector<SharedVector> invp_shared(Party& p, const SharedVector& pi,
                                      std::span<const SharedVector> cols) {
  rows_of(cols, pi);
  std::vector<SharedVector> joint{arith_perm(pi, p)};
  joint.insert(joint.end(), cols.begin(), cols.end());
  auto sh = shuffle(p, joint);
  // σ = φ·π is uniformly random, so opening it leaks nothing.
  const IndexMap sigma = permutation_from_ring(open(p, sh.cols[0]));
  const IndexMap inv = sigma.inverse();
  return apply_local(inv, std::span<const SharedVector>(sh.cols).subspan(1));
}

std::vector<SharedVector> perm_shared(Party& p, const SharedVector& pi,
                                      std::span<const SharedVector> cols) {
  const std::size_t n = rows_of(cols, pi);
  const SharedVector pa = arith_perm(pi, p);
  // Shuffle π alone: σ = π∘φ with φ = φ0∘φ1 split across the two passes.
  const IndexMap phi0 = IndexMap::random(n, p.rng());
  const IndexMap phi1 = IndexMap::random(n, p.rng());
  const SharedVector pa_arr[1] = {pa};
  auto s0 = osn_shared(p, 0, p.id() == 0 ? phi0 : IndexMap{}, pa_arr);
  auto s1 = osn_shared(p, 1, p.id() == 1 ? phi1 : IndexMap{}, s0);
  const IndexMap sigma = permutation_from_ring(open(p, s1[0]));
  // X∘π = (X∘σ)∘φ^{-1}, and φ^{-1} = φ1^{-1}∘φ0^{-1}.
  auto moved = apply_local(sigma, cols);
  auto u1 = osn_shared(p, 1, p.id() == 1 ? phi1.inverse() : IndexMap{}, moved);
  return osn_shared(p, 0, p.id() == 0 ? phi0.inverse() : IndexMap{}, u1);
}

std::vector<SharedVector> perm_plain(Party& p, PartyId sender,
                                     const SharedVector& pi,
                                     std::span<const PlainColumn> cols) {
  const PartyId receiver = 1 - sender;
  const std::size_t n = pi.size();
  const SharedVector pa = arith_perm(pi, p);
  const IndexMap sigma =
      p.id() == receiver ? IndexMap::random(n, p.rng()) : IndexMap{};
  const SharedVector pa_arr[1] = {pa};
  auto rho_sh = osn_shared(p, receiver, sigma, pa_arr);
  auto rho_vals = reveal_to(p, rho_sh[0], sender);
  std::vector<PlainColumn> moved;
  if (p.id() == sender) {
    const IndexMap rho = permutation_from_ring(rho_vals);
    for (const auto& c : cols) {
      if (c.values.size() != n) {
        fail(ErrorCode::SizeMismatch, "perm_plain column length");
      }
      moved.push_back({c.spec, rho.apply(c.values)});
    }
  } else {
    moved = specs_only(cols);
  }
  return osn_plain(p, receiver,
                   p.id() == receiver ? sigma.inverse() : IndexMap{}, moved, n);
}

std::vector<SharedVector> invp_plain(Party& p, PartyId sender,
                                     const SharedVector& pi,
                                     std::span<const PlainColumn> cols) {
  const PartyId other = 1 - sender;
  const std::size_t n = pi.size();
  const SharedVector pa = arith_perm(pi, p);
  const IndexMap sigma =
      p.id() == sender ? IndexMap::random(n, p.rng()) : IndexMap{};
  const SharedVector pa_arr[1] = {pa};
  auto rho_sh = osn_shared(p, sender, sigma, pa_arr);
  auto rho_vals = reveal_to(p, rho_sh[0], other);
  std::vector<PlainColumn> moved;
  IndexMap rho_inv;
  if (p.id() == sender) {
    for (const auto& c : cols) {
      if (c.values.size() != n) {
        fail(ErrorCode::SizeMismatch, "invp_plain column length");
      }
      moved.push_back({c.spec, sigma.apply(c.values)});
    }
  } else {
    moved = specs_only(cols);
    rho_inv = permutation_from_ring(rho_vals).inverse();
  }
  return osn_plain(p, other, rho_inv, moved, n);
}

}  // namespace mview
