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
#include "mview/gates.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include <fmt/format.h>

namespace mview {

namespace {

struct Outgoing {
  std::vector<Ring> values;
  unsigned width;
};

// Sends every frame before receiving any, so the whole batch is one round.
std::vector<std::vector<Ring>> exchange_all(Party& p,
                                            const std::vector<Outgoing>& out) {
  for (const auto& o : out) {
    if (!o.values.empty()) p.send(o.values, o.width);
  }
  std::vector<std::vector<Ring>> in(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!out[i].values.empty()) in[i] = p.recv(out[i].values.size(), out[i].width);
  }
  return in;
}

unsigned pow2_ceil(unsigned w) { return std::bit_ceil(std::max(w, 1u)); }

SharedVector shift_right(const SharedVector& x, unsigned s) {
  std::vector<Ring> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = s >= 64 ? 0 : x[i] >> s;
  return SharedVector(x.flavor(), x.width(), x.owner(), std::move(out));
}

SharedVector shift_left(const SharedVector& x, unsigned s) {
  std::vector<Ring> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = s >= 64 ? 0 : x[i] << s;
  return SharedVector(x.flavor(), x.width(), x.owner(), std::move(out));
}

SharedVector with_width(const SharedVector& x, unsigned width) {
  return SharedVector(x.flavor(), width, x.owner(), x.data());
}

void require_bit(const SharedVector& f) {
  if (f.flavor() != Flavor::Binary || f.width() != 1) {
    fail(ErrorCode::WidthMismatch, "flag must be a 1-bit binary share");
  }
}

void require_binary(const SharedVector& x) {
  if (x.flavor() != Flavor::Binary) {
    fail(ErrorCode::FlavorMismatch, "expected binary shares");
  }
}

// Binary view of x0 - y0 (party 0) and y1 - x1 (party 1): equal halves iff
// the arithmetic values are equal.
SharedVector arith_difference_as_binary(const SharedVector& x,
                                        const SharedVector& y) {
  check_same_shape(x, y);
  std::vector<Ring> d(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    d[i] = x.owner() == 0 ? x[i] - y[i] : y[i] - x[i];
  }
  return SharedVector(Flavor::Binary, kRingBits, x.owner(), std::move(d));
}

}  // namespace

std::vector<Ring> reveal_to(Party& p, const SharedVector& x, PartyId to) {
  if (x.empty()) return {};
  if (p.id() != to) {
    p.send(x.data(), x.width());
    return {};
  }
  auto peer = p.recv(x.size(), x.width());
  std::vector<Ring> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = x.flavor() == Flavor::Arithmetic ? x[i] + peer[i]
                                              : (x[i] ^ peer[i]) & x.mask();
  }
  return out;
}

std::vector<Ring> open(Party& p, const SharedVector& x) {
  if (x.empty()) return {};
  auto peer = p.exchange(x.data(), x.width());
  std::vector<Ring> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = x.flavor() == Flavor::Arithmetic ? x[i] + peer[i]
                                              : (x[i] ^ peer[i]) & x.mask();
  }
  return out;
}

namespace {

using PairSpan = std::span<const std::pair<SharedVector, SharedVector>>;

// Beaver products for arithmetic pairs and ANDs for binary pairs, all opened
// in a single exchange. Binary pairs are grouped by width so each group uses
// width-sized triples and frames.
std::pair<std::vector<SharedVector>, std::vector<SharedVector>> gate_batch(
    Party& p, PairSpan arith, PairSpan bin) {
  std::size_t total = 0;
  for (const auto& [x, y] : arith) {
    check_same_shape(x, y);
    if (x.flavor() != Flavor::Arithmetic) {
      fail(ErrorCode::FlavorMismatch, "mul needs arithmetic shares");
    }
    total += x.size();
  }
  std::map<unsigned, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < bin.size(); ++i) {
    const auto& [x, y] = bin[i];
    check_same_shape(x, y);
    require_binary(x);
    if (!x.empty()) groups[x.width()].push_back(i);
  }

  std::vector<Outgoing> out;
  ArithTriples at;
  if (total > 0) {
    at = p.arith_triples(total);
    Outgoing o{std::vector<Ring>(2 * total), kRingBits};
    std::size_t k = 0;
    for (const auto& [x, y] : arith) {
      for (std::size_t i = 0; i < x.size(); ++i, ++k) {
        o.values[k] = x[i] - at.a[k];
        o.values[total + k] = y[i] - at.b[k];
      }
    }
    out.push_back(std::move(o));
  }
  struct Group {
    unsigned width;
    std::vector<std::size_t> members;
    BinTriples t;
    std::size_t total = 0;
  };
  std::vector<Group> gs;
  for (auto& [w, members] : groups) {
    Group g{w, members, {}, 0};
    for (std::size_t i : members) g.total += bin[i].first.size();
    g.t = p.bin_triples(g.total, w);
    Outgoing o{std::vector<Ring>(2 * g.total), w};
    std::size_t k = 0;
    for (std::size_t i : members) {
      const auto& [x, y] = bin[i];
      for (std::size_t j = 0; j < x.size(); ++j, ++k) {
        o.values[k] = x[j] ^ g.t.a[k];
        o.values[g.total + k] = y[j] ^ g.t.b[k];
      }
    }
    out.push_back(std::move(o));
    gs.push_back(std::move(g));
  }

  auto in = exchange_all(p, out);

  std::vector<SharedVector> ar;
  std::size_t slot = 0;
  if (total > 0) {
    std::size_t k = 0;
    for (const auto& [x, y] : arith) {
      std::vector<Ring> z(x.size());
      for (std::size_t i = 0; i < x.size(); ++i, ++k) {
        const Ring d = out[0].values[k] + in[0][k];
        const Ring e = out[0].values[total + k] + in[0][total + k];
        z[i] = at.c[k] + d * at.b[k] + e * at.a[k] + (p.id() == 0 ? d * e : 0);
      }
      ar.emplace_back(Flavor::Arithmetic, x.width(), x.owner(), std::move(z));
    }
    slot = 1;
  } else {
    for (const auto& pr : arith) ar.push_back(pr.first);
  }

  std::vector<SharedVector> br(bin.size());
  for (std::size_t i = 0; i < bin.size(); ++i) br[i] = bin[i].first;
  for (std::size_t gi = 0; gi < gs.size(); ++gi, ++slot) {
    const Group& g = gs[gi];
    std::size_t k = 0;
    for (std::size_t i : g.members) {
      const auto& x = bin[i].first;
      std::vector<Ring> z(x.size());
      for (std::size_t j = 0; j < x.size(); ++j, ++k) {
        const Ring d = out[slot].values[k] ^ in[slot][k];
        const Ring e = out[slot].values[g.total + k] ^ in[slot][g.total + k];
        z[j] = g.t.c[k] ^ (d & g.t.b[k]) ^ (e & g.t.a[k]) ^
               (p.id() == 0 ? (d & e) : 0);
      }
      br[i] = SharedVector(Flavor::Binary, g.width, x.owner(), std::move(z));
    }
  }
  return {std::move(ar), std::move(br)};
}

}  // namespace

std::vector<SharedVector> mul_batch(Party& p, PairSpan pairs) {
  return gate_batch(p, pairs, {}).first;
}

std::vector<SharedVector> and_batch(Party& p, PairSpan pairs) {
  return gate_batch(p, {}, pairs).second;
}

SharedVector mul(Party& p, const SharedVector& x, const SharedVector& y) {
  std::pair<SharedVector, SharedVector> pr{x, y};
  return std::move(mul_batch(p, {&pr, 1})[0]);
}

SharedVector and_gate(Party& p, const SharedVector& x, const SharedVector& y) {
  std::pair<SharedVector, SharedVector> pr{x, y};
  return std::move(and_batch(p, {&pr, 1})[0]);
}

SharedVector or_gate(Party& p, const SharedVector& x, const SharedVector& y) {
  return x ^ y ^ and_gate(p, x, y);
}

SharedVector b2a(Party& p, const SharedVector& bit) {
  require_bit(bit);
  const std::size_t n = bit.size();
  if (n == 0) return SharedVector::zeros(Flavor::Arithmetic, kRingBits, p.id(), 0);
  DaBits r = p.dabits(n);
  std::vector<Ring> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = bit[i] ^ r.bin[i];
  auto peer = p.exchange(c, 1);
  std::vector<Ring> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Ring ci = c[i] ^ peer[i];
    // f = c xor r = c + r - 2cr
    out[i] = (Ring{1} - 2 * ci) * r.arith[i] + (p.id() == 0 ? ci : 0);
  }
  return SharedVector(Flavor::Arithmetic, kRingBits, p.id(), std::move(out));
}

SharedVector bin_to_arith(Party& p, const SharedVector& x) {
  require_binary(x);
  const unsigned w = x.width();
  const std::size_t n = x.size();
  if (w == 1) return b2a(p, x);
  if (n == 0) return SharedVector::zeros(Flavor::Arithmetic, kRingBits, p.id(), 0);
  DaBits r = p.dabits(n * w);
  std::vector<Ring> c(n);
  for (std::size_t i = 0; i < n; ++i) {
    Ring rb = 0;
    for (unsigned j = 0; j < w; ++j) rb |= r.bin[i * w + j] << j;
    c[i] = x[i] ^ rb;
  }
  auto peer = p.exchange(c, w);
  std::vector<Ring> out(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const Ring ci = c[i] ^ peer[i];
    for (unsigned j = 0; j < w; ++j) {
      const Ring cj = (ci >> j) & 1;
      const Ring bit = (Ring{1} - 2 * cj) * r.arith[i * w + j] +
                       (p.id() == 0 ? cj : 0);
      out[i] += bit << j;
    }
  }
  return SharedVector(Flavor::Arithmetic, kRingBits, p.id(), std::move(out));
}

SharedVector arith_to_bin(Party& p, const SharedVector& x, unsigned width) {
  if (x.flavor() != Flavor::Arithmetic) {
    fail(ErrorCode::FlavorMismatch, "A2B needs arithmetic shares");
  }
  const std::size_t n = x.size();
  const Ring m = width_mask(width);
  std::vector<Ring> own(n);
  for (std::size_t i = 0; i < n; ++i) own[i] = x[i] & m;
  // Party u's arithmetic half becomes addend u, held in the clear by u.
  SharedVector a = SharedVector::from_plain(Flavor::Binary, width, p.id(), 0,
                                            own, n);
  SharedVector b = SharedVector::from_plain(Flavor::Binary, width, p.id(), 1,
                                            own, n);
  SharedVector prop = a ^ b;
  SharedVector gen = and_gate(p, a, b);
  const SharedVector sum = prop;
  for (unsigned s = 1; s < width; s *= 2) {
    std::vector<std::pair<SharedVector, SharedVector>> pr{
        {prop, with_width(shift_left(gen, s), width)},
        {prop, with_width(shift_left(prop, s), width)}};
    auto r = and_batch(p, pr);
    gen = gen ^ r[0];
    prop = r[1];
  }
  return sum ^ SharedVector(Flavor::Binary, width, p.id(),
                            shift_left(gen, 1).data());
}

SharedVector convert(Party& p, const SharedVector& x, Flavor target,
                     unsigned width) {
  if (x.flavor() == target) return x;
  if (target == Flavor::Arithmetic) return bin_to_arith(p, x);
  return arith_to_bin(p, x, width);
}

std::vector<SharedVector> mux_columns(Party& p, const SharedVector& f,
                                      std::span<const SharedVector> xs,
                                      std::span<const SharedVector> ys) {
  require_bit(f);
  if (xs.size() != ys.size()) fail(ErrorCode::SizeMismatch, "mux columns");
  std::vector<SharedVector> out(xs.size());
  std::vector<std::pair<SharedVector, SharedVector>> bin_pairs, arith_pairs;
  std::vector<std::size_t> bin_idx, arith_idx;
  bool need_arith = false;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    check_same_shape(xs[i], ys[i]);
    if (xs[i].size() != f.size()) fail(ErrorCode::SizeMismatch, "mux flag");
    if (xs[i].flavor() == Flavor::Arithmetic) need_arith = true;
  }
  SharedVector fa;
  if (need_arith) fa = b2a(p, f);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i].flavor() == Flavor::Binary) {
      bin_pairs.emplace_back(broadcast_bit(f, xs[i].width()), xs[i] ^ ys[i]);
      bin_idx.push_back(i);
    } else {
      arith_pairs.emplace_back(fa, xs[i] - ys[i]);
      arith_idx.push_back(i);
    }
  }
  auto [az, bz] = gate_batch(p, arith_pairs, bin_pairs);
  for (std::size_t k = 0; k < bin_idx.size(); ++k) {
    out[bin_idx[k]] = ys[bin_idx[k]] ^ bz[k];
  }
  for (std::size_t k = 0; k < arith_idx.size(); ++k) {
    out[arith_idx[k]] = ys[arith_idx[k]] + az[k];
  }
  return out;
}

SharedVector mux(Party& p, const SharedVector& f, const SharedVector& x,
                 const SharedVector& y) {
  SharedVector xs[1] = {x};
  SharedVector ys[1] = {y};
  return std::move(mux_columns(p, f, xs, ys)[0]);
}

std::vector<SharedVector> mask_columns(Party& p, const SharedVector& f,
                                       std::span<const SharedVector> xs,
                                       std::span<const Ring> fill) {
  if (fill.size() != xs.size()) fail(ErrorCode::SizeMismatch, "mask fill");
  std::vector<SharedVector> ys;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::vector<Ring> c(xs[i].size(), fill[i]);
    ys.push_back(SharedVector::constant(xs[i].flavor(), xs[i].width(), p.id(), c));
  }
  return mux_columns(p, f, xs, ys);
}

namespace {

// Reduces each word's low `span` bits (a power of two) with AND so bit 0
// holds the conjunction. All words in all vectors advance level by level.
std::vector<SharedVector> and_reduce_words(Party& p,
                                           std::vector<SharedVector> ts,
                                           const std::vector<unsigned>& spans) {
  unsigned top = 1;
  for (unsigned s : spans) top = std::max(top, s);
  for (unsigned s = 1; s < top; s *= 2) {
    std::vector<std::pair<SharedVector, SharedVector>> pr;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      if (spans[i] > s) {
        pr.emplace_back(ts[i], shift_right(ts[i], s));
        idx.push_back(i);
      }
    }
    auto r = and_batch(p, pr);
    for (std::size_t k = 0; k < idx.size(); ++k) ts[idx[k]] = std::move(r[k]);
  }
  for (auto& t : ts) t = low_bit(t);
  return ts;
}

SharedVector and_tree(Party& p, std::vector<SharedVector> bits) {
  while (bits.size() > 1) {
    std::vector<std::pair<SharedVector, SharedVector>> pr;
    for (std::size_t i = 0; i + 1 < bits.size(); i += 2) {
      pr.emplace_back(bits[i], bits[i + 1]);
    }
    auto r = and_batch(p, pr);
    if (bits.size() % 2 == 1) r.push_back(bits.back());
    bits = std::move(r);
  }
  return bits.front();
}

// XNOR of x, y over a power-of-two span with the padding bits set to 1.
SharedVector xnor_padded(const SharedVector& x, const SharedVector& y,
                         unsigned span) {
  const Ring m = width_mask(span);
  std::vector<Ring> t(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    t[i] = (x[i] ^ y[i]) ^ (x.owner() == 0 ? m : 0);
  }
  return SharedVector(Flavor::Binary, span, x.owner(), std::move(t));
}

}  // namespace

SharedVector eq_fields(Party& p, std::span<const SharedVector> xs,
                       std::span<const SharedVector> ys) {
  if (xs.size() != ys.size() || xs.empty()) {
    fail(ErrorCode::SizeMismatch, "eq needs matching non-empty field lists");
  }
  std::vector<SharedVector> ts;
  std::vector<unsigned> spans;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i].width() != ys[i].width()) {
      fail(ErrorCode::WidthMismatch,
           fmt::format("eq widths {} and {}", xs[i].width(), ys[i].width()));
    }
    SharedVector bx = xs[i], by = ys[i];
    if (xs[i].flavor() == Flavor::Arithmetic) {
      bx = arith_difference_as_binary(xs[i], ys[i]);
      by = SharedVector::zeros(Flavor::Binary, kRingBits, p.id(), bx.size());
    } else {
      check_same_shape(xs[i], ys[i]);
    }
    const unsigned span = pow2_ceil(bx.width());
    ts.push_back(xnor_padded(bx, by, span));
    spans.push_back(span);
  }
  return and_tree(p, and_reduce_words(p, std::move(ts), spans));
}

SharedVector eq(Party& p, const SharedVector& x, const SharedVector& y) {
  SharedVector xs[1] = {x};
  SharedVector ys[1] = {y};
  return eq_fields(p, xs, ys);
}

SharedVector less_than(Party& p, std::span<const SharedVector> xs,
                       std::span<const SharedVector> ys) {
  if (xs.size() != ys.size() || xs.empty()) {
    fail(ErrorCode::SizeMismatch, "less_than needs matching field lists");
  }
  const std::size_t limbs = xs.size();
  std::vector<SharedVector> lt(limbs), eqv(limbs);
  std::vector<unsigned> spans(limbs);
  std::vector<std::pair<SharedVector, SharedVector>> init;
  for (std::size_t k = 0; k < limbs; ++k) {
    check_same_shape(xs[k], ys[k]);
    require_binary(xs[k]);
    spans[k] = pow2_ceil(xs[k].width());
    init.emplace_back(with_width(bit_not(xs[k]), spans[k]),
                      with_width(ys[k], spans[k]));
    eqv[k] = xnor_padded(xs[k], ys[k], spans[k]);
  }
  auto r0 = and_batch(p, init);
  for (std::size_t k = 0; k < limbs; ++k) lt[k] = std::move(r0[k]);

  unsigned top = 1;
  for (unsigned s : spans) top = std::max(top, s);
  for (unsigned s = 1; s < top; s *= 2) {
    std::vector<std::pair<SharedVector, SharedVector>> pr;
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < limbs; ++k) {
      if (spans[k] <= s) continue;
      const SharedVector eq_hi = shift_right(eqv[k], s);
      pr.emplace_back(eq_hi, lt[k]);
      pr.emplace_back(eq_hi, eqv[k]);
      idx.push_back(k);
    }
    auto r = and_batch(p, pr);
    for (std::size_t j = 0; j < idx.size(); ++j) {
      const std::size_t k = idx[j];
      lt[k] = shift_right(lt[k], s) ^ r[2 * j];
      eqv[k] = std::move(r[2 * j + 1]);
    }
  }
  for (std::size_t k = 0; k < limbs; ++k) {
    lt[k] = low_bit(lt[k]);
    eqv[k] = low_bit(eqv[k]);
  }
  // Combine adjacent limbs (hi, lo) until one remains.
  while (lt.size() > 1) {
    std::vector<std::pair<SharedVector, SharedVector>> pr;
    const std::size_t pairs = lt.size() / 2;
    for (std::size_t j = 0; j < pairs; ++j) {
      pr.emplace_back(eqv[2 * j], lt[2 * j + 1]);
      pr.emplace_back(eqv[2 * j], eqv[2 * j + 1]);
    }
    auto r = and_batch(p, pr);
    std::vector<SharedVector> nlt, neq;
    for (std::size_t j = 0; j < pairs; ++j) {
      nlt.push_back(lt[2 * j] ^ r[2 * j]);
      neq.push_back(std::move(r[2 * j + 1]));
    }
    if (lt.size() % 2 == 1) {
      nlt.push_back(lt.back());
      neq.push_back(eqv.back());
    }
    lt = std::move(nlt);
    eqv = std::move(neq);
  }
  return lt.front();
}

SharedVector less_than(Party& p, const SharedVector& x, const SharedVector& y) {
  SharedVector xs[1] = {x};
  SharedVector ys[1] = {y};
  return less_than(p, xs, ys);
}

SharedVector asym_mul(Party& p, PartyId bit_holder, std::span<const Ring> bits,
                      std::span<const Ring> values, std::size_t n,
                      Flavor flavor, unsigned width) {
  const Ring m = width_mask(width);
  if (n == 0) return SharedVector::zeros(flavor, width, p.id(), 0);
  const unsigned widths[1] = {width};
  RandomOt ot = p.random_ot(n, widths, bit_holder);
  if (p.id() == bit_holder) {
    if (bits.size() != n) fail(ErrorCode::SizeMismatch, "asym_mul bits");
    std::vector<Ring> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = (bits[i] & 1) ^ ot.choice[i];
    p.send(d, 1);
    auto enc = p.recv(2 * n, width);
    std::vector<Ring> out(n);
    for (std::size_t i = 0; i < n; ++i) {
      const Ring f = bits[i] & 1;
      // Message f was padded with k_{f^d} = k_c, the key this party holds.
      const Ring e = enc[2 * i + f];
      const Ring k = ot.chosen[i];
      out[i] = flavor == Flavor::Arithmetic ? (e - k) & m : (e ^ k) & m;
    }
    return SharedVector(flavor, width, p.id(), std::move(out));
  }
  if (values.size() != n) fail(ErrorCode::SizeMismatch, "asym_mul values");
  auto d = p.recv(n, 1);
  std::vector<Ring> enc(2 * n), own(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Ring r = p.rng()() & m;
    own[i] = r;
    Ring msg[2];
    if (flavor == Flavor::Arithmetic) {
      msg[0] = (Ring{0} - r) & m;
      msg[1] = (values[i] - r) & m;
    } else {
      msg[0] = r;
      msg[1] = (values[i] ^ r) & m;
    }
    for (int j = 0; j < 2; ++j) {
      // The receiver holds k_c with c = f ^ d; pad message j with k_{j^d}.
      const std::size_t key = static_cast<std::size_t>(j) ^ d[i];
      const Ring k = key == 0 ? ot.k0[i] : ot.k1[i];
      enc[2 * i + j] = flavor == Flavor::Arithmetic ? (msg[j] + k) & m
                                                    : (msg[j] ^ k) & m;
    }
  }
  p.send(enc, width);
  return SharedVector(flavor, width, p.id(), std::move(own));
}

}  // namespace mview
