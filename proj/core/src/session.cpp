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
#include "mview/session.hpp"

#include <algorithm>
#include <thread>

#include <boost/context/fiber.hpp>
#include <boost/context/fixedsize_stack.hpp>
#include <fmt/format.h>

#include "session_state.hpp"

namespace mview {

namespace ctx = boost::context;

namespace {

constexpr std::size_t kFrameHeader = 20;
constexpr std::size_t kFiberStack = std::size_t{1} << 20;

void put_le(std::vector<std::uint8_t>& out, std::size_t at, std::uint64_t v,
            int bytes) {
  for (int i = 0; i < bytes; ++i) {
    out[at + i] = static_cast<std::uint8_t>(v >> (8 * i));
  }
}

std::uint64_t get_le(const std::vector<std::uint8_t>& in, std::size_t at,
                     int bytes) {
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) {
    v |= static_cast<std::uint64_t>(in[at + i]) << (8 * i);
  }
  return v;
}

// Frame layout: u64 round stamp, u32 width, u64 count, then the values
// packed LSB-first at `width` bits each.
std::vector<std::uint8_t> encode_frame(std::uint64_t stamp,
                                       std::span<const Ring> values,
                                       unsigned width) {
  const std::size_t nbits = values.size() * width;
  std::vector<std::uint8_t> out(kFrameHeader + (nbits + 7) / 8, 0);
  put_le(out, 0, stamp, 8);
  put_le(out, 8, width, 4);
  put_le(out, 12, values.size(), 8);
  const Ring m = width_mask(width);
  std::size_t bit = 0;
  for (Ring v : values) {
    v &= m;
    for (unsigned done = 0; done < width;) {
      const std::size_t byte = kFrameHeader + bit / 8;
      const unsigned off = bit % 8;
      const unsigned take = std::min(8 - off, width - done);
      out[byte] |= static_cast<std::uint8_t>(((v >> done) & width_mask(take)) << off);
      done += take;
      bit += take;
    }
  }
  return out;
}

std::vector<Ring> decode_payload(const std::vector<std::uint8_t>& frame,
                                 std::size_t n, unsigned width) {
  std::vector<Ring> out(n, 0);
  std::size_t bit = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Ring v = 0;
    for (unsigned done = 0; done < width;) {
      const std::size_t byte = kFrameHeader + bit / 8;
      const unsigned off = bit % 8;
      const unsigned take = std::min(8 - off, width - done);
      v |= static_cast<Ring>((frame[byte] >> off) & width_mask(take)) << done;
      done += take;
      bit += take;
    }
    out[i] = v;
  }
  return out;
}

}  // namespace

// Locks only when parties run on separate threads; fibers share one thread
// and never yield while inside a critical section.
class SessionState::Lock {
 public:
  explicit Lock(SessionState& s) : lk_(s.mu_, std::defer_lock) {
    if (s.config_.mode == SchedulerMode::Threaded) lk_.lock();
  }
  std::unique_lock<std::mutex>& get() { return lk_; }

 private:
  std::unique_lock<std::mutex> lk_;
};

struct SessionState::Fibers {
  std::array<ctx::fiber, 2> party;
  std::array<ctx::fiber, 2> scheduler;
};

SessionState::SessionState(const SessionConfig& config) : config_(config) {}
SessionState::~SessionState() = default;

void SessionState::note_progress() {
  ++progress_;
  if (config_.mode == SchedulerMode::Threaded) cv_.notify_all();
}

void SessionState::wait_until(Lock& lk, PartyId self,
                              const std::function<bool()>& pred) {
  if (config_.mode == SchedulerMode::Cooperative) {
    while (!pred()) {
      if (desync_) {
        fail(ErrorCode::ProtocolDesync,
             fmt::format("party {} waits for input that never arrives", self));
      }
      auto& f = fibers_->scheduler[self];
      f = std::move(f).resume();
    }
    return;
  }
  waiting_[self] = &pred;
  while (!pred()) {
    const PartyId other = 1 - self;
    const bool other_stuck =
        done_[other] || (waiting_[other] != nullptr && !(*waiting_[other])());
    if (desync_ || other_stuck) {
      desync_ = true;
      waiting_[self] = nullptr;
      cv_.notify_all();
      fail(ErrorCode::ProtocolDesync,
           fmt::format("party {} waits for input that never arrives", self));
    }
    cv_.wait(lk.get());
  }
  waiting_[self] = nullptr;
}

void SessionState::push_frame(PartyId from, std::vector<std::uint8_t> frame) {
  Lock lk(*this);
  inbox_[1 - from].push_back(std::move(frame));
  note_progress();
}

std::vector<std::uint8_t> SessionState::pop_frame(PartyId self) {
  Lock lk(*this);
  std::function<bool()> ready = [&] { return !inbox_[self].empty(); };
  wait_until(lk, self, ready);
  auto frame = std::move(inbox_[self].front());
  inbox_[self].pop_front();
  note_progress();
  return frame;
}

std::mt19937_64 SessionState::request_rng(std::uint64_t k) const {
  const std::uint64_t d = config_.seed_dealer;
  std::seed_seq seq{static_cast<std::uint32_t>(d),
                    static_cast<std::uint32_t>(d >> 32),
                    static_cast<std::uint32_t>(k),
                    static_cast<std::uint32_t>(k >> 32), 0x6d76u};
  return std::mt19937_64(seq);
}

std::vector<std::vector<Ring>> SessionState::correlation(
    PartyId self, const std::string& desc,
    const std::function<std::array<std::vector<std::vector<Ring>>, 2>(
        std::mt19937_64&)>& gen,
    const std::array<std::uint64_t, 2>& bits) {
  Lock lk(*this);
  const std::uint64_t k = next_request_[self]++;
  DealerSlot& slot = slots_[k];
  if (slot.desc.empty()) {
    slot.desc = desc;
    auto rng = request_rng(k);
    auto halves = gen(rng);
    slot.halves[0] = std::move(halves[0]);
    slot.halves[1] = std::move(halves[1]);
    slot.bits = bits;
  } else if (slot.desc != desc) {
    desync_ = true;
    note_progress();
    fail(ErrorCode::ProtocolDesync,
         fmt::format("dealer request {} mismatch: '{}' vs '{}'", k, slot.desc,
                     desc));
  }
  auto out = std::move(*slot.halves[self]);
  ledgers_[self].hybrid += slot.bits[self];
  if (++slot.taken == 2) slots_.erase(k);
  note_progress();
  return out;
}

HybridPayload SessionState::functionality(PartyId self,
                                          const std::string& desc,
                                          HybridPayload input,
                                          const HybridFn& fn) {
  Lock lk(*this);
  const std::uint64_t k = next_request_[self]++;
  DealerSlot& slot = slots_[k];
  Ledger& led = ledgers_[self];
  if (slot.desc.empty()) {
    slot.desc = desc;
    slot.inputs[self] = std::move(input);
    slot.sync_clock = led.clock;
    note_progress();
    std::function<bool()> ready = [&slot] { return slot.computed; };
    wait_until(lk, self, ready);
  } else {
    if (slot.desc != desc || slot.computed) {
      desync_ = true;
      note_progress();
      fail(ErrorCode::ProtocolDesync,
           fmt::format("functionality {} mismatch: '{}' vs '{}'", k, slot.desc,
                       desc));
    }
    slot.inputs[self] = std::move(input);
    auto rng = request_rng(k);
    HybridResult res = fn({*slot.inputs[0], *slot.inputs[1]}, rng);
    slot.inputs[0] = std::move(res.out[0]);
    slot.inputs[1] = std::move(res.out[1]);
    slot.bits = res.delivered_bits;
    slot.sync_clock = std::max(slot.sync_clock, led.clock);
    slot.computed = true;
    note_progress();
  }
  led.clock = std::max(led.clock, slot.sync_clock);
  led.hybrid += slot.bits[self];
  HybridPayload out = std::move(*slot.inputs[self]);
  if (++slot.taken == 2) slots_.erase(k);
  return out;
}

void SessionState::count_triples(PartyId self, std::uint64_t n) {
  triples_used_[self] += n;
  if (config_.triple_budget && triples_used_[self] > *config_.triple_budget) {
    fail(ErrorCode::DealerExhausted,
         fmt::format("triple budget of {} exceeded", *config_.triple_budget));
  }
}

void SessionState::record_probe(const std::string& label, PartyId party,
                                SharedVector& v) {
  Lock lk(*this);
  const auto& f = config_.fault;
  if (f && !fault_fired_ && f->label == label && f->party == party &&
      f->index < v.size()) {
    v[f->index] ^= f->xor_mask;
    if (v.flavor() == Flavor::Binary) v[f->index] &= v.mask();
    fault_fired_ = true;
  }
  probes_.record(label, party, v);
}

void SessionState::record_probe_plain(const std::string& label, PartyId party,
                                      std::span<const Ring> v) {
  Lock lk(*this);
  probes_.record_plain(label, party, v);
}

void SessionState::body(PartyId u, const std::function<void(Party&)>& program) {
  const std::uint64_t seed = u == 0 ? config_.seed0 : config_.seed1;
  try {
    Party party(this, u, seed);
    program(party);
  } catch (const ctx::detail::forced_unwind&) {
    throw;
  } catch (...) {
    errors_[u] = std::current_exception();
  }
  Lock lk(*this);
  done_[u] = true;
  note_progress();
}

void SessionState::run_cooperative(const std::function<void(Party&)>& program) {
  fibers_ = std::make_unique<Fibers>();
  for (PartyId u = 0; u < 2; ++u) {
    fibers_->party[u] = ctx::fiber(
        std::allocator_arg, ctx::fixedsize_stack(kFiberStack),
        [this, u, &program](ctx::fiber&& sched) {
          fibers_->scheduler[u] = std::move(sched);
          body(u, program);
          return std::move(fibers_->scheduler[u]);
        });
  }
  while (!(done_[0] && done_[1])) {
    bool moved = false;
    for (PartyId u = 0; u < 2; ++u) {
      if (done_[u]) continue;
      const std::uint64_t before = progress_;
      fibers_->party[u] = std::move(fibers_->party[u]).resume();
      if (progress_ != before) moved = true;
    }
    // Both parties are parked on conditions nobody can satisfy; resuming
    // them now makes each raise ProtocolDesync and unwind.
    if (!moved) desync_ = true;
  }
  fibers_.reset();
}

void SessionState::run_threaded(const std::function<void(Party&)>& program) {
  std::thread t0([&] { body(0, program); });
  std::thread t1([&] { body(1, program); });
  t0.join();
  t1.join();
}

Transcript SessionState::merge() const {
  Transcript t;
  const Ledger& a = ledgers_[0];
  const Ledger& b = ledgers_[1];
  t.wire_bits_sent = {a.bits_sent, b.bits_sent};
  t.wire_rounds = std::max(a.clock, b.clock);
  t.hybrid_bits = a.hybrid + b.hybrid;
  t.messages = a.messages + b.messages;
  if (a.records.size() != b.records.size()) {
    fail(ErrorCode::ProtocolDesync, "parties emitted different phase counts");
  }
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    const auto& x = a.records[i];
    const auto& y = b.records[i];
    if (x.path != y.path) {
      fail(ErrorCode::ProtocolDesync,
           fmt::format("phase {} labelled '{}' vs '{}'", i, x.path, y.path));
    }
    PhaseRecord r;
    r.path = x.path;
    r.depth = x.depth;
    r.bits_sent = {x.bits, y.bits};
    r.rounds = std::max(x.rounds, y.rounds);
    r.hybrid_bits = x.hybrid + y.hybrid;
    r.messages = x.messages + y.messages;
    t.phases.push_back(std::move(r));
  }
  return t;
}

RunInfo SessionState::run(const std::function<void(Party&)>& program) {
  if (config_.mode == SchedulerMode::Cooperative) {
    run_cooperative(program);
  } else {
    run_threaded(program);
  }
  std::exception_ptr first;
  for (const auto& e : errors_) {
    if (!e) continue;
    if (!first) first = e;
    try {
      std::rethrow_exception(e);
    } catch (const Error& err) {
      if (err.code() != ErrorCode::ProtocolDesync) {
        first = e;
        break;
      }
    } catch (...) {
      first = e;
      break;
    }
  }
  if (first) std::rethrow_exception(first);
  return RunInfo{merge(), std::move(probes_)};
}

RunInfo run_session(const SessionConfig& config,
                    const std::function<void(Party&)>& program) {
  SessionState state(config);
  return state.run(program);
}

// ---------------------------------------------------------------------------
// Party

Party::Party(SessionState* state, PartyId id, std::uint64_t seed)
    : s_(state), id_(id), rng_(seed) {}

void Party::send(std::span<const Ring> values, unsigned width) {
  Ledger& led = s_->ledger(id_);
  led.bits_sent += values.size() * width;
  led.messages += 1;
  s_->push_frame(id_, encode_frame(led.clock + 1, values, width));
}

std::vector<Ring> Party::recv(std::size_t n, unsigned width) {
  auto frame = s_->pop_frame(id_);
  const std::uint64_t stamp = get_le(frame, 0, 8);
  const auto w = static_cast<unsigned>(get_le(frame, 8, 4));
  const std::size_t count = get_le(frame, 12, 8);
  if (w != width || count != n) {
    fail(ErrorCode::ProtocolDesync,
         fmt::format("party {} expected {}x{} bits, frame carries {}x{}", id_,
                     n, width, count, w));
  }
  Ledger& led = s_->ledger(id_);
  led.clock = std::max(led.clock, stamp);
  return decode_payload(frame, n, width);
}

std::vector<Ring> Party::exchange(std::span<const Ring> values,
                                  unsigned width) {
  send(values, width);
  return recv(values.size(), width);
}

HybridPayload Party::hybrid(std::string_view name, HybridPayload input,
                            const HybridFn& fn) {
  return s_->functionality(id_, std::string(name), std::move(input), fn);
}

Party::PhaseScope::PhaseScope(Party* p, std::string_view label) : p_(p) {
  Ledger& led = p_->s_->ledger(p_->id_);
  PartyRecord rec;
  rec.depth = static_cast<int>(led.stack.size());
  rec.path = led.stack.empty()
                 ? std::string(label)
                 : led.records[led.stack.back().record].path + "/" +
                       std::string(label);
  led.records.push_back(std::move(rec));
  led.stack.push_back(
      {led.records.size() - 1, led.bits_sent, led.clock, led.hybrid,
       led.messages});
}

Party::PhaseScope::~PhaseScope() {
  Ledger& led = p_->s_->ledger(p_->id_);
  const OpenPhase open = led.stack.back();
  led.stack.pop_back();
  PartyRecord& rec = led.records[open.record];
  rec.bits = led.bits_sent - open.bits;
  rec.rounds = led.clock - open.clock;
  rec.hybrid = led.hybrid - open.hybrid;
  rec.messages = led.messages - open.messages;
}

void Party::probe(const std::string& label, SharedVector& v) {
  s_->record_probe(label, id_, v);
}

void Party::probe(const std::string& label, const SharedVector& v) {
  SharedVector copy = v;
  s_->record_probe(label, id_, copy);
}

void Party::probe_plain(const std::string& label, std::span<const Ring> v) {
  s_->record_probe_plain(label, id_, v);
}

// ---------------------------------------------------------------------------
// ProbeLog

void ProbeLog::record(const std::string& label, PartyId party,
                      const SharedVector& v) {
  shared_[label][party] = v;
}

void ProbeLog::record_plain(const std::string& label, PartyId party,
                            std::span<const Ring> v) {
  plain_[label][party] = std::vector<Ring>(v.begin(), v.end());
}

bool ProbeLog::contains(const std::string& label) const {
  return shared_.count(label) > 0 || plain_.count(label) > 0;
}

const SharedVector& ProbeLog::half(const std::string& label,
                                   PartyId party) const {
  auto it = shared_.find(label);
  if (it == shared_.end() || !it->second[party]) {
    fail(ErrorCode::PreconditionViolated,
         fmt::format("no probe '{}' for party {}", label, party));
  }
  return *it->second[party];
}

std::vector<Ring> ProbeLog::reconstruct(const std::string& label) const {
  const SharedVector& a = half(label, 0);
  const SharedVector& b = half(label, 1);
  check_same_shape(a, b);
  std::vector<Ring> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = reconstruct_at(a, b, i);
  return out;
}

std::vector<Ring> ProbeLog::plain(const std::string& label,
                                  PartyId party) const {
  auto it = plain_.find(label);
  if (it == plain_.end() || !it->second[party]) {
    fail(ErrorCode::PreconditionViolated,
         fmt::format("no plain probe '{}' for party {}", label, party));
  }
  return *it->second[party];
}

}  // namespace mview
