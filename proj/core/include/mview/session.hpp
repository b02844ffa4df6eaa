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
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "mview/ring.hpp"
#include "mview/shared_vector.hpp"
#include "mview/transcript.hpp"

namespace mview {

enum class SchedulerMode { Cooperative, Threaded };

// Flips bits of one share half the first time a probe with this label fires.
struct FaultInjection {
  std::string label;
  PartyId party = 0;
  std::size_t index = 0;
  Ring xor_mask = 1;
};

struct SessionConfig {
  std::uint64_t seed0 = 1;
  std::uint64_t seed1 = 2;
  std::uint64_t seed_dealer = 3;
  SchedulerMode mode = SchedulerMode::Cooperative;
  // Maximum number of multiplication triples the dealer hands out.
  std::optional<std::uint64_t> triple_budget;
  std::optional<FaultInjection> fault;
};

// Generic container moved between parties and an ideal functionality.
struct HybridPayload {
  std::vector<std::vector<Ring>> vectors;
};

struct HybridResult {
  std::array<HybridPayload, 2> out;
  std::array<std::uint64_t, 2> delivered_bits{};
};

using HybridFn = std::function<HybridResult(
    const std::array<HybridPayload, 2>& inputs, std::mt19937_64& rng)>;

struct ArithTriples {
  std::vector<Ring> a, b, c;
};
struct BinTriples {
  std::vector<Ring> a, b, c;
};
// Random bit r shared both as a 1-bit binary value and as an arithmetic value.
struct DaBits {
  std::vector<Ring> bin, arith;
};
// Random 1-out-of-2 transfer of `columns` words per instance. The sender
// half fills k0/k1, the receiver half fills choice/chosen.
struct RandomOt {
  std::size_t columns = 0;
  std::vector<Ring> k0, k1;
  std::vector<Ring> choice, chosen;
};

class ProbeLog {
 public:
  void record(const std::string& label, PartyId party, const SharedVector& v);
  void record_plain(const std::string& label, PartyId party,
                    std::span<const Ring> v);
  bool contains(const std::string& label) const;
  std::vector<Ring> reconstruct(const std::string& label) const;
  std::vector<Ring> plain(const std::string& label, PartyId party) const;
  const SharedVector& half(const std::string& label, PartyId party) const;

 private:
  std::map<std::string, std::array<std::optional<SharedVector>, 2>> shared_;
  std::map<std::string, std::array<std::optional<std::vector<Ring>>, 2>>
      plain_;
};

class SessionState;

// A party's handle onto the running session. All calls are made from the
// party's own execution context.
class Party {
 public:
  Party(SessionState* state, PartyId id, std::uint64_t seed);

  PartyId id() const { return id_; }
  PartyId peer() const { return 1 - id_; }
  bool is(PartyId p) const { return id_ == p; }
  std::mt19937_64& rng() { return rng_; }

  // Wire traffic. Each call is one frame; values are bit-packed at `width`.
  void send(std::span<const Ring> values, unsigned width);
  std::vector<Ring> recv(std::size_t n, unsigned width);
  // Both parties send simultaneously and then receive the peer's frame.
  std::vector<Ring> exchange(std::span<const Ring> values, unsigned width);

  // Dealer correlations; both parties must issue matching requests in the
  // same order.
  ArithTriples arith_triples(std::size_t n);
  BinTriples bin_triples(std::size_t n, unsigned width);
  DaBits dabits(std::size_t n);
  RandomOt random_ot(std::size_t n, std::span<const unsigned> column_widths,
                     PartyId receiver);

  // Ideal functionality call. Blocks until both parties have submitted.
  HybridPayload hybrid(std::string_view name, HybridPayload input,
                       const HybridFn& fn);

  class PhaseScope {
   public:
    PhaseScope(Party* p, std::string_view label);
    PhaseScope(const PhaseScope&) = delete;
    PhaseScope& operator=(const PhaseScope&) = delete;
    ~PhaseScope();

   private:
    Party* p_;
  };
  [[nodiscard]] PhaseScope phase(std::string_view label) {
    return PhaseScope(this, label);
  }

  // Test hooks: record a share half (and apply a configured fault).
  void probe(const std::string& label, SharedVector& v);
  void probe(const std::string& label, const SharedVector& v);
  void probe_plain(const std::string& label, std::span<const Ring> v);

 private:
  SessionState* s_;
  PartyId id_;
  std::mt19937_64 rng_;
};

struct RunInfo {
  Transcript transcript;
  ProbeLog probes;
};

// Runs `program` for both parties to completion. Rethrows the first party
// error; a party blocked on a message that can never arrive raises
// ProtocolDesync.
RunInfo run_session(const SessionConfig& config,
                    const std::function<void(Party&)>& program);

template <class T>
struct ProtocolRun {
  std::array<T, 2> out{};
  Transcript transcript;
  ProbeLog probes;
};

template <class Fn>
auto run_protocol(const SessionConfig& config, Fn&& fn) {
  using R = std::invoke_result_t<Fn&, Party&>;
  if constexpr (std::is_void_v<R>) {
    RunInfo info = run_session(config, [&](Party& p) { fn(p); });
    ProtocolRun<bool> run;
    run.out = {true, true};
    run.transcript = std::move(info.transcript);
    run.probes = std::move(info.probes);
    return run;
  } else {
    ProtocolRun<R> run;
    RunInfo info =
        run_session(config, [&](Party& p) { run.out[p.id()] = fn(p); });
    run.transcript = std::move(info.transcript);
    run.probes = std::move(info.probes);
    return run;
  }
}

}  // namespace mview
