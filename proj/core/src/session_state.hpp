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
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "mview/session.hpp"

namespace mview {

struct OpenPhase {
  std::size_t record = 0;
  std::uint64_t bits = 0;
  std::uint64_t clock = 0;
  std::uint64_t hybrid = 0;
  std::uint64_t messages = 0;
};

struct PartyRecord {
  std::string path;
  int depth = 0;
  std::uint64_t bits = 0;
  std::uint64_t rounds = 0;
  std::uint64_t hybrid = 0;
  std::uint64_t messages = 0;
};

struct Ledger {
  std::uint64_t bits_sent = 0;
  std::uint64_t messages = 0;
  std::uint64_t clock = 0;
  std::uint64_t hybrid = 0;
  std::vector<OpenPhase> stack;
  std::vector<PartyRecord> records;
};

// One dealer request index. Correlations are generated in full by whichever
// party asks first; functionalities wait until both inputs are present.
struct DealerSlot {
  std::string desc;
  std::array<std::optional<std::vector<std::vector<Ring>>>, 2> halves;
  std::array<std::uint64_t, 2> bits{};
  std::array<std::optional<HybridPayload>, 2> inputs;
  bool computed = false;
  int taken = 0;
  std::uint64_t sync_clock = 0;
};

class SessionState {
 public:
  explicit SessionState(const SessionConfig& config);
  ~SessionState();

  RunInfo run(const std::function<void(Party&)>& program);

  void push_frame(PartyId from, std::vector<std::uint8_t> frame);
  std::vector<std::uint8_t> pop_frame(PartyId self);

  // Correlation request: returns this party's half plus its bit volume.
  std::vector<std::vector<Ring>> correlation(
      PartyId self, const std::string& desc,
      const std::function<std::array<std::vector<std::vector<Ring>>, 2>(
          std::mt19937_64&)>& gen,
      const std::array<std::uint64_t, 2>& bits);
  HybridPayload functionality(PartyId self, const std::string& desc,
                              HybridPayload input, const HybridFn& fn);

  void count_triples(PartyId self, std::uint64_t n);

  Ledger& ledger(PartyId p) { return ledgers_[p]; }
  const SessionConfig& config() const { return config_; }
  void record_probe(const std::string& label, PartyId party, SharedVector& v);
  void record_probe_plain(const std::string& label, PartyId party,
                          std::span<const Ring> v);

 private:
  class Lock;
  void wait_until(Lock& lk, PartyId self, const std::function<bool()>& pred);
  void note_progress();
  std::mt19937_64 request_rng(std::uint64_t k) const;
  Transcript merge() const;
  void run_cooperative(const std::function<void(Party&)>& program);
  void run_threaded(const std::function<void(Party&)>& program);
  void body(PartyId u, const std::function<void(Party&)>& program);

  SessionConfig config_;
  std::mutex mu_;
  std::condition_variable cv_;
  std::array<std::deque<std::vector<std::uint8_t>>, 2> inbox_;
  std::map<std::uint64_t, DealerSlot> slots_;
  std::array<std::uint64_t, 2> next_request_{};
  std::array<std::uint64_t, 2> triples_used_{};
  std::array<bool, 2> done_{};
  std::array<const std::function<bool()>*, 2> waiting_{};
  std::array<std::exception_ptr, 2> errors_{};
  bool desync_ = false;
  bool fault_fired_ = false;
  std::uint64_t progress_ = 0;
  std::array<Ledger, 2> ledgers_;
  ProbeLog probes_;

  struct Fibers;
  std::unique_ptr<Fibers> fibers_;
};

}  // namespace mview
