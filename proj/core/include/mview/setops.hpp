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

#include <map>
#include <span>
#include <vector>

#include "mview/session.hpp"
#include "mview/shared_vector.hpp"

namespace mview {

// Ideal set-operation functionalities, evaluated by the session dealer. They
// add nothing to the wire ledger; delivered output volume is recorded as
// hybrid bits.

// Both parties learn X ∩ Y, ascending.
std::vector<Ring> f_psi(Party& p, std::span<const Ring> own_keys);

struct PidOutput {
  std::map<Ring, Ring> mapping;  // own key -> identifier
  std::vector<Ring> ri_star;     // identifiers of X ∪ Y, ascending
};
PidOutput f_pid(Party& p, std::span<const Ring> own_keys);

struct CpsiOutput {
  SharedVector e;  // 1-bit binary, length |X|
  SharedVector z;  // arithmetic payload, 0 where e = 0; empty without payload
};
// The receiver supplies X; the sender supplies Y and, optionally, a payload
// aligned with Y. The receiver passes an empty payload.
CpsiOutput f_cpsi(Party& p, PartyId receiver, std::span<const Ring> keys,
                  std::span<const Ring> payload, bool with_payload = true);

}  // namespace mview
