// Copyright 2026 The dpbins Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dpbins/privacy_ledger.h"

#include <stdexcept>

namespace dpbins {

void PrivacyLedger::Charge(std::string label, double sensitivity, double scale,
                           std::uint64_t queries) {
  if (!(scale > 0.0) || !(sensitivity >= 0.0)) {
    throw std::invalid_argument("ledger entries need scale > 0, sensitivity >= 0");
  }
  entries_.push_back({std::move(label), sensitivity, scale, queries});
}

void PrivacyLedger::Append(const PrivacyLedger& other) {
  entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
}

double PrivacyLedger::total_epsilon() const {
  double total = 0.0;
  for (const auto& e : entries_) total += e.epsilon();
  return total;
}

}  // namespace dpbins
