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

#ifndef DPBINS_PRIVACY_LEDGER_H_
#define DPBINS_PRIVACY_LEDGER_H_

#include <cstdint>
#include <string>
#include <vector>

namespace dpbins {

// One Laplace query (or a run of `queries` sequentially composed ones) with
// L1 sensitivity `sensitivity` answered at noise scale `scale`.
struct LedgerEntry {
  std::string label;
  double sensitivity = 0.0;
  double scale = 0.0;
  std::uint64_t queries = 1;

  double epsilon() const {
    return static_cast<double>(queries) * sensitivity / scale;
  }
};

// Bookkeeping of what each pipeline stage spent under basic composition.
// It is an internal consistency check that the noise scales add up to the
// declared budget, not a proof of privacy.
class PrivacyLedger {
 public:
  void Charge(std::string label, double sensitivity, double scale,
              std::uint64_t queries = 1);
  void Append(const PrivacyLedger& other);

  double total_epsilon() const;
  const std::vector<LedgerEntry>& entries() const { return entries_; }

 private:
  std::vector<LedgerEntry> entries_;
};

}  // namespace dpbins

#endif  // DPBINS_PRIVACY_LEDGER_H_
