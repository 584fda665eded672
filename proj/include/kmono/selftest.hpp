// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//
// The end-to-end verification suite: worked-example reproductions, the
// randomized closure/certificate/identity suites with their stated instance
// counts, and per-criterion runtime budgets.  The CLI's selftest verb and
// the acceptance test binary both run exactly this.
//

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace kmono {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // stats when passing, first defect when failing
  double ms = 0;
};

struct AcceptanceReport {
  std::uint64_t seed = 0;
  std::vector<CriterionResult> results;

  bool all_pass() const {
    for (const auto& r : results)
      if (!r.pass) return false;
    return true;
  }
};

/// Runs the acceptance criteria (all of them, or a single one when `only`
/// is 1..10).  `mutate` injects one wrong table value into the first
/// criterion to prove the harness detects failures.  `closure_trials`
/// scales the randomized closure suites (default 500 per order and mode).
AcceptanceReport run_acceptance(std::uint64_t seed, bool mutate = false, int only = 0,
                                int closure_trials = 500);

}  // namespace kmono
