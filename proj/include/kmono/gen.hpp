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

#pragma once

#include <cstdint>
#include <random>

#include "kmono/subset_core.hpp"

namespace kmono {

/// Uniform integer in [lo, hi] drawn portably from the engine (independent
/// of the standard library's distribution implementations).
inline int rand_int(std::mt19937_64& eng, int lo, int hi) {
  return lo + static_cast<int>(eng() % static_cast<std::uint64_t>(hi - lo + 1));
}

/// Deterministic generator of fully k-monotone tables on {0,1}^d.
///
/// Two strategies, mixed 1:1: nonnegative integer combinations of threshold
/// indicators 1_{gamma >= alpha} (fully d-increasing by construction, so any
/// k works) and rejection-sampled small-integer coefficient tables whose
/// order-> k coefficients may go negative, so that tables that are fully k-
/// but not fully (k+1)-monotone occur with positive frequency.  Decreasing
/// and alternating tables are produced from increasing ones through the
/// reflection and complement duals.  All outputs are nonnegative tables.
///
/// Throws std::runtime_error when the rejection budget is exhausted.
PbFunction<Rat> gen_fully_k(int d, int k, Mode mode, std::uint64_t seed);

/// Same, drawing from a caller-owned engine.
PbFunction<Rat> gen_fully_k(int d, int k, Mode mode, std::mt19937_64& eng);

}  // namespace kmono
