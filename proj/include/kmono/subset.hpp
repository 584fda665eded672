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

#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace kmono {

// Subsets of [d] as bitmasks: element i of [d] corresponds to bit i-1.
using Mask = std::uint32_t;

inline constexpr int kMaxGroundSize = 24;

constexpr Mask full_mask(int d) { return (Mask{1} << d) - 1; }

inline int popcount(Mask m) { return std::popcount(m); }

inline void check_mask(Mask m, int d, const char* what) {
  if (m & ~full_mask(d))
    throw std::invalid_argument(std::string(what) + ": mask has bits outside the ground set");
}

/// Calls f on every submask of m in increasing numeric order (0 and m included).
template <class F>
void for_each_submask(Mask m, F&& f) {
  Mask s = 0;
  while (true) {
    f(s);
    if (s == m) break;
    s = (s - m) & m;
  }
}

/// 1-based elements of the mask, ascending.
inline std::vector<int> mask_elements(Mask m) {
  std::vector<int> out;
  for (int i = 0; m != 0; ++i, m >>= 1)
    if (m & 1u) out.push_back(i + 1);
  return out;
}

inline Mask mask_from_elements(std::span<const int> elements, int d) {
  Mask m = 0;
  for (int e : elements) {
    if (e < 1 || e > d)
      throw std::invalid_argument("element " + std::to_string(e) + " outside ground set [1," +
                                  std::to_string(d) + "]");
    m |= Mask{1} << (e - 1);
  }
  return m;
}

inline std::string mask_to_string(Mask m) {
  std::string out = "{";
  bool first = true;
  for (int e : mask_elements(m)) {
    if (!first) out += ",";
    out += std::to_string(e);
    first = false;
  }
  return out + "}";
}

}  // namespace kmono
