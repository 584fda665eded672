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

#include "kmono/gen.hpp"

#include <algorithm>
#include <stdexcept>

#include "kmono/multilinear.hpp"

namespace kmono {
namespace {

constexpr int kRejectionBudget = 10000;

// Nonnegative combination of threshold indicators: every subset-difference
// coefficient is >= 0, hence fully d-increasing.
PbFunction<Rat> combination_table(int d, std::mt19937_64& eng) {
  const Mask full = full_mask(d);
  const int terms = rand_int(eng, 1, 1 << d);
  PbFunction<Rat> f{d, std::vector<Rat>(std::size_t{1} << d, Rat(0))};
  for (int t = 0; t < terms; ++t) {
    const int w = rand_int(eng, 0, 3);
    const Mask alpha = static_cast<Mask>(rand_int(eng, 0, static_cast<int>(full)));
    if (w == 0) continue;
    for (Mask g = 0; g <= full; ++g)
      if ((alpha & ~g) == 0) f.values[g] += w;
  }
  return f;
}

// Small-integer tables with negative mass pushed above order k: draw
// nonnegative coefficients, subtract from a few higher-order ones, accept
// when the checker passes.  This is where strictly-k tables come from.
PbFunction<Rat> rejection_table(int d, int k, std::mt19937_64& eng) {
  const Mask full = full_mask(d);
  std::vector<Mask> highs;
  for (Mask a = 0; a <= full; ++a)
    if (popcount(a) > k) highs.push_back(a);

  for (int attempt = 0; attempt < kRejectionBudget; ++attempt) {
    MlPoly<Rat> p{d, std::vector<Rat>(std::size_t{1} << d)};
    for (Mask a = 0; a <= full; ++a) p.coeffs[a] = rand_int(eng, 0, 3);
    if (!highs.empty()) {
      const int hits = rand_int(eng, 1, 3);
      for (int t = 0; t < hits; ++t) {
        const Mask a = highs[rand_int(eng, 0, static_cast<int>(highs.size()) - 1)];
        p.coeffs[a] -= rand_int(eng, 1, 3);
      }
    }
    PbFunction<Rat> f = to_table(p);
    if (is_fully_k(f, k, Mode::Increasing).ok) return f;
  }
  throw std::runtime_error("gen_fully_k: rejection budget exhausted (d=" + std::to_string(d) +
                           ", k=" + std::to_string(k) + ")");
}

PbFunction<Rat> increasing_table(int d, int k, std::mt19937_64& eng) {
  if (rand_int(eng, 0, 1) == 0) return combination_table(d, eng);
  return rejection_table(d, k, eng);
}

}  // namespace

PbFunction<Rat> gen_fully_k(int d, int k, Mode mode, std::mt19937_64& eng) {
  if (d < 1 || d > 6) throw std::invalid_argument("gen_fully_k: d must be in [1,6]");
  if (k < 1 || k > d) throw std::invalid_argument("gen_fully_k: k must be in [1,d]");

  PbFunction<Rat> f;
  switch (mode) {
    case Mode::Increasing:
      f = increasing_table(d, k, eng);
      break;
    case Mode::Decreasing:
      f = reflect_table(increasing_table(d, k, eng));
      break;
    case Mode::Alternating: {
      PbFunction<Rat> g = increasing_table(d, k, eng);
      const Rat c = *std::max_element(g.values.begin(), g.values.end());
      f = complement_dual(g, c);
      break;
    }
  }

  CubeCheck<Rat> chk = is_fully_k(f, k, mode);
  if (!chk.ok) throw std::logic_error("gen_fully_k: generated table failed its own check");
  return f;
}

PbFunction<Rat> gen_fully_k(int d, int k, Mode mode, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  return gen_fully_k(d, k, mode, eng);
}

}  // namespace kmono
