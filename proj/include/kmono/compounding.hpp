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
// Compounding h(x) = sum_a f(a) prod_{i in a} g_i(x) prod_{j notin a}
// (1 - g_j(x)) of a pseudo-Boolean table with [0,1]-valued grid functions,
// the nonnegative-weight indicator decomposition certifying it for fully
// k-increasing f under point-mass inputs, and the randomized closure suites.
//

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "kmono/gen.hpp"
#include "kmono/grid_monotone.hpp"
#include "kmono/interval_partition.hpp"
#include "kmono/multilinear.hpp"

namespace kmono {

template <class T>
struct CompoundInput {
  PbFunction<T> f;
  std::vector<GridFunction<T>> gs;  // one per variable of f, all on one grid
};

template <class T>
void validate(const CompoundInput<T>& in) {
  validate(in.f, 1);
  if (static_cast<int>(in.gs.size()) != in.f.d)
    throw std::invalid_argument("CompoundInput: expected " + std::to_string(in.f.d) +
                                " grid functions, got " + std::to_string(in.gs.size()));
  for (const auto& g : in.gs) {
    validate(g);
    if (!(g.grid == in.gs[0].grid))
      throw std::invalid_argument("CompoundInput: grid functions live on different grids");
    for (const T& v : g.values)
      if (v < T(0) || v > T(1))
        throw std::invalid_argument("CompoundInput: g values must lie in [0,1]");
  }
}

/// Pointwise compounding.  Evaluated as the stated Bernoulli sum; the
/// coefficient route eval(extend(f), g(x)) is the independent cross-check.
template <class T>
GridFunction<T> compound(const CompoundInput<T>& in) {
  validate(in);
  const Grid& grid = in.gs[0].grid;
  GridFunction<T> h{grid, std::vector<T>(grid.size())};
  std::vector<T> y(in.f.d);
  for (std::size_t m = 0; m < grid.size(); ++m) {
    for (int i = 0; i < in.f.d; ++i) y[i] = in.gs[i].values[m];
    h.values[m] = bernoulli_eval(in.f, std::span<const T>(y));
  }
  return h;
}

template <class T>
GridFunction<T> compound(const PbFunction<T>& f, const std::vector<GridFunction<T>>& gs) {
  return compound(CompoundInput<T>{f, gs});
}

// ---------------------------------------------------------------------------
// Indicator decomposition certificate
// ---------------------------------------------------------------------------

struct CertificateTerm {
  Rat weight;
  std::optional<Point> threshold;  // nullopt = "always" (the empty-set term)
  bool low_order = true;           // |alpha| < k group vs interval group
  Mask alpha = 0;                  // the alpha (low) or sigma_j (interval)
  Mask tau = 0;                    // tau_j for interval terms, == alpha otherwise
};

struct Certificate {
  int d = 0;
  int k = 0;
  std::vector<CertificateTerm> terms;
};

class CertificateRefused : public std::runtime_error {
 public:
  CertificateRefused(const std::string& what, CubeWitness<Rat> w)
      : std::runtime_error(what), witness(std::move(w)) {}
  CubeWitness<Rat> witness;
};

/// The proof-of-closure certificate for compounding with point-mass d.f.s at
/// the given points: one threshold indicator per alpha with |alpha| < k plus
/// one per set-interval group, all with nonnegative weights summing to f([d]).
/// Refused (with the checker's witness) unless f is fully k-increasing and
/// f(empty) >= 0.
Certificate indicator_decomposition(const PbFunction<Rat>& f, int k,
                                    const std::vector<Point>& points, const Grid& grid);

/// Reconstruction sum_j weight_j * 1_{x >= threshold_j} on the grid.
GridFunction<Rat> certificate_step_function(const Certificate& cert, const Grid& grid);

// ---------------------------------------------------------------------------
// Randomized closure suites
// ---------------------------------------------------------------------------

/// Distribution function of a random subnormalized measure: integer masses
/// in {0..3} biased toward zero, divided by (sum + slack).
GridFunction<Rat> random_subnormalized_df(const Grid& grid, std::mt19937_64& eng);

/// Distribution function of a random probability measure (total mass one).
GridFunction<Rat> random_probability_df(const Grid& grid, std::mt19937_64& eng);

/// Random fully-alternating [0,1] function: the negate-reflect dual of a
/// random d.f. generated on the reflected grid.
GridFunction<Rat> random_alternating_01(const Grid& grid, std::mt19937_64& eng);

struct ClosureReport {
  Mode mode = Mode::Increasing;
  int d = 0;
  int k = 0;
  int trials = 0;
  int passes = 0;
  std::uint64_t seed = 0;
};

class ClosureFailure : public std::runtime_error {
 public:
  ClosureFailure(const std::string& what, int trial_in, std::uint64_t seed_in)
      : std::runtime_error(what), trial(trial_in), seed(seed_in) {}
  int trial = 0;
  std::uint64_t seed = 0;
};

/// Per trial: draw f fully k-monotone, d grid functions of the matching kind
/// on a random k-dimensional grid, compound, and demand the checker passes
/// with zero tolerance.  Any failure throws with the reproduction seed.
/// Caps: d <= 4, k <= 3, axes <= 3 points, trials <= 10^4; mode is
/// Increasing or Alternating.
ClosureReport closure_test(Mode mode, int d, int k, int max_axis_points, int trials,
                           std::uint64_t seed);

// ---------------------------------------------------------------------------
// Counterexample machinery
// ---------------------------------------------------------------------------

/// Evaluates p at (g_1(x1), ..., g_d(xd)) over the product of the inputs'
/// grids (product dimension capped at 4).
template <class T>
GridFunction<T> tensor_compose(const MlPoly<T>& p, const std::vector<GridFunction<T>>& gs) {
  validate(p);
  if (static_cast<int>(gs.size()) != p.d)
    throw std::invalid_argument("tensor_compose: expected " + std::to_string(p.d) +
                                " grid functions");
  Grid prod;
  for (const auto& g : gs) {
    validate(g);
    for (const Axis& a : g.grid.axes) prod.axes.push_back(a);
  }
  if (prod.dim() > 4)
    throw std::invalid_argument("tensor_compose: product dimension " +
                                std::to_string(prod.dim()) + " exceeds the cap of 4");
  validate(prod);

  GridFunction<T> out{prod, std::vector<T>(prod.size())};
  IndexTuple idx(prod.dim(), 0);
  std::vector<T> y(p.d);
  bool more = true;
  while (more) {
    int off = 0;
    for (int i = 0; i < p.d; ++i) {
      const Grid& gi = gs[i].grid;
      IndexTuple sub(idx.begin() + off, idx.begin() + off + gi.dim());
      y[i] = gs[i].values[flat_index(gi, sub)];
      off += gi.dim();
    }
    out.values[flat_index(prod, idx)] = eval(p, std::span<const T>(y));
    more = next_tuple(prod, idx);
  }
  return out;
}

struct IndicatorCompositionReport {
  GridFunction<Rat> composed;   // the pointwise composition, an indicator
  Rat delta_value;              // D^{(1,1)}_{(1/2,1/2)} at (1/2,1/2)
  bool phi_fully_3_increasing = false;
  bool g_fully_2_increasing = false;
  bool composed_is_indicator = false;

  bool pass() const {
    return delta_value == Rat(-1) && phi_fully_3_increasing && g_fully_2_increasing &&
           composed_is_indicator;
  }
};

/// The composed indicator showing that a fully 3-increasing non-multilinear
/// outer function need not preserve fully 2-increasing inputs.
IndicatorCompositionReport indicator_composition_counterexample();

}  // namespace kmono
