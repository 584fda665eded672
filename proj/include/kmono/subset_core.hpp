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
// Pseudo-Boolean functions on the subset lattice of [d] and their mixed
// difference operators.  A table value at bitmask a is f(a); the operator
// delta_point computes (D_a f)(g) = sum over b subseteq a of
// (-1)^{|a|-|b|} f(g union b), which for a != 0 equals the mixed first
// difference of f over the corner set {g union b}.
//

#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "kmono/rational.hpp"
#include "kmono/subset.hpp"

namespace kmono {

template <class T>
struct PbFunction {
  int d = 0;
  std::vector<T> values;  // 2^d entries, index = subset bitmask
};

template <class T>
void validate(const PbFunction<T>& f, int min_d = 0) {
  if (f.d < min_d || f.d > kMaxGroundSize)
    throw std::invalid_argument("PbFunction: d = " + std::to_string(f.d) + " outside [" +
                                std::to_string(min_d) + "," + std::to_string(kMaxGroundSize) + "]");
  if (f.values.size() != (std::size_t{1} << f.d))
    throw std::invalid_argument("PbFunction: expected " + std::to_string(std::size_t{1} << f.d) +
                                " values, got " + std::to_string(f.values.size()));
  if constexpr (std::is_floating_point_v<T>) {
    for (const T& v : f.values)
      if (!std::isfinite(v)) throw std::invalid_argument("PbFunction: non-finite value");
  }
}

template <class T>
bool operator==(const PbFunction<T>& a, const PbFunction<T>& b) {
  return a.d == b.d && a.values == b.values;
}

/// (D_a f)(g) for disjoint a, g: the alternating sum over subsets of a.
template <class T>
T delta_point(const PbFunction<T>& f, Mask alpha, Mask gamma) {
  check_mask(alpha, f.d, "delta_point(alpha)");
  check_mask(gamma, f.d, "delta_point(gamma)");
  if (alpha & gamma)
    throw std::invalid_argument("delta_point: gamma " + mask_to_string(gamma) +
                                " overlaps alpha " + mask_to_string(alpha));
  const int na = popcount(alpha);
  T acc{};
  for_each_submask(alpha, [&](Mask beta) {
    if ((na - popcount(beta)) % 2 == 0)
      acc += f.values[gamma | beta];
    else
      acc -= f.values[gamma | beta];
  });
  return acc;
}

/// Partial table over the complement of some alpha, with the compacted
/// ground set recorded as an explicit element map.
template <class T>
struct SubTable {
  PbFunction<T> table;        // over the compacted ground set, d = |alpha^c|
  std::vector<int> elements;  // compacted bit j -> original element (1-based)

  Mask expand(Mask compact) const {
    Mask m = 0;
    for (std::size_t j = 0; j < elements.size(); ++j)
      if (compact & (Mask{1} << j)) m |= Mask{1} << (elements[j] - 1);
    return m;
  }
};

namespace detail {
template <class T>
SubTable<T> make_subtable(const PbFunction<T>& f, Mask alpha) {
  check_mask(alpha, f.d, "subtable(alpha)");
  SubTable<T> out;
  const Mask comp = full_mask(f.d) ^ alpha;
  out.elements = mask_elements(comp);
  out.table.d = popcount(comp);
  out.table.values.resize(std::size_t{1} << out.table.d);
  return out;
}
}  // namespace detail

/// (E_a f)(g) = f(g union a) on {g : g subseteq a^c}.
template <class T>
SubTable<T> shift(const PbFunction<T>& f, Mask alpha) {
  SubTable<T> out = detail::make_subtable(f, alpha);
  for (Mask c = 0; c < out.table.values.size(); ++c)
    out.table.values[c] = f.values[out.expand(c) | alpha];
  return out;
}

/// The whole table of (D_a f) on {g : g subseteq a^c}.
template <class T>
SubTable<T> delta_table(const PbFunction<T>& f, Mask alpha) {
  SubTable<T> out = detail::make_subtable(f, alpha);
  for (Mask c = 0; c < out.table.values.size(); ++c)
    out.table.values[c] = delta_point(f, alpha, out.expand(c));
  return out;
}

enum class Mode { Increasing, Decreasing, Alternating };

inline const char* mode_name(Mode m) {
  switch (m) {
    case Mode::Increasing: return "increasing";
    case Mode::Decreasing: return "decreasing";
    case Mode::Alternating: return "alternating";
  }
  return "?";
}

// Sign s such that the mode's requirement reads s * (D^p f) >= -eps.
// Decreasing demands nabla^p f >= 0 and alternating nabla^p f <= 0,
// with nabla^p = (-1)^{|p|} D^p.
inline int mode_sign(Mode mode, int order) {
  switch (mode) {
    case Mode::Increasing: return +1;
    case Mode::Decreasing: return order % 2 == 0 ? +1 : -1;
    case Mode::Alternating: return order % 2 == 0 ? -1 : +1;
  }
  return +1;
}

template <class T>
struct CubeWitness {
  Mask beta = 0;
  Mask gamma = 0;
  T value{};  // raw (D_beta f)(gamma)
};

template <class T>
struct CubeCheck {
  bool ok = true;
  std::optional<CubeWitness<T>> witness;
  explicit operator bool() const { return ok; }
};

/// Fully k-monotone check on the cube: every (D_b f)(g) with 0 < |b| <= k
/// carries the sign demanded by the mode.  On failure the witness is the
/// lexicographically smallest failing (beta, gamma) under mask ordering.
template <class T>
CubeCheck<T> is_fully_k(const PbFunction<T>& f, int k, Mode mode, const T& eps = T(0)) {
  validate(f, 1);
  if (k < 1 || k > f.d)
    throw std::invalid_argument("is_fully_k: k = " + std::to_string(k) + " outside [1," +
                                std::to_string(f.d) + "]");
  if (eps < T(0)) throw std::invalid_argument("is_fully_k: eps must be >= 0");
  const Mask full = full_mask(f.d);
  for (Mask beta = 1; beta <= full; ++beta) {
    if (popcount(beta) > k) continue;
    const int sign = mode_sign(mode, popcount(beta));
    const Mask comp = full ^ beta;
    CubeCheck<T> found;
    for_each_submask(comp, [&](Mask gamma) {
      if (!found.ok) return;
      T v = delta_point(f, beta, gamma);
      T margin = sign > 0 ? v : T(-v);
      if (margin < -eps) {
        found.ok = false;
        found.witness = CubeWitness<T>{beta, gamma, std::move(v)};
      }
    });
    if (!found.ok) return found;
  }
  return {};
}

/// c - f(complement): swaps fully k-alternating with fully k-increasing.
template <class T>
PbFunction<T> complement_dual(const PbFunction<T>& f, const T& c) {
  const Mask full = full_mask(f.d);
  PbFunction<T> g{f.d, std::vector<T>(f.values.size())};
  for (std::size_t a = 0; a < f.values.size(); ++a)
    g.values[a] = c - f.values[full ^ static_cast<Mask>(a)];
  return g;
}

/// f(complement): swaps fully k-decreasing with fully k-increasing.
template <class T>
PbFunction<T> reflect_table(const PbFunction<T>& f) {
  const Mask full = full_mask(f.d);
  PbFunction<T> g{f.d, std::vector<T>(f.values.size())};
  for (std::size_t a = 0; a < f.values.size(); ++a)
    g.values[a] = f.values[full ^ static_cast<Mask>(a)];
  return g;
}

/// Largest k with is_fully_k(f, k, mode); 0 when already k = 1 fails.
/// Uses that the property is monotone in k (the constraint set grows).
template <class T>
int max_full_order(const PbFunction<T>& f, Mode mode, const T& eps = T(0)) {
  for (int k = 1; k <= f.d; ++k)
    if (!is_fully_k(f, k, mode, eps).ok) return k - 1;
  return f.d;
}

/// In-place subset difference transform: v[a] <- sum_{b subseteq a}
/// (-1)^{|a \ b|} v[b].  This is the Moebius transform on the subset
/// lattice; the result at a is (D_a f)(0).
template <class T>
void difference_transform(std::vector<T>& v, int d) {
  for (int i = 0; i < d; ++i) {
    const std::size_t bit = std::size_t{1} << i;
    for (std::size_t m = 0; m < v.size(); ++m)
      if (m & bit) v[m] -= v[m ^ bit];
  }
}

/// Inverse of difference_transform (the zeta transform).
template <class T>
void cumulative_transform(std::vector<T>& v, int d) {
  for (int i = 0; i < d; ++i) {
    const std::size_t bit = std::size_t{1} << i;
    for (std::size_t m = 0; m < v.size(); ++m)
      if (m & bit) v[m] += v[m ^ bit];
  }
}

}  // namespace kmono
