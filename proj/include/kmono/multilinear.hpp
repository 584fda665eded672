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
// Multilinear polynomials p(x) = sum_a c_a x^a (no variable squared) and the
// extension of a pseudo-Boolean table: the unique multilinear polynomial
// agreeing with it on the cube's vertices.  Its coefficients are the subset
// differences (D_a f)(0), so extend/to_table are a Moebius/zeta transform
// pair and run in O(d 2^d).
//

#pragma once

#include <cmath>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "kmono/subset_core.hpp"

namespace kmono {

template <class T>
struct MlPoly {
  int d = 0;
  std::vector<T> coeffs;  // 2^d entries, index = variable-set bitmask
};

template <class T>
void validate(const MlPoly<T>& p, int min_d = 0) {
  if (p.d < min_d || p.d > kMaxGroundSize)
    throw std::invalid_argument("MlPoly: d = " + std::to_string(p.d) + " out of range");
  if (p.coeffs.size() != (std::size_t{1} << p.d))
    throw std::invalid_argument("MlPoly: expected " + std::to_string(std::size_t{1} << p.d) +
                                " coefficients, got " + std::to_string(p.coeffs.size()));
  if constexpr (std::is_floating_point_v<T>) {
    for (const T& v : p.coeffs)
      if (!std::isfinite(v)) throw std::invalid_argument("MlPoly: non-finite coefficient");
  }
}

template <class T>
bool operator==(const MlPoly<T>& a, const MlPoly<T>& b) {
  return a.d == b.d && a.coeffs == b.coeffs;
}

template <class T>
MlPoly<T> extend(const PbFunction<T>& f) {
  validate(f);
  std::vector<T> c = f.values;
  difference_transform(c, f.d);
  return {f.d, std::move(c)};
}

template <class T>
PbFunction<T> to_table(const MlPoly<T>& p) {
  validate(p);
  std::vector<T> v = p.coeffs;
  cumulative_transform(v, p.d);
  return {p.d, std::move(v)};
}

/// Coefficient-form evaluation, binding one variable at a time (O(2^d)).
template <class T>
T eval(const MlPoly<T>& p, std::span<const T> x) {
  validate(p);
  if (static_cast<int>(x.size()) != p.d)
    throw std::invalid_argument("eval: expected " + std::to_string(p.d) + " coordinates");
  std::vector<T> c = p.coeffs;
  for (int i = p.d - 1; i >= 0; --i) {
    const std::size_t half = std::size_t{1} << i;
    for (std::size_t m = 0; m < half; ++m) c[m] += x[i] * c[m | half];
    c.resize(half);
  }
  return c[0];
}

/// Bernoulli-form evaluation sum_a f(a) x^a (1-x)^{a^c}, straight from the
/// table.  Kept as the independent route for the form-equivalence checks.
template <class T>
T bernoulli_eval(const PbFunction<T>& f, std::span<const T> x) {
  validate(f);
  if (static_cast<int>(x.size()) != f.d)
    throw std::invalid_argument("bernoulli_eval: expected " + std::to_string(f.d) +
                                " coordinates");
  T acc{};
  for (std::size_t a = 0; a < f.values.size(); ++a) {
    T term = f.values[a];
    for (int i = 0; i < f.d; ++i) {
      if (a & (std::size_t{1} << i))
        term *= x[i];
      else
        term *= T(1) - x[i];
    }
    acc += term;
  }
  return acc;
}

/// Partial derivative with respect to every variable in beta, as a
/// polynomial over the compacted remaining variables.
template <class T>
struct MlPartial {
  MlPoly<T> poly;
  std::vector<int> vars;  // compacted variable j -> original variable (1-based)

  Mask expand(Mask compact) const {
    Mask m = 0;
    for (std::size_t j = 0; j < vars.size(); ++j)
      if (compact & (Mask{1} << j)) m |= Mask{1} << (vars[j] - 1);
    return m;
  }
};

template <class T>
MlPartial<T> partial(const MlPoly<T>& p, Mask beta) {
  validate(p);
  check_mask(beta, p.d, "partial(beta)");
  MlPartial<T> out;
  const Mask comp = full_mask(p.d) ^ beta;
  out.vars = mask_elements(comp);
  out.poly.d = popcount(comp);
  out.poly.coeffs.resize(std::size_t{1} << out.poly.d);
  for (Mask c = 0; c < out.poly.coeffs.size(); ++c)
    out.poly.coeffs[c] = p.coeffs[out.expand(c) | beta];
  return out;
}

/// By the vertex criterion, fully k-monotone on all of [0,1]^d is decided by
/// the cube check of the restriction.
template <class T>
CubeCheck<T> is_fully_k_on_cube(const MlPoly<T>& p, int k, Mode mode, const T& eps = T(0)) {
  return is_fully_k(to_table(p), k, mode, eps);
}

/// p(c .* x) as a multilinear polynomial: each coefficient picks up the
/// product of its variables' scale factors.  Requires 0 <= c_i <= 1.
template <class T>
MlPoly<T> argument_scale(const MlPoly<T>& p, std::span<const T> c) {
  validate(p);
  if (static_cast<int>(c.size()) != p.d)
    throw std::invalid_argument("argument_scale: expected " + std::to_string(p.d) + " factors");
  for (const T& ci : c)
    if (ci < T(0) || ci > T(1))
      throw std::invalid_argument("argument_scale: factors must lie in [0,1]");
  MlPoly<T> out{p.d, p.coeffs};
  for (std::size_t a = 1; a < out.coeffs.size(); ++a) {
    T prod(1);
    std::size_t rest = a;
    while (rest) {
      const int i = std::countr_zero(rest);
      prod *= c[i];
      rest ^= std::size_t{1} << i;
    }
    out.coeffs[a] = p.coeffs[a] * prod;
  }
  return out;
}

/// phi applied valuewise to the table; phi is a finite value map and must be
/// defined at every table value.
template <class T>
PbFunction<T> apply_value_map(const std::map<T, T>& phi, const PbFunction<T>& f) {
  validate(f);
  PbFunction<T> out{f.d, std::vector<T>(f.values.size())};
  for (std::size_t a = 0; a < f.values.size(); ++a) {
    auto it = phi.find(f.values[a]);
    if (it == phi.end())
      throw std::invalid_argument("compose_univariate: phi undefined at table value");
    out.values[a] = it->second;
  }
  return out;
}

/// Extension of phi∘f (not phi applied to the extension, which is generally
/// a different, non-multilinear function).
template <class T>
MlPoly<T> compose_univariate(const std::map<T, T>& phi, const PbFunction<T>& f) {
  return extend(apply_value_map(phi, f));
}

enum class BuiltinPhi { Sqrt, Log1p, Power };

/// Named irrational maps run in binary64; results carry the stated
/// comparison tolerance of the floating path (default 1e-12 in callers).
inline MlPoly<double> compose_univariate_builtin(BuiltinPhi which, double theta,
                                                 const PbFunction<Rat>& f) {
  validate(f, 1);
  PbFunction<double> g{f.d, std::vector<double>(f.values.size())};
  for (std::size_t a = 0; a < f.values.size(); ++a) {
    const double v = to_double(f.values[a]);
    double r = 0;
    switch (which) {
      case BuiltinPhi::Sqrt:
        if (v < 0) throw std::invalid_argument("compose_univariate: sqrt undefined at " +
                                               format_rational(f.values[a]));
        r = std::sqrt(v);
        break;
      case BuiltinPhi::Log1p:
        if (v <= -1) throw std::invalid_argument("compose_univariate: log1p undefined at " +
                                                 format_rational(f.values[a]));
        r = std::log1p(v);
        break;
      case BuiltinPhi::Power:
        if (v < 0) throw std::invalid_argument("compose_univariate: power undefined at " +
                                               format_rational(f.values[a]));
        r = std::pow(v, theta);
        break;
    }
    g.values[a] = r;
  }
  return extend(g);
}

}  // namespace kmono
