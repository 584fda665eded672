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
// Finite-difference monotonicity on finite rational grids.
//
// The mixed difference (D^n_h f)(s) = sum_{0<=q<=n} (-1)^{|n|-|q|}
// prod_i C(n_i,q_i) f(s + q.*h) is evaluated only at step vectors h whose
// required points all lie on the grid; no interpolation ever happens.
//
// The fully-k checker has two routes: the fast one differences only
// consecutive grid points per axis (any wider mixed first difference
// telescopes into a sum of adjacent-cell ones, so the verdicts coincide),
// and the naive one enumerates every representable h.  When a check fails,
// the reported witness is canonical: the failure with the most negative
// signed margin, ties broken by p, then base point, then h.
//

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kmono/grid.hpp"
#include "kmono/subset_core.hpp"  // Mode, mode_sign

namespace kmono {

// Largest number of (s, h) configurations a single check may enumerate;
// beyond this the check refuses with a clear error instead of grinding.
inline constexpr std::size_t kMaxCheckConfigurations = 20'000'000;

template <class T>
struct GridWitness {
  std::vector<int> p;
  Point s;
  std::vector<Rat> h;
  T value{};  // raw (D^p_h f)(s)
};

template <class T>
struct GridCheck {
  bool ok = true;
  std::optional<GridWitness<T>> witness;
  explicit operator bool() const { return ok; }
};

class NotDistributionFunction : public std::runtime_error {
 public:
  explicit NotDistributionFunction(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline std::string value_text(const Rat& v) { return format_rational(v); }
inline std::string value_text(double v) { return std::to_string(v); }

inline long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// One way of differencing a single axis m times: the point indices used for
// q = 0..m and the step between consecutive ones.
struct AxisOption {
  std::vector<int> idxs;
  Rat h;
};

inline std::vector<AxisOption> axis_options(const Axis& ax, int m, bool adjacent_only) {
  std::vector<AxisOption> out;
  const int len = static_cast<int>(ax.points.size());
  if (m == 0) {
    for (int si = 0; si < len; ++si) out.push_back({{si}, Rat(0)});
    return out;
  }
  for (int si = 0; si < len; ++si) {
    const int last = adjacent_only ? std::min(si + 1, len - 1) : len - 1;
    for (int sj = si + 1; sj <= last; ++sj) {
      AxisOption opt;
      opt.idxs = {si, sj};
      opt.h = ax.points[sj] - ax.points[si];
      bool complete = true;
      for (int q = 2; q <= m; ++q) {
        auto pos = axis_find(ax, ax.points[si] + q * opt.h);
        if (!pos) {
          complete = false;
          break;
        }
        opt.idxs.push_back(*pos);
      }
      if (complete) out.push_back(std::move(opt));
    }
  }
  return out;
}

template <class T>
struct GridFailure {
  std::vector<int> p;
  std::size_t s_flat = 0;
  Point s;
  std::vector<Rat> h;
  T value{};
  T margin{};
};

template <class T>
bool worse(const GridFailure<T>& a, const GridFailure<T>& b) {
  if (a.margin != b.margin) return a.margin < b.margin;
  if (a.p != b.p) return a.p < b.p;
  if (a.s_flat != b.s_flat) return a.s_flat < b.s_flat;
  return a.h < b.h;
}

// Core enumeration shared by all grid checks.  `ps` lists the difference
// multi-orders to examine; results are schedule-independent because all
// failures are ranked, not raced.
template <class T>
GridCheck<T> run_grid_check(const GridFunction<T>& F, const std::vector<std::vector<int>>& ps,
                            Mode mode, const T& eps, bool adjacent_only, bool first_only) {
  const Grid& g = F.grid;
  const int dim = g.dim();
  std::optional<GridFailure<T>> best;

  for (const std::vector<int>& p : ps) {
    int order = 0;
    for (int v : p) order += v;
    const int sign = mode_sign(mode, order);

    // refuse oversized enumerations up front, from the cheap per-axis bound
    std::size_t bound = 1;
    for (int i = 0; i < dim; ++i) {
      const std::size_t len = g.axes[i].points.size();
      const std::size_t axis_bound =
          p[i] == 0 ? len : (adjacent_only ? len : std::max<std::size_t>(len * (len - 1) / 2, 1));
      if (bound > kMaxCheckConfigurations / std::max<std::size_t>(axis_bound, 1))
        throw std::invalid_argument(
            "grid check: enumeration exceeds the configuration cap; shrink the grid or the "
            "difference order");
      bound *= std::max<std::size_t>(axis_bound, 1);
    }

    std::vector<std::vector<AxisOption>> opts(dim);
    bool vacuous = false;
    for (int i = 0; i < dim; ++i) {
      opts[i] = axis_options(g.axes[i], p[i], adjacent_only);
      if (opts[i].empty()) vacuous = true;
    }
    if (vacuous) continue;

    std::vector<std::size_t> choice(dim, 0);
    while (true) {
      // D^p_h at this choice: corners indexed per-axis by q_i
      T delta{};
      std::vector<int> q(dim, 0);
      while (true) {
        long long coef = 1;
        int qsum = 0;
        for (int i = 0; i < dim; ++i) {
          coef *= binomial(p[i], q[i]);
          qsum += q[i];
        }
        std::size_t flat = 0;
        for (int i = 0; i < dim; ++i)
          flat = flat * g.axes[i].points.size() + opts[i][choice[i]].idxs[q[i]];
        T term = F.values[flat] * T(coef);
        if ((order - qsum) % 2 == 0)
          delta += term;
        else
          delta -= term;
        int ax = dim - 1;
        while (ax >= 0 && q[ax] == p[ax]) q[ax--] = 0;
        if (ax < 0) break;
        ++q[ax];
      }

      T margin = sign > 0 ? delta : T(-delta);
      if (margin < -eps) {
        GridFailure<T> fail;
        fail.p = p;
        IndexTuple base(dim);
        fail.h.resize(dim);
        for (int i = 0; i < dim; ++i) {
          base[i] = opts[i][choice[i]].idxs[0];
          fail.h[i] = opts[i][choice[i]].h;
        }
        fail.s_flat = flat_index(g, base);
        fail.s = point_at(g, base);
        fail.value = delta;
        fail.margin = std::move(margin);
        if (first_only) {
          GridCheck<T> out;
          out.ok = false;
          out.witness = GridWitness<T>{fail.p, fail.s, fail.h, fail.value};
          return out;
        }
        if (!best || worse(fail, *best)) best = std::move(fail);
      }

      int ax = dim - 1;
      while (ax >= 0 && choice[ax] + 1 == opts[ax].size()) choice[ax--] = 0;
      if (ax < 0) break;
      ++choice[ax];
    }
  }

  GridCheck<T> out;
  if (best) {
    out.ok = false;
    out.witness = GridWitness<T>{best->p, best->s, best->h, best->value};
  }
  return out;
}

inline std::vector<std::vector<int>> binary_orders(int dim, int k) {
  std::vector<std::vector<int>> ps;
  for (Mask m = 1; m < (Mask{1} << dim); ++m) {
    if (popcount(m) > k) continue;
    std::vector<int> p(dim, 0);
    for (int i = 0; i < dim; ++i) p[i] = (m >> i) & 1u;
    ps.push_back(std::move(p));
  }
  return ps;
}

}  // namespace detail

/// Mixed forward difference at explicit (n, h, s).  Every point
/// s + q.*h for 0 <= q <= n must exist on the grid.
template <class T>
T forward_difference(const GridFunction<T>& F, const MultiIndex& n, const StepVector& h,
                     const Point& s) {
  validate(F);
  const int dim = F.grid.dim();
  validate(n, dim);
  validate(h, dim);
  if (static_cast<int>(s.size()) != dim)
    throw std::invalid_argument("forward_difference: base point has wrong dimension");

  const int order = total_order(n);
  T acc{};
  std::vector<int> q(dim, 0);
  while (true) {
    Point pt(dim);
    for (int i = 0; i < dim; ++i) pt[i] = s[i] + q[i] * h.h[i];
    auto idx = grid_find(F.grid, pt);
    if (!idx) {
      std::string qs = "(";
      for (int i = 0; i < dim; ++i) qs += (i ? "," : "") + std::to_string(q[i]);
      qs += ")";
      throw std::domain_error("forward_difference: point " + point_to_string(pt) +
                              " off grid at q=" + qs);
    }
    long long coef = 1;
    int qsum = 0;
    for (int i = 0; i < dim; ++i) {
      coef *= detail::binomial(n.n[i], q[i]);
      qsum += q[i];
    }
    T term = F.values[flat_index(F.grid, *idx)] * T(coef);
    if ((order - qsum) % 2 == 0)
      acc += term;
    else
      acc -= term;
    int ax = dim - 1;
    while (ax >= 0 && q[ax] == n.n[ax]) q[ax--] = 0;
    if (ax < 0) break;
    ++q[ax];
  }
  return acc;
}

/// nabla^n_h = (-1)^{|n|} D^n_h.
template <class T>
T nabla_difference(const GridFunction<T>& F, const MultiIndex& n, const StepVector& h,
                   const Point& s) {
  T v = forward_difference(F, n, h, s);
  return total_order(n) % 2 == 0 ? v : T(-v);
}

/// n-monotonicity: checks every 0 != p <= n over every on-grid (s, h).
template <class T>
GridCheck<T> check_n_monotone(const GridFunction<T>& F, const MultiIndex& n, Mode mode,
                              const T& eps = T(0)) {
  validate(F);
  const int dim = F.grid.dim();
  validate(n, dim);
  if (total_order(n) == 0) throw std::invalid_argument("check_n_monotone: n must be nonzero");
  if (eps < T(0)) throw std::invalid_argument("check_n_monotone: eps must be >= 0");

  std::vector<std::vector<int>> ps;
  std::vector<int> p(dim, 0);
  while (true) {
    int ax = dim - 1;
    while (ax >= 0 && p[ax] == n.n[ax]) p[ax--] = 0;
    if (ax < 0) break;
    ++p[ax];
    ps.push_back(p);
  }
  return detail::run_grid_check(F, ps, mode, eps, /*adjacent_only=*/false, /*first_only=*/false);
}

/// Adjacent-step fully-k check (the fast route).
template <class T>
GridCheck<T> check_fully_k_adjacent(const GridFunction<T>& F, int k, Mode mode,
                                    const T& eps = T(0)) {
  validate(F);
  if (k < 1 || k > F.grid.dim())
    throw std::invalid_argument("check_fully_k: k = " + std::to_string(k) + " outside [1," +
                                std::to_string(F.grid.dim()) + "]");
  if (eps < T(0)) throw std::invalid_argument("check_fully_k: eps must be >= 0");
  return detail::run_grid_check(F, detail::binary_orders(F.grid.dim(), k), mode, eps,
                                /*adjacent_only=*/true, /*first_only=*/true);
}

/// Exhaustive-h fully-k check (the reference route, canonical witness).
template <class T>
GridCheck<T> check_fully_k_naive(const GridFunction<T>& F, int k, Mode mode,
                                 const T& eps = T(0)) {
  validate(F);
  if (k < 1 || k > F.grid.dim())
    throw std::invalid_argument("check_fully_k: k = " + std::to_string(k) + " outside [1," +
                                std::to_string(F.grid.dim()) + "]");
  if (eps < T(0)) throw std::invalid_argument("check_fully_k: eps must be >= 0");
  return detail::run_grid_check(F, detail::binary_orders(F.grid.dim(), k), mode, eps,
                                /*adjacent_only=*/false, /*first_only=*/false);
}

/// Fully-k check: fast verdict, canonical naive witness when it fails.
template <class T>
GridCheck<T> check_fully_k(const GridFunction<T>& F, int k, Mode mode, const T& eps = T(0)) {
  GridCheck<T> fast = check_fully_k_adjacent(F, k, mode, eps);
  if (fast.ok) return fast;
  return check_fully_k_naive(F, k, mode, eps);
}

/// F(-x) on the reflected grid -A.
template <class T>
GridFunction<T> reflect(const GridFunction<T>& F) {
  validate(F);
  const int dim = F.grid.dim();
  GridFunction<T> out;
  out.grid.axes.resize(dim);
  for (int i = 0; i < dim; ++i) {
    const auto& pts = F.grid.axes[i].points;
    out.grid.axes[i].points.resize(pts.size());
    for (std::size_t j = 0; j < pts.size(); ++j)
      out.grid.axes[i].points[j] = -pts[pts.size() - 1 - j];
  }
  out.values.resize(F.values.size());
  IndexTuple idx(dim, 0);
  bool more = true;
  while (more) {
    IndexTuple r(dim);
    for (int i = 0; i < dim; ++i)
      r[i] = static_cast<int>(F.grid.axes[i].points.size()) - 1 - idx[i];
    out.values[flat_index(out.grid, r)] = F.values[flat_index(F.grid, idx)];
    more = next_tuple(F.grid, idx);
  }
  return out;
}

/// c - F(-x) on -A: carries fully alternating to fully increasing.
template <class T>
GridFunction<T> negate_reflect(const GridFunction<T>& F, const T& c) {
  GridFunction<T> out = reflect(F);
  for (T& v : out.values) v = c - v;
  return out;
}

/// Distribution function of the point mass at a: the indicator of {x >= a}.
template <class T = Rat>
GridFunction<T> point_mass_df(const Point& a, const Grid& grid) {
  validate(grid);
  auto at = grid_find(grid, a);
  if (!at) throw std::invalid_argument("point_mass_df: point " + point_to_string(a) + " off grid");
  GridFunction<T> out{grid, std::vector<T>(grid.size(), T(0))};
  IndexTuple idx(grid.dim(), 0);
  bool more = true;
  while (more) {
    bool ge = true;
    for (int i = 0; i < grid.dim() && ge; ++i) ge = idx[i] >= (*at)[i];
    if (ge) out.values[flat_index(grid, idx)] = T(1);
    more = next_tuple(grid, idx);
  }
  return out;
}

/// Extracts the measure of a distribution function by inclusion-exclusion
/// over axis predecessors (terms without a predecessor read F := 0).
/// Requires F nonnegative and fully dim-increasing.
template <class T>
DiscreteMeasure<T> df_to_measure(const GridFunction<T>& F, const T& eps = T(0)) {
  validate(F);
  const int dim = F.grid.dim();
  for (std::size_t i = 0; i < F.values.size(); ++i)
    if (F.values[i] < -eps)
      throw NotDistributionFunction("df_to_measure: negative value at " +
                                    point_to_string(point_at(F.grid, tuple_index(F.grid, i))));
  GridCheck<T> chk = check_fully_k(F, dim, Mode::Increasing, eps);
  if (!chk.ok) {
    const auto& w = *chk.witness;
    std::string ph = "p=(";
    for (std::size_t i = 0; i < w.p.size(); ++i) ph += (i ? "," : "") + std::to_string(w.p[i]);
    throw NotDistributionFunction("df_to_measure: not fully " + std::to_string(dim) +
                                  "-increasing; witness " + ph + "), s=" + point_to_string(w.s) +
                                  ", value=" + detail::value_text(w.value));
  }

  DiscreteMeasure<T> out;
  IndexTuple t(dim, 0);
  bool more = true;
  while (more) {
    T m{};
    for (Mask q = 0; q < (Mask{1} << dim); ++q) {
      IndexTuple idx = t;
      bool exists = true;
      for (int i = 0; i < dim && exists; ++i) {
        if (q & (Mask{1} << i)) {
          if (t[i] == 0)
            exists = false;
          else
            idx[i] = t[i] - 1;
        }
      }
      if (!exists) continue;
      if (popcount(q) % 2 == 0)
        m += F.values[flat_index(F.grid, idx)];
      else
        m -= F.values[flat_index(F.grid, idx)];
    }
    if (m < T(0)) {
      if (m < -eps)
        throw NotDistributionFunction("df_to_measure: negative mass at " +
                                      point_to_string(point_at(F.grid, t)));
      m = T(0);  // floating clamp within eps
    }
    if (m > T(0)) {
      out.support.push_back(point_at(F.grid, t));
      out.masses.push_back(std::move(m));
    }
    more = next_tuple(F.grid, t);
  }
  return out;
}

/// F(x) = total mass at support points <= x, by per-axis running sums.
template <class T>
GridFunction<T> measure_to_df(const DiscreteMeasure<T>& mu, const Grid& grid) {
  validate(grid);
  validate(mu);
  GridFunction<T> out{grid, std::vector<T>(grid.size(), T(0))};
  for (std::size_t i = 0; i < mu.support.size(); ++i) {
    auto idx = grid_find(grid, mu.support[i]);
    if (!idx)
      throw std::invalid_argument("measure_to_df: support point " +
                                  point_to_string(mu.support[i]) + " off grid");
    out.values[flat_index(grid, *idx)] += mu.masses[i];
  }
  const int dim = grid.dim();
  std::vector<std::size_t> stride(dim, 1);
  for (int i = dim - 2; i >= 0; --i) stride[i] = stride[i + 1] * grid.axes[i + 1].points.size();
  for (int i = 0; i < dim; ++i) {
    const std::size_t len = grid.axes[i].points.size();
    for (std::size_t m = 0; m < out.values.size(); ++m) {
      const std::size_t pos = (m / stride[i]) % len;
      if (pos >= 1) out.values[m] += out.values[m - stride[i]];
    }
  }
  return out;
}

/// Finite-support approximation step: the measure of F restricted to the
/// sub-grid, renormalized by F(max alpha), extended by zero, returned as a
/// distribution function on the full grid.
template <class T>
GridFunction<T> subgrid_approx(const GridFunction<T>& F,
                              const std::vector<std::vector<Rat>>& sub_axes) {
  validate(F);
  const int dim = F.grid.dim();
  if (static_cast<int>(sub_axes.size()) != dim)
    throw std::invalid_argument("subgrid_approx: expected " + std::to_string(dim) +
                                " axis subsets");
  for (const T& v : F.values)
    if (v < T(0) || v > T(1))
      throw std::invalid_argument("subgrid_approx: F must map into [0,1]");

  Grid sub;
  sub.axes.resize(dim);
  std::vector<std::vector<int>> parent(dim);
  for (int i = 0; i < dim; ++i) {
    if (sub_axes[i].empty())
      throw std::invalid_argument("subgrid_approx: empty subset for axis " + std::to_string(i + 1));
    sub.axes[i].points = sub_axes[i];
    validate(sub.axes[i]);
    for (const Rat& v : sub_axes[i]) {
      auto j = axis_find(F.grid.axes[i], v);
      if (!j)
        throw std::invalid_argument("subgrid_approx: subset value " + format_rational(v) +
                                    " not on axis " + std::to_string(i + 1));
      parent[i].push_back(*j);
    }
  }

  GridFunction<T> G{sub, std::vector<T>(sub.size())};
  IndexTuple t(dim, 0);
  bool more = true;
  while (more) {
    IndexTuple pidx(dim);
    for (int i = 0; i < dim; ++i) pidx[i] = parent[i][t[i]];
    G.values[flat_index(sub, t)] = F.values[flat_index(F.grid, pidx)];
    more = next_tuple(sub, t);
  }

  const T& c = G.values.back();  // value at the max corner of the sub-grid
  if (c == T(0)) throw std::invalid_argument("subgrid_approx: F(max alpha) = 0");

  DiscreteMeasure<T> nu = df_to_measure(G);  // throws if the restriction is not a d.f.
  for (T& m : nu.masses) m /= c;
  return measure_to_df(nu, F.grid);
}

}  // namespace kmono
