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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "kmono/rational.hpp"

namespace kmono {

inline constexpr int kMaxGridDim = 8;
inline constexpr int kMaxDiffOrder = 6;  // per-coordinate cap on n_i

struct Axis {
  std::vector<Rat> points;  // strictly increasing, at least one
};

struct Grid {
  std::vector<Axis> axes;

  int dim() const { return static_cast<int>(axes.size()); }
  std::size_t size() const {
    std::size_t n = 1;
    for (const Axis& a : axes) n *= a.points.size();
    return n;
  }
};

using Point = std::vector<Rat>;
using IndexTuple = std::vector<int>;

inline bool operator==(const Axis& a, const Axis& b) { return a.points == b.points; }
inline bool operator==(const Grid& a, const Grid& b) { return a.axes == b.axes; }

inline void validate(const Axis& a) {
  if (a.points.empty()) throw std::invalid_argument("Axis: needs at least one point");
  for (std::size_t i = 1; i < a.points.size(); ++i)
    if (!(a.points[i - 1] < a.points[i]))
      throw std::invalid_argument("Axis: points must be strictly increasing");
}

inline void validate(const Grid& g) {
  if (g.dim() < 1 || g.dim() > kMaxGridDim)
    throw std::invalid_argument("Grid: dimension " + std::to_string(g.dim()) + " outside [1," +
                                std::to_string(kMaxGridDim) + "]");
  for (const Axis& a : g.axes) validate(a);
}

// Row-major with the last axis fastest.
inline std::size_t flat_index(const Grid& g, const IndexTuple& idx) {
  std::size_t f = 0;
  for (int i = 0; i < g.dim(); ++i) f = f * g.axes[i].points.size() + idx[i];
  return f;
}

inline IndexTuple tuple_index(const Grid& g, std::size_t flat) {
  IndexTuple idx(g.dim());
  for (int i = g.dim() - 1; i >= 0; --i) {
    const std::size_t n = g.axes[i].points.size();
    idx[i] = static_cast<int>(flat % n);
    flat /= n;
  }
  return idx;
}

inline Point point_at(const Grid& g, const IndexTuple& idx) {
  Point p(g.dim());
  for (int i = 0; i < g.dim(); ++i) p[i] = g.axes[i].points[idx[i]];
  return p;
}

/// Odometer step over all index tuples, last axis fastest (matches the flat
/// row-major order).  Returns false after the last tuple.
inline bool next_tuple(const Grid& g, IndexTuple& idx) {
  for (int i = g.dim() - 1; i >= 0; --i) {
    if (++idx[i] < static_cast<int>(g.axes[i].points.size())) return true;
    idx[i] = 0;
  }
  return false;
}

inline std::optional<int> axis_find(const Axis& a, const Rat& v) {
  auto it = std::lower_bound(a.points.begin(), a.points.end(), v);
  if (it != a.points.end() && *it == v) return static_cast<int>(it - a.points.begin());
  return std::nullopt;
}

inline std::optional<IndexTuple> grid_find(const Grid& g, const Point& p) {
  if (static_cast<int>(p.size()) != g.dim()) return std::nullopt;
  IndexTuple idx(g.dim());
  for (int i = 0; i < g.dim(); ++i) {
    auto j = axis_find(g.axes[i], p[i]);
    if (!j) return std::nullopt;
    idx[i] = *j;
  }
  return idx;
}

template <class T>
struct GridFunction {
  Grid grid;
  std::vector<T> values;  // row-major, last axis fastest

  const T& at(const IndexTuple& idx) const { return values[flat_index(grid, idx)]; }
  T& at(const IndexTuple& idx) { return values[flat_index(grid, idx)]; }
};

template <class T>
void validate(const GridFunction<T>& f) {
  validate(f.grid);
  if (f.values.size() != f.grid.size())
    throw std::invalid_argument("GridFunction: expected " + std::to_string(f.grid.size()) +
                                " values, got " + std::to_string(f.values.size()));
  if constexpr (std::is_floating_point_v<T>) {
    for (const T& v : f.values)
      if (!std::isfinite(v)) throw std::invalid_argument("GridFunction: non-finite value");
  }
}

template <class T>
bool operator==(const GridFunction<T>& a, const GridFunction<T>& b) {
  return a.grid == b.grid && a.values == b.values;
}

struct MultiIndex {
  std::vector<int> n;
};

inline int total_order(const MultiIndex& m) {
  int s = 0;
  for (int v : m.n) s += v;
  return s;
}

inline void validate(const MultiIndex& m, int dim) {
  if (static_cast<int>(m.n.size()) != dim)
    throw std::invalid_argument("MultiIndex: expected " + std::to_string(dim) + " components");
  for (int v : m.n)
    if (v < 0 || v > kMaxDiffOrder)
      throw std::invalid_argument("MultiIndex: components must lie in [0," +
                                  std::to_string(kMaxDiffOrder) + "]");
}

struct StepVector {
  std::vector<Rat> h;
};

inline void validate(const StepVector& s, int dim) {
  if (static_cast<int>(s.h.size()) != dim)
    throw std::invalid_argument("StepVector: expected " + std::to_string(dim) + " components");
  for (const Rat& v : s.h)
    if (v < 0) throw std::invalid_argument("StepVector: components must be >= 0");
}

template <class T>
struct DiscreteMeasure {
  std::vector<Point> support;
  std::vector<T> masses;  // aligned with support, all >= 0
};

template <class T>
void validate(const DiscreteMeasure<T>& m) {
  if (m.support.size() != m.masses.size())
    throw std::invalid_argument("DiscreteMeasure: support/mass length mismatch");
  for (const T& v : m.masses)
    if (v < T(0)) throw std::invalid_argument("DiscreteMeasure: negative mass");
  for (std::size_t i = 0; i < m.support.size(); ++i)
    for (std::size_t j = i + 1; j < m.support.size(); ++j)
      if (m.support[i] == m.support[j])
        throw std::invalid_argument("DiscreteMeasure: duplicate support point");
}

inline std::string point_to_string(const Point& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ",";
    out += format_rational(p[i]);
  }
  return out + ")";
}

}  // namespace kmono
