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

#include "kmono/compounding.hpp"

#include <string>

namespace kmono {
namespace {

Point componentwise_max(const std::vector<Point>& points, Mask over) {
  Point out;
  bool first = true;
  for (int i = 0; over >> i; ++i) {
    if (!(over & (Mask{1} << i))) continue;
    if (first) {
      out = points[i];
      first = false;
    } else {
      for (std::size_t l = 0; l < out.size(); ++l)
        if (points[i][l] > out[l]) out[l] = points[i][l];
    }
  }
  return out;
}

}  // namespace

Certificate indicator_decomposition(const PbFunction<Rat>& f, int k,
                                    const std::vector<Point>& points, const Grid& grid) {
  validate(f, 1);
  validate(grid);
  if (k < 1 || k > f.d) throw std::invalid_argument("indicator_decomposition: k out of range");
  if (grid.dim() != k)
    throw std::invalid_argument("indicator_decomposition: grid dimension " +
                                std::to_string(grid.dim()) + " must equal k = " +
                                std::to_string(k));
  if (static_cast<int>(points.size()) != f.d)
    throw std::invalid_argument("indicator_decomposition: expected " + std::to_string(f.d) +
                                " points");
  for (const Point& a : points)
    if (!grid_find(grid, a))
      throw std::invalid_argument("indicator_decomposition: point " + point_to_string(a) +
                                  " off grid");

  CubeCheck<Rat> chk = is_fully_k(f, k, Mode::Increasing);
  if (!chk.ok) {
    const auto& w = *chk.witness;
    throw CertificateRefused("indicator_decomposition: f is not fully " + std::to_string(k) +
                                 "-increasing; witness beta=" + mask_to_string(w.beta) +
                                 ", gamma=" + mask_to_string(w.gamma) +
                                 ", value=" + format_rational(w.value),
                             w);
  }
  if (f.values[0] < 0) {
    // The empty-set weight is f(empty); a negative one would make the
    // certificate signed.
    throw CertificateRefused(
        "indicator_decomposition: f(empty) = " + format_rational(f.values[0]) +
            " is negative, so the empty-set term would carry a negative weight",
        CubeWitness<Rat>{0, 0, f.values[0]});
  }

  VectorFamily family;
  family.vectors.resize(f.d);
  for (int i = 0; i < f.d; ++i)
    family.vectors[i].assign(points[i].begin(), points[i].end());

  Certificate cert;
  cert.d = f.d;
  cert.k = k;

  const Mask full = full_mask(f.d);
  for (Mask a = 0; a <= full; ++a) {
    if (popcount(a) >= k) continue;
    CertificateTerm term;
    term.weight = delta_point(f, a, 0);
    term.low_order = true;
    term.alpha = a;
    term.tau = a;
    if (a != 0) term.threshold = componentwise_max(points, a);
    cert.terms.push_back(std::move(term));
  }

  PartitionResult part = partition_upper(family, k);
  for (const SetInterval& iv : part.intervals) {
    CertificateTerm term;
    term.weight = delta_point(f, iv.sigma, iv.tau & ~iv.sigma);
    term.low_order = false;
    term.alpha = iv.sigma;
    term.tau = iv.tau;
    term.threshold = componentwise_max(points, iv.sigma);
    cert.terms.push_back(std::move(term));
  }
  return cert;
}

GridFunction<Rat> certificate_step_function(const Certificate& cert, const Grid& grid) {
  validate(grid);
  GridFunction<Rat> out{grid, std::vector<Rat>(grid.size(), Rat(0))};
  IndexTuple idx(grid.dim(), 0);
  bool more = true;
  while (more) {
    const Point x = point_at(grid, idx);
    Rat& v = out.values[flat_index(grid, idx)];
    for (const CertificateTerm& t : cert.terms) {
      if (!t.threshold) {
        v += t.weight;
        continue;
      }
      bool ge = true;
      for (std::size_t l = 0; l < x.size() && ge; ++l) ge = x[l] >= (*t.threshold)[l];
      if (ge) v += t.weight;
    }
    more = next_tuple(grid, idx);
  }
  return out;
}

GridFunction<Rat> random_subnormalized_df(const Grid& grid, std::mt19937_64& eng) {
  DiscreteMeasure<Rat> mu;
  long long total = 0;
  IndexTuple idx(grid.dim(), 0);
  std::vector<std::pair<Point, int>> raw;
  bool more = true;
  while (more) {
    const int u = rand_int(eng, 0, 5);
    const int m = u <= 2 ? 0 : u - 2;  // {0,0,0,1,2,3}: zero-biased
    if (m > 0) {
      raw.emplace_back(point_at(grid, idx), m);
      total += m;
    }
    more = next_tuple(grid, idx);
  }
  if (total == 0) return GridFunction<Rat>{grid, std::vector<Rat>(grid.size(), Rat(0))};
  const long long z = total + rand_int(eng, 0, 3);
  for (auto& [pt, m] : raw) {
    mu.support.push_back(pt);
    mu.masses.push_back(Rat(m, z));
  }
  return measure_to_df(mu, grid);
}

GridFunction<Rat> random_probability_df(const Grid& grid, std::mt19937_64& eng) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    DiscreteMeasure<Rat> mu;
    long long total = 0;
    IndexTuple idx(grid.dim(), 0);
    std::vector<std::pair<Point, int>> raw;
    bool more = true;
    while (more) {
      const int u = rand_int(eng, 0, 5);
      const int m = u <= 2 ? 0 : u - 2;
      if (m > 0) {
        raw.emplace_back(point_at(grid, idx), m);
        total += m;
      }
      more = next_tuple(grid, idx);
    }
    if (total == 0) continue;
    for (auto& [pt, m] : raw) {
      mu.support.push_back(pt);
      mu.masses.push_back(Rat(m, total));
    }
    return measure_to_df(mu, grid);
  }
  throw std::runtime_error("random_probability_df: no mass after 100 attempts");
}

GridFunction<Rat> random_alternating_01(const Grid& grid, std::mt19937_64& eng) {
  Grid reflected;
  reflected.axes.resize(grid.axes.size());
  for (std::size_t i = 0; i < grid.axes.size(); ++i) {
    const auto& pts = grid.axes[i].points;
    for (std::size_t j = 0; j < pts.size(); ++j)
      reflected.axes[i].points.push_back(-pts[pts.size() - 1 - j]);
  }
  GridFunction<Rat> df = random_subnormalized_df(reflected, eng);
  return negate_reflect(df, Rat(1));
}

namespace {

Grid random_grid(int dim, int max_axis_points, std::mt19937_64& eng) {
  static const Rat pool[] = {Rat(-1), Rat(-1, 2), Rat(0),    Rat(1, 3),
                             Rat(1, 2), Rat(1),    Rat(3, 2), Rat(2)};
  constexpr int pool_size = static_cast<int>(sizeof(pool) / sizeof(pool[0]));
  Grid g;
  g.axes.resize(dim);
  for (int i = 0; i < dim; ++i) {
    const int len = rand_int(eng, 1, max_axis_points);
    // Fisher-Yates over pool indices, take len, sort
    int perm[pool_size];
    for (int j = 0; j < pool_size; ++j) perm[j] = j;
    for (int j = pool_size - 1; j > 0; --j) std::swap(perm[j], perm[rand_int(eng, 0, j)]);
    std::vector<int> take(perm, perm + len);
    std::sort(take.begin(), take.end());
    for (int j : take) g.axes[i].points.push_back(pool[j]);
  }
  return g;
}

}  // namespace

ClosureReport closure_test(Mode mode, int d, int k, int max_axis_points, int trials,
                           std::uint64_t seed) {
  if (mode == Mode::Decreasing)
    throw std::invalid_argument("closure_test: mode must be increasing or alternating");
  if (d < 1 || d > 4) throw std::invalid_argument("closure_test: d must be in [1,4]");
  if (k < 1 || k > d || k > 3)
    throw std::invalid_argument("closure_test: k must be in [1,min(d,3)]");
  if (max_axis_points < 1 || max_axis_points > 3)
    throw std::invalid_argument("closure_test: axis cap must be in [1,3]");
  if (trials < 1 || trials > 10000)
    throw std::invalid_argument("closure_test: trials must be in [1,10000]");

  ClosureReport report{mode, d, k, trials, 0, seed};
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 eng(seed + static_cast<std::uint64_t>(t));
    const Grid grid = random_grid(k, max_axis_points, eng);
    PbFunction<Rat> f = gen_fully_k(d, k, mode, eng);
    std::vector<GridFunction<Rat>> gs;
    gs.reserve(d);
    for (int i = 0; i < d; ++i)
      gs.push_back(mode == Mode::Increasing ? random_subnormalized_df(grid, eng)
                                            : random_alternating_01(grid, eng));
    GridFunction<Rat> h = compound(f, gs);
    GridCheck<Rat> chk = check_fully_k(h, k, mode);
    if (!chk.ok) {
      const auto& w = *chk.witness;
      throw ClosureFailure("closure_test: compound failed fully-" + std::to_string(k) + "-" +
                               mode_name(mode) + " at trial " + std::to_string(t) + " (seed " +
                               std::to_string(seed) + "); witness s=" + point_to_string(w.s) +
                               ", value=" + format_rational(w.value),
                           t, seed);
    }
    ++report.passes;
  }
  return report;
}

IndicatorCompositionReport indicator_composition_counterexample() {
  // g(s,t) = st on {0,1/2,1}^2
  Grid a2;
  a2.axes = {Axis{{Rat(0), Rat(1, 2), Rat(1)}}, Axis{{Rat(0), Rat(1, 2), Rat(1)}}};
  GridFunction<Rat> g{a2, std::vector<Rat>(9)};
  IndexTuple idx(2, 0);
  bool more = true;
  while (more) {
    const Point p = point_at(a2, idx);
    g.values[flat_index(a2, idx)] = p[0] * p[1];
    more = next_tuple(a2, idx);
  }

  // outer d.f.: point mass at (1/2,1/2,1/2) on the cube grid spanned by the
  // value set of g
  Grid b3;
  Axis value_axis{{Rat(0), Rat(1, 4), Rat(1, 2), Rat(1)}};
  b3.axes = {value_axis, value_axis, value_axis};
  GridFunction<Rat> phi = point_mass_df(Point{Rat(1, 2), Rat(1, 2), Rat(1, 2)}, b3);

  IndicatorCompositionReport report;
  report.phi_fully_3_increasing = check_fully_k(phi, 3, Mode::Increasing).ok;
  report.g_fully_2_increasing = check_fully_k(g, 2, Mode::Increasing).ok;

  // pointwise composition phi(g(x), g(x), g(x)); phi is not multilinear, so
  // this lives outside the compounding operator on purpose
  GridFunction<Rat> composed{a2, std::vector<Rat>(9)};
  for (std::size_t m = 0; m < g.values.size(); ++m) {
    const Point y{g.values[m], g.values[m], g.values[m]};
    auto at = grid_find(b3, y);
    if (!at) throw std::logic_error("indicator composition: composed value off the outer grid");
    composed.values[m] = phi.values[flat_index(b3, *at)];
  }
  report.composed = composed;

  bool indicator = true;
  idx.assign(2, 0);
  more = true;
  while (more) {
    const Point p = point_at(a2, idx);
    const Rat expected = p[0] * p[1] >= Rat(1, 2) ? 1 : 0;
    if (composed.values[flat_index(a2, idx)] != expected) indicator = false;
    more = next_tuple(a2, idx);
  }
  report.composed_is_indicator = indicator;

  report.delta_value =
      forward_difference(composed, MultiIndex{{1, 1}}, StepVector{{Rat(1, 2), Rat(1, 2)}},
                         Point{Rat(1, 2), Rat(1, 2)});
  return report;
}

}  // namespace kmono
