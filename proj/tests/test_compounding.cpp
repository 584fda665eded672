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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "kmono/compounding.hpp"
#include "test_support.hpp"

using namespace kmono;

namespace {

Grid square3() {
  Grid g;
  g.axes = {Axis{{Rat(0), Rat(1, 2), Rat(1)}}, Axis{{Rat(0), Rat(1, 2), Rat(1)}}};
  return g;
}

std::vector<GridFunction<Rat>> random_dfs(int d, const Grid& g, std::mt19937_64& eng) {
  std::vector<GridFunction<Rat>> gs;
  for (int i = 0; i < d; ++i) gs.push_back(random_subnormalized_df(g, eng));
  return gs;
}

}  // namespace

TEST_CASE("compound basics") {
  std::mt19937_64 eng(113);
  Grid g = square3();

  SUBCASE("dictator table copies its coordinate") {
    PbFunction<Rat> f{3, std::vector<Rat>(8, Rat(0))};
    for (Mask a = 0; a < 8; ++a) f.values[a] = (a & 1u) ? 1 : 0;
    auto gs = random_dfs(3, g, eng);
    CHECK(compound(f, gs) == gs[0]);
  }
  SUBCASE("worked polynomials evaluate pointwise") {
    auto gs = random_dfs(3, g, eng);
    GridFunction<Rat> h1 = compound(tables::size_or_one(3), gs);
    GridFunction<Rat> h3 = compound(tables::zero245(3), gs);
    for (std::size_t m = 0; m < g.size(); ++m) {
      const Rat a = gs[0].values[m], b = gs[1].values[m], c = gs[2].values[m];
      CHECK(h1.values[m] == 1 + a * b + a * c + b * c - a * b * c);
      CHECK(h3.values[m] == 2 * (a + b + c) - a * b * c);
    }
  }
  SUBCASE("agrees with the coefficient route") {
    for (int trial = 0; trial < 40; ++trial) {
      const int d = rand_int(eng, 1, 3);
      Grid grid = tables::random_grid(rand_int(eng, 1, 2), 3, eng);
      PbFunction<Rat> f = tables::random_rational(d, eng);
      auto gs = random_dfs(d, grid, eng);
      GridFunction<Rat> h = compound(f, gs);
      MlPoly<Rat> p = extend(f);
      std::vector<Rat> y(d);
      for (std::size_t m = 0; m < grid.size(); ++m) {
        for (int i = 0; i < d; ++i) y[i] = gs[i].values[m];
        CHECK(h.values[m] == eval(p, std::span<const Rat>(y)));
      }
    }
  }
  SUBCASE("input validation") {
    PbFunction<Rat> f{2, {0, 1, 1, 1}};
    auto gs = random_dfs(1, g, eng);
    CHECK_THROWS_AS(compound(f, gs), std::invalid_argument);

    GridFunction<Rat> big{g, std::vector<Rat>(9, Rat(2))};
    CHECK_THROWS_AS(compound(f, std::vector<GridFunction<Rat>>{big, big}),
                    std::invalid_argument);
  }
}

TEST_CASE("compound is affine in each mixed input") {
  std::mt19937_64 eng(127);
  Grid g = square3();
  for (int trial = 0; trial < 25; ++trial) {
    const int d = rand_int(eng, 2, 3);
    PbFunction<Rat> f = tables::random_rational(d, eng);
    auto gs = random_dfs(d, g, eng);

    auto ga = random_subnormalized_df(g, eng);
    auto gb = random_subnormalized_df(g, eng);
    auto gc = random_subnormalized_df(g, eng);
    const Rat la(1, 3), lb(1, 2), lc(1, 6);  // convex weights

    GridFunction<Rat> mix{g, std::vector<Rat>(g.size())};
    for (std::size_t m = 0; m < g.size(); ++m)
      mix.values[m] = la * ga.values[m] + lb * gb.values[m] + lc * gc.values[m];

    auto with = [&](const GridFunction<Rat>& first) {
      auto copy = gs;
      copy[0] = first;
      return compound(f, copy);
    };
    GridFunction<Rat> lhs = with(mix);
    GridFunction<Rat> ha = with(ga), hb = with(gb), hc = with(gc);
    for (std::size_t m = 0; m < g.size(); ++m)
      CHECK(lhs.values[m] == la * ha.values[m] + lb * hb.values[m] + lc * hc.values[m]);
  }
}

TEST_CASE("scaling step: dividing out the sup factors through argument_scale") {
  std::mt19937_64 eng(131);
  Grid g = square3();
  for (int trial = 0; trial < 25; ++trial) {
    const int d = rand_int(eng, 1, 3);
    PbFunction<Rat> f = tables::random_rational(d, eng);
    auto gs = random_dfs(d, g, eng);

    std::vector<Rat> sup(d);
    bool all_positive = true;
    for (int i = 0; i < d; ++i) {
      sup[i] = *std::max_element(gs[i].values.begin(), gs[i].values.end());
      if (sup[i] == 0) all_positive = false;
    }
    if (!all_positive) continue;

    MlPoly<Rat> scaled = argument_scale(extend(f), std::span<const Rat>(sup));
    GridFunction<Rat> h = compound(f, gs);
    std::vector<Rat> y(d);
    for (std::size_t m = 0; m < g.size(); ++m) {
      for (int i = 0; i < d; ++i) y[i] = gs[i].values[m] / sup[i];
      CHECK(eval(scaled, std::span<const Rat>(y)) == h.values[m]);
    }
  }
}

TEST_CASE("indicator decomposition") {
  std::mt19937_64 eng(137);

  SUBCASE("k = d lists the raw coefficients") {
    const int d = 3, k = 3;
    PbFunction<Rat> f = gen_fully_k(d, k, Mode::Increasing, 5);
    Grid g = tables::random_grid(k, 3, eng);
    std::vector<Point> pts;
    for (int i = 0; i < d; ++i) {
      IndexTuple idx(k);
      for (int l = 0; l < k; ++l)
        idx[l] = rand_int(eng, 0, static_cast<int>(g.axes[l].points.size()) - 1);
      pts.push_back(point_at(g, idx));
    }
    Certificate cert = indicator_decomposition(f, k, pts, g);
    REQUIRE(cert.terms.size() == 8);
    Rat sum = 0;
    for (const auto& t : cert.terms) {
      CHECK(t.weight >= 0);
      sum += t.weight;
    }
    CHECK(sum == f.values[7]);
  }

  SUBCASE("reconstruction equals the compound of point masses") {
    for (int trial = 0; trial < 60; ++trial) {
      const int k = rand_int(eng, 1, 3);
      const int d = rand_int(eng, k, 4);
      PbFunction<Rat> f = gen_fully_k(d, k, Mode::Increasing, eng);
      Grid g = tables::random_grid(k, 3, eng);
      std::vector<Point> pts;
      std::vector<GridFunction<Rat>> dfs;
      for (int i = 0; i < d; ++i) {
        IndexTuple idx(k);
        for (int l = 0; l < k; ++l)
          idx[l] = rand_int(eng, 0, static_cast<int>(g.axes[l].points.size()) - 1);
        pts.push_back(point_at(g, idx));
        dfs.push_back(point_mass_df(pts.back(), g));
      }
      Certificate cert = indicator_decomposition(f, k, pts, g);

      Rat sum = 0;
      for (const auto& t : cert.terms) {
        CHECK(t.weight >= 0);
        sum += t.weight;
      }
      CHECK(sum == f.values[full_mask(d)]);

      CHECK(certificate_step_function(cert, g) == compound(f, dfs));
    }
  }

  SUBCASE("refusal carries the checker witness") {
    PbFunction<Rat> f{2, {0, 1, 1, 1}};  // OR: not fully 2-increasing
    Grid g = tables::random_grid(2, 2, eng);
    std::vector<Point> pts{point_at(g, {0, 0}), point_at(g, {0, 0})};
    CHECK_THROWS_AS(indicator_decomposition(f, 2, pts, g), CertificateRefused);
    try {
      indicator_decomposition(f, 2, pts, g);
    } catch (const CertificateRefused& e) {
      CHECK(e.witness.beta == 0b11u);
      CHECK(e.witness.value == -1);
    }
  }

  SUBCASE("negative empty-set value is refused") {
    PbFunction<Rat> f{2, {-1, 0, 0, 1}};
    REQUIRE(is_fully_k(f, 2, Mode::Increasing).ok);
    Grid g = tables::random_grid(2, 2, eng);
    std::vector<Point> pts{point_at(g, {0, 0}), point_at(g, {0, 0})};
    CHECK_THROWS_AS(indicator_decomposition(f, 2, pts, g), CertificateRefused);
  }
}

TEST_CASE("closure smoke tests") {
  SUBCASE("increasing") {
    ClosureReport r = closure_test(Mode::Increasing, 3, 2, 3, 40, 17);
    CHECK(r.passes == 40);
  }
  SUBCASE("alternating") {
    ClosureReport r = closure_test(Mode::Alternating, 3, 2, 3, 40, 18);
    CHECK(r.passes == 40);
  }
  SUBCASE("k = d nonnegative-coefficient case") {
    ClosureReport r = closure_test(Mode::Increasing, 2, 2, 3, 40, 19);
    CHECK(r.passes == 40);
  }
  SUBCASE("caps are enforced") {
    CHECK_THROWS_AS(closure_test(Mode::Increasing, 5, 2, 3, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(closure_test(Mode::Increasing, 3, 2, 4, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(closure_test(Mode::Increasing, 3, 2, 3, 20000, 1), std::invalid_argument);
    CHECK_THROWS_AS(closure_test(Mode::Decreasing, 3, 2, 3, 10, 1), std::invalid_argument);
  }
}

TEST_CASE("duality transport between the closure modes") {
  // an alternating compound instance maps exactly onto an increasing one
  std::mt19937_64 eng(139);
  Grid g = square3();
  for (int trial = 0; trial < 20; ++trial) {
    const int d = rand_int(eng, 1, 3);
    const int k = rand_int(eng, 1, std::min(d, 2));
    PbFunction<Rat> f = gen_fully_k(d, k, Mode::Alternating, eng);
    std::vector<GridFunction<Rat>> gs;
    for (int i = 0; i < d; ++i) gs.push_back(random_alternating_01(g, eng));

    GridFunction<Rat> h = compound(f, gs);
    CHECK(check_fully_k(h, k, Mode::Alternating).ok);

    // dual route: 1 - f(1-.) compounded with 1 - g(-.) on the reflected grid
    const Rat one(1);
    PbFunction<Rat> fd = complement_dual(f, one);
    std::vector<GridFunction<Rat>> gd;
    for (const auto& gi : gs) gd.push_back(negate_reflect(gi, one));
    GridFunction<Rat> hd = compound(fd, gd);
    CHECK(check_fully_k(hd, k, Mode::Increasing).ok);
    CHECK(hd == negate_reflect(h, one));
  }
}

TEST_CASE("tensor_compose") {
  Grid line;
  line.axes = {Axis{{Rat(0), Rat(1, 2), Rat(1)}}};
  GridFunction<Rat> id{line, {Rat(0), Rat(1, 2), Rat(1)}};

  SUBCASE("OR polynomial over separate axes is s+t-st") {
    PbFunction<Rat> orf{2, {0, 1, 1, 1}};
    GridFunction<Rat> f = tensor_compose(extend(orf), {id, id});
    REQUIRE(f.grid.dim() == 2);
    IndexTuple idx(2, 0);
    bool more = true;
    while (more) {
      const Point p = point_at(f.grid, idx);
      CHECK(f.values[flat_index(f.grid, idx)] == p[0] + p[1] - p[0] * p[1]);
      more = next_tuple(f.grid, idx);
    }
    auto chk = check_fully_k(f, 2, Mode::Increasing);
    REQUIRE_FALSE(chk.ok);
    CHECK(chk.witness->value == -1);

    // while the same-variable compound stays increasing
    GridFunction<Rat> h = compound(orf, {id, id});
    CHECK(check_fully_k(h, 1, Mode::Increasing).ok);
  }

  SUBCASE("nonnegative coefficients give full-order increase on the product") {
    std::mt19937_64 eng(149);
    for (int trial = 0; trial < 20; ++trial) {
      const int d = 2;
      PbFunction<Rat> f = gen_fully_k(d, d, Mode::Increasing, eng);
      Grid g1 = tables::random_grid(1, 3, eng);
      Grid g2 = tables::random_grid(1, 3, eng);
      std::vector<GridFunction<Rat>> gs{random_subnormalized_df(g1, eng),
                                        random_subnormalized_df(g2, eng)};
      GridFunction<Rat> F = tensor_compose(extend(f), gs);
      CHECK(check_fully_k_naive(F, F.grid.dim(), Mode::Increasing).ok);
    }
  }

  SUBCASE("constant polynomial gives a constant field") {
    MlPoly<Rat> c{2, {Rat(4), Rat(0), Rat(0), Rat(0)}};
    GridFunction<Rat> f = tensor_compose(c, {id, id});
    for (const Rat& v : f.values) CHECK(v == 4);
  }

  SUBCASE("dimension cap") {
    MlPoly<Rat> c{5, std::vector<Rat>(32, Rat(0))};
    std::vector<GridFunction<Rat>> gs(5, id);
    CHECK_THROWS_AS(tensor_compose(c, gs), std::invalid_argument);
  }
}

TEST_CASE("indicator composition counterexample") {
  IndicatorCompositionReport r = indicator_composition_counterexample();
  CHECK(r.delta_value == -1);
  CHECK(r.phi_fully_3_increasing);
  CHECK(r.g_fully_2_increasing);
  CHECK(r.composed_is_indicator);
  CHECK(r.pass());
  // the composed indicator itself fails the fully-2 check
  CHECK_FALSE(check_fully_k(r.composed, 2, Mode::Increasing).ok);
}

TEST_CASE("random d.f. generators produce certified inputs") {
  std::mt19937_64 eng(151);
  for (int trial = 0; trial < 40; ++trial) {
    Grid g = tables::random_grid(rand_int(eng, 1, 3), 3, eng);
    auto df = random_subnormalized_df(g, eng);
    for (const Rat& v : df.values) {
      CHECK(v >= 0);
      CHECK(v <= 1);
    }
    CHECK(check_fully_k_naive(df, g.dim(), Mode::Increasing).ok);

    auto alt = random_alternating_01(g, eng);
    CHECK(alt.grid == g);
    for (const Rat& v : alt.values) {
      CHECK(v >= 0);
      CHECK(v <= 1);
    }
    CHECK(check_fully_k_naive(alt, g.dim(), Mode::Alternating).ok);

    auto prob = random_probability_df(g, eng);
    CHECK(prob.values.back() == 1);
  }
}
