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

#include <cmath>
#include <random>

#include "kmono/multilinear.hpp"
#include "test_support.hpp"

using namespace kmono;

namespace {

std::vector<Rat> vertex(int d, Mask a) {
  std::vector<Rat> x(d, Rat(0));
  for (int i = 0; i < d; ++i)
    if (a & (Mask{1} << i)) x[i] = 1;
  return x;
}

}  // namespace

TEST_CASE("extend coefficients of the worked tables") {
  SUBCASE("1 + x1x2 + x1x3 + x2x3 - x1x2x3") {
    MlPoly<Rat> p = extend(tables::size_or_one(3));
    CHECK(p.coeffs == std::vector<Rat>{1, 0, 0, 1, 0, 1, 1, -1});
  }
  SUBCASE("2(x1+x2+x3) - x1x2x3") {
    MlPoly<Rat> p = extend(tables::zero245(3));
    CHECK(p.coeffs == std::vector<Rat>{0, 2, 2, 0, 2, 0, 0, -1});
  }
  SUBCASE("constant") {
    PbFunction<Rat> f{2, {5, 5, 5, 5}};
    MlPoly<Rat> p = extend(f);
    CHECK(p.coeffs == std::vector<Rat>{5, 0, 0, 0});
  }
}

TEST_CASE("eval agrees with the table at vertices and elsewhere") {
  MlPoly<Rat> p = extend(tables::size_or_one(3));
  PbFunction<Rat> f = tables::size_or_one(3);
  for (Mask a = 0; a < 8; ++a) {
    auto x = vertex(3, a);
    CHECK(eval(p, std::span<const Rat>(x)) == f.values[a]);
  }
  std::vector<Rat> half(3, Rat(1, 2));
  CHECK(eval(p, std::span<const Rat>(half)) == Rat(13, 8));

  MlPoly<Rat> c{0, {Rat(5)}};
  CHECK(eval(c, std::span<const Rat>()) == 5);
}

TEST_CASE("coefficient form equals Bernoulli form") {
  std::mt19937_64 eng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = rand_int(eng, 1, 5);
    PbFunction<Rat> f = tables::random_rational(d, eng);
    std::vector<Rat> x(d);
    for (auto& xi : x) xi = tables::random_rat(eng, -6, 12);
    CHECK(eval(extend(f), std::span<const Rat>(x)) ==
          bernoulli_eval(f, std::span<const Rat>(x)));
  }
}

TEST_CASE("to_table round trips") {
  std::mt19937_64 eng(19);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = rand_int(eng, 1, 5);
    PbFunction<Rat> f = tables::random_rational(d, eng);
    CHECK(to_table(extend(f)) == f);
  }
  MlPoly<Rat> single{2, {0, 1, 0, 0}};  // x1 alone
  CHECK(to_table(single).values == std::vector<Rat>{0, 1, 0, 1});
  MlPoly<Rat> zero{2, {0, 0, 0, 0}};
  CHECK(to_table(zero).values == std::vector<Rat>(4, Rat(0)));
}

TEST_CASE("partial derivatives") {
  MlPoly<Rat> p = extend(tables::size_or_one(3));

  SUBCASE("d/dx1dx2 is 1 - x3") {
    auto dp = partial(p, 0b011u);
    CHECK(dp.vars == std::vector<int>{3});
    CHECK(dp.poly.coeffs == std::vector<Rat>{1, -1});
  }
  SUBCASE("empty beta is the identity") {
    auto dp = partial(p, 0u);
    CHECK(dp.poly == p);
  }
  SUBCASE("full beta is the top coefficient") {
    auto dp = partial(p, 0b111u);
    CHECK(dp.poly.d == 0);
    CHECK(dp.poly.coeffs == std::vector<Rat>{-1});
  }
  SUBCASE("coefficient at zero is the subset difference") {
    PbFunction<Rat> f = tables::size_or_one(3);
    for (Mask b = 0; b < 8; ++b)
      CHECK(partial(p, b).poly.coeffs[0] == delta_point(f, b, 0));
  }
}

TEST_CASE("derivative/difference correspondence") {
  std::mt19937_64 eng(29);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = rand_int(eng, 1, 5);
    PbFunction<Rat> f = tables::random_rational(d, eng);
    MlPoly<Rat> p = extend(f);
    const Mask beta = static_cast<Mask>(rand_int(eng, 0, static_cast<int>(full_mask(d))));
    auto viaPoly = to_table(partial(p, beta).poly);
    auto viaTable = delta_table(f, beta);
    CHECK(viaPoly == viaTable.table);
    CHECK(partial(p, beta).vars == viaTable.elements);
  }
}

TEST_CASE("is_fully_k_on_cube matches the vertex check") {
  MlPoly<Rat> p = extend(tables::size_or_one(3));
  CHECK(is_fully_k_on_cube(p, 2, Mode::Increasing).ok);
  CHECK_FALSE(is_fully_k_on_cube(p, 3, Mode::Increasing).ok);
  MlPoly<Rat> c{3, std::vector<Rat>(8, Rat(0))};
  c.coeffs[0] = 9;
  for (int k = 1; k <= 3; ++k) {
    CHECK(is_fully_k_on_cube(c, k, Mode::Increasing).ok);
    CHECK(is_fully_k_on_cube(c, k, Mode::Decreasing).ok);
    CHECK(is_fully_k_on_cube(c, k, Mode::Alternating).ok);
  }
}

TEST_CASE("argument_scale") {
  MlPoly<Rat> p = extend(tables::size_or_one(3));

  SUBCASE("all ones is the identity") {
    std::vector<Rat> ones(3, Rat(1));
    CHECK(argument_scale(p, std::span<const Rat>(ones)) == p);
  }
  SUBCASE("all zeros keeps only the constant") {
    std::vector<Rat> zeros(3, Rat(0));
    auto q = argument_scale(p, std::span<const Rat>(zeros));
    CHECK(q.coeffs == std::vector<Rat>{1, 0, 0, 0, 0, 0, 0, 0});
  }
  SUBCASE("coefficient product rule") {
    std::vector<Rat> c{Rat(1, 2), Rat(1), Rat(1)};
    auto q = argument_scale(p, std::span<const Rat>(c));
    CHECK(q.coeffs == std::vector<Rat>{1, 0, 0, Rat(1, 2), 0, Rat(1, 2), 1, Rat(-1, 2)});
  }
  SUBCASE("eval identity q(x) = p(c .* x)") {
    std::mt19937_64 eng(37);
    for (int trial = 0; trial < 60; ++trial) {
      const int d = rand_int(eng, 1, 4);
      PbFunction<Rat> f = tables::random_rational(d, eng);
      MlPoly<Rat> poly = extend(f);
      std::vector<Rat> c(d), x(d), cx(d);
      for (int i = 0; i < d; ++i) {
        c[i] = Rat(rand_int(eng, 0, 4), 4);
        x[i] = tables::random_rat(eng, -4, 8);
        cx[i] = c[i] * x[i];
      }
      CHECK(eval(argument_scale(poly, std::span<const Rat>(c)), std::span<const Rat>(x)) ==
            eval(poly, std::span<const Rat>(cx)));
    }
  }
  SUBCASE("scaling preserves fully k-increasing") {
    std::mt19937_64 eng(43);
    for (int trial = 0; trial < 40; ++trial) {
      const int d = rand_int(eng, 1, 4);
      const int k = rand_int(eng, 1, d);
      MlPoly<Rat> poly = extend(gen_fully_k(d, k, Mode::Increasing, eng()));
      std::vector<Rat> c(d);
      for (auto& ci : c) ci = Rat(rand_int(eng, 0, 4), 4);
      CHECK(is_fully_k_on_cube(argument_scale(poly, std::span<const Rat>(c)), k,
                               Mode::Increasing)
                .ok);
    }
  }
  SUBCASE("out-of-range factors are rejected") {
    std::vector<Rat> c{Rat(2), Rat(1), Rat(1)};
    CHECK_THROWS_AS(argument_scale(p, std::span<const Rat>(c)), std::invalid_argument);
  }
}

TEST_CASE("nonnegative tables extend to nonnegative polynomials on the cube") {
  std::mt19937_64 eng(47);
  for (int trial = 0; trial < 60; ++trial) {
    const int d = rand_int(eng, 1, 4);
    PbFunction<Rat> f = tables::random_small_int(d, eng, 0, 6);
    MlPoly<Rat> p = extend(f);
    for (int probe = 0; probe < 20; ++probe) {
      std::vector<Rat> x(d);
      for (auto& xi : x) xi = Rat(rand_int(eng, 0, 8), 8);
      CHECK(eval(p, std::span<const Rat>(x)) >= 0);
    }
  }
}

TEST_CASE("compose_univariate") {
  SUBCASE("identity map") {
    PbFunction<Rat> f = tables::zero245(3);
    std::map<Rat, Rat> id;
    for (const Rat& v : f.values) id[v] = v;
    CHECK(compose_univariate(id, f) == extend(f));
  }
  SUBCASE("constant map") {
    PbFunction<Rat> f = tables::zero245(3);
    std::map<Rat, Rat> c;
    for (const Rat& v : f.values) c[v] = 7;
    auto p = compose_univariate(c, f);
    CHECK(p.coeffs[0] == 7);
    for (Mask a = 1; a < 8; ++a) CHECK(p.coeffs[a] == 0);
  }
  SUBCASE("missing value is rejected") {
    PbFunction<Rat> f = tables::zero245(3);
    std::map<Rat, Rat> partial_map{{Rat(0), Rat(0)}};
    CHECK_THROWS_AS(compose_univariate(partial_map, f), std::invalid_argument);
  }
  SUBCASE("sqrt of the 0/2/4/5 table") {
    MlPoly<double> p = compose_univariate_builtin(BuiltinPhi::Sqrt, 0, tables::zero245(3));
    const double s2 = std::sqrt(2.0), s5 = std::sqrt(5.0);
    const double tol = 1e-12;
    CHECK(std::abs(p.coeffs[0]) <= tol);
    for (Mask a : {1u, 2u, 4u}) CHECK(std::abs(p.coeffs[a] - s2) <= tol);
    for (Mask a : {3u, 5u, 6u}) CHECK(std::abs(p.coeffs[a] + 2 * (s2 - 1)) <= tol);
    CHECK(std::abs(p.coeffs[7] - (3 * s2 + s5 - 6)) <= tol);
  }
  SUBCASE("sqrt rejects negative values") {
    PbFunction<Rat> f{1, {Rat(-1), Rat(4)}};
    CHECK_THROWS_AS(compose_univariate_builtin(BuiltinPhi::Sqrt, 0, f), std::invalid_argument);
  }
  SUBCASE("sqrt of an alternating table stays fully 2-alternating (float check)") {
    MlPoly<double> p = compose_univariate_builtin(BuiltinPhi::Sqrt, 0, tables::zero245(3));
    CHECK(is_fully_k_on_cube(p, 2, Mode::Alternating, 1e-9).ok);
  }
  SUBCASE("power and log1p maps") {
    PbFunction<Rat> f = tables::zero245(3);
    MlPoly<double> pw = compose_univariate_builtin(BuiltinPhi::Power, 0.5, f);
    MlPoly<double> sq = compose_univariate_builtin(BuiltinPhi::Sqrt, 0, f);
    for (Mask a = 0; a < 8; ++a) CHECK(pw.coeffs[a] == doctest::Approx(sq.coeffs[a]));
    MlPoly<double> lg = compose_univariate_builtin(BuiltinPhi::Log1p, 0, f);
    CHECK(lg.coeffs[1] == doctest::Approx(std::log1p(2.0)));
    PbFunction<Rat> bad{1, {Rat(-1), Rat(0)}};
    CHECK_THROWS_AS(compose_univariate_builtin(BuiltinPhi::Log1p, 0, bad),
                    std::invalid_argument);
  }
}
