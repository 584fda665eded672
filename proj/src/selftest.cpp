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

#include "kmono/selftest.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "kmono/compounding.hpp"

namespace kmono {
namespace {

using Clock = std::chrono::steady_clock;

struct Fail {
  std::string detail;
};

void require(bool cond, const std::string& detail) {
  if (!cond) throw Fail{detail};
}

std::mt19937_64 engine_for(std::uint64_t seed, int criterion, std::uint64_t salt = 0) {
  return std::mt19937_64(seed * 0x9e3779b97f4a7c15ull + criterion * 0x100000001b3ull + salt);
}

PbFunction<Rat> size_table(int d) {
  PbFunction<Rat> f{d, std::vector<Rat>(std::size_t{1} << d)};
  for (Mask a = 0; a < f.values.size(); ++a) f.values[a] = std::max(popcount(a), 1);
  return f;
}

PbFunction<Rat> table_02245(int d) {
  PbFunction<Rat> f{d, std::vector<Rat>(std::size_t{1} << d)};
  for (Mask a = 0; a < f.values.size(); ++a) {
    switch (popcount(a)) {
      case 0: f.values[a] = 0; break;
      case 1: f.values[a] = 2; break;
      case 2: f.values[a] = 4; break;
      default: f.values[a] = 5; break;
    }
  }
  return f;
}

PbFunction<Rat> random_rational_table(int d, std::mt19937_64& eng) {
  PbFunction<Rat> f{d, std::vector<Rat>(std::size_t{1} << d)};
  for (auto& v : f.values) v = Rat(rand_int(eng, -12, 12), rand_int(eng, 1, 6));
  return f;
}

Grid random_grid(int dim, int min_pts, int max_pts, std::mt19937_64& eng) {
  static const Rat pool[] = {Rat(-2),   Rat(-1), Rat(-1, 2), Rat(0),    Rat(1, 3),
                             Rat(1, 2), Rat(1),  Rat(3, 2),  Rat(2),    Rat(3)};
  constexpr int pool_size = static_cast<int>(sizeof(pool) / sizeof(pool[0]));
  Grid g;
  g.axes.resize(dim);
  for (int i = 0; i < dim; ++i) {
    const int len = rand_int(eng, min_pts, max_pts);
    int perm[pool_size];
    for (int j = 0; j < pool_size; ++j) perm[j] = j;
    for (int j = pool_size - 1; j > 0; --j) std::swap(perm[j], perm[rand_int(eng, 0, j)]);
    std::vector<int> take(perm, perm + len);
    std::sort(take.begin(), take.end());
    for (int j : take) g.axes[i].points.push_back(pool[j]);
  }
  return g;
}

std::string mask_text(Mask m) { return mask_to_string(m); }

// --- criterion 1: the size table ------------------------------------------

void crit_size_table(std::uint64_t, bool mutate) {
  PbFunction<Rat> f = size_table(3);
  if (mutate) f.values[3] += 1;

  MlPoly<Rat> p = extend(f);
  const std::vector<Rat> expect{1, 0, 0, 1, 0, 1, 1, -1};
  for (Mask a = 0; a < 8; ++a)
    require(p.coeffs[a] == expect[a],
            "coefficient at " + mask_text(a) + " is " + format_rational(p.coeffs[a]) +
                ", expected " + format_rational(expect[a]));

  require(is_fully_k(f, 2, Mode::Increasing).ok, "order 2 check failed");
  auto chk = is_fully_k(f, 3, Mode::Increasing);
  require(!chk.ok, "order 3 unexpectedly passed");
  require(chk.witness->beta == 0b111u && chk.witness->gamma == 0u &&
              chk.witness->value == Rat(-1),
          "order 3 witness is not (beta={1,2,3}, gamma={}, -1)");

  for (int d = 4; d <= 6; ++d) {
    PbFunction<Rat> fd = size_table(d);
    require(is_fully_k(fd, 2, Mode::Increasing).ok,
            "d=" + std::to_string(d) + ": order 2 check failed");
    require(!is_fully_k(fd, 3, Mode::Increasing).ok,
            "d=" + std::to_string(d) + ": order 3 unexpectedly passed");
  }
}

// --- criterion 2: the 0/2/4/5 table and alternating closure ----------------

void crit_alternating_table(std::uint64_t seed) {
  PbFunction<Rat> f = table_02245(3);
  require(is_fully_k(f, 2, Mode::Alternating).ok, "order 2 alternating failed");
  require(!is_fully_k(f, 3, Mode::Alternating).ok, "order 3 alternating unexpectedly passed");

  MlPoly<Rat> p = extend(f);
  const std::vector<Rat> expect{0, 2, 2, 0, 2, 0, 0, -1};
  for (Mask a = 0; a < 8; ++a)
    require(p.coeffs[a] == expect[a], "coefficient mismatch at " + mask_text(a));

  for (int trial = 0; trial < 100; ++trial) {
    std::mt19937_64 eng = engine_for(seed, 2, trial);
    Grid g = random_grid(2, 3, 3, eng);
    std::vector<GridFunction<Rat>> gs;
    for (int i = 0; i < 3; ++i) gs.push_back(random_alternating_01(g, eng));
    GridFunction<Rat> h = compound(f, gs);
    require(check_fully_k(h, 2, Mode::Alternating).ok,
            "trial " + std::to_string(trial) + ": compound lost order-2 alternating");
  }
}

// --- criterion 3: sqrt composition ------------------------------------------

void crit_sqrt_composition(std::uint64_t) {
  MlPoly<double> p = compose_univariate_builtin(BuiltinPhi::Sqrt, 0, table_02245(3));
  const double s2 = std::sqrt(2.0), s5 = std::sqrt(5.0), tol = 1e-12;
  auto close = [&](double a, double b) { return std::abs(a - b) <= tol; };
  require(close(p.coeffs[0], 0.0), "constant coefficient not 0");
  for (Mask a : {1u, 2u, 4u})
    require(close(p.coeffs[a], s2), "degree-1 coefficient not sqrt(2)");
  for (Mask a : {3u, 5u, 6u})
    require(close(p.coeffs[a], -2 * (s2 - 1)), "degree-2 coefficient not -2(sqrt(2)-1)");
  require(close(p.coeffs[7], 3 * s2 + s5 - 6), "top coefficient not 3sqrt(2)+sqrt(5)-6");
}

// --- criterion 4: separate-variable composition loses order 2 ---------------

void crit_tensor_counterexample(std::uint64_t) {
  PbFunction<Rat> orf{2, {0, 1, 1, 1}};
  Grid line;
  line.axes = {Axis{{Rat(0), Rat(1, 2), Rat(1)}}};
  GridFunction<Rat> id{line, {Rat(0), Rat(1, 2), Rat(1)}};

  GridFunction<Rat> F = tensor_compose(extend(orf), {id, id});
  IndexTuple idx(2, 0);
  bool more = true;
  while (more) {
    const Point pt = point_at(F.grid, idx);
    require(F.values[flat_index(F.grid, idx)] == pt[0] + pt[1] - pt[0] * pt[1],
            "tensor compose is not s+t-st at " + point_to_string(pt));
    more = next_tuple(F.grid, idx);
  }

  auto chk = check_fully_k(F, 2, Mode::Increasing);
  require(!chk.ok, "s+t-st unexpectedly fully 2-increasing");
  require(chk.witness->value == Rat(-1) && chk.witness->s == Point{Rat(0), Rat(0)} &&
              chk.witness->h == std::vector<Rat>{Rat(1), Rat(1)},
          "witness is not value -1 at s=(0,0), h=(1,1)");

  GridFunction<Rat> h = compound(orf, {id, id});
  require(check_fully_k(h, 1, Mode::Increasing).ok,
          "same-variable compound lost plain monotonicity");
}

// --- criterion 5: indicator composition counterexample ----------------------

void crit_indicator_counterexample(std::uint64_t) {
  IndicatorCompositionReport r = indicator_composition_counterexample();
  require(r.phi_fully_3_increasing, "outer point-mass d.f. not fully 3-increasing");
  require(r.g_fully_2_increasing, "inner product d.f. not fully 2-increasing");
  require(r.composed_is_indicator, "composition is not the expected indicator");
  require(r.delta_value == Rat(-1),
          "mixed difference is " + format_rational(r.delta_value) + ", expected -1");
}

// --- criterion 6: interval partition sweep -----------------------------------

void crit_partition_sweep(std::uint64_t seed) {
  int verified = 0;
  for (int d = 1; d <= 8; ++d) {
    for (int k = 1; k <= d; ++k) {
      std::mt19937_64 eng = engine_for(seed, 6, d * 100 + k);
      for (int trial = 0; trial < 200; ++trial) {
        VectorFamily X;
        X.vectors.resize(d);
        for (auto& v : X.vectors) {
          v.resize(k);
          for (auto& c : v) c = rand_int(eng, 0, 3);
        }
        PartitionOptions opt;
        opt.explicit_dk1_base = trial % 4 == 0;
        PartitionResult r = partition_upper(X, k, opt);
        PartitionDiagnostics diag = verify_partition(r, X, k);
        require(diag.ok, "d=" + std::to_string(d) + " k=" + std::to_string(k) + " trial " +
                             std::to_string(trial) + ": " +
                             (diag.issues.empty() ? "?" : diag.issues.front()));
        ++verified;
      }
    }
  }
  require(verified == 7200, "expected 7200 verified partitions");
}

// --- criterion 7: closure suites ---------------------------------------------

void crit_closure(std::uint64_t seed, int trials) {
  for (int k = 1; k <= 3; ++k) {
    for (Mode mode : {Mode::Increasing, Mode::Alternating}) {
      try {
        ClosureReport r = closure_test(mode, 3, k, 3, trials,
                                       seed * 7919 + k * 101 + (mode == Mode::Increasing ? 0 : 1));
        require(r.passes == trials, "unexpected pass count");
      } catch (const ClosureFailure& e) {
        throw Fail{e.what()};
      }
    }
  }
}

// --- criterion 8: certificate suite -------------------------------------------

void crit_certificates(std::uint64_t seed) {
  std::mt19937_64 eng = engine_for(seed, 8);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = rand_int(eng, 1, 3);
    const int d = rand_int(eng, k, 4);
    PbFunction<Rat> f = gen_fully_k(d, k, Mode::Increasing, eng);
    Grid g = random_grid(k, 1, 3, eng);
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
      require(t.weight >= 0, "trial " + std::to_string(trial) + ": negative weight");
      sum += t.weight;
    }
    require(sum == f.values[full_mask(d)],
            "trial " + std::to_string(trial) + ": weight sum != f([d])");
    require(certificate_step_function(cert, g) == compound(f, dfs),
            "trial " + std::to_string(trial) + ": reconstruction mismatch");
  }
}

// --- criterion 9: identity suites ----------------------------------------------

void crit_identities(std::uint64_t seed) {
  {  // interval identity
    std::mt19937_64 eng = engine_for(seed, 9, 1);
    for (int trial = 0; trial < 1000; ++trial) {
      const int d = rand_int(eng, 1, 5);
      PbFunction<Rat> f = random_rational_table(d, eng);
      const Mask full = full_mask(d);
      const Mask gamma = static_cast<Mask>(rand_int(eng, 0, static_cast<int>(full)));
      const Mask beta = static_cast<Mask>(rand_int(eng, 0, static_cast<int>(full))) & gamma;
      Rat sum = 0;
      for_each_submask(gamma & ~beta,
                       [&](Mask extra) { sum += delta_point(f, beta | extra, 0); });
      require(sum == delta_point(f, beta, gamma & ~beta),
              "interval identity failed at trial " + std::to_string(trial));
    }
  }
  {  // derivative/difference correspondence
    std::mt19937_64 eng = engine_for(seed, 9, 2);
    for (int trial = 0; trial < 1000; ++trial) {
      const int d = rand_int(eng, 1, 5);
      PbFunction<Rat> f = random_rational_table(d, eng);
      const Mask beta = static_cast<Mask>(rand_int(eng, 0, static_cast<int>(full_mask(d))));
      auto sub = delta_table(f, beta);
      require(to_table(partial(extend(f), beta).poly) == sub.table,
              "derivative correspondence failed at trial " + std::to_string(trial));
    }
  }
  {  // coefficient form vs Bernoulli form
    std::mt19937_64 eng = engine_for(seed, 9, 3);
    for (int trial = 0; trial < 1000; ++trial) {
      const int d = rand_int(eng, 1, 5);
      PbFunction<Rat> f = random_rational_table(d, eng);
      std::vector<Rat> x(d);
      for (auto& xi : x) xi = Rat(rand_int(eng, -6, 12), rand_int(eng, 1, 6));
      require(eval(extend(f), std::span<const Rat>(x)) ==
                  bernoulli_eval(f, std::span<const Rat>(x)),
              "evaluation forms disagree at trial " + std::to_string(trial));
    }
  }
  {  // measure round trips
    std::mt19937_64 eng = engine_for(seed, 9, 4);
    for (int trial = 0; trial < 1000; ++trial) {
      const int dim = rand_int(eng, 1, 3);
      Grid g = random_grid(dim, 1, 3, eng);
      DiscreteMeasure<Rat> mu;
      IndexTuple idx(dim, 0);
      bool more = true;
      while (more) {
        if (rand_int(eng, 0, 2) == 0) {
          const int m = rand_int(eng, 1, 3);
          mu.support.push_back(point_at(g, idx));
          mu.masses.push_back(Rat(m, 4));
        }
        more = next_tuple(g, idx);
      }
      GridFunction<Rat> df = measure_to_df(mu, g);
      DiscreteMeasure<Rat> back = df_to_measure(df);
      require(back.support == mu.support && back.masses == mu.masses,
              "measure round trip failed at trial " + std::to_string(trial));
      require(measure_to_df(back, g) == df,
              "d.f. round trip failed at trial " + std::to_string(trial));
    }
  }
  {  // fast checker vs naive oracle
    std::mt19937_64 eng = engine_for(seed, 9, 5);
    for (int trial = 0; trial < 100; ++trial) {
      const int dim = rand_int(eng, 1, 3);
      Grid g = random_grid(dim, 1, 4, eng);
      GridFunction<Rat> f{g, std::vector<Rat>(g.size())};
      for (auto& v : f.values) v = rand_int(eng, -6, 6);
      const int k = rand_int(eng, 1, dim);
      for (Mode m : {Mode::Increasing, Mode::Decreasing, Mode::Alternating})
        require(check_fully_k_adjacent(f, k, m).ok == check_fully_k_naive(f, k, m).ok,
                "fast and naive checkers disagree at trial " + std::to_string(trial));
    }
  }
}

// --- criterion 10: renormalized approximation bound ---------------------------

void crit_approximation_bound(std::uint64_t seed) {
  const Rat epsilons[] = {Rat(1, 10), Rat(1, 4)};
  for (int trial = 0; trial < 50; ++trial) {
    const Rat eps = epsilons[trial % 2];
    std::mt19937_64 eng = engine_for(seed, 10, trial);

    // 4-point axes, strictly increasing rationals
    Grid g = random_grid(2, 4, 4, eng);

    // mass 1 - eps' inside the 2x2 prefix box, eps' outside, total exactly 1
    const Rat eps_used = eps * rand_int(eng, 0, 4) / 4;
    std::vector<std::pair<IndexTuple, long long>> inside, outside;
    IndexTuple idx(2, 0);
    bool more = true;
    while (more) {
      const bool in = idx[0] <= 1 && idx[1] <= 1;
      const int m = in ? rand_int(eng, 1, 3) : rand_int(eng, 0, 3);
      if (m > 0) (in ? inside : outside).emplace_back(idx, m);
      more = next_tuple(g, idx);
    }
    long long sin = 0, sout = 0;
    for (auto& [i, m] : inside) sin += m;
    for (auto& [i, m] : outside) sout += m;

    DiscreteMeasure<Rat> mu;
    for (auto& [i, m] : inside) {
      mu.support.push_back(point_at(g, i));
      mu.masses.push_back(Rat(m) / sin * (1 - eps_used));
    }
    if (eps_used > 0) {
      if (sout == 0) {
        mu.support.push_back(point_at(g, {3, 3}));
        mu.masses.push_back(eps_used);
      } else {
        for (auto& [i, m] : outside) {
          mu.support.push_back(point_at(g, i));
          mu.masses.push_back(Rat(m) / sout * eps_used);
        }
      }
    }
    GridFunction<Rat> F = measure_to_df(mu, g);
    require(F.values.back() == 1, "constructed d.f. does not reach 1");

    for (int prefix : {2, 3}) {
      std::vector<std::vector<Rat>> sub(2);
      for (int ax = 0; ax < 2; ++ax)
        sub[ax].assign(g.axes[ax].points.begin(), g.axes[ax].points.begin() + prefix);

      auto top = grid_find(g, {sub[0].back(), sub[1].back()});
      const Rat c = F.values[flat_index(g, *top)];
      require(c >= 1 - eps, "trial " + std::to_string(trial) + ": F(max alpha) < 1-eps");

      GridFunction<Rat> approx = subgrid_approx(F, sub);
      require(approx.values.back() == 1, "approximation is not a probability d.f.");

      for (const Rat& s0 : sub[0])
        for (const Rat& s1 : sub[1]) {
          auto at = grid_find(g, {s0, s1});
          const Rat diff = approx.values[flat_index(g, *at)] - F.values[flat_index(g, *at)];
          const Rat mag = diff < 0 ? Rat(-diff) : diff;
          require(mag <= 2 * eps, "trial " + std::to_string(trial) +
                                      ": bound exceeded at " + point_to_string({s0, s1}));
        }
    }
  }
}

}  // namespace

AcceptanceReport run_acceptance(std::uint64_t seed, bool mutate, int only, int closure_trials) {
  if (closure_trials < 1 || closure_trials > 10000)
    closure_trials = std::min(std::max(closure_trials, 1), 10000);
  struct Spec {
    int id;
    std::string name;
    double budget_ms;
    std::function<void()> run;
  };

  AcceptanceReport report;
  report.seed = seed;

  const std::vector<Spec> specs = {
      {1, "size-table coefficients and full orders (d = 3..6)", 1000,
       [&] { crit_size_table(seed, mutate); }},
      {2, "0/2/4/5 table: alternating orders and closure on 3x3 grids", 30000,
       [&] { crit_alternating_table(seed); }},
      {3, "sqrt composition coefficients within 1e-12", 5000,
       [&] { crit_sqrt_composition(seed); }},
      {4, "separate-variable composition counterexample", 5000,
       [&] { crit_tensor_counterexample(seed); }},
      {5, "indicator composition counterexample", 5000,
       [&] { crit_indicator_counterexample(seed); }},
      {6, "interval partition sweep (k <= d <= 8, 200 families each)", 60000,
       [&] { crit_partition_sweep(seed); }},
      {7, "closure suites: " + std::to_string(closure_trials) + " trials per order and mode",
       300000, [&] { crit_closure(seed, closure_trials); }},
      {8, "certificate suite: 200 reconstructions", 60000, [&] { crit_certificates(seed); }},
      {9, "identity suites: 1000 instances each", 120000, [&] { crit_identities(seed); }},
      {10, "renormalized approximation bound on 4x4 grids", 30000,
       [&] { crit_approximation_bound(seed); }},
  };

  for (const Spec& spec : specs) {
    if (only != 0 && spec.id != only) continue;
    CriterionResult res;
    res.id = spec.id;
    res.name = spec.name;
    const auto start = Clock::now();
    try {
      spec.run();
      res.pass = true;
    } catch (const Fail& f) {
      res.pass = false;
      res.detail = f.detail;
    } catch (const std::exception& e) {
      res.pass = false;
      res.detail = e.what();
    }
    res.ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    if (res.pass && res.ms > spec.budget_ms) {
      res.pass = false;
      std::ostringstream os;
      os << "runtime " << res.ms << " ms exceeds the budget of " << spec.budget_ms << " ms";
      res.detail = os.str();
    }
    report.results.push_back(std::move(res));
  }
  return report;
}

}  // namespace kmono
