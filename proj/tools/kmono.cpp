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
// kmono: certify higher-order monotonicity of subset tables and grid
// functions, build multilinear extensions and interval partitions, compound
// functions and emit nonnegative-weight certificates.
//
// Exit codes: 0 = pass/success, 1 = property failure (machine-readable
// witness on stdout), 2 = usage, parse, or schema error.
//

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "kmono/json_io.hpp"
#include "kmono/selftest.hpp"

using namespace kmono;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Output {
  bool json = false;
  std::string out_path;  // empty = stdout

  void emit(const Json& payload) const {
    if (out_path.empty()) {
      std::cout << payload.dump(2) << "\n";
    } else {
      std::ofstream f(out_path);
      if (!f) throw std::runtime_error("cannot write file: " + out_path);
      f << payload.dump(2) << "\n";
    }
  }
};

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

Mode parse_mode(const std::string& s) {
  if (s == "inc" || s == "increasing") return Mode::Increasing;
  if (s == "dec" || s == "decreasing") return Mode::Decreasing;
  if (s == "alt" || s == "alternating") return Mode::Alternating;
  throw CLI::ValidationError("--mode", "expected inc, dec or alt");
}

std::vector<int> parse_int_list(const std::string& s, const char* flag) {
  std::vector<int> out;
  std::string cur;
  for (char c : s + ",") {
    if (c == ',') {
      if (cur.empty()) continue;
      try {
        out.push_back(std::stoi(cur));
      } catch (...) {
        throw CLI::ValidationError(flag, "expected a comma-separated integer list");
      }
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (out.empty()) throw CLI::ValidationError(flag, "expected a comma-separated integer list");
  return out;
}

int report_check(const CubeCheck<Rat>& chk, const std::string& what, double ms,
                 const Output& out) {
  if (out.json) {
    Json rep{{"verdict", chk.ok ? "pass" : "fail"}, {"witnesses", Json::array()},
             {"timing_ms", ms}};
    if (!chk.ok) rep["witnesses"].push_back(witness_to_json(*chk.witness));
    out.emit(rep);
  } else if (chk.ok) {
    std::cout << "pass: " << what << "\n";
  } else {
    const auto& w = *chk.witness;
    std::cout << "FAIL: " << what << "\nwitness: beta=" << mask_to_string(w.beta)
              << ", gamma=" << mask_to_string(w.gamma) << ", value=" << format_rational(w.value)
              << "\n";
  }
  return chk.ok ? kExitPass : kExitFail;
}

int report_check(const GridCheck<Rat>& chk, const std::string& what, double ms,
                 const Output& out) {
  if (out.json) {
    Json rep{{"verdict", chk.ok ? "pass" : "fail"}, {"witnesses", Json::array()},
             {"timing_ms", ms}};
    if (!chk.ok) rep["witnesses"].push_back(witness_to_json(*chk.witness));
    out.emit(rep);
  } else if (chk.ok) {
    std::cout << "pass: " << what << "\n";
  } else {
    const auto& w = *chk.witness;
    std::string p = "(";
    for (std::size_t i = 0; i < w.p.size(); ++i) p += (i ? "," : "") + std::to_string(w.p[i]);
    p += ")";
    std::cout << "FAIL: " << what << "\nwitness: p=" << p << ", s=" << point_to_string(w.s)
              << ", h=" << point_to_string(w.h) << ", value=" << format_rational(w.value)
              << "\n";
  }
  return chk.ok ? kExitPass : kExitFail;
}

int run_check_pb(const std::string& path, int k, const std::string& mode_s,
                 const std::string& eps_s, const Output& out) {
  const auto start = std::chrono::steady_clock::now();
  PbFunction<Rat> f = pb_from_json(load_json_file(path));
  const Mode mode = parse_mode(mode_s);
  const Rat eps = parse_rational(eps_s);
  CubeCheck<Rat> chk = is_fully_k(f, k, mode, eps);
  return report_check(chk, "fully " + std::to_string(k) + "-" + mode_name(mode),
                      ms_since(start), out);
}

int run_check_grid(const std::string& path, std::optional<int> k,
                   const std::optional<std::string>& n_s, const std::string& mode_s,
                   const std::string& eps_s, const Output& out) {
  const auto start = std::chrono::steady_clock::now();
  GridFunction<Rat> f = grid_function_from_json(load_json_file(path));
  const Mode mode = parse_mode(mode_s);
  const Rat eps = parse_rational(eps_s);
  if (k.has_value() == n_s.has_value())
    throw CLI::ValidationError("check-grid", "exactly one of --k and --n is required");
  GridCheck<Rat> chk;
  std::string what;
  if (k) {
    chk = check_fully_k(f, *k, mode, eps);
    what = "fully " + std::to_string(*k) + "-" + mode_name(mode);
  } else {
    MultiIndex n{parse_int_list(*n_s, "--n")};
    chk = check_n_monotone(f, n, mode, eps);
    what = "(" + *n_s + ")-" + mode_name(mode);
  }
  return report_check(chk, what, ms_since(start), out);
}

int run_extend(const std::string& path, const std::string& phi, double theta,
               const std::string& phi_map_path, const Output& out) {
  PbFunction<Rat> f = pb_from_json(load_json_file(path));
  if (!phi.empty() && !phi_map_path.empty())
    throw CLI::ValidationError("extend", "--phi and --phi-map are mutually exclusive");
  if (!phi.empty()) {
    BuiltinPhi which;
    if (phi == "sqrt")
      which = BuiltinPhi::Sqrt;
    else if (phi == "log1p")
      which = BuiltinPhi::Log1p;
    else if (phi == "power")
      which = BuiltinPhi::Power;
    else
      throw CLI::ValidationError("--phi", "expected sqrt, log1p or power");
    out.emit(mlpoly_to_json(compose_univariate_builtin(which, theta, f)));
    return kExitPass;
  }
  if (!phi_map_path.empty()) {
    const Json mj = load_json_file(phi_map_path);
    const Json& pairs = mj.contains("pairs") ? mj["pairs"] : mj;
    if (!pairs.is_array()) throw SchemaError("phi.pairs", "expected an array of [value, image]");
    std::map<Rat, Rat> phi_map;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const std::string where = "phi.pairs[" + std::to_string(i) + "]";
      if (!pairs[i].is_array() || pairs[i].size() != 2)
        throw SchemaError(where, "expected [value, image]");
      Rat key = parse_rational(pairs[i][0].get<std::string>());
      Rat val = parse_rational(pairs[i][1].get<std::string>());
      phi_map[key] = val;
    }
    out.emit(mlpoly_to_json(compose_univariate(phi_map, f)));
    return kExitPass;
  }
  out.emit(mlpoly_to_json(extend(f)));
  return kExitPass;
}

int run_derive(const std::string& path, const std::string& beta_s, const Output& out) {
  MlPolyVar p = mlpoly_from_json(load_json_file(path));
  const std::vector<int> beta_elems = parse_int_list(beta_s, "--beta");
  return std::visit(
      [&](const auto& poly) {
        const Mask beta = mask_from_elements(beta_elems, poly.d);
        auto dp = partial(poly, beta);
        Json j = mlpoly_to_json(dp.poly);
        j["variables"] = dp.vars;  // original 1-based variable ids
        out.emit(j);
        return kExitPass;
      },
      p);
}

int run_partition(const std::string& path, bool verify, bool dk1, const Output& out) {
  VectorFamily X = vector_family_from_json(load_json_file(path));
  PartitionOptions opt;
  opt.explicit_dk1_base = dk1;
  PartitionResult r = partition_upper(X, X.k(), opt);
  if (verify) {
    PartitionDiagnostics diag = verify_partition(r, X, X.k());
    if (!diag.ok) {
      Json rep{{"verdict", "fail"}, {"issues", diag.issues}};
      out.emit(rep);
      return kExitFail;
    }
  }
  out.emit(partition_to_json(r));
  return kExitPass;
}

int run_compound(const std::string& path, const Output& out) {
  CompoundInput<Rat> in = compound_input_from_json(load_json_file(path));
  out.emit(grid_function_to_json(compound(in)));
  return kExitPass;
}

int run_certify(const std::string& path, const Output& out) {
  const Json j = load_json_file(path);
  PbFunction<Rat> f = pb_from_json(j.contains("f") ? j["f"] : j);
  if (!j.contains("k")) throw SchemaError("certify.k", "missing field");
  const int k = j["k"].get<int>();
  if (!j.contains("grid")) throw SchemaError("certify.grid", "missing field");
  const Grid grid = grid_from_json(j["grid"]);
  if (!j.contains("points") || !j["points"].is_array())
    throw SchemaError("certify.points", "expected an array of grid points");
  std::vector<Point> pts;
  for (std::size_t i = 0; i < j["points"].size(); ++i) {
    Point p;
    for (const auto& c : j["points"][i])
      p.push_back(parse_rational(c.get<std::string>()));
    pts.push_back(std::move(p));
  }
  try {
    Certificate cert = indicator_decomposition(f, k, pts, grid);
    out.emit(certificate_to_json(cert));
    return kExitPass;
  } catch (const CertificateRefused& e) {
    Json rep{{"verdict", "fail"},
             {"witnesses", Json::array({witness_to_json(e.witness)})},
             {"reason", e.what()}};
    out.emit(rep);
    return kExitFail;
  }
}

int run_measure(const std::string& path, bool inverse, const std::string& grid_path,
                const Output& out) {
  if (inverse) {
    if (grid_path.empty())
      throw CLI::ValidationError("measure", "--inverse requires --grid <grid.json>");
    DiscreteMeasure<Rat> mu = measure_from_json(load_json_file(path));
    Grid grid = grid_from_json(load_json_file(grid_path));
    out.emit(grid_function_to_json(measure_to_df(mu, grid)));
    return kExitPass;
  }
  GridFunction<Rat> f = grid_function_from_json(load_json_file(path));
  // surface the typed witness before extraction would fail
  GridCheck<Rat> chk = check_fully_k(f, f.grid.dim(), Mode::Increasing);
  bool nonneg = true;
  for (const Rat& v : f.values)
    if (v < 0) nonneg = false;
  if (!chk.ok || !nonneg) {
    Json rep{{"verdict", "fail"},
             {"reason", nonneg ? "not a distribution function" : "negative values"},
             {"witnesses", Json::array()}};
    if (!chk.ok) rep["witnesses"].push_back(witness_to_json(*chk.witness));
    out.emit(rep);
    return kExitFail;
  }
  out.emit(measure_to_json(df_to_measure(f)));
  return kExitPass;
}

int run_approx(const std::string& path, const Output& out) {
  const Json j = load_json_file(path);
  if (!j.contains("df")) throw SchemaError("approx.df", "missing field");
  GridFunction<Rat> f = grid_function_from_json(j["df"]);
  if (!j.contains("subgrid") || !j["subgrid"].is_array())
    throw SchemaError("approx.subgrid", "expected per-axis point lists");
  std::vector<std::vector<Rat>> sub;
  for (const auto& axis : j["subgrid"]) {
    std::vector<Rat> pts;
    for (const auto& c : axis) pts.push_back(parse_rational(c.get<std::string>()));
    sub.push_back(std::move(pts));
  }
  try {
    out.emit(grid_function_to_json(subgrid_approx(f, sub)));
    return kExitPass;
  } catch (const NotDistributionFunction& e) {
    out.emit(Json{{"verdict", "fail"}, {"reason", e.what()}});
    return kExitFail;
  }
}

int run_gen(int d, int k, const std::string& mode_s, std::uint64_t seed, const Output& out) {
  PbFunction<Rat> f = gen_fully_k(d, k, parse_mode(mode_s), seed);
  out.emit(pb_to_json(f));
  return kExitPass;
}

int run_selftest(std::uint64_t seed, bool mutate, int only, int trials, const Output& out) {
  const auto start = std::chrono::steady_clock::now();
  AcceptanceReport report = run_acceptance(seed, mutate, only, trials);
  if (out.json) {
    Json criteria = Json::array();
    Json witnesses = Json::array();
    for (const auto& r : report.results) {
      criteria.push_back(Json{
          {"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"ms", r.ms}, {"detail", r.detail}});
      if (!r.pass) witnesses.push_back(Json{{"criterion", r.id}, {"detail", r.detail}});
    }
    out.emit(Json{{"verdict", report.all_pass() ? "pass" : "fail"},
                  {"seed", seed},
                  {"criteria", criteria},
                  {"witnesses", witnesses},
                  {"timing_ms", ms_since(start)}});
  } else {
    for (const auto& r : report.results)
      std::cout << (r.pass ? "PASS" : "FAIL") << "  criterion " << r.id << ": " << r.name
                << (r.detail.empty() ? "" : "  -- " + r.detail) << "\n";
    std::cout << (report.all_pass() ? "ALL PASS" : "FAILURES PRESENT") << " (seed " << seed
              << ")\n";
  }
  return report.all_pass() ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"higher-order monotonicity certification toolkit"};
  app.require_subcommand(1);
  app.fallthrough(true);  // allow --json/--out after the subcommand name

  std::uint64_t default_seed = 1;
  if (const char* env = std::getenv("KMONO_SEED"))
    default_seed = std::strtoull(env, nullptr, 10);

  Output out;
  app.add_flag("--json", out.json, "machine-readable report output");
  app.add_option("--out", out.out_path, "write the result payload to a file");

  std::string input, mode = "inc", eps = "0", n_list, beta, phi, phi_map, grid_path;
  int k = 1;
  std::optional<int> k_opt;
  std::optional<std::string> n_opt;
  double theta = 1.0;
  bool verify = false, dk1 = false, inverse = false, mutate = false;
  int d_gen = 3, k_gen = 2, only = 0, trials = 500;
  std::uint64_t seed = default_seed;

  auto* c_pb = app.add_subcommand("check-pb", "check a subset table for fully k-monotonicity");
  c_pb->add_option("input", input, "table JSON")->required();
  c_pb->add_option("--k", k, "order")->required();
  c_pb->add_option("--mode", mode, "inc|dec|alt");
  c_pb->add_option("--eps", eps, "tolerance (rational)");

  auto* c_grid = app.add_subcommand("check-grid", "check a grid function");
  c_grid->add_option("input", input, "grid function JSON")->required();
  c_grid->add_option("--k", k_opt, "fully-k order");
  c_grid->add_option("--n", n_opt, "multi-order, e.g. 2,1");
  c_grid->add_option("--mode", mode, "inc|dec|alt");
  c_grid->add_option("--eps", eps, "tolerance (rational)");

  auto* c_ext = app.add_subcommand("extend", "multilinear extension (optionally of phi o f)");
  c_ext->add_option("input", input, "table JSON")->required();
  c_ext->add_option("--phi", phi, "builtin map: sqrt|log1p|power");
  c_ext->add_option("--theta", theta, "exponent for --phi power");
  c_ext->add_option("--phi-map", phi_map, "explicit value map JSON");

  auto* c_der = app.add_subcommand("derive", "partial derivative of a polynomial");
  c_der->add_option("input", input, "polynomial JSON")->required();
  c_der->add_option("--beta", beta, "variables, e.g. 1,2")->required();

  auto* c_part = app.add_subcommand("partition", "set-interval partition of {|gamma| >= k}");
  c_part->add_option("input", input, "vector family JSON")->required();
  c_part->add_flag("--verify", verify, "run the brute-force verifier first");
  c_part->add_flag("--dk1-base", dk1, "use the explicit d = k+1 base case");

  auto* c_comp = app.add_subcommand("compound", "compound a table with grid functions");
  c_comp->add_option("input", input, "compound input JSON")->required();

  auto* c_cert = app.add_subcommand("certify", "nonnegative indicator decomposition");
  c_cert->add_option("input", input, "certify input JSON")->required();

  auto* c_meas = app.add_subcommand("measure", "extract the measure of a d.f. (or inverse)");
  c_meas->add_option("input", input, "grid function (or measure with --inverse)")->required();
  c_meas->add_flag("--inverse", inverse, "build the d.f. of a measure");
  c_meas->add_option("--grid", grid_path, "grid JSON for --inverse");

  auto* c_appr = app.add_subcommand("approx", "renormalized sub-grid approximation of a d.f.");
  c_appr->add_option("input", input, "{df, subgrid} JSON")->required();

  auto* c_gen = app.add_subcommand("gen", "generate a fully k-monotone table");
  c_gen->add_option("--d", d_gen, "ground set size (<= 6)")->required();
  c_gen->add_option("--k", k_gen, "order")->required();
  c_gen->add_option("--mode", mode, "inc|dec|alt");
  c_gen->add_option("--seed", seed, "generator seed");

  auto* c_self = app.add_subcommand("selftest", "run the full verification suite");
  c_self->add_option("--seed", seed, "suite seed");
  c_self->add_flag("--mutate", mutate, "inject one wrong value (harness sanity check)");
  c_self->add_option("--only", only, "run a single criterion (1-10)");
  c_self->add_option("--trials", trials, "closure trials per order and mode (default 500)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (c_pb->parsed()) return run_check_pb(input, k, mode, eps, out);
    if (c_grid->parsed()) return run_check_grid(input, k_opt, n_opt, mode, eps, out);
    if (c_ext->parsed()) return run_extend(input, phi, theta, phi_map, out);
    if (c_der->parsed()) return run_derive(input, beta, out);
    if (c_part->parsed()) return run_partition(input, verify, dk1, out);
    if (c_comp->parsed()) return run_compound(input, out);
    if (c_cert->parsed()) return run_certify(input, out);
    if (c_meas->parsed()) return run_measure(input, inverse, grid_path, out);
    if (c_appr->parsed()) return run_approx(input, out);
    if (c_gen->parsed()) return run_gen(d_gen, k_gen, mode, seed, out);
    if (c_self->parsed()) return run_selftest(seed, mutate, only, trials, out);
    std::cerr << "error: no subcommand\n";
    return kExitUsage;
  } catch (const JsonTextError& e) {
    std::cerr << "error: JSON parse failure at line " << e.line << ", column " << e.column
              << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const SchemaError& e) {
    std::cerr << "error: schema violation: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
