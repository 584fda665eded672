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

#include "kmono/json_io.hpp"

#include <fstream>
#include <sstream>

namespace kmono {
namespace {

Rat rat_from_json(const Json& j, const std::string& field) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw SchemaError(field, e.what());
    }
  }
  if (j.is_number())
    throw SchemaError(field,
                      "exact values must be strings like \"1/3\" or \"0.5\", not bare numbers");
  throw SchemaError(field, "expected a rational string");
}

const Json& member(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw SchemaError(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(where + "." + key, "missing field");
  return *it;
}

int int_from_json(const Json& j, const std::string& field) {
  if (!j.is_number_integer()) throw SchemaError(field, "expected an integer");
  return j.get<int>();
}

const Json& array_at(const Json& j, const std::string& field) {
  if (!j.is_array()) throw SchemaError(field, "expected an array");
  return j;
}

std::vector<Rat> rat_array(const Json& j, const std::string& field) {
  array_at(j, field);
  std::vector<Rat> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(rat_from_json(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

Json rat_array_to_json(const std::vector<Rat>& v) {
  Json out = Json::array();
  for (const Rat& x : v) out.push_back(format_rational(x));
  return out;
}

std::vector<int> elements_array(const Json& j, const std::string& field) {
  array_at(j, field);
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(int_from_json(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    int line = 1, col = 1;
    const std::size_t upto = e.byte == 0 ? 0 : std::min(text.size(), e.byte - 1);
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw JsonTextError(line, col, e.what());
  }
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str());
}

PbFunction<Rat> pb_from_json(const Json& j) {
  PbFunction<Rat> f;
  f.d = int_from_json(member(j, "d", "pbf"), "pbf.d");
  if (f.d < 1 || f.d > kMaxGroundSize)
    throw SchemaError("pbf.d", "must be in [1," + std::to_string(kMaxGroundSize) + "]");
  f.values = rat_array(member(j, "values", "pbf"), "pbf.values");
  if (f.values.size() != (std::size_t{1} << f.d))
    throw SchemaError("pbf.values", "expected " + std::to_string(std::size_t{1} << f.d) +
                                        " entries, got " + std::to_string(f.values.size()));
  return f;
}

Json pb_to_json(const PbFunction<Rat>& f) {
  return Json{{"d", f.d}, {"values", rat_array_to_json(f.values)}};
}

MlPolyVar mlpoly_from_json(const Json& j) {
  const int d = int_from_json(member(j, "d", "mlpoly"), "mlpoly.d");
  if (d < 0 || d > kMaxGroundSize) throw SchemaError("mlpoly.d", "out of range");
  const Json& mode = member(j, "mode", "mlpoly");
  if (!mode.is_string()) throw SchemaError("mlpoly.mode", "expected \"exact\" or \"float\"");
  const std::string m = mode.get<std::string>();
  const Json& coeffs = array_at(member(j, "coeffs", "mlpoly"), "mlpoly.coeffs");
  if (coeffs.size() != (std::size_t{1} << d))
    throw SchemaError("mlpoly.coeffs", "expected " + std::to_string(std::size_t{1} << d) +
                                           " entries, got " + std::to_string(coeffs.size()));
  if (m == "exact") {
    MlPoly<Rat> p;
    p.d = d;
    p.coeffs = rat_array(coeffs, "mlpoly.coeffs");
    return p;
  }
  if (m == "float") {
    MlPoly<double> p;
    p.d = d;
    p.coeffs.reserve(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      const std::string field = "mlpoly.coeffs[" + std::to_string(i) + "]";
      if (coeffs[i].is_number())
        p.coeffs.push_back(coeffs[i].get<double>());
      else if (coeffs[i].is_string())
        p.coeffs.push_back(to_double(rat_from_json(coeffs[i], field)));
      else
        throw SchemaError(field, "expected a number or rational string");
    }
    validate(p);
    return p;
  }
  throw SchemaError("mlpoly.mode", "expected \"exact\" or \"float\", got \"" + m + "\"");
}

Json mlpoly_to_json(const MlPoly<Rat>& p) {
  return Json{{"d", p.d}, {"mode", "exact"}, {"coeffs", rat_array_to_json(p.coeffs)}};
}

Json mlpoly_to_json(const MlPoly<double>& p) {
  Json coeffs = Json::array();
  for (double c : p.coeffs) coeffs.push_back(c);
  return Json{{"d", p.d}, {"mode", "float"}, {"coeffs", coeffs}};
}

Grid grid_from_json(const Json& j) {
  const Json& axes = array_at(member(j, "axes", "grid"), "grid.axes");
  Grid g;
  for (std::size_t i = 0; i < axes.size(); ++i) {
    Axis a;
    a.points = rat_array(axes[i], "grid.axes[" + std::to_string(i) + "]");
    g.axes.push_back(std::move(a));
  }
  try {
    validate(g);
  } catch (const std::invalid_argument& e) {
    throw SchemaError("grid.axes", e.what());
  }
  return g;
}

Json grid_to_json(const Grid& g) {
  Json axes = Json::array();
  for (const Axis& a : g.axes) axes.push_back(rat_array_to_json(a.points));
  return Json{{"axes", axes}};
}

GridFunction<Rat> grid_function_from_json(const Json& j) {
  GridFunction<Rat> f;
  f.grid = grid_from_json(j);
  f.values = rat_array(member(j, "values", "gridfn"), "gridfn.values");
  if (f.values.size() != f.grid.size())
    throw SchemaError("gridfn.values", "expected " + std::to_string(f.grid.size()) +
                                           " entries, got " + std::to_string(f.values.size()));
  return f;
}

Json grid_function_to_json(const GridFunction<Rat>& f) {
  Json out = grid_to_json(f.grid);
  out["values"] = rat_array_to_json(f.values);
  return out;
}

DiscreteMeasure<Rat> measure_from_json(const Json& j) {
  DiscreteMeasure<Rat> m;
  const Json& pts = array_at(member(j, "points", "measure"), "measure.points");
  for (std::size_t i = 0; i < pts.size(); ++i)
    m.support.push_back(rat_array(pts[i], "measure.points[" + std::to_string(i) + "]"));
  m.masses = rat_array(member(j, "masses", "measure"), "measure.masses");
  try {
    validate(m);
  } catch (const std::invalid_argument& e) {
    throw SchemaError("measure", e.what());
  }
  return m;
}

Json measure_to_json(const DiscreteMeasure<Rat>& m) {
  Json pts = Json::array();
  for (const Point& p : m.support) pts.push_back(rat_array_to_json(p));
  return Json{{"points", pts}, {"masses", rat_array_to_json(m.masses)}};
}

VectorFamily vector_family_from_json(const Json& j) {
  const int k = int_from_json(member(j, "k", "family"), "family.k");
  const Json& vs = array_at(member(j, "vectors", "family"), "family.vectors");
  VectorFamily X;
  for (std::size_t i = 0; i < vs.size(); ++i)
    X.vectors.push_back(rat_array(vs[i], "family.vectors[" + std::to_string(i) + "]"));
  try {
    validate(X);
  } catch (const std::invalid_argument& e) {
    throw SchemaError("family.vectors", e.what());
  }
  if (X.k() != k)
    throw SchemaError("family.k", "k = " + std::to_string(k) +
                                      " does not match the vector length " +
                                      std::to_string(X.k()));
  return X;
}

Json vector_family_to_json(const VectorFamily& X) {
  Json vs = Json::array();
  for (const auto& v : X.vectors) vs.push_back(rat_array_to_json(v));
  return Json{{"k", X.k()}, {"vectors", vs}};
}

PartitionResult partition_from_json(const Json& j, int d) {
  const Json& ivs = array_at(member(j, "intervals", "partition"), "partition.intervals");
  PartitionResult r;
  for (std::size_t i = 0; i < ivs.size(); ++i) {
    const std::string where = "partition.intervals[" + std::to_string(i) + "]";
    SetInterval iv;
    try {
      iv.sigma = mask_from_elements(elements_array(member(ivs[i], "sigma", where), where + ".sigma"), d);
      iv.tau = mask_from_elements(elements_array(member(ivs[i], "tau", where), where + ".tau"), d);
    } catch (const std::invalid_argument& e) {
      throw SchemaError(where, e.what());
    }
    r.intervals.push_back(iv);
  }
  return r;
}

Json partition_to_json(const PartitionResult& r) {
  Json ivs = Json::array();
  for (const SetInterval& iv : r.intervals)
    ivs.push_back(Json{{"sigma", mask_elements(iv.sigma)}, {"tau", mask_elements(iv.tau)}});
  return Json{{"intervals", ivs}};
}

CompoundInput<Rat> compound_input_from_json(const Json& j) {
  CompoundInput<Rat> in;
  in.f = pb_from_json(member(j, "f", "compound"));
  const Json& gs = array_at(member(j, "gs", "compound"), "compound.gs");
  for (std::size_t i = 0; i < gs.size(); ++i) {
    try {
      in.gs.push_back(grid_function_from_json(gs[i]));
    } catch (const SchemaError& e) {
      throw SchemaError("compound.gs[" + std::to_string(i) + "]." + e.field, e.what());
    }
  }
  try {
    validate(in);
  } catch (const std::invalid_argument& e) {
    throw SchemaError("compound", e.what());
  }
  return in;
}

Json compound_input_to_json(const CompoundInput<Rat>& in) {
  Json gs = Json::array();
  for (const auto& g : in.gs) gs.push_back(grid_function_to_json(g));
  return Json{{"f", pb_to_json(in.f)}, {"gs", gs}};
}

Json certificate_to_json(const Certificate& c) {
  Json terms = Json::array();
  for (const CertificateTerm& t : c.terms) {
    Json term{{"weight", format_rational(t.weight)},
              {"group", t.low_order ? "low" : "interval"}};
    if (t.threshold)
      term["threshold"] = rat_array_to_json(*t.threshold);
    else
      term["threshold"] = "always";
    terms.push_back(std::move(term));
  }
  return Json{{"d", c.d}, {"k", c.k}, {"terms", terms}};
}

Json witness_to_json(const CubeWitness<Rat>& w) {
  return Json{{"beta", mask_elements(w.beta)},
              {"gamma", mask_elements(w.gamma)},
              {"value", format_rational(w.value)}};
}

template <class T>
Json witness_to_json(const GridWitness<T>& w) {
  Json out{{"p", w.p}, {"s", rat_array_to_json(w.s)}, {"h", rat_array_to_json(w.h)}};
  if constexpr (std::is_same_v<T, Rat>)
    out["value"] = format_rational(w.value);
  else
    out["value"] = w.value;
  return out;
}

template Json witness_to_json<Rat>(const GridWitness<Rat>&);
template Json witness_to_json<double>(const GridWitness<double>&);

}  // namespace kmono
