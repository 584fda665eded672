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
// Wire formats.  Exact values travel as strings ("1/3", "0.5", "-2") so the
// exact arithmetic path is never contaminated by binary floats; bare JSON
// numbers are accepted only inside float-mode polynomials.
//

#pragma once

#include <stdexcept>
#include <string>
#include <variant>

#include <json.hpp>

#include "kmono/compounding.hpp"
#include "kmono/grid_monotone.hpp"
#include "kmono/interval_partition.hpp"
#include "kmono/multilinear.hpp"
#include "kmono/subset_core.hpp"

namespace kmono {

using Json = nlohmann::json;

/// Input violates a schema; `field` names the offending location.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string field_in, const std::string& what)
      : std::runtime_error(field_in + ": " + what), field(std::move(field_in)) {}
  std::string field;
};

/// Input is not JSON at all; position is 1-based.
class JsonTextError : public std::runtime_error {
 public:
  JsonTextError(int line_in, int column_in, const std::string& what)
      : std::runtime_error(what), line(line_in), column(column_in) {}
  int line = 1;
  int column = 1;
};

/// Parses JSON text, translating syntax errors into line/column form.
Json parse_json_text(const std::string& text);

/// Reads and parses a file (throws std::runtime_error if unreadable).
Json load_json_file(const std::string& path);

// --- pseudo-Boolean tables -------------------------------------------------

PbFunction<Rat> pb_from_json(const Json& j);
Json pb_to_json(const PbFunction<Rat>& f);

// --- multilinear polynomials (exact or float mode) --------------------------

using MlPolyVar = std::variant<MlPoly<Rat>, MlPoly<double>>;

MlPolyVar mlpoly_from_json(const Json& j);
Json mlpoly_to_json(const MlPoly<Rat>& p);
Json mlpoly_to_json(const MlPoly<double>& p);

// --- grids, grid functions, measures ----------------------------------------

Grid grid_from_json(const Json& j);           // {"axes": [[...], ...]}
Json grid_to_json(const Grid& g);

GridFunction<Rat> grid_function_from_json(const Json& j);
Json grid_function_to_json(const GridFunction<Rat>& f);

DiscreteMeasure<Rat> measure_from_json(const Json& j);
Json measure_to_json(const DiscreteMeasure<Rat>& m);

// --- vector families and partitions ------------------------------------------

VectorFamily vector_family_from_json(const Json& j);  // {"k": ..., "vectors": [...]}
Json vector_family_to_json(const VectorFamily& X);

PartitionResult partition_from_json(const Json& j, int d);
Json partition_to_json(const PartitionResult& r);

// --- compound inputs and certificates ----------------------------------------

CompoundInput<Rat> compound_input_from_json(const Json& j);
Json compound_input_to_json(const CompoundInput<Rat>& in);

Json certificate_to_json(const Certificate& c);

// --- witnesses ---------------------------------------------------------------

Json witness_to_json(const CubeWitness<Rat>& w);
template <class T>
Json witness_to_json(const GridWitness<T>& w);

}  // namespace kmono
