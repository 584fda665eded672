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

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace kmono {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Parses "p/q", plain integers ("-3") and decimal literals ("0.25", ".5").
/// Throws std::invalid_argument on anything else (including NaN/inf/exponents).
Rat parse_rational(std::string_view text);

/// Canonical text form: "p" when the denominator is 1, else "p/q".
std::string format_rational(const Rat& x);

double to_double(const Rat& x);

}  // namespace kmono
