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

#include "kmono/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace kmono {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool digits_only(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

[[noreturn]] void bad(std::string_view whole) {
  throw std::invalid_argument("not a rational literal: '" + std::string(whole) + "'");
}

Int parse_signed_int(std::string_view s, std::string_view whole) {
  bool neg = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!digits_only(s)) bad(whole);
  Int v{std::string(s)};
  return neg ? Int(-v) : v;
}

}  // namespace

Rat parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");

  if (auto pos = s.find('/'); pos != std::string_view::npos) {
    Int num = parse_signed_int(s.substr(0, pos), s);
    Int den = parse_signed_int(s.substr(pos + 1), s);
    if (den == 0) throw std::invalid_argument("zero denominator: '" + std::string(s) + "'");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    return Rat(num, den);
  }

  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot);
    std::string_view fp = s.substr(dot + 1);
    bool neg = false;
    if (!ip.empty() && (ip.front() == '+' || ip.front() == '-')) {
      neg = ip.front() == '-';
      ip.remove_prefix(1);
    }
    if (!ip.empty() && !digits_only(ip)) bad(s);
    if (!fp.empty() && !digits_only(fp)) bad(s);
    if (ip.empty() && fp.empty()) bad(s);
    Int whole = ip.empty() ? Int(0) : Int{std::string(ip)};
    Int frac = fp.empty() ? Int(0) : Int{std::string(fp)};
    Int den = 1;
    for (size_t i = 0; i < fp.size(); ++i) den *= 10;
    Int num = whole * den + frac;
    if (neg) num = -num;
    return Rat(num, den);
  }

  return Rat(parse_signed_int(s, s), 1);
}

std::string format_rational(const Rat& x) {
  Int num = numerator(x);
  Int den = denominator(x);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rat& x) { return x.convert_to<double>(); }

}  // namespace kmono
