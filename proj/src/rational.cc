// Copyright 2026 The ptesolve Authors.
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

#include "ptesolve/rational.h"

#include <cctype>

namespace ptesolve {
namespace {

using boost::multiprecision::cpp_int;

std::optional<cpp_int> ParseInteger(std::string_view text, bool allow_sign) {
  bool negative = false;
  if (allow_sign && !text.empty() && text.front() == '-') {
    negative = true;
    text.remove_prefix(1);
  }
  if (text.empty() || text.size() > 4096) return std::nullopt;
  cpp_int value = 0;
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    value = value * 10 + (c - '0');
  }
  return negative ? cpp_int(-value) : value;
}

}  // namespace

std::optional<Rational> ParseRational(std::string_view text) {
  std::size_t slash = text.find('/');
  if (slash == std::string_view::npos) {
    auto n = ParseInteger(text, true);
    if (!n) return std::nullopt;
    return Rational(*n);
  }
  auto num = ParseInteger(text.substr(0, slash), true);
  auto den = ParseInteger(text.substr(slash + 1), false);
  if (!num || !den || *den == 0) return std::nullopt;
  return Rational(*num, *den);
}

std::string ToString(const Rational& r) {
  const auto num = boost::multiprecision::numerator(r);
  const auto den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double ToDouble(const Rational& r) { return r.convert_to<double>(); }

}  // namespace ptesolve
