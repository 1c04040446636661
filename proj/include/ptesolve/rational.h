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

#ifndef PTESOLVE_RATIONAL_H_
#define PTESOLVE_RATIONAL_H_

#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace ptesolve {

// Exact arbitrary-precision rational. Used for spacetime coordinates and
// ensemble statistics, where sign tests and sums must be exact.
using Rational = boost::multiprecision::cpp_rational;

// "p" or "p/q" (q > 0), optional leading '-'.
std::optional<Rational> ParseRational(std::string_view text);

// Canonical form: "p" when the denominator is 1, otherwise "p/q" in lowest
// terms with a positive denominator.
std::string ToString(const Rational& r);

double ToDouble(const Rational& r);

}  // namespace ptesolve

#endif  // PTESOLVE_RATIONAL_H_
