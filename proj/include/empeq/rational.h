// Copyright 2026 The Empeq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EMPEQ_RATIONAL_H_
#define EMPEQ_RATIONAL_H_

#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace empeq {

// Exact arithmetic for payoffs, priors and lotteries.
using Rational = boost::multiprecision::mpq_rational;

// Parses "p/q", "-p/q" or an integer string. Throws std::invalid_argument on
// malformed input or a zero denominator.
Rational ParseRational(std::string_view text);

// Canonical text form: "p/q" in lowest terms, or "p" when the denominator
// is one.
std::string ToString(const Rational& value);

inline double ToDouble(const Rational& value) {
  return value.convert_to<double>();
}

// Nearest rational with denominator at most `max_denominator`.
Rational ApproximateRational(double value, long max_denominator);

}  // namespace empeq

#endif  // EMPEQ_RATIONAL_H_
