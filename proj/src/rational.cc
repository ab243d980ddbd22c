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

#include "empeq/rational.h"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace empeq {
namespace {

bool IsIntegerText(std::string_view text) {
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    text.remove_prefix(1);
  }
  if (text.empty()) return false;
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

boost::multiprecision::mpz_int ParseInteger(std::string_view text) {
  if (!IsIntegerText(text)) {
    throw std::invalid_argument("malformed rational: '" + std::string(text) +
                                "'");
  }
  if (text.front() == '+') text.remove_prefix(1);
  return boost::multiprecision::mpz_int(std::string(text));
}

}  // namespace

Rational ParseRational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(ParseInteger(text));
  }
  const auto numerator = ParseInteger(text.substr(0, slash));
  const auto denominator_text = text.substr(slash + 1);
  if (!denominator_text.empty() && denominator_text.front() == '-') {
    throw std::invalid_argument("malformed rational: '" + std::string(text) +
                                "'");
  }
  const auto denominator = ParseInteger(denominator_text);
  if (denominator == 0) {
    throw std::invalid_argument("zero denominator in '" + std::string(text) +
                                "'");
  }
  return Rational(numerator, denominator);
}

std::string ToString(const Rational& value) {
  const auto den = boost::multiprecision::denominator(value);
  const auto num = boost::multiprecision::numerator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational ApproximateRational(double value, long max_denominator) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument("cannot approximate a non-finite value");
  }
  // Stern-Brocot / continued fraction best approximation.
  const bool negative = value < 0;
  double x = std::fabs(value);
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = x;
  for (int iter = 0; iter < 64; ++iter) {
    const double a_real = std::floor(frac);
    if (a_real > 1e15) break;
    const long a = static_cast<long>(a_real);
    const long q2 = q0 + a * q1;
    if (q2 > max_denominator) break;
    const long p2 = p0 + a * p1;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const double rest = frac - a_real;
    if (rest < 1e-15) break;
    frac = 1.0 / rest;
  }
  if (q1 == 0) return Rational(negative ? -p1 : p1);
  Rational result(p1, q1);
  return negative ? Rational(-result) : result;
}

}  // namespace empeq
