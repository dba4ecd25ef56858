// Copyright 2026 The Treehom Authors
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

#ifndef TREEHOM_DYADIC_HPP_
#define TREEHOM_DYADIC_HPP_

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace treehom {

// Exact rational num / 2^exp, kept in lowest terms (num odd, or exp == 0).
// Arithmetic throws std::overflow_error instead of wrapping.
class Dyadic {
 public:
  static constexpr int kMaxExponent = 62;

  constexpr Dyadic() = default;
  // Throws std::invalid_argument for exponents outside [0, kMaxExponent].
  Dyadic(std::int64_t numerator, int exponent);
  static Dyadic integer(std::int64_t v) { return Dyadic(v, 0); }
  // -1 / 2^exponent.
  static Dyadic negative_power_of_two(int exponent) { return Dyadic(-1, exponent); }

  std::int64_t numerator() const { return num_; }
  int exponent() const { return exp_; }

  Dyadic operator-() const;
  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

  friend bool operator==(const Dyadic& a, const Dyadic& b) = default;
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

  // "num/2^exp", e.g. "-1/2^2", "0/2^0", "3/2^0".
  std::string to_string() const;
  // Accepts the to_string form, a plain integer, or "num/den" with den a
  // power of two. Throws std::invalid_argument.
  static Dyadic parse(std::string_view text);

 private:
  void normalize();

  std::int64_t num_ = 0;
  int exp_ = 0;
};

}  // namespace treehom

#endif  // TREEHOM_DYADIC_HPP_
