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

#include "treehom/dyadic.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <stdexcept>

namespace treehom {

namespace {

using Wide = __int128;

Wide scaled(std::int64_t num, int by) { return static_cast<Wide>(num) << by; }

std::int64_t parse_int(std::string_view text) {
  std::int64_t v = 0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last)
    throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  return v;
}

}  // namespace

Dyadic::Dyadic(std::int64_t numerator, int exponent) : num_(numerator), exp_(exponent) {
  if (exponent < 0 || exponent > kMaxExponent) throw std::invalid_argument("dyadic exponent out of range");
  normalize();
}

void Dyadic::normalize() {
  if (num_ == 0) {
    exp_ = 0;
    return;
  }
  while (exp_ > 0 && (num_ & 1) == 0) {
    num_ /= 2;
    --exp_;
  }
}

Dyadic Dyadic::operator-() const {
  if (num_ == std::numeric_limits<std::int64_t>::min()) throw std::overflow_error("dyadic negation overflow");
  Dyadic out = *this;
  out.num_ = -num_;
  return out;
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  int e = std::max(a.exp_, b.exp_);
  Wide sum = scaled(a.num_, e - a.exp_) + scaled(b.num_, e - b.exp_);
  while (e > 0 && sum % 2 == 0) {
    sum /= 2;
    --e;
  }
  if (sum > std::numeric_limits<std::int64_t>::max() || sum < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("dyadic addition overflow");
  return Dyadic(static_cast<std::int64_t>(sum), e);
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  int e = std::max(a.exp_, b.exp_);
  Wide x = scaled(a.num_, e - a.exp_), y = scaled(b.num_, e - b.exp_);
  if (x < y) return std::strong_ordering::less;
  if (x > y) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Dyadic::to_string() const { return std::to_string(num_) + "/2^" + std::to_string(exp_); }

Dyadic Dyadic::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return integer(parse_int(text));
  std::int64_t num = parse_int(text.substr(0, slash));
  std::string_view den = text.substr(slash + 1);
  if (den.size() > 2 && den.substr(0, 2) == "2^") {
    std::int64_t e = parse_int(den.substr(2));
    if (e < 0 || e > kMaxExponent) throw std::invalid_argument("dyadic exponent out of range");
    return Dyadic(num, static_cast<int>(e));
  }
  std::int64_t d = parse_int(den);
  if (d <= 0 || (d & (d - 1)) != 0) throw std::invalid_argument("denominator must be a power of two");
  int e = 0;
  while ((std::int64_t{1} << e) != d) ++e;
  return Dyadic(num, e);
}

}  // namespace treehom
