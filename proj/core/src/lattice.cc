// Copyright 2026 The maxmin Authors.
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

#include "maxmin/lattice.h"

#include <charconv>
#include <numeric>

namespace maxmin {
namespace {

int64_t ParseInt(std::string_view text) {
  int64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || text.empty()) {
    throw std::invalid_argument("malformed number '" + std::string(text) + "'");
  }
  return value;
}

std::pair<int64_t, int64_t> ParseFraction(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return {ParseInt(text), 1};
  return {ParseInt(text.substr(0, slash)), ParseInt(text.substr(slash + 1))};
}

}  // namespace

Rational Rational::Make(int64_t num, int64_t den) {
  if (den <= 0) throw std::invalid_argument("rational with non-positive denominator");
  const int64_t g = std::gcd(num, den);
  return {num / g, den / g};
}

Rational Rational::Parse(std::string_view text) {
  auto [p, q] = ParseFraction(text);
  return Make(p, q);
}

std::string Rational::ToString() const {
  return std::to_string(num) + "/" + std::to_string(den);
}

Epsilon::Epsilon(int64_t num, int64_t den) {
  if (num <= 0 || den <= 0 || num >= den) {
    throw std::invalid_argument("epsilon out of range");
  }
  const int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

Epsilon Epsilon::Parse(std::string_view text) {
  auto [p, q] = ParseFraction(text);
  return Epsilon(p, q);
}

std::string Epsilon::ToString() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational ToRational(const LatticeValue& v, const Epsilon& eps) {
  return Rational::Make(Scaled(v, eps), eps.den());
}

double ToDouble(const LatticeValue& v, const Epsilon& eps) {
  return static_cast<double>(Scaled(v, eps)) / eps.den();
}

std::strong_ordering Compare(const LatticeValue& v, const Epsilon& eps,
                             const Rational& r) {
  const __int128 lhs = static_cast<__int128>(Scaled(v, eps)) * r.den;
  const __int128 rhs = static_cast<__int128>(r.num) * eps.den();
  return lhs <=> rhs;
}

int64_t KOf(const LatticeValue& t, const Epsilon& eps) {
  const int64_t scaled = Scaled(t, eps);
  if (scaled <= 0) throw std::invalid_argument("k is undefined for T = 0");
  // T / eps = (scaled / den) / (num / den) = scaled / num.
  return CeilDiv(scaled, eps.num());
}

}  // namespace maxmin
