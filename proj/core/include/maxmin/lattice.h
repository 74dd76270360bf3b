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

#ifndef MAXMIN_LATTICE_H_
#define MAXMIN_LATTICE_H_

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace maxmin {

// A non-negative rational number in lowest terms. Used for reporting values
// and for user-supplied thresholds.
struct Rational {
  int64_t num = 0;
  int64_t den = 1;

  static Rational Make(int64_t num, int64_t den);
  // Accepts "p/q" or "p".
  static Rational Parse(std::string_view text);
  std::string ToString() const;
  double ToDouble() const { return static_cast<double>(num) / den; }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    const __int128 lhs = static_cast<__int128>(a.num) * b.den;
    const __int128 rhs = static_cast<__int128>(b.num) * a.den;
    return lhs <=> rhs;
  }
};

// The weight of a light item. Always 0 < num < den, stored in lowest terms.
class Epsilon {
 public:
  Epsilon() = default;
  // Throws std::invalid_argument("epsilon out of range") unless 0 < p/q < 1.
  Epsilon(int64_t num, int64_t den);
  static Epsilon Parse(std::string_view text);

  int64_t num() const { return num_; }
  int64_t den() const { return den_; }
  std::string ToString() const;
  Rational AsRational() const { return {num_, den_}; }

  friend bool operator==(const Epsilon&, const Epsilon&) = default;

 private:
  int64_t num_ = 1;
  int64_t den_ = 2;
};

// The utility heavy + light * epsilon. Every bundle weight, and therefore
// OPT and T*, is of this form. The pair is not canonical (two light items at
// epsilon = 1/2 weigh the same as one heavy item), so ordering needs epsilon.
struct LatticeValue {
  int64_t heavy = 0;
  int64_t light = 0;

  friend bool operator==(const LatticeValue&, const LatticeValue&) = default;
};

// heavy * den + light * num: the value scaled by the denominator of epsilon.
inline int64_t Scaled(const LatticeValue& v, const Epsilon& eps) {
  return v.heavy * eps.den() + v.light * eps.num();
}

inline std::strong_ordering Compare(const LatticeValue& a,
                                    const LatticeValue& b,
                                    const Epsilon& eps) {
  return Scaled(a, eps) <=> Scaled(b, eps);
}

inline bool Less(const LatticeValue& a, const LatticeValue& b,
                 const Epsilon& eps) {
  return Scaled(a, eps) < Scaled(b, eps);
}

inline bool SameValue(const LatticeValue& a, const LatticeValue& b,
                      const Epsilon& eps) {
  return Scaled(a, eps) == Scaled(b, eps);
}

Rational ToRational(const LatticeValue& v, const Epsilon& eps);
double ToDouble(const LatticeValue& v, const Epsilon& eps);

// Exact comparison of a lattice value against an arbitrary rational.
std::strong_ordering Compare(const LatticeValue& v, const Epsilon& eps,
                             const Rational& r);

// ceil(T / eps). Throws std::invalid_argument for T = 0.
int64_t KOf(const LatticeValue& t, const Epsilon& eps);

// ceil(a / b) for a >= 0, b > 0.
inline int64_t CeilDiv(int64_t a, int64_t b) { return (a + b - 1) / b; }

}  // namespace maxmin

#endif  // MAXMIN_LATTICE_H_
