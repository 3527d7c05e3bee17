// Copyright 2026 The coarse-double Authors
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

#ifndef COARSE_RATIONAL_HPP_
#define COARSE_RATIONAL_HPP_

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace coarse {

using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;
using BigRational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                  boost::multiprecision::et_off>;

// Exact rational number. Values whose reduced numerator and denominator fit
// in 64 bits are stored inline; anything larger is held as an immutable GMP
// rational. Every operation is exact; there is no rounding anywhere.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t v) : num_(v) {}  // NOLINT: implicit by design
  Rational(int v) : num_(v) {}           // NOLINT
  Rational(std::int64_t num, std::int64_t den);
  explicit Rational(const BigRational& v);
  explicit Rational(const BigInt& v);

  // Parses "p", "-p", "p/q" with arbitrary-size integers.
  static Rational parse(std::string_view text);
  static Rational pow2(unsigned exponent);

  bool is_big() const { return big_ != nullptr; }
  bool is_integer() const;
  int sign() const;

  BigRational to_big() const;
  BigInt numerator() const;
  BigInt denominator() const;

  // Throws std::overflow_error if the value is not an integer in int64 range.
  std::int64_t to_int64() const;
  bool fits_int64() const;
  double to_double() const;

  Rational floor() const;
  Rational ceil() const;
  Rational abs() const;

  std::string str() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b);
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b);

  std::size_t hash() const;

 private:
  void assign_big(const BigRational& v);
  void assign_big(BigRational&& v);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const BigRational> big_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

inline Rational min(const Rational& a, const Rational& b) {
  return b < a ? b : a;
}
inline Rational max(const Rational& a, const Rational& b) {
  return a < b ? b : a;
}

// Smallest integer k >= 0 with k^degree >= value, for value >= 0.
Rational ceil_root(const Rational& value, unsigned degree);

// 2-adic valuation of a nonzero integer.
std::int64_t two_adic_valuation(const Rational& integer);

}  // namespace coarse

template <>
struct std::hash<coarse::Rational> {
  std::size_t operator()(const coarse::Rational& r) const { return r.hash(); }
};

#endif  // COARSE_RATIONAL_HPP_
