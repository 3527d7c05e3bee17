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

#include "coarse/rational.hpp"

#include <functional>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace coarse {
namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr i128 kMax64 = std::numeric_limits<std::int64_t>::max();
constexpr i128 kMin64 = std::numeric_limits<std::int64_t>::min();

u128 uabs(i128 v) { return v < 0 ? u128(-v) : u128(v); }

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits(i128 v) { return v >= kMin64 && v <= kMax64; }

BigInt to_big_int(i128 v) {
  bool neg = v < 0;
  u128 u = uabs(v);
  BigInt hi = BigInt(static_cast<std::uint64_t>(u >> 64));
  BigInt lo = BigInt(static_cast<std::uint64_t>(u));
  BigInt r = (hi << 64) + lo;
  return neg ? BigInt(-r) : r;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  i128 n = num, d = den;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  u128 g = gcd128(uabs(n), u128(d));
  if (g > 1) {
    n /= i128(g);
    d /= i128(g);
  }
  if (fits(n) && fits(d)) {
    num_ = std::int64_t(n);
    den_ = std::int64_t(d);
  } else {
    assign_big(BigRational(to_big_int(n), to_big_int(d)));
  }
}

Rational::Rational(const BigRational& v) { assign_big(v); }
Rational::Rational(const BigInt& v) {
  if (mpz_fits_slong_p(v.backend().data())) {
    num_ = mpz_get_si(v.backend().data());
  } else {
    assign_big(BigRational(v));
  }
}

void Rational::assign_big(const BigRational& v) { assign_big(BigRational(v)); }

void Rational::assign_big(BigRational&& v) {
  const mpq_t& q = v.backend().data();
  // long is 64-bit on every supported target.
  static_assert(sizeof(long) == sizeof(std::int64_t));
  if (mpz_fits_slong_p(mpq_numref(q)) && mpz_fits_slong_p(mpq_denref(q))) {
    num_ = mpz_get_si(mpq_numref(q));
    den_ = mpz_get_si(mpq_denref(q));
    big_.reset();
  } else {
    num_ = 0;
    den_ = 1;
    big_ = std::make_shared<const BigRational>(std::move(v));
  }
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(s));
    BigInt n(s.substr(0, slash));
    BigInt d(s.substr(slash + 1));
    if (d == 0) throw std::domain_error("rational with zero denominator");
    return Rational(BigRational(n, d));
  } catch (const std::domain_error&) {
    throw;
  } catch (const std::exception&) {
    throw std::invalid_argument("not a rational number: '" + s + "'");
  }
}

Rational Rational::pow2(unsigned exponent) {
  if (exponent < 62) return Rational(std::int64_t{1} << exponent);
  return Rational(BigInt(1) << exponent);
}

bool Rational::is_integer() const {
  if (big_) return boost::multiprecision::denominator(*big_) == 1;
  return den_ == 1;
}

int Rational::sign() const {
  if (big_) return big_->sign();
  return (num_ > 0) - (num_ < 0);
}

BigRational Rational::to_big() const {
  if (big_) return *big_;
  return BigRational(BigInt(num_), BigInt(den_));
}

BigInt Rational::numerator() const {
  return big_ ? BigInt(boost::multiprecision::numerator(*big_)) : BigInt(num_);
}

BigInt Rational::denominator() const {
  return big_ ? BigInt(boost::multiprecision::denominator(*big_))
              : BigInt(den_);
}

bool Rational::fits_int64() const { return !big_ && den_ == 1; }

std::int64_t Rational::to_int64() const {
  if (!fits_int64()) {
    throw std::overflow_error("rational " + str() +
                              " is not a 64-bit integer");
  }
  return num_;
}

double Rational::to_double() const {
  if (big_) return big_->convert_to<double>();
  return double(num_) / double(den_);
}

Rational Rational::floor() const {
  if (big_) {
    BigInt n = boost::multiprecision::numerator(*big_);
    BigInt d = boost::multiprecision::denominator(*big_);
    BigInt q = n / d;
    if (n < 0 && q * d != n) q -= 1;
    return Rational(q);
  }
  std::int64_t q = num_ / den_;
  if (num_ < 0 && q * den_ != num_) --q;
  return Rational(q);
}

Rational Rational::ceil() const { return -(-*this).floor(); }

Rational Rational::abs() const { return sign() < 0 ? -*this : *this; }

std::string Rational::str() const {
  if (big_) {
    if (boost::multiprecision::denominator(*big_) == 1) {
      return boost::multiprecision::numerator(*big_).str();
    }
    return big_->str();
  }
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const {
  if (big_) {
    BigRational r(*big_);
    mpq_neg(r.backend().data(), r.backend().data());
    Rational out;
    out.assign_big(std::move(r));
    return out;
  }
  if (num_ == std::numeric_limits<std::int64_t>::min()) {
    return Rational(BigRational(-to_big()));
  }
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (den_ == 1 && o.den_ == 1) {
      i128 s = i128(num_) + o.num_;
      if (fits(s)) {
        num_ = std::int64_t(s);
        return *this;
      }
    } else {
      i128 n = i128(num_) * o.den_ + i128(o.num_) * den_;
      i128 d = i128(den_) * o.den_;
      u128 g = gcd128(uabs(n), u128(d));
      if (g > 1) {
        n /= i128(g);
        d /= i128(g);
      }
      if (fits(n) && fits(d)) {
        num_ = std::int64_t(n);
        den_ = std::int64_t(d);
        return *this;
      }
    }
  }
  // Integer operands skip the gcd work of a general rational sum.
  if (is_integer() && o.is_integer()) {
    BigRational r;
    mpz_ptr out = mpq_numref(r.backend().data());
    auto add = [&](const Rational& v) {
      if (v.big_) {
        mpz_add(out, out, mpq_numref(v.big_->backend().data()));
      } else if (v.num_ >= 0) {
        mpz_add_ui(out, out, static_cast<unsigned long>(v.num_));
      } else {
        mpz_sub_ui(out, out, 0UL - static_cast<unsigned long>(v.num_));
      }
    };
    add(*this);
    add(o);
    assign_big(std::move(r));
  } else if (big_ && o.big_) {
    assign_big(BigRational(*big_ + *o.big_));
  } else if (big_) {
    assign_big(BigRational(*big_ + o.to_big()));
  } else if (o.big_) {
    assign_big(BigRational(to_big() + *o.big_));
  } else {
    assign_big(to_big() + o.to_big());
  }
  return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  if (!big_ && !o.big_) {
    i128 n = i128(num_) * o.num_;
    i128 d = i128(den_) * o.den_;
    if (d != 1) {
      u128 g = gcd128(uabs(n), u128(d));
      if (g > 1) {
        n /= i128(g);
        d /= i128(g);
      }
    }
    if (fits(n) && fits(d)) {
      num_ = std::int64_t(n);
      den_ = std::int64_t(d);
      return *this;
    }
  }
  assign_big(to_big() * o.to_big());
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.sign() == 0) throw std::domain_error("division by zero");
  if (!big_ && !o.big_) {
    i128 n = i128(num_) * o.den_;
    i128 d = i128(den_) * o.num_;
    if (d < 0) {
      n = -n;
      d = -d;
    }
    u128 g = gcd128(uabs(n), u128(d));
    if (g > 1) {
      n /= i128(g);
      d /= i128(g);
    }
    if (fits(n) && fits(d)) {
      num_ = std::int64_t(n);
      den_ = std::int64_t(d);
      return *this;
    }
  }
  assign_big(to_big() / o.to_big());
  return *this;
}

bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;  // normalized: small and big never coincide
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.den_ == 1 && b.den_ == 1) return a.num_ <=> b.num_;
    i128 l = i128(a.num_) * b.den_;
    i128 r = i128(b.num_) * a.den_;
    return l < r ? std::strong_ordering::less
                 : (l > r ? std::strong_ordering::greater
                          : std::strong_ordering::equal);
  }
  auto order = [](int c) {
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  };
  if (a.big_ && b.big_) return order(mpq_cmp(a.big_->backend().data(), b.big_->backend().data()));
  // Small denominators are positive int64, so they fit unsigned long.
  if (a.big_) {
    return order(mpq_cmp_si(a.big_->backend().data(), b.num_, static_cast<unsigned long>(b.den_)));
  }
  return order(-mpq_cmp_si(b.big_->backend().data(), a.num_, static_cast<unsigned long>(a.den_)));
}

std::size_t Rational::hash() const {
  if (big_) return std::hash<std::string>{}(big_->str());
  std::size_t h = std::hash<std::int64_t>{}(num_);
  return h ^ (std::hash<std::int64_t>{}(den_) + 0x9e3779b97f4a7c15ULL +
              (h << 6) + (h >> 2));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

Rational ceil_root(const Rational& value, unsigned degree) {
  if (degree == 0) throw std::domain_error("root of degree 0");
  if (value.sign() < 0) throw std::domain_error("root of negative value");
  if (value.sign() == 0) return Rational(0);
  // Search the smallest integer k with k^degree >= value by doubling then
  // bisection; all comparisons are exact.
  auto power = [degree](const Rational& k) {
    Rational p = 1;
    for (unsigned i = 0; i < degree; ++i) p *= k;
    return p;
  };
  Rational hi = 1;
  while (power(hi) < value) hi *= 2;
  Rational lo = hi == 1 ? Rational(0) : (hi / 2);
  // invariant: power(lo) < value <= power(hi) (lo may be 0)
  while (hi - lo > 1) {
    Rational mid = ((lo + hi) / 2).floor();
    if (power(mid) >= value) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

std::int64_t two_adic_valuation(const Rational& integer) {
  if (!integer.is_integer() || integer.sign() == 0) {
    throw std::domain_error("2-adic valuation needs a nonzero integer");
  }
  BigInt n = integer.numerator();
  if (n < 0) n = -n;
  std::int64_t v = 0;
  while ((n & 1) == 0) {
    n >>= 1;
    ++v;
  }
  return v;
}

}  // namespace coarse
