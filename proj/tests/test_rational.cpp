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

#include <random>

#include "doctest.h"

#include "coarse/expr.hpp"
#include "coarse/rational.hpp"

using coarse::Expression;
using coarse::ExprEnv;
using coarse::Rational;

TEST_SUITE("rational") {
  TEST_CASE("small arithmetic matches int64") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> d(-1000000, 1000000);
    for (int i = 0; i < 2000; ++i) {
      std::int64_t a = d(rng), b = d(rng);
      CHECK(Rational(a) + Rational(b) == Rational(a + b));
      CHECK(Rational(a) * Rational(b) == Rational(a * b));
      CHECK((Rational(a) < Rational(b)) == (a < b));
    }
  }

  TEST_CASE("promotion past 64 bits stays exact") {
    Rational big = Rational::pow2(62) * 8;
    CHECK(big.is_big());
    CHECK(big / 8 == Rational::pow2(62));
    CHECK(!(big / 8).is_big());
    CHECK((big - big).sign() == 0);
    CHECK(Rational::pow2(200).str().size() == 61);
  }

  TEST_CASE("fractions normalise") {
    CHECK(Rational(6, 4) == Rational(3, 2));
    CHECK(Rational(-6, -4).str() == "3/2");
    CHECK(Rational::parse("-2/8") == Rational(-1, 4));
    CHECK(Rational(7, 2).floor() == 3);
    CHECK(Rational(-7, 2).floor() == -4);
    CHECK(Rational(7, 2).ceil() == 4);
  }

  TEST_CASE("ceil_root and two-adic valuation") {
    for (std::int64_t v = 0; v < 500; ++v) {
      std::int64_t r = coarse::ceil_root(Rational(v), 2).to_int64();
      CHECK(r * r >= v);
      CHECK((r == 0 || (r - 1) * (r - 1) < v));
    }
    CHECK(coarse::two_adic_valuation(Rational(48)) == 4);
    CHECK(coarse::two_adic_valuation(Rational(1)) == 0);
  }

  TEST_CASE("expressions") {
    ExprEnv env{{"x", Rational(5)}};
    CHECK(Expression::parse("max(1,2*x)").eval(env) == 10);
    CHECK(Expression::parse("root(x+4,2)").eval(env) == 3);
    CHECK(Expression::parse("-x^2 + 1").eval(env) == -24);
    CHECK(Expression::parse("v2(x*8)").eval(env) == 3);
    CHECK(Expression::parse("mod(x,3)").eval(env) == 2);
    CHECK(Expression::parse("x/2").eval(env) == Rational(5, 2));
    CHECK_THROWS(Expression::parse("max(1,").eval(env));
    CHECK_THROWS(Expression::parse("y+1").eval(env));
  }
}
