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

#include "coarse/double_metric.hpp"
#include "coarse/errors.hpp"

using namespace coarse;

namespace {

// inf over u in [lo, hi] of |x-u| + delta(u) + |u-y| on a line.
Rational line_oracle(std::int64_t x, std::int64_t y, std::int64_t lo, std::int64_t hi,
                     const Expression& delta) {
  std::optional<Rational> best;
  for (std::int64_t u = lo; u <= hi; ++u) {
    ExprEnv env{{"x", Rational(u)}, {"rx", Rational(u < 0 ? -u : u)}};
    Rational v = Rational(std::abs(x - u)) + delta.eval(env) + Rational(std::abs(u - y));
    if (!best || v < *best) best = v;
  }
  return *best;
}

}  // namespace

TEST_SUITE("double") {
  TEST_CASE("delta metrics agree with the infimum formula") {
    auto n = MetricSpace::builtin("NatLine");
    for (const char* e : {"1", "max(1,2*x)", "x+1", "max(1,10-x)", "1+mod(x,5)"}) {
      Expression delta = Expression::parse(e);
      DoubleMetric d = delta_generated(n, delta_from_expression(n, delta));
      for (std::int64_t x = 0; x < 30; ++x) {
        for (std::int64_t y = 0; y < 30; ++y) {
          KernelValue v = eval_certified(d, PointId{x}, PointId{y}, n->window(64));
          CHECK(v.exact);
          CHECK(v.value == line_oracle(x, y, 0, 200, delta));
        }
      }
    }
  }

  TEST_CASE("constant delta gives |x-y| + 1") {
    auto n = MetricSpace::builtin("NatLine");
    DoubleMetric d = delta_generated(n, delta_from_expression(n, Expression::parse("1")));
    CHECK(d.eval(PointId{3}, PointId{7}, n->window(20)).value == 5);
  }

  TEST_CASE("zero metric closed form") {
    auto n = MetricSpace::builtin("NatLine");
    DoubleMetric z = zero_at(n, PointId{0});
    CHECK(z.eval(PointId{3}, PointId{5}, n->window(10)).value == 9);
    CHECK(dist_to_copy(z, PointId{4}, n->window(10)).value == 5);
    DoubleMetric zz = compose(z, z);
    CHECK(eval_certified(zz, PointId{2}, PointId{3}, n->window(10)).value == 7);
  }

  TEST_CASE("subset kernel and its failure of the triangle inequality") {
    auto n = MetricSpace::builtin("NatLine");
    DoubleMetric b = subset_metric(n, parse_point_set(*n, "evens"));
    CHECK(b.eval(PointId{3}, PointId{6}, n->window(20)).value == 2);
    CHECK(dist_to_copy(b, PointId{3}, n->window(20)).value == 2);
    AxiomReport a = check_axioms(b, n->window(10));
    CHECK(!a.pass);
    // d(0,4') <= d(0,0') + d_X(0,4) fails: 1 > 1 + 4 is false, the other
    // mixed inequality gives 1 + 1 < 4.
    CHECK(!a.first_violation.empty());
    CHECK_THROWS_AS(subset_metric(n, parse_point_set(*n, "none")), DomainError);
  }

  TEST_CASE("compositions against window brute force") {
    auto z = MetricSpace::builtin("IntLine");
    Window w = z->window(40);
    DoubleMetric a = delta_generated(z, delta_from_expression(z, Expression::parse("max(1,rx)")));
    DoubleMetric b = zero_at(z, PointId{3});
    for (const auto& d : {compose(a, b), compose(b, a), compose(a, a), adjoint(compose(a, b))}) {
      for (std::int64_t x = -10; x <= 10; ++x) {
        for (std::int64_t y = -10; y <= 10; ++y) {
          KernelValue v = d.eval(PointId{x}, PointId{y}, w);
          KernelValue o = brute_force_eval(d, PointId{x}, PointId{y}, w);
          if (v.exact) CHECK(v.value == o.value);
        }
      }
    }
  }

  TEST_CASE("non-coercive compositions are flagged") {
    auto t = MetricSpace::builtin("TwoTails");
    DoubleMetric bp = subset_metric(t, parse_point_set(*t, "plus"));
    DoubleMetric bm = subset_metric(t, parse_point_set(*t, "minus"));
    KernelValue v = compose(bp, bm).eval(t->parse_point("(4,2)"), t->parse_point("(4,2)"), t->window(50));
    CHECK(v.value == 8);
    CHECK(!v.exact);
    CHECK(!v.certifiable);
    CHECK_THROWS_AS(eval_certified(compose(bp, bm), t->parse_point("(4,2)"),
                                   t->parse_point("(4,2)"), t->window(50)),
                    InconclusiveError);
  }

  TEST_CASE("adjoint swaps arguments and is an involution") {
    auto n = MetricSpace::builtin("NatLine");
    DoubleMetric d = expression_kernel(n, Expression::parse("dxy + 1 + x"), LowerBound{true, 1});
    DoubleMetric a = adjoint(d);
    Window w = n->window(20);
    for (std::int64_t x = 0; x < 10; ++x) {
      for (std::int64_t y = 0; y < 10; ++y) {
        CHECK(a.eval(PointId{x}, PointId{y}, w).value == d.eval(PointId{y}, PointId{x}, w).value);
      }
    }
    CHECK(adjoint(a).kernel_ptr() == d.kernel_ptr());
  }

  TEST_CASE("axioms hold for delta metrics on windows") {
    auto g = MetricSpace::builtin("GeomLine");
    DoubleMetric d = delta_generated(g, delta_from_expression(g, Expression::parse("max(1,root(x,2))")));
    AxiomReport r = check_axioms(d, g->window(Rational::pow2(30)));
    CHECK(r.pass);
    CHECK(r.exact);
  }
}
