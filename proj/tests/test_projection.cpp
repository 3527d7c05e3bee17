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

#include "doctest.h"

#include "coarse/errors.hpp"
#include "coarse/projection.hpp"
#include "coarse/witness_check.hpp"

using namespace coarse;

TEST_SUITE("projection") {
  TEST_CASE("levels of a subset") {
    auto n = MetricSpace::builtin("NatLine");
    LevelFunction e = levels_from_subset(n, parse_point_set(*n, "squares"));
    // Brute force: max(1, ceil(2 d(x, squares))).
    for (std::int64_t x = 0; x < 200; ++x) {
      std::int64_t best = 1 << 20;
      for (std::int64_t k = 0; k * k < 400; ++k) best = std::min(best, std::abs(x - k * k));
      CHECK(e(PointId{x}) == std::max<std::int64_t>(1, 2 * best));
    }
    CHECK(check_levels(e, n->window(200)).pass);
  }

  TEST_CASE("zero and unit levels") {
    auto z = MetricSpace::builtin("IntLine");
    LevelFunction zero = zero_levels(z, PointId{0}), one = unit_levels(z);
    CHECK(zero(PointId{-4}) == 9);
    CHECK(one(PointId{123}) == 1);
    CHECK(check_levels(zero, z->window(50)).pass);
    CHECK(meet(zero, one)(PointId{5}) == 11);
    CHECK(join(zero, one)(PointId{5}) == 1);
  }

  TEST_CASE("projection criterion witness (0, 2)") {
    auto n = MetricSpace::builtin("NatLine");
    Window w = n->window(60);
    for (const auto& d : {zero_at(n, PointId{0}),
                          delta_generated(n, delta_from_expression(n, Expression::parse("max(1,2*x)"))),
                          metric_from_levels(levels_from_subset(n, parse_point_set(*n, "pow2")))}) {
      Verdict v = projection_criterion(d, w);
      REQUIRE(v.certified());
      CHECK(v.witness->params.at("alpha") == 0);
      CHECK(v.witness->params.at("beta") == 2);
      CHECK(check_projection_witness(v, d).ok);
    }
  }

  TEST_CASE("projection criterion rejects a non-selfadjoint kernel") {
    auto n = MetricSpace::builtin("NatLine");
    DoubleMetric d = expression_kernel(n, Expression::parse("dxy + 1 + x"), LowerBound{true, 1});
    CHECK_THROWS_AS(projection_criterion(d, n->window(10)), DomainError);
  }

  TEST_CASE("sandwich for level metrics") {
    auto n = MetricSpace::builtin("NatLine");
    LevelFunction e = levels_from_subset(n, parse_point_set(*n, "squares"));
    DoubleMetric d = metric_from_levels(e);
    Window w = n->window(100);
    for (const auto& x : window_points(*n, w)) {
      Rational v = eval_certified(d, x, x, w).value;
      std::int64_t lv = e(x);
      CHECK(Rational(lv - 1) <= v);
      CHECK(v <= Rational(lv));
    }
  }

  TEST_CASE("metric join diagonal is the minimum") {
    auto n = MetricSpace::builtin("NatLine");
    Window w = n->window(80);
    DoubleMetric a = metric_from_levels(levels_from_subset(n, parse_point_set(*n, "evens")));
    DoubleMetric b = metric_from_levels(levels_from_subset(n, parse_point_set(*n, "squares")));
    DoubleMetric j = metric_join(a, b, w), m = metric_meet(a, b, w);
    for (const auto& x : window_points(*n, w)) {
      Rational da = eval_certified(a, x, x, w).value, db = eval_certified(b, x, x, w).value;
      CHECK(eval_certified(j, x, x, w).value == min(da, db));
      CHECK(eval_certified(m, x, x, w).value == max(da, db));
    }
  }

  TEST_CASE("C_m functions from projections") {
    auto n = MetricSpace::builtin("NatLine");
    Window w = n->window(60);
    CmFunction f = F_map(zero_at(n, PointId{0}), w);
    CHECK(check_Cm(f, w).pass);
    CHECK(check_Cm(f, w).epsilon == 1);
    CmFunction g = F_map(metric_from_levels(levels_from_subset(n, parse_point_set(*n, "evens"))), w);
    CHECK(check_Cm(cm_min(f, g), w).pass);
    CHECK(check_Cm(cm_max(f, g), w).pass);
  }

  TEST_CASE("source and range of a composition") {
    auto n = MetricSpace::builtin("NatLine");
    Window w = n->window(40);
    DoubleMetric d = zero_at(n, PointId{2});
    LevelFunction s = source_projection(d, w), r = range_projection(d, w);
    for (std::int64_t x = 0; x < 20; ++x) {
      CHECK(s(PointId{x}) == std::abs(x - 2) + 1);
      CHECK(r(PointId{x}) == s(PointId{x}));
    }
  }

  TEST_CASE("type classification") {
    auto n = MetricSpace::builtin("NatLine");
    Verdict sq = classify_type(levels_from_subset(n, parse_point_set(*n, "squares")), {256, 512, 1024});
    CHECK(sq.label == "type-I");
    CHECK(check_type_witness(sq, levels_from_subset(n, parse_point_set(*n, "squares"))).ok);
    Verdict one = classify_type(unit_levels(n), {256, 512, 1024});
    CHECK(one.label == "type-I");
    CHECK_THROWS_AS(classify_type(unit_levels(n), {256, 512}), DomainError);
  }
}
