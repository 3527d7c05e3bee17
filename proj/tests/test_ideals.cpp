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

#include "coarse/ideals.hpp"

using namespace coarse;

TEST_SUITE("ideals") {
  TEST_CASE("unit values") {
    auto n = MetricSpace::builtin("NatLine");
    ApproximateUnit u{levels_from_subset(n, parse_point_set(*n, "squares"))};
    Window w = n->window(50);
    CHECK(unit_eval(u, 1, PointId{7}, w) == 0);
    CHECK(unit_eval(u, 1, PointId{5}, w) == 1);
    CHECK(unit_eval(u, 1, PointId{9}, w) == 1);
    for (std::int64_t x = 0; x < 50; ++x) {
      for (std::int64_t k = 1; k < 6; ++k) CHECK(u(k, PointId{x}) <= u(k + 1, PointId{x}));
    }
  }

  TEST_CASE("fractional distances give fractional units") {
    auto c = MetricSpace::custom({PointId{0}, PointId{1}, PointId{2}}, MetricSpace::CustomMetric::kTable,
                                 {{0, Rational(1, 2), 1}, {Rational(1, 2), 0, Rational(1, 2)},
                                  {1, Rational(1, 2), 0}},
                                 Rational(10), std::nullopt);
    ApproximateUnit u{levels_from_subset(c, parse_point_set(*c, "set:0"))};
    CHECK(u(1, PointId{0}) == 1);
    CHECK(u(1, PointId{2}) == 1);
    ApproximateUnit z{zero_levels(c, PointId{0})};
    CHECK(z(1, PointId{1}) == 1);
    CHECK(z(1, PointId{2}) == Rational(1, 2));
  }

  TEST_CASE("approximate unit axioms") {
    auto n = MetricSpace::builtin("NatLine");
    ApproximateUnit u{levels_from_subset(n, parse_point_set(*n, "squares"))};
    AuReport r = check_au(u, n->window(200));
    CHECK(r.pass());
    CHECK(r.strict_count > 0);
    ApproximateUnit one{unit_levels(n)};
    AuReport r1 = check_au(one, n->window(200));
    CHECK(r1.pass());
    CHECK(r1.strict_count == 0);
  }

  TEST_CASE("level sets of products and clipped sums") {
    auto n = MetricSpace::builtin("NatLine");
    Window w = n->window(200);
    ApproximateUnit a{levels_from_subset(n, parse_point_set(*n, "mod:4:0"))};
    ApproximateUnit b{levels_from_subset(n, parse_point_set(*n, "mod:4:2"))};
    for (std::int64_t k = 1; k <= 3; ++k) CHECK(level_set_identities(a, b, k, w).pass());
    CHECK(level_set_identities(a, a, 1, w).pass());
    UnitFn sq = unit_meet(a, a, 1);
    for (std::int64_t x = 0; x < 40; ++x) CHECK(sq(PointId{x}) == a(1, PointId{x}) * a(1, PointId{x}));
  }

  TEST_CASE("levels come back from the units") {
    auto n = MetricSpace::builtin("NatLine");
    Window w = n->window(200);
    for (const char* s : {"squares", "pow2", "evens", "mod:5:1"}) {
      ApproximateUnit u{levels_from_subset(n, parse_point_set(*n, s))};
      LevelFunction r = recovered_levels(u);
      for (std::int64_t x = 0; x < 100; ++x) {
        std::int64_t l = u.source(PointId{x});
        CHECK(r(PointId{x}) == (l + 1) / 2);
      }
      CHECK(check_recovery(u, w).pass);
    }
  }
}
