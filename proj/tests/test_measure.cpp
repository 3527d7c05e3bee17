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

#include "coarse/measure.hpp"

using namespace coarse;

TEST_SUITE("measure") {
  TEST_CASE("natural density by counting") {
    auto n = MetricSpace::builtin("NatLine");
    Schedule s = Schedule::geometric();
    DensityInterval ev = density(*n, DensityMeasure::natural(), parse_point_set(*n, "evens"), s);
    for (const auto& [r, v] : ev.series) {
      std::int64_t rr = r.to_int64();
      CHECK(v == Rational(rr / 2 + 1, rr + 1));
    }
    DensityInterval sq = density(*n, DensityMeasure::natural(), parse_point_set(*n, "squares"), s);
    for (const auto& [r, v] : sq.series) {
      std::int64_t rr = r.to_int64(), k = 0;
      while ((k + 1) * (k + 1) <= rr) ++k;
      CHECK(v == Rational(k + 1, rr + 1));
    }
    DensityInterval bounded = density(*n, DensityMeasure::shell(), parse_point_set(*n, "le:10"), s);
    CHECK(bounded.hi == 0);
  }

  TEST_CASE("unit, zero and half-lines") {
    auto z = MetricSpace::builtin("IntLine");
    DensityMeasure mu = DensityMeasure::shell();
    NuHat one = nu_hat(mu, unit_levels(z)), zero = nu_hat(mu, zero_levels(z, PointId{0}));
    for (const auto& [r, v] : one.interval.series) CHECK(v == 1);
    for (const auto& [r, v] : zero.interval.series) CHECK(v == 0);
    NuHat half = nu_hat(mu, levels_from_subset(z, parse_point_set(*z, "le:0")));
    CHECK(half.monotone);
    CHECK(half.interval.contains(Rational(1, 2)));
    CHECK(half.interval.width() <= kMeasureTolerance);
  }

  TEST_CASE("alternating sums") {
    auto z = MetricSpace::builtin("IntLine");
    DensityMeasure mu = DensityMeasure::shell();
    LevelFunction neg = levels_from_subset(z, parse_point_set(*z, "le:0"));
    LevelFunction pos = levels_from_subset(z, parse_point_set(*z, "ge:0"));
    DensityInterval ee = nu_bar(mu, {neg, neg});
    CHECK(ee.lo == 0);
    CHECK(ee.hi == 0);
    DensityInterval np = nu_bar(mu, {neg, pos});
    CHECK(np.lo == 1);
    CHECK(nu_bar(mu, {unit_levels(z)}).lo == 1);
    // A single summand is nu_hat.
    CHECK(nu_bar(mu, {neg}).series == nu_hat(mu, neg).interval.series);
    // Replacing {e, f} by {e ^ f, e v f} keeps the value.
    CHECK(nu_bar(mu, {meet(neg, pos), join(neg, pos)}).series == np.series);
  }

  TEST_CASE("weighted measure and laws") {
    auto n = MetricSpace::builtin("NatLine");
    DensityMeasure mu = DensityMeasure::parse("weighted:1+mod(x,2)");
    DensityInterval od = density(*n, mu, parse_point_set(*n, "odds"), Schedule::geometric(16, 4));
    for (const auto& [r, v] : od.series) {
      std::int64_t rr = r.to_int64(), odd = (rr + 1) / 2, even = rr / 2 + 1;
      CHECK(v == Rational(2 * odd, 2 * odd + even));
    }
    LevelFunction a = levels_from_subset(n, parse_point_set(*n, "evens"));
    LevelFunction b = levels_from_subset(n, parse_point_set(*n, "squares"));
    ModularityReport m = check_modularity(mu, a, b);
    CHECK(m.pass());
    CHECK(measure0_check(mu, zero_levels(n, PointId{0})).pass);
    CHECK(measure0_check(mu, a).pass);
    CHECK_THROWS(DensityMeasure::parse("gauss"));
  }
}
