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

#include "coarse/asymptotics.hpp"
#include "coarse/ideals.hpp"
#include "coarse/measure.hpp"

using namespace coarse;

namespace {

std::string random_delta(std::mt19937& rng) {
  std::uniform_int_distribution<int> pick(0, 4), c(1, 6);
  switch (pick(rng)) {
    case 0: return std::to_string(c(rng));
    case 1: return "max(1," + std::to_string(c(rng)) + "*rx-" + std::to_string(c(rng)) + ")";
    case 2: return "1+mod(x," + std::to_string(c(rng) + 1) + ")";
    case 3: return "max(1,root(rx," + std::to_string(c(rng) % 3 + 2) + "))";
    default: return "max(1,abs(rx-" + std::to_string(4 * c(rng)) + "))";
  }
}

std::string random_set(std::mt19937& rng) {
  static const std::vector<std::string> sets = {"evens", "odds", "squares", "pow2", "mod:3:1",
                                                "mod:5:0", "ge:20", "le:30", "not:squares"};
  return sets[std::uniform_int_distribution<std::size_t>(0, sets.size() - 1)(rng)];
}

}  // namespace

TEST_SUITE("properties") {
  TEST_CASE("delta kernels: pruned value equals brute force and respects its bound") {
    std::mt19937 rng(11);
    auto z = MetricSpace::builtin("IntLine");
    Window w = z->window(80);
    std::uniform_int_distribution<std::int64_t> pt(-30, 30);
    for (int k = 0; k < 10; ++k) {
      DoubleMetric d = delta_generated(z, delta_from_expression(z, Expression::parse(random_delta(rng))));
      for (int i = 0; i < 100; ++i) {
        PointId x{pt(rng)}, y{pt(rng)};
        KernelValue v = d.eval(x, y, w);
        if (v.exact) CHECK(v.value == brute_force_eval(d, x, y, w).value);
        CHECK(v.value >= z->distance(x, y) + 1);
        CHECK(v.value == d.eval(y, x, w).value);
      }
    }
  }

  TEST_CASE("lattice laws on random level functions") {
    std::mt19937 rng(5);
    auto n = MetricSpace::builtin("NatLine");
    std::uniform_int_distribution<std::int64_t> pt(0, 200);
    for (int k = 0; k < 20; ++k) {
      LevelFunction a = levels_from_subset(n, parse_point_set(*n, random_set(rng)));
      LevelFunction b = levels_from_subset(n, parse_point_set(*n, random_set(rng)));
      LevelFunction c = levels_from_subset(n, parse_point_set(*n, random_set(rng)));
      for (int i = 0; i < 50; ++i) {
        PointId x{pt(rng)};
        CHECK(meet(a, join(b, c))(x) == join(meet(a, b), meet(a, c))(x));
        CHECK(join(a, meet(a, b))(x) == a(x));
        CHECK(meet(a, b)(x) >= a(x));
        CHECK(join(a, b)(x) <= a(x));
      }
    }
  }

  TEST_CASE("sublevel sets increase with n") {
    std::mt19937 rng(9);
    auto n = MetricSpace::builtin("NatLine");
    for (int k = 0; k < 10; ++k) {
      LevelFunction a = levels_from_subset(n, parse_point_set(*n, random_set(rng)));
      for (std::int64_t m = 1; m < 8; ++m) {
        PointSet s = a.sublevel(m), t = a.sublevel(m + 1);
        for (std::int64_t x = 0; x < 100; ++x) {
          if (s.contains(*n, PointId{x})) CHECK(t.contains(*n, PointId{x}));
        }
      }
    }
  }

  TEST_CASE("densities are finitely additive per radius") {
    std::mt19937 rng(3);
    auto n = MetricSpace::builtin("NatLine");
    Schedule s = Schedule::geometric(16, 4);
    for (int k = 0; k < 10; ++k) {
      std::string a = random_set(rng);
      PointSet pa = parse_point_set(*n, a), pb = parse_point_set(*n, "not:" + a);
      DensityInterval da = density(*n, DensityMeasure::natural(), pa, s);
      DensityInterval db = density(*n, DensityMeasure::natural(), pb, s);
      for (std::size_t i = 0; i < da.series.size(); ++i) {
        CHECK(da.series[i].second + db.series[i].second == 1);
      }
    }
  }

  TEST_CASE("nu_hat is monotone under the pointwise order") {
    std::mt19937 rng(4);
    auto n = MetricSpace::builtin("NatLine");
    Schedule s = Schedule::geometric(16, 4);
    for (int k = 0; k < 8; ++k) {
      LevelFunction a = levels_from_subset(n, parse_point_set(*n, random_set(rng)));
      LevelFunction b = levels_from_subset(n, parse_point_set(*n, random_set(rng)));
      // meet(a, b) has larger levels than a.
      NuHat lo = nu_hat(DensityMeasure::shell(), meet(a, b), 8, s), hi = nu_hat(DensityMeasure::shell(), a, 8, s);
      for (std::size_t m = 0; m < lo.per_n.size(); ++m) {
        for (std::size_t i = 0; i < lo.per_n[m].series.size(); ++i) {
          CHECK(lo.per_n[m].series[i].second <= hi.per_n[m].series[i].second);
        }
      }
    }
  }

  TEST_CASE("approximate units satisfy (au1) for random subsets") {
    std::mt19937 rng(8);
    auto n = MetricSpace::builtin("NatLine");
    for (int k = 0; k < 6; ++k) {
      ApproximateUnit u{levels_from_subset(n, parse_point_set(*n, random_set(rng)))};
      AuReport r = check_au(u, n->window(120), 4);
      CHECK(r.au1);
      CHECK(r.au2_relaxed);
    }
  }

  TEST_CASE("equivalence is reflexive and symmetric") {
    std::mt19937 rng(6);
    auto n = MetricSpace::builtin("NatLine");
    Window w = n->window(256);
    for (int k = 0; k < 6; ++k) {
      LevelFunction a = levels_from_subset(n, parse_point_set(*n, random_set(rng)));
      LevelFunction b = levels_from_subset(n, parse_point_set(*n, random_set(rng)));
      CHECK(equivalent(a, a, Mode::kQuasi, w).certified());
      CHECK(equivalent(a, b, Mode::kCoarse, w).certified() == equivalent(b, a, Mode::kCoarse, w).certified());
    }
  }
}
