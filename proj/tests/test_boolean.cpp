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

#include "coarse/boolean.hpp"
#include "coarse/errors.hpp"
#include "coarse/witness_check.hpp"

using namespace coarse;

namespace {

struct GeomPair {
  SpacePtr g = MetricSpace::builtin("GeomLine");
  Window w = g->window(Rational::pow2(48));
  std::vector<LevelFunction> gens = {levels_from_subset(g, parse_point_set(*g, "pow4")),
                                     levels_from_subset(g, parse_point_set(*g, "2pow4"))};
};

}  // namespace

TEST_SUITE("boolean") {
  TEST_CASE("atoms of the two complementary tails") {
    GeomPair p;
    auto atoms = enumerate_atoms(p.gens, p.w);
    REQUIRE(atoms.size() == 4);
    CHECK(atoms[0].zero());
    CHECK(atoms[1].nonzero());
    CHECK(atoms[2].nonzero());
    CHECK(atoms[3].zero());
    for (const auto& a : atoms) {
      auto [m, mj] = atom_pair(a.pattern, p.gens);
      if (a.zero()) CHECK(check_equivalence_witness(a.verdict, m, mj).ok);
      if (a.nonzero()) CHECK(check_escape_witness(a.verdict, m, mj).ok);
    }
    auto hs = homs(atoms);
    REQUIRE(hs.size() == 2);
    for (const auto& h : hs) CHECK(check_hom(h, p.gens, {{1, 2}}, p.w).pass);
  }

  TEST_CASE("a wrong assignment fails the hom check") {
    GeomPair p;
    HomReport r = check_hom(TwoValuedHom{{1, 1}}, p.gens, {{1, 2}}, p.w);
    CHECK(!r.pass);
  }

  TEST_CASE("formal sums") {
    FormalSum s = FormalSum::parse("e1+e2+(e1^e2)+(e1ve2)");
    CHECK(s.terms.size() == 4);
    CHECK(s.str() == "e1+e2+(e1^e2)+(e1ve2)");
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        TwoValuedHom h{{a, b}};
        // a + b + ab + (a or b) is 0 over GF(2).
        CHECK(extend_hom(h, s) == 0);
        CHECK(extend_hom(h, FormalSum::parse("e1+1")) == 1 - a);
      }
    }
    CHECK_THROWS_AS(eval_hom(TwoValuedHom{{1}}, FormalSum::parse("e2").terms[0]), DomainError);
    CHECK_THROWS(FormalSum::parse("e1+"));
  }

  TEST_CASE("tau on tail filter bases") {
    GeomPair p;
    FilterBase fa = tail_filter_base(*p.g, parse_point_set(*p.g, "pow4"), 6);
    CHECK(check_filter_base(*p.g, fa, p.w).pass);
    CHECK(tau(fa, p.gens[0], p.w).value == 1);
    CHECK(tau(fa, p.gens[1], p.w).value == 0);
    CHECK(filter_decides(*p.g, fa, parse_point_set(*p.g, "pow4"), p.w, default_sweep_factors()) == 1);
    CHECK(filter_decides(*p.g, fa, parse_point_set(*p.g, "2pow4"), p.w, default_sweep_factors()) == 0);
  }

  TEST_CASE("separating sets are far from the sublevel sets") {
    auto n = MetricSpace::builtin("NatLine");
    Window w = n->window(400);
    LevelFunction sq = levels_from_subset(n, parse_point_set(*n, "squares"));
    Separation b = separating_set(sq, w);
    CHECK(b.points.size() >= 5);
    for (std::size_t i = 0; i < b.points.size(); ++i) {
      std::int64_t k = static_cast<std::int64_t>(i) + 1;
      // Oracle: every point of A_k is farther than k.
      for (const auto& y : window_points(*n, w)) {
        if (sq(y) <= k) CHECK(n->distance(b.points[i], y) > k);
      }
    }
    CHECK(check_separating(b, sq, w, 5, default_sweep_factors()));
  }
}
