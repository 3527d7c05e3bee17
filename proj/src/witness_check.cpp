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

#include "coarse/witness_check.hpp"

#include <map>

namespace coarse {
namespace {

CheckResult fail(std::string why) { return {false, std::move(why)}; }

CheckResult need_certified(const Verdict& v, const std::string& kind) {
  if (!v.certified()) return fail("verdict is not certified");
  if (!v.witness) return fail("certified verdict without witness");
  if (v.witness->kind != kind) return fail("expected a " + kind + " witness");
  return {};
}

}  // namespace

CheckResult check_equivalence_witness(const Verdict& v, const LevelFunction& e1,
                                      const LevelFunction& e2) {
  if (!v.certified() || !v.witness) return fail("verdict is not certified");
  const MetricSpace& s = *e1.space();
  const Witness& w = *v.witness;
  auto pts = window_points(s, s.window(v.window_radius));
  if (w.kind == "affine") {
    Rational a = w.params.at("alpha"), b = w.params.at("beta");
    for (const auto& x : pts) {
      Rational l1(e1(x)), l2(e2(x));
      if (l2 > b * l1 + a || l1 > b * l2 + a) {
        return fail("affine bound fails at " + s.label(x));
      }
    }
    return {};
  }
  if (w.kind == "tabulated") {
    std::map<std::int64_t, Rational> phi(w.table.begin(), w.table.end());
    std::int64_t top = phi.empty() ? 0 : phi.rbegin()->first;
    for (const auto& x : pts) {
      std::int64_t l1 = e1(x), l2 = e2(x);
      if (l1 <= top && Rational(l2) > phi.lower_bound(l1)->second) {
        return fail("A1_n not inside A2_phi(n) at " + s.label(x));
      }
      if (l2 <= top && Rational(l1) > phi.lower_bound(l2)->second) {
        return fail("A2_n not inside A1_phi(n) at " + s.label(x));
      }
    }
    return {};
  }
  return fail("unsupported witness kind " + w.kind);
}

CheckResult check_zero_witness(const Verdict& v, const LevelFunction& e) {
  if (auto c = need_certified(v, "zero_bound"); !c.ok) return c;
  const MetricSpace& s = *e.space();
  const Witness& w = *v.witness;
  std::map<std::int64_t, Rational> bound(w.table.begin(), w.table.end());
  std::int64_t top = bound.empty() ? 0 : bound.rbegin()->first;
  bool affine = w.params.count("alpha") != 0;
  for (const auto& x : window_points(s, s.window(v.window_radius))) {
    std::int64_t l = e(x);
    if (l > top) continue;
    Rational d = s.distance(x, s.basepoint());
    if (d > bound.lower_bound(l)->second) return fail("bound fails at " + s.label(x));
    if (affine && d > w.params.at("beta") * l + w.params.at("alpha")) {
      return fail("affine bound fails at " + s.label(x));
    }
  }
  return {};
}

CheckResult check_projection_witness(const Verdict& v, const DoubleMetric& d) {
  if (auto c = need_certified(v, "affine"); !c.ok) return c;
  const MetricSpace& s = *d.space();
  Window win = s.window(v.window_radius);
  Rational a = v.witness->params.at("alpha"), b = v.witness->params.at("beta");
  for (const auto& x : window_points(s, win)) {
    Rational diag = eval_certified(d, x, x, win).value;
    Rational copy = dist_to_copy_certified(d, x, win).value;
    if (diag / b - a > copy) return fail("criterion fails at " + s.label(x));
  }
  return {};
}

CheckResult check_type_witness(const Verdict& v, const LevelFunction& e) {
  if (auto c = need_certified(v, "type_i"); !c.ok) return c;
  const MetricSpace& s = *e.space();
  std::int64_t n = v.witness->params.at("n").to_int64();
  std::map<std::int64_t, Rational> k(v.witness->table.begin(), v.witness->table.end());
  for (const auto& x : window_points(s, s.window(v.window_radius))) {
    std::int64_t lx = e(x);
    for (const auto& [m, km] : k) {
      if (lx > m) continue;
      bool hit = false;
      for (const auto& y : s.ball(x, km)) {
        if (e(y) <= n) {
          hit = true;
          break;
        }
      }
      if (!hit) {
        return fail(s.label(x) + " in A_" + std::to_string(m) + " is not within " +
                    km.str() + " of A_" + std::to_string(n));
      }
    }
  }
  return {};
}

CheckResult check_escape_witness(const Verdict& v, const LevelFunction& from,
                                 const LevelFunction& to) {
  if (!v.witness || v.witness->kind != "escape") return fail("no escape witness");
  const MetricSpace& s = *from.space();
  std::optional<std::int64_t> prev, first;
  // Rows: radius, point, core index n, claimed target level.
  for (const auto& row : v.witness->rows) {
    if (row.size() != 4) return fail("malformed escape row");
    Rational radius = Rational::parse(row[0]);
    PointId x = s.parse_point(row[1]);
    std::int64_t n = std::stoll(row[2]);
    if (s.distance(x, s.basepoint()) > radius) return fail(row[1] + " is outside its window");
    if (from(x) > n) return fail(row[1] + " is not in A_" + row[2]);
    std::int64_t t = to(x);
    if (std::to_string(t) != row[3]) return fail("level mismatch at " + row[1]);
    if (prev && t < *prev) return fail("levels drop at " + row[1]);
    if (!first) first = t;
    prev = t;
  }
  if (!prev || *prev <= *first) return fail("levels do not grow across the sweep");
  return {};
}

}  // namespace coarse
