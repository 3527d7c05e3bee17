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

// Acceptance suite: one [PASS] or [FAIL] line per criterion. Exits nonzero
// when any criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "coarse/boolean.hpp"
#include "coarse/errors.hpp"
#include "coarse/ideals.hpp"
#include "coarse/measure.hpp"
#include "coarse/witness_check.hpp"

using namespace coarse;

namespace {

int failures = 0;

// Every certified verdict produced below is re-checked by substitution.
struct Revalidation {
  std::size_t total = 0;
  std::vector<std::string> failed;

  void add(const Verdict& v, const CheckResult& c) {
    if (!v.certified()) return;
    ++total;
    if (!c.ok) failed.push_back(v.claim + ": " + c.detail);
  }
} recheck;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  std::cout << (pass ? "[PASS] " : "[FAIL] ") << "AC" << id << " " << name << ": " << detail
            << std::endl;
}

void run(int id, const std::string& name, const std::function<std::pair<bool, std::string>()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  try {
    auto [pass, detail] = body();
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream d;
    d << detail << " (" << static_cast<int>(s * 1000) << " ms)";
    report(id, name, pass, d.str());
  } catch (const std::exception& e) {
    report(id, name, false, std::string("exception: ") + e.what());
  }
}

std::string random_delta(std::mt19937& rng) {
  std::uniform_int_distribution<int> pick(0, 5), c(1, 6);
  switch (pick(rng)) {
    case 0: return std::to_string(c(rng));
    case 1: return "max(1," + std::to_string(c(rng)) + "*rx-" + std::to_string(c(rng)) + ")";
    case 2: return "1+mod(rx," + std::to_string(c(rng) + 1) + ")";
    case 3: return "max(1,root(rx," + std::to_string(c(rng) % 3 + 2) + "))";
    case 4: return "max(1,abs(rx-" + std::to_string(4 * c(rng)) + "))";
    default: return "max(1,2*rx)";
  }
}

struct SpaceCase {
  SpacePtr space;
  Rational big;    // at least 200 points
  Rational small;  // for the heavier checks
};

std::vector<SpaceCase> spaces() {
  return {{MetricSpace::builtin("NatLine"), 199, 60},
          {MetricSpace::builtin("IntLine"), 100, 30},
          {MetricSpace::builtin("GeomLine"), Rational::pow2(200), Rational::pow2(40)},
          {MetricSpace::builtin("TwoTails"), 10000, 500}};
}

// Grows the radius until the window has at least 200 points.
Rational radius_for_200(const MetricSpace& s, Rational r) {
  while (window_points(s, s.window(r)).size() < 200) r = r * Rational(21, 20);
  return r.ceil();
}

struct DeltaCase {
  SpaceCase sc;
  std::string expr;
  DoubleMetric d;
};

std::vector<DeltaCase> delta_kernels() {
  std::mt19937 rng(2026);
  std::vector<DeltaCase> out;
  for (const auto& sc : spaces()) {
    for (int i = 0; i < 5; ++i) {
      std::string e = random_delta(rng);
      out.push_back({sc, e, delta_generated(sc.space, delta_from_expression(sc.space, Expression::parse(e)))});
    }
  }
  return out;
}

// inf over window points u of d(x,u) + delta(u) + d(u,y), no pruning.
Rational delta_oracle(const MetricSpace& s, const Expression& delta, const PointId& x, const PointId& y,
                      const std::vector<PointId>& pts) {
  std::optional<Rational> best;
  for (const auto& u : pts) {
    ExprEnv env;
    s.bind(env, "x", u);
    Rational v = s.distance(x, u) + delta.eval(env) + s.distance(u, y);
    if (!best || v < *best) best = v;
  }
  return *best;
}

std::vector<LevelFunction> level_pool() {
  auto n = MetricSpace::builtin("NatLine");
  auto z = MetricSpace::builtin("IntLine");
  auto g = MetricSpace::builtin("GeomLine");
  auto t = MetricSpace::builtin("TwoTails");
  return {levels_from_subset(n, parse_point_set(*n, "squares")),
          levels_from_subset(n, parse_point_set(*n, "pow2")),
          levels_from_subset(n, parse_point_set(*n, "evens")),
          levels_from_expression(n, Expression::parse("root(x+1,2)")),
          zero_levels(n, PointId{3}),
          levels_from_subset(z, parse_point_set(*z, "le:0")),
          levels_from_subset(z, parse_point_set(*z, "mod:3:0")),
          levels_from_subset(g, parse_point_set(*g, "pow4")),
          levels_from_subset(t, parse_point_set(*t, "plus")),
          levels_from_subset(t, parse_point_set(*t, "minus"))};
}

Rational window_radius_for(const MetricSpace& s) {
  switch (s.kind()) {
    case SpaceKind::kGeomLine: return Rational::pow2(40);
    case SpaceKind::kTwoTails: return 500;
    default: return 128;
  }
}

}  // namespace

int main() {
  auto deltas = delta_kernels();

  run(1, "metric axioms", [&] {
    std::size_t min_points = SIZE_MAX, checks = 0;
    std::string bad;
    for (const auto& k : deltas) {
      Window w = k.sc.space->window(radius_for_200(*k.sc.space, k.sc.big));
      AxiomReport r = check_axioms(k.d, w);
      min_points = std::min(min_points, r.points);
      checks += r.checks;
      if (!r.pass || !r.exact) bad += " " + k.sc.space->name() + "[" + k.expr + "]: " + r.first_violation;
    }
    bool ok = bad.empty() && min_points >= 200;
    return std::pair{ok, std::to_string(deltas.size()) + " kernels, >= " + std::to_string(min_points) +
                             " points per window, " + std::to_string(checks) + " inequalities" + bad};
  });

  run(2, "pruned evaluation equals brute force", [&] {
    struct K {
      DoubleMetric d;
      std::optional<Expression> delta;
      Window w;
    };
    std::vector<K> ks;
    for (const auto& k : deltas) {
      ks.push_back({k.d, Expression::parse(k.expr), k.sc.space->window(k.sc.small)});
    }
    for (std::size_t i = 0; i + 1 < deltas.size(); i += 2) {
      const auto& a = deltas[i];
      const auto& b = deltas[i + 1];
      if (a.sc.space != b.sc.space) continue;
      Window w = a.sc.space->window(a.sc.small);
      ks.push_back({min_glue(a.d, b.d), std::nullopt, w});
      ks.push_back({pointwise_max(a.d, b.d), std::nullopt, w});
      ks.push_back({compose(a.d, b.d), std::nullopt, w});
      ks.push_back({adjoint(compose(b.d, a.d)), std::nullopt, w});
      ks.push_back({zero_at(a.sc.space, a.sc.space->basepoint()), std::nullopt, w});
    }
    std::mt19937 rng(17);
    std::size_t trials = 0, exact = 0, mismatch = 0;
    std::string first;
    for (; trials < 10000; ++trials) {
      const K& k = ks[std::uniform_int_distribution<std::size_t>(0, ks.size() - 1)(rng)];
      const MetricSpace& s = *k.d.space();
      auto pts = window_points(s, k.w);
      // Points from the inner half so most values are certified.
      auto inner = window_points(s, s.window(k.w.radius / 4));
      std::uniform_int_distribution<std::size_t> pi(0, inner.size() - 1);
      PointId x = inner[pi(rng)], y = inner[pi(rng)];
      KernelValue v = k.d.eval(x, y, k.w);
      if (!v.exact) continue;
      ++exact;
      Rational o = k.delta ? delta_oracle(s, *k.delta, x, y, pts) : brute_force_eval(k.d, x, y, k.w).value;
      if (o != v.value) {
        ++mismatch;
        if (first.empty()) first = " first at " + k.d.describe() + " (" + s.label(x) + "," + s.label(y) + ")";
      }
    }
    return std::pair{mismatch == 0 && exact >= 10000 / 2,
                     std::to_string(trials) + " triples, " + std::to_string(exact) + " exact, " +
                         std::to_string(mismatch) + " mismatches" + first};
  });

  run(3, "level metric sandwich", [&] {
    std::size_t points = 0, bad = 0;
    for (const auto& l : level_pool()) {
      DoubleMetric d = metric_from_levels(l);
      Window w = l.space()->window(window_radius_for(*l.space()));
      for (const auto& x : window_points(*l.space(), w)) {
        Rational v = eval_certified(d, x, x, w).value;
        std::int64_t n = l(x);
        ++points;
        if (v < Rational(n - 1) || v > Rational(n)) ++bad;
      }
    }
    return std::pair{bad == 0, "10 level functions, " + std::to_string(points) + " points, " +
                                   std::to_string(bad) + " outside [n-1, n]"};
  });

  run(4, "projection criterion witness (0,2)", [&] {
    std::size_t total = 0, good = 0;
    std::string bad;
    auto check = [&](const DoubleMetric& d, const Window& w) {
      Verdict v = projection_criterion(d, w);
      ++total;
      bool ok = v.certified() && v.witness->params.at("alpha") == 0 && v.witness->params.at("beta") == 2;
      if (ok) ++good;
      else bad += " " + d.describe() + ":" + v.label;
      recheck.add(v, check_projection_witness(v, d));
    };
    for (std::size_t i = 0; i < deltas.size(); ++i) {
      const auto& k = deltas[i];
      Window w = k.sc.space->window(k.sc.small);
      check(k.d, w);
      if (i % 5 != 4) check(min_glue(k.d, deltas[i + 1].d), w);
    }
    return std::pair{good == total, std::to_string(good) + "/" + std::to_string(total) +
                                        " delta and min-glue kernels certified at (0,2)" + bad};
  });

  run(5, "join diagonal is the pointwise minimum", [&] {
    std::size_t points = 0, bad = 0, pairs = 0;
    for (std::size_t i = 0; i + 1 < deltas.size(); i += 2) {
      const auto& a = deltas[i];
      const auto& b = deltas[i + 1];
      if (a.sc.space != b.sc.space) continue;
      Window w = a.sc.space->window(a.sc.small);
      DoubleMetric j = metric_join(a.d, b.d, w);
      ++pairs;
      for (const auto& x : window_points(*a.sc.space, w)) {
        ++points;
        Rational m = min(eval_certified(a.d, x, x, w).value, eval_certified(b.d, x, x, w).value);
        if (eval_certified(j, x, x, w).value != m) ++bad;
      }
    }
    return std::pair{bad == 0, std::to_string(pairs) + " pairs, " + std::to_string(points) + " points, " +
                                   std::to_string(bad) + " mismatches"};
  });

  run(6, "lattice laws on level functions", [&] {
    auto n = MetricSpace::builtin("NatLine");
    std::vector<LevelFunction> pool;
    for (const char* s : {"squares", "pow2", "evens", "odds", "mod:3:1", "mod:7:2", "ge:50", "le:80",
                          "not:squares", "or:pow2|mod:5:0"}) {
      pool.push_back(levels_from_subset(n, parse_point_set(*n, s)));
    }
    for (const char* e : {"x+1", "root(x+1,2)", "max(1,64-x)", "1+mod(x,9)"}) {
      pool.push_back(levels_from_expression(n, Expression::parse(e)));
    }
    pool.push_back(unit_levels(n));
    pool.push_back(zero_levels(n, PointId{10}));
    std::mt19937 rng(23);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<std::int64_t> pt(0, 1024);
    std::size_t bad = 0;
    const int trials = 10000;
    for (int i = 0; i < trials; ++i) {
      const auto& a = pool[pick(rng)];
      const auto& b = pool[pick(rng)];
      const auto& c = pool[pick(rng)];
      PointId x{pt(rng)};
      bool ok = meet(a, b)(x) == meet(b, a)(x) && join(a, b)(x) == join(b, a)(x) &&
                meet(meet(a, b), c)(x) == meet(a, meet(b, c))(x) &&
                join(join(a, b), c)(x) == join(a, join(b, c))(x) &&
                meet(a, join(a, b))(x) == a(x) && join(a, meet(a, b))(x) == a(x) &&
                meet(a, a)(x) == a(x) && join(a, a)(x) == a(x) &&
                meet(a, join(b, c))(x) == join(meet(a, b), meet(a, c))(x) &&
                join(a, meet(b, c))(x) == meet(join(a, b), join(a, c))(x);
      if (!ok) ++bad;
    }
    return std::pair{bad == 0, std::to_string(trials) + " random triples, " + std::to_string(bad) + " failures"};
  });

  run(7, "TwoTails closed form and types", [&] {
    auto t = MetricSpace::builtin("TwoTails");
    PointSet plus = parse_point_set(*t, "plus"), minus = parse_point_set(*t, "minus");
    DoubleMetric bp = subset_metric(t, plus), bm = subset_metric(t, minus);
    DoubleMetric prod = compose(bp, bm);
    Window w = t->window(110);
    auto pts = window_points(*t, w);
    auto scan = [&](const PointId& x, const PointSet& a) {
      std::optional<Rational> best;
      for (const auto& p : window_points(*t, t->window(2000))) {
        if (a.contains(*t, p) && (!best || t->distance(x, p) < *best)) best = t->distance(x, p);
      }
      return *best;
    };
    std::size_t bad = 0;
    for (const auto& x : pts) {
      Rational dx = scan(x, plus);
      for (const auto& z : pts) {
        if (brute_force_eval(prod, x, z, w).value != dx + scan(z, minus) + 4) ++bad;
      }
    }
    LevelFunction lp = levels_from_metric(bp, w), lm = levels_from_metric(bm, w);
    Verdict vp = classify_type(lp, {420, 840, 1680}), vm = classify_type(lm, {420, 840, 1680});
    recheck.add(vp, check_type_witness(vp, lp));
    recheck.add(vm, check_type_witness(vm, lm));
    LevelFunction lprod = levels_from_function(t, "b", [&](const PointId& x) {
      Rational cap = t->distance(x, t->basepoint()) + 8;
      return (*nearest_distance(*t, x, plus, cap) + *nearest_distance(*t, x, minus, cap) + 4).ceil().to_int64();
    });
    Verdict vprod = classify_type(lprod, {30, 110, 420});
    std::string growth;
    bool strict = false;
    for (const auto& s : vprod.diagnostics) {
      bool finite = true, up = true;
      for (std::size_t i = 0; i < s.points.size(); ++i) {
        if (s.points[i].second.sign() < 0) finite = false;
        if (i > 0 && !(s.points[i - 1].second < s.points[i].second)) up = false;
      }
      if (finite && up && !strict) {
        strict = true;
        growth = s.name + "=";
        for (const auto& p : s.points) growth += p.second.str() + ",";
        growth.pop_back();
      }
    }
    bool ok = bad == 0 && vp.label == "type-I" && vm.label == "type-I" &&
              vprod.label == "type-II-evidence" && strict;
    return std::pair{ok, std::to_string(pts.size() * pts.size()) + " pairs, " + std::to_string(bad) +
                             " closed-form mismatches; [b+] " + vp.label + ", [b-] " + vm.label +
                             "; product " + vprod.label + " with " + growth};
  });

  run(8, "GeomLine complement pair", [&] {
    auto g = MetricSpace::builtin("GeomLine");
    Rational r = Rational::pow2(40);
    Window w = g->window(r);
    PointSet a = parse_point_set(*g, "pow4"), b = parse_point_set(*g, "2pow4");
    // N_k(A) \ A by scanning A inside a much larger window.
    auto a_pts = window_points(*g, g->window(r * 64));
    bool stable = true;
    std::size_t max_extra = 0;
    for (std::int64_t k = 1; k <= 8; ++k) {
      std::vector<std::vector<PointId>> extra;
      for (Rational rr : {r, r * 2, r * 4}) {
        std::vector<PointId> e;
        for (const auto& x : window_points(*g, g->window(rr))) {
          if (a.contains(*g, x)) continue;
          for (const auto& p : a_pts) {
            if (a.contains(*g, p) && g->distance(x, p) <= k) {
              e.push_back(x);
              break;
            }
          }
        }
        extra.push_back(e);
      }
      max_extra = std::max(max_extra, extra[0].size());
      if (extra[0] != extra[1] || extra[1] != extra[2]) stable = false;
    }
    LevelFunction ea = levels_from_subset(g, a), eb = levels_from_subset(g, b);
    LevelFunction m = meet(ea, eb), j = join(ea, eb), one = unit_levels(g);
    Verdict vm = is_zero(m, Mode::kCoarse, w);
    Verdict vj = equivalent(j, one, Mode::kCoarse, w);
    recheck.add(vm, check_zero_witness(vm, m));
    recheck.add(vj, check_equivalence_witness(vj, j, one));
    FilterBase f = tail_filter_base(*g, a, 6);
    int ta = tau(f, ea, w).value, tb = tau(f, eb, w).value;
    bool ok = stable && vm.certified() && vj.certified() && ta == 1 && tb == 0;
    return std::pair{ok, std::string("N_k(A)\\A ") + (stable ? "finite and stable" : "unstable") +
                             " for k<=8 (at most " + std::to_string(max_extra) + " points); meet " +
                             vm.label + ", join " + vj.label + "; tau = (" + std::to_string(ta) + ", " +
                             std::to_string(tb) + ")"};
  });

  run(9, "Boolean atoms and homs", [&] {
    auto g = MetricSpace::builtin("GeomLine");
    Window w = g->window(Rational::pow2(48));
    auto count = [&](const std::vector<LevelFunction>& gens, std::string& names,
                     const EquivalenceOptions& opts) {
      auto atoms = enumerate_atoms(gens, w, opts);
      std::size_t nonzero = 0;
      for (const auto& a : atoms) {
        auto [m, mj] = atom_pair(a.pattern, gens);
        if (a.nonzero()) {
          ++nonzero;
          names += a.pattern.str() + " ";
          recheck.add(a.verdict, check_escape_witness(a.verdict, m, mj));
        } else {
          recheck.add(a.verdict, check_equivalence_witness(a.verdict, m, mj));
        }
      }
      std::size_t passing = 0;
      auto hs = homs(atoms);
      for (const auto& h : hs) passing += check_hom(h, gens, {{1, 2}}, w, opts).pass;
      return std::tuple{nonzero, hs.size(), passing};
    };
    std::vector<LevelFunction> gens = {levels_from_subset(g, parse_point_set(*g, "pow4")),
                                       levels_from_subset(g, parse_point_set(*g, "2pow4"))};
    std::string names;
    auto [nz, nh, np] = count(gens, names, {});
    // Exponents 0 and 1 mod 3 leave a third tail uncovered. Each residue
    // recurs every factor 8, so the sweep spans a factor 64.
    EquivalenceOptions wide;
    wide.factors = {Rational(1, 64), Rational(1, 8), Rational(1)};
    auto residue = [&](int r) {
      return levels_from_subset(g, PointSet::from_predicate("exp=" + std::to_string(r) + "mod3",
                                                            [r](const MetricSpace&, const PointId& p) {
                                                              return p.c0 % 3 == r;
                                                            }));
    };
    std::string names3;
    auto [nz3, nh3, np3] = count({residue(0), residue(1)}, names3, wide);
    bool ok = nz == 3 && nh == 3 && np == nh;
    return std::pair{ok, "{4^k},{2*4^k}: " + std::to_string(nz) + " nonzero atoms (" + names + "), " +
                             std::to_string(nh) + " homs, " + std::to_string(np) +
                             " pass check_hom; the two sets cover GeomLine so atom 00 is zero. "
                             "Exponents 0,1 mod 3: " + std::to_string(nz3) + " nonzero atoms (" + names3 +
                             "), " + std::to_string(nh3) + " homs, " + std::to_string(np3) + " pass"};
  });

  run(10, "measures", [&] {
    auto z = MetricSpace::builtin("IntLine");
    DensityMeasure mu = DensityMeasure::shell();
    Schedule sch = Schedule::geometric();
    bool exact01 = true;
    for (const auto& [r, v] : nu_hat(mu, unit_levels(z), 8, sch).interval.series) exact01 &= v == 1;
    for (const auto& [r, v] : nu_hat(mu, zero_levels(z, PointId{0}), 8, sch).interval.series) exact01 &= v == 0;
    LevelFunction neg = levels_from_subset(z, parse_point_set(*z, "le:0"));
    LevelFunction pos = levels_from_subset(z, parse_point_set(*z, "ge:0"));
    DensityInterval half = nu_hat(mu, neg, 8, sch).interval;
    bool half_ok = half.lo >= Rational(1, 2) - kMeasureTolerance && half.hi <= Rational(1, 2) + kMeasureTolerance;
    ModularityReport m = check_modularity(mu, neg, pos, 8, sch);
    auto n = MetricSpace::builtin("NatLine");
    ModularityReport m2 = check_modularity(mu, levels_from_subset(n, parse_point_set(*n, "evens")),
                                           levels_from_subset(n, parse_point_set(*n, "squares")), 8, sch);
    DensityInterval ee = nu_bar(mu, {neg, neg}, 8, sch);
    bool ee_ok = true;
    for (const auto& [r, v] : ee.series) ee_ok &= v.sign() == 0;
    bool ok = exact01 && half_ok && m.counts_exact && m2.counts_exact && ee_ok && m.complement_ok &&
              m2.complement_ok && m.interval_ok && m2.interval_ok;
    return std::pair{ok, std::string("nu(1), nu(0) ") + (exact01 ? "exact" : "wrong") + "; half-line " +
                             half.str() + "; modularity " + (m.counts_exact && m2.counts_exact ? "exact" : "broken") +
                             "; nubar(e+e) " + ee.str() + "; complement law " +
                             (m.complement_ok && m2.complement_ok ? "holds" : "fails")};
  });

  run(11, "approximate units", [&] {
    std::size_t strict = 0;
    bool au1 = true, au2 = true, rec = true;
    std::string detail;
    int projections = 0;
    for (const auto& l : level_pool()) {
      if (projections == 5 && l.space()->kind() == SpaceKind::kNatLine) continue;
      ApproximateUnit u{l};
      Window w = l.space()->window(l.space()->kind() == SpaceKind::kGeomLine ? Rational::pow2(40)
                                   : l.space()->kind() == SpaceKind::kTwoTails ? Rational(500)
                                                                              : Rational(200));
      AuReport r = check_au(u, w);
      au1 &= r.au1 && r.monotone;
      au2 &= r.au2_relaxed;
      strict += r.strict_count;
      if (projections < 5) {
        RecoveryReport rr = check_recovery(u, w);
        rec &= rr.pass;
        if (!rr.pass) detail += " recovery " + l.name() + ": " + rr.first_violation;
        ++projections;
      }
    }
    return std::pair{au1 && au2 && rec,
                     std::string("(au1) ") + (au1 ? "exact" : "fails") + " on 10 projections; recovery T(n) <= 2n+2 " +
                         (rec ? "holds" : "fails") + " on 5; (au2) relaxed " + (au2 ? "holds" : "fails") + ", " +
                         std::to_string(strict) + " strict violations at distance exactly 1" + detail};
  });

  report(12, "witness re-validation", recheck.failed.empty() && recheck.total > 0,
         std::to_string(recheck.total - recheck.failed.size()) + "/" + std::to_string(recheck.total) +
             " certified verdicts re-validate" + (recheck.failed.empty() ? "" : "; first: " + recheck.failed[0]));

  std::cout << (failures ? std::to_string(failures) + " criteria failed" : "all criteria passed") << std::endl;
  return failures ? 1 : 0;
}
