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

#include "coarse/measure.hpp"

#include <algorithm>

#include "coarse/errors.hpp"

namespace coarse {

DensityMeasure DensityMeasure::parse(const std::string& text) {
  if (text == "shell") return shell();
  if (text == "natural") return natural();
  const std::string prefix = "weighted:";
  if (text.rfind(prefix, 0) == 0) return weighted(Expression::parse(text.substr(prefix.size())));
  throw std::invalid_argument("unknown measure '" + text + "'");
}

std::string DensityMeasure::name() const {
  switch (kind) {
    case DensityKind::kShell: return "shell";
    case DensityKind::kNatural: return "natural";
    default: return "weighted:" + weight->source();
  }
}

Schedule Schedule::geometric(const Rational& r0, int steps) {
  if (steps < 3) throw DomainError("a schedule needs at least 3 radii");
  Schedule s;
  Rational r = r0;
  for (int i = 0; i < steps; ++i, r *= 2) s.radii.push_back(r);
  return s;
}

std::string DensityInterval::str() const { return "[" + lo.str() + ", " + hi.str() + "]"; }

DensityInterval interval_from_series(std::vector<std::pair<Rational, Rational>> series,
                                     const Schedule& schedule) {
  DensityInterval d;
  std::size_t start = schedule.tail_start();
  d.lo = series[start].second;
  d.hi = series[start].second;
  for (std::size_t i = start; i < series.size(); ++i) {
    d.lo = min(d.lo, series[i].second);
    d.hi = max(d.hi, series[i].second);
  }
  d.series = std::move(series);
  return d;
}

namespace {

struct Region {
  std::vector<PointId> points;
  std::vector<Rational> weights;
  Rational total = 0;
};

Region region(const MetricSpace& space, const DensityMeasure& mu, const Rational& r) {
  Region g;
  const PointId& b = space.basepoint();
  for (const auto& p : window_points(space, space.window(r))) {
    if (mu.kind == DensityKind::kShell && space.distance(b, p) * 2 <= r) continue;
    Rational w = 1;
    if (mu.kind == DensityKind::kWeighted) {
      ExprEnv env;
      space.bind(env, "x", p);
      w = mu.weight->eval(env);
      if (w.sign() < 0) throw DomainError("negative weight at " + space.label(p));
    }
    g.points.push_back(p);
    g.weights.push_back(w);
    g.total += w;
  }
  if (g.total.sign() <= 0) {
    throw DomainError("measure " + mu.name() + " has empty region at radius " + r.str());
  }
  return g;
}

void check_schedule(const Schedule& s) {
  if (s.radii.size() < 3) throw DomainError("a schedule needs at least 3 radii");
}

// Weight of {p : max over the chosen rows of levels <= n}.
Rational mass(const Region& g, const std::vector<const std::vector<std::int64_t>*>& rows,
              std::int64_t n) {
  Rational m = 0;
  for (std::size_t i = 0; i < g.points.size(); ++i) {
    bool in = std::all_of(rows.begin(), rows.end(), [&](const auto* r) { return (*r)[i] <= n; });
    if (in) m += g.weights[i];
  }
  return m;
}

std::vector<std::int64_t> levels_on(const Region& g, const LevelFunction& e) {
  std::vector<std::int64_t> out;
  out.reserve(g.points.size());
  for (const auto& p : g.points) out.push_back(e(p));
  return out;
}

}  // namespace

DensityInterval density(const MetricSpace& space, const DensityMeasure& mu, const PointSet& a,
                        const Schedule& schedule) {
  check_schedule(schedule);
  std::vector<std::pair<Rational, Rational>> series;
  for (const auto& r : schedule.radii) {
    Region g = region(space, mu, r);
    Rational m = 0;
    for (std::size_t i = 0; i < g.points.size(); ++i) {
      if (a.contains(space, g.points[i])) m += g.weights[i];
    }
    series.emplace_back(r, m / g.total);
  }
  return interval_from_series(std::move(series), schedule);
}

NuHat nu_hat(const DensityMeasure& mu, const LevelFunction& e, std::int64_t n_max,
             const Schedule& schedule) {
  check_schedule(schedule);
  const MetricSpace& space = *e.space();
  NuHat out;
  std::vector<std::vector<std::pair<Rational, Rational>>> per_n(n_max);
  std::vector<std::pair<Rational, Rational>> sup;
  for (const auto& r : schedule.radii) {
    Region g = region(space, mu, r);
    auto lv = levels_on(g, e);
    Rational best = 0, prev = 0;
    for (std::int64_t n = 1; n <= n_max; ++n) {
      Rational v = mass(g, {&lv}, n) / g.total;
      if (v < prev) out.monotone = false;
      prev = v;
      best = max(best, v);
      per_n[n - 1].emplace_back(r, v);
    }
    sup.emplace_back(r, best);
  }
  for (auto& s : per_n) out.per_n.push_back(interval_from_series(std::move(s), schedule));
  out.interval = interval_from_series(std::move(sup), schedule);
  return out;
}

DensityInterval nu_bar(const DensityMeasure& mu, const std::vector<LevelFunction>& s,
                       std::int64_t n_max, const Schedule& schedule) {
  check_schedule(schedule);
  if (s.empty()) throw DomainError("formal sum is empty");
  if (s.size() > 16) throw DomainError("at most 16 summands");
  const MetricSpace& space = *s.front().space();
  std::vector<std::pair<Rational, Rational>> series;
  for (const auto& r : schedule.radii) {
    Region g = region(space, mu, r);
    std::vector<std::vector<std::int64_t>> lv;
    for (const auto& e : s) lv.push_back(levels_on(g, e));
    Rational total = 0;
    for (std::uint32_t mask = 1; mask < (1u << s.size()); ++mask) {
      std::vector<const std::vector<std::int64_t>*> rows;
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (mask & (1u << i)) rows.push_back(&lv[i]);
      }
      // The per-radius supremum over n <= n_max of a nested family.
      Rational v = mass(g, rows, n_max) / g.total;
      Rational sign = Rational::pow2(static_cast<int>(rows.size()) - 1);
      if (rows.size() % 2 == 0) sign = -sign;
      total += sign * v;
    }
    series.emplace_back(r, total);
  }
  return interval_from_series(std::move(series), schedule);
}

ModularityReport check_modularity(const DensityMeasure& mu, const LevelFunction& e,
                                  const LevelFunction& f, std::int64_t n_max,
                                  const Schedule& schedule) {
  check_schedule(schedule);
  const MetricSpace& space = *e.space();
  ModularityReport rep;
  for (const auto& r : schedule.radii) {
    Region g = region(space, mu, r);
    auto le = levels_on(g, e), lf = levels_on(g, f);
    for (std::int64_t n = 1; n <= n_max && rep.counts_exact; ++n) {
      Rational a = 0, b = 0, both = 0, either = 0;
      for (std::size_t i = 0; i < g.points.size(); ++i) {
        bool in_a = le[i] <= n, in_b = lf[i] <= n;
        if (in_a) a += g.weights[i];
        if (in_b) b += g.weights[i];
        if (in_a && in_b) both += g.weights[i];
        if (in_a || in_b) either += g.weights[i];
      }
      if (both + either != a + b) {
        rep.counts_exact = false;
        rep.first_violation = "counting identity fails at R=" + r.str() + ", n=" +
                              std::to_string(n);
      }
    }
  }
  auto add = [&](const DensityInterval& x, const DensityInterval& y) {
    std::vector<std::pair<Rational, Rational>> s;
    for (std::size_t i = 0; i < x.series.size(); ++i) {
      s.emplace_back(x.series[i].first, x.series[i].second + y.series[i].second);
    }
    return interval_from_series(std::move(s), schedule);
  };
  rep.lhs = add(nu_hat(mu, meet(e, f), n_max, schedule).interval,
                nu_hat(mu, join(e, f), n_max, schedule).interval);
  NuHat ne = nu_hat(mu, e, n_max, schedule);
  rep.rhs = add(ne.interval, nu_hat(mu, f, n_max, schedule).interval);
  rep.interval_ok = rep.lhs.lo <= rep.rhs.hi && rep.rhs.lo <= rep.lhs.hi;
  if (!rep.interval_ok && rep.first_violation.empty()) {
    rep.first_violation = "modularity intervals " + rep.lhs.str() + " and " + rep.rhs.str() +
                          " are disjoint";
  }
  DensityInterval comp = nu_bar(mu, {unit_levels(e.space()), e}, n_max, schedule);
  rep.complement_ok = comp.lo == 1 - ne.interval.hi && comp.hi == 1 - ne.interval.lo;
  if (!rep.complement_ok && rep.first_violation.empty()) {
    rep.first_violation = "complement law: " + comp.str() + " vs 1 - " + ne.interval.str();
  }
  return rep;
}

Measure0Report measure0_check(const DensityMeasure& mu, const LevelFunction& e,
                              std::int64_t n_max, const Schedule& schedule) {
  check_schedule(schedule);
  Measure0Report rep;
  rep.direct = nu_hat(mu, e, n_max, schedule).interval;
  std::vector<std::pair<Rational, Rational>> sup;
  for (const auto& r : schedule.radii) sup.emplace_back(r, Rational(0));
  for (std::int64_t n = 1; n <= n_max; ++n) {
    DensityInterval d;
    try {
      d = nu_hat(mu, levels_from_subset(e.space(), e.sublevel(n)), n_max, schedule).interval;
    } catch (const DomainError&) {
      // A_n is empty: its levels contribute nothing.
      std::vector<std::pair<Rational, Rational>> zero;
      for (const auto& r : schedule.radii) zero.emplace_back(r, Rational(0));
      d = interval_from_series(std::move(zero), schedule);
    }
    for (std::size_t i = 0; i < sup.size(); ++i) {
      sup[i].second = max(sup[i].second, d.series[i].second);
    }
    rep.per_n.push_back(std::move(d));
  }
  rep.recovered = interval_from_series(std::move(sup), schedule);
  rep.pass = (rep.recovered.lo - rep.direct.lo).abs() <= kMeasureTolerance &&
             (rep.recovered.hi - rep.direct.hi).abs() <= kMeasureTolerance;
  return rep;
}

}  // namespace coarse
