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

#include "coarse/projection.hpp"

#include <algorithm>
#include <mutex>
#include <unordered_map>

#include "coarse/errors.hpp"

namespace coarse {

struct LevelFunction::Memo {
  std::mutex mu;
  std::unordered_map<PointId, std::int64_t> map;
};

LevelFunction::LevelFunction(SpacePtr space, std::string name,
                             std::string provenance, Fn fn)
    : space_(std::move(space)),
      name_(std::move(name)),
      provenance_(std::move(provenance)),
      fn_(std::move(fn)),
      memo_(std::make_shared<Memo>()) {}

std::int64_t LevelFunction::operator()(const PointId& p) const {
  {
    std::lock_guard<std::mutex> lock(memo_->mu);
    auto it = memo_->map.find(p);
    if (it != memo_->map.end()) return it->second;
  }
  std::int64_t v = fn_(p);
  std::lock_guard<std::mutex> lock(memo_->mu);
  if (memo_->map.size() > (1u << 21)) memo_->map.clear();
  memo_->map.emplace(p, v);
  return v;
}

PointSet LevelFunction::sublevel(std::int64_t n) const {
  LevelFunction self = *this;
  return PointSet::from_predicate(
      name_ + "<=" + std::to_string(n),
      [self, n](const MetricSpace&, const PointId& p) { return self(p) <= n; });
}

namespace {

// ceil(v), at least 1, saturating at kInfiniteLevel.
std::int64_t level_of(const Rational& v) {
  Rational c = v.ceil();
  if (c < 1) return 1;
  if (!c.fits_int64() || c.to_int64() >= kInfiniteLevel) return kInfiniteLevel;
  return c.to_int64();
}

}  // namespace

LevelFunction unit_levels(SpacePtr space) {
  return LevelFunction(std::move(space), "unit", "expression",
                       [](const PointId&) { return std::int64_t{1}; });
}

LevelFunction zero_levels(SpacePtr space, const PointId& x0) {
  space->require(x0);
  SpacePtr s = space;
  LevelFunction l(space, "zero(" + space->label(x0) + ")", "from-metric",
                  [s, x0](const PointId& p) { return level_of(s->distance(p, x0) * 2 + 1); });
  if (x0 == space->basepoint()) l.tail = Expression::parse("2*rx+1");
  return l;
}

LevelFunction levels_from_subset(SpacePtr space, const PointSet& a) {
  auto base = nearest_distance(*space, space->basepoint(), a, Rational(1 << 20));
  if (!base) throw DomainError("subset " + a.name() + " is empty near the basepoint");
  Rational db = *base;
  SpacePtr s = space;
  return LevelFunction(space, "E[" + a.name() + "]", "from-subset",
                       [s, a, db](const PointId& p) {
                         Rational cap = s->distance(p, s->basepoint()) + db;
                         return level_of(*nearest_distance(*s, p, a, cap) * 2);
                       });
}

LevelFunction levels_from_expression(SpacePtr space, const Expression& e) {
  SpacePtr s = space;
  LevelFunction l(space, e.source(), "expression", [s, e](const PointId& p) {
    ExprEnv env;
    s->bind(env, "x", p);
    return level_of(e.eval(env));
  });
  l.tail = e;
  return l;
}

LevelFunction levels_from_function(SpacePtr space, std::string name,
                                   LevelFunction::Fn fn) {
  return LevelFunction(std::move(space), std::move(name), "expression", std::move(fn));
}

LevelFunction levels_from_table(SpacePtr space, std::string name,
                                std::vector<std::pair<PointId, std::int64_t>> table,
                                std::optional<Expression> tail) {
  auto map = std::make_shared<std::unordered_map<PointId, std::int64_t>>();
  for (const auto& [p, v] : table) {
    space->require(p);
    if (v < 1) throw DomainError("levels must be at least 1");
    (*map)[p] = v;
  }
  SpacePtr s = space;
  LevelFunction l(space, std::move(name), "combined",
                  [s, map, tail](const PointId& p) {
                    auto it = map->find(p);
                    if (it != map->end()) return it->second;
                    if (!tail) {
                      throw DomainError("no level tabulated for " + s->label(p));
                    }
                    ExprEnv env;
                    s->bind(env, "x", p);
                    return level_of(tail->eval(env));
                  });
  l.tail = tail;
  return l;
}

LevelFunction levels_from_metric(const DoubleMetric& d, const Window& w) {
  return LevelFunction(d.space(), "diag[" + d.describe() + "]", "from-metric",
                       [d, w](const PointId& p) {
                         return level_of(eval_certified(d, p, p, w).value);
                       });
}

DeltaFunction delta_from_levels(const LevelFunction& l) {
  DeltaFunction d;
  d.name = "levels:" + l.name();
  d.floor = 1;
  d.window_independent = true;
  d.fn = [l](const PointId& u, const Window&) {
    return KernelValue{Rational(std::max<std::int64_t>(l(u), 1)), true, 0, true};
  };
  return d;
}

DoubleMetric metric_from_levels(const LevelFunction& l) {
  return delta_generated(l.space(), delta_from_levels(l));
}

LevelFunction meet(const LevelFunction& e, const LevelFunction& f) {
  if (e.space() != f.space()) throw DomainError("meet of levels on different spaces");
  return LevelFunction(e.space(), "(" + e.name() + "^" + f.name() + ")", "combined",
                       [e, f](const PointId& p) { return std::max(e(p), f(p)); });
}

LevelFunction join(const LevelFunction& e, const LevelFunction& f) {
  if (e.space() != f.space()) throw DomainError("join of levels on different spaces");
  return LevelFunction(e.space(), "(" + e.name() + "v" + f.name() + ")", "combined",
                       [e, f](const PointId& p) { return std::min(e(p), f(p)); });
}

LevelReport check_levels(const LevelFunction& l, const Window& w) {
  const MetricSpace& s = *l.space();
  LevelReport r;
  auto pts = window_points(s, w);
  bool some_finite = false;
  for (const auto& y : pts) {
    std::int64_t ly = l(y);
    if (ly >= kInfiniteLevel) {
      if (r.pass) {
        r.pass = false;
        r.first_violation = "(e3) no finite level at " + s.label(y);
      }
      continue;
    }
    some_finite = true;
    for (const auto& x : s.ball(y, Rational(1, 2))) {
      if (l(x) > ly + 1 && r.pass) {
        r.pass = false;
        r.first_violation = "(e2) fails at x=" + s.label(x) + ", y=" + s.label(y);
      }
    }
  }
  if (!some_finite) {
    r.pass = false;
    r.first_violation = "(e1) every window point has infinite level";
  }
  return r;
}

LevelFunction source_projection(const DoubleMetric& d, const Window& w,
                                bool require_exact) {
  return LevelFunction(d.space(), "src[" + d.describe() + "]", "from-metric",
                       [d, w, require_exact](const PointId& p) {
                         KernelValue v = require_exact ? dist_to_copy_certified(d, p, w)
                                                       : dist_to_copy(d, p, w);
                         return level_of(v.value);
                       });
}

LevelFunction range_projection(const DoubleMetric& d, const Window& w,
                               bool require_exact) {
  LevelFunction l = source_projection(adjoint(d), w, require_exact);
  return LevelFunction(d.space(), "rng[" + d.describe() + "]", "from-metric",
                       [l](const PointId& p) { return l(p); });
}

namespace {

KernelValue best_effort_eval(const DoubleMetric& d, const PointId& x,
                             const PointId& y, const Window& w) {
  try {
    return eval_certified(d, x, y, w);
  } catch (const InconclusiveError&) {
    return d.eval(x, y, w);
  }
}

KernelValue best_effort_copy(const DoubleMetric& d, const PointId& x,
                             const Window& w) {
  try {
    return dist_to_copy_certified(d, x, w);
  } catch (const InconclusiveError&) {
    return dist_to_copy(d, x, w);
  }
}

void require_selfadjoint(const DoubleMetric& d, const Window& w) {
  if (d.kernel().symmetric()) return;
  const MetricSpace& s = *d.space();
  auto pts = window_points(s, w);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (best_effort_eval(d, pts[i], pts[j], w).value !=
          best_effort_eval(d, pts[j], pts[i], w).value) {
        throw DomainError(d.describe() + " is not selfadjoint at (" +
                          s.label(pts[i]) + "," + s.label(pts[j]) + ")");
      }
    }
  }
}

}  // namespace

Verdict projection_criterion(const DoubleMetric& d, const Window& w,
                             const WitnessGrid& grid) {
  require_selfadjoint(d, w);
  const MetricSpace& s = *d.space();
  auto pts = window_points(s, w);
  std::vector<Rational> diag, copy;
  bool exact = true;
  Series ratio{"d(x,x')/d(x,X')", {}};
  for (std::size_t i = 0; i < pts.size(); ++i) {
    KernelValue a = best_effort_eval(d, pts[i], pts[i], w);
    KernelValue b = best_effort_copy(d, pts[i], w);
    exact = exact && a.exact && b.exact;
    diag.push_back(a.value);
    copy.push_back(b.value);
    ratio.points.emplace_back(Rational(static_cast<std::int64_t>(i)), a.value / b.value);
  }
  auto holds = [&](std::int64_t alpha, std::int64_t beta) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (diag[i] > (copy[i] + alpha) * beta) return false;
    }
    return true;
  };
  std::vector<std::pair<std::int64_t, std::int64_t>> order;
  if (grid.beta_max >= 2) order.emplace_back(0, 2);
  for (std::int64_t a = 0; a <= grid.alpha_max; ++a) {
    for (std::int64_t b = 1; b <= grid.beta_max; ++b) order.emplace_back(a, b);
  }
  Verdict v;
  v.claim = "projection(" + d.describe() + ")";
  v.window_radius = w.radius;
  v.diagnostics.push_back(ratio);
  for (auto [a, b] : order) {
    if (holds(a, b)) {
      v.status = exact ? Status::kCertifiedOnWindow : Status::kInconclusive;
      v.label = exact ? "projection" : "projection-on-window-minima";
      v.witness = affine_witness(a, b);
      return v;
    }
  }
  v.status = Status::kInconclusive;
  v.label = "no-witness-in-grid";
  return v;
}

CmFunction F_map(const DoubleMetric& d, const Window& w) {
  return {d.space(), "F[" + d.describe() + "]",
          [d, w](const PointId& p) { return eval_certified(d, p, p, w).value; }};
}

CmFunction cm_max(const CmFunction& f, const CmFunction& g) {
  return {f.space, "max(" + f.name + "," + g.name + ")",
          [f, g](const PointId& p) { return max(f.f(p), g.f(p)); }};
}

CmFunction cm_min(const CmFunction& f, const CmFunction& g) {
  return {f.space, "min(" + f.name + "," + g.name + ")",
          [f, g](const PointId& p) { return min(f.f(p), g.f(p)); }};
}

CmReport check_Cm(const CmFunction& f, const Window& w) {
  const MetricSpace& s = *f.space;
  auto pts = window_points(s, w);
  std::vector<Rational> vals;
  CmReport r;
  for (const auto& p : pts) vals.push_back(f.f(p));
  r.epsilon = *std::min_element(vals.begin(), vals.end());
  if (r.epsilon.sign() <= 0) {
    r.pass = false;
    r.first_violation = "(f1) value " + r.epsilon.str() + " is not positive";
    return r;
  }
  for (std::size_t i = 0; i < pts.size() && r.pass; ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      Rational diff = (vals[i] - vals[j]).abs();
      if (diff > s.distance(pts[i], pts[j]) * 2) {
        r.pass = false;
        r.first_violation = "(f2) |f(x)-f(y)| = " + diff.str() + " at (" +
                            s.label(pts[i]) + "," + s.label(pts[j]) + ")";
        break;
      }
    }
  }
  return r;
}

namespace {

void require_projection(const DoubleMetric& d, const Window& w,
                        const WitnessGrid& grid) {
  if (!projection_criterion(d, w, grid).certified()) {
    throw DomainError(d.describe() + " is not certified as a projection");
  }
}

}  // namespace

DoubleMetric metric_meet(const DoubleMetric& d1, const DoubleMetric& d2,
                         const Window& w, const WitnessGrid& grid) {
  require_projection(d1, w, grid);
  require_projection(d2, w, grid);
  return pointwise_max(d1, d2);
}

DoubleMetric metric_join(const DoubleMetric& d1, const DoubleMetric& d2,
                         const Window& w, const WitnessGrid& grid) {
  require_projection(d1, w, grid);
  require_projection(d2, w, grid);
  return min_glue(d1, d2);
}

Verdict classify_type(const LevelFunction& e, const std::vector<Rational>& radii,
                      const TypeParams& params) {
  if (radii.size() < 3) throw DomainError("type classification needs at least 3 radii");
  for (std::size_t i = 1; i < radii.size(); ++i) {
    if (!(radii[i - 1] < radii[i])) throw DomainError("radii must increase strictly");
  }
  const MetricSpace& s = *e.space();
  const std::int64_t N = params.n_max, M = params.m_max;
  constexpr std::int64_t kInf = kInfiniteLevel;
  // k[r][n][m]: least k with A_m inside N_k(A_n) on the window of radius r.
  std::vector<std::vector<std::vector<std::int64_t>>> k(
      radii.size(), std::vector<std::vector<std::int64_t>>(
                        N + 1, std::vector<std::int64_t>(M + 1, 0)));
  std::vector<PointSet> cores;
  for (std::int64_t n = 0; n <= N; ++n) cores.push_back(e.sublevel(n));
  for (std::size_t r = 0; r < radii.size(); ++r) {
    for (const auto& x : window_points(s, s.window(radii[r]))) {
      std::int64_t lx = e(x);
      if (lx > M) continue;
      for (std::int64_t n = 1; n <= N; ++n) {
        auto d = nearest_distance(s, x, cores[n], Rational(params.k_max));
        std::int64_t need = d ? d->ceil().to_int64() : kInf;
        for (std::int64_t m = lx; m <= M; ++m) k[r][n][m] = std::max(k[r][n][m], need);
      }
    }
  }
  Verdict v;
  v.claim = "type(" + e.name() + ")";
  v.window_radius = radii.back();
  for (std::int64_t n = 1; n <= N; ++n) {
    Series ser{"K_" + std::to_string(n), {}};
    for (std::size_t r = 0; r < radii.size(); ++r) {
      std::int64_t worst = *std::max_element(k[r][n].begin() + 1, k[r][n].end());
      ser.points.emplace_back(radii[r], Rational(worst >= kInf ? -1 : worst));
    }
    v.diagnostics.push_back(ser);
  }
  for (std::int64_t n = 1; n <= N; ++n) {
    bool ok = true;
    for (std::size_t r = 0; r < radii.size() && ok; ++r) {
      for (std::int64_t m = 1; m <= M; ++m) {
        if (k[r][n][m] >= kInf || k[r][n][m] != k.back()[n][m]) {
          ok = false;
          break;
        }
      }
    }
    if (ok) {
      v.status = Status::kCertifiedOnWindow;
      v.label = "type-I";
      Witness w;
      w.kind = "type_i";
      w.params["n"] = Rational(n);
      for (std::int64_t m = 1; m <= M; ++m) w.table.emplace_back(m, Rational(k.back()[n][m]));
      v.witness = w;
      return v;
    }
  }
  bool growth = true;
  for (std::int64_t n = 1; n <= N && growth; ++n) {
    bool found = false;
    for (std::int64_t m = 1; m <= M && !found; ++m) {
      bool all_inf = true, strict = true;
      for (std::size_t r = 0; r < radii.size(); ++r) {
        if (k[r][n][m] < kInf) all_inf = false;
        if (r > 0 && !(k[r - 1][n][m] < k[r][n][m])) strict = false;
      }
      found = all_inf || strict;
    }
    growth = found;
  }
  v.status = Status::kInconclusive;
  v.label = growth ? "type-II-evidence" : "undetermined";
  return v;
}

}  // namespace coarse
