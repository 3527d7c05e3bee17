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

#include "coarse/asymptotics.hpp"

#include <algorithm>
#include <map>

#include "coarse/errors.hpp"

namespace coarse {

std::optional<std::int64_t> TransferFunction::at(std::int64_t n) const {
  auto it = std::upper_bound(table.begin(), table.end(), n,
                             [](std::int64_t v, const auto& e) { return v < e.first; });
  if (it == table.begin()) return std::nullopt;
  return std::prev(it)->second;
}

TransferFunction transfer(const LevelFunction& e1, const LevelFunction& e2,
                          const Window& w) {
  if (e1.space() != e2.space()) throw DomainError("transfer between different spaces");
  std::map<std::int64_t, std::int64_t> best;
  for (const auto& x : window_points(*e1.space(), w)) {
    std::int64_t l1 = e1(x), l2 = e2(x);
    auto [it, fresh] = best.emplace(l1, l2);
    if (!fresh) it->second = std::max(it->second, l2);
  }
  TransferFunction t;
  std::int64_t run = 0;
  for (const auto& [n, v] : best) {
    run = std::max(run, v);
    t.table.emplace_back(n, run);
  }
  return t;
}

std::string to_string(Mode m) { return m == Mode::kQuasi ? "quasi" : "coarse"; }

std::vector<Rational> default_sweep_factors() {
  return {Rational(1, 4), Rational(1, 2), Rational(1)};
}

std::vector<Rational> sweep_radii(const Window& w,
                                  const std::vector<Rational>& factors) {
  std::vector<Rational> r;
  for (const auto& f : factors) r.push_back(w.radius * f);
  return r;
}

namespace {

struct AffineFit {
  std::int64_t alpha;
  std::int64_t beta;
};

// Least beta, then least alpha, with T(n) <= beta n + alpha on every listed n.
std::optional<AffineFit> fit_affine(
    const std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>>& tables,
    const WitnessGrid& grid) {
  for (std::int64_t beta = 1; beta <= grid.beta_max; ++beta) {
    Rational need = 0;
    for (const auto& t : tables) {
      for (const auto& [n, v] : t) {
        need = max(need, Rational(v) - Rational(n) * beta);
      }
    }
    if (need <= grid.alpha_max) return AffineFit{need.to_int64(), beta};
  }
  return std::nullopt;
}

Series table_series(const std::string& name,
                    const std::vector<std::pair<std::int64_t, std::int64_t>>& t) {
  Series s{name, {}};
  for (const auto& [n, v] : t) s.points.emplace_back(Rational(n), Rational(v));
  return s;
}

std::vector<std::int64_t> coarse_table(const TransferFunction& a,
                                       const TransferFunction& b,
                                       std::int64_t n_max) {
  std::vector<std::int64_t> phi;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    phi.push_back(std::max(a.at(n).value_or(1), b.at(n).value_or(1)));
  }
  return phi;
}

Witness tabulated_witness(const std::vector<std::int64_t>& phi) {
  Witness w;
  w.kind = "tabulated";
  for (std::size_t i = 0; i < phi.size(); ++i) {
    w.table.emplace_back(static_cast<std::int64_t>(i + 1), Rational(phi[i]));
  }
  return w;
}

}  // namespace

Verdict equivalent(const LevelFunction& e1, const LevelFunction& e2, Mode mode,
                   const Window& w, const EquivalenceOptions& opts) {
  auto radii = sweep_radii(w, opts.factors);
  Verdict v;
  v.claim = to_string(mode) + "-equivalent(" + e1.name() + "," + e2.name() + ")";
  v.window_radius = w.radius;

  std::vector<std::optional<AffineFit>> fits;
  std::vector<std::vector<std::int64_t>> phis;
  for (const auto& r : radii) {
    Window wr{r, w.base};
    TransferFunction t12 = transfer(e1, e2, wr), t21 = transfer(e2, e1, wr);
    v.diagnostics.push_back(table_series("T12@" + r.str(), t12.table));
    v.diagnostics.push_back(table_series("T21@" + r.str(), t21.table));
    fits.push_back(fit_affine({t12.table, t21.table}, opts.grid));
    phis.push_back(coarse_table(t12, t21, opts.n_max));
  }
  // Least affine witness per radius; -1 when the grid has none.
  Series beta_series{"beta", {}}, alpha_series{"alpha", {}};
  bool quasi = true;
  std::int64_t alpha = 0;
  for (std::size_t i = 0; i < fits.size(); ++i) {
    beta_series.points.emplace_back(radii[i], Rational(fits[i] ? fits[i]->beta : -1));
    alpha_series.points.emplace_back(radii[i], Rational(fits[i] ? fits[i]->alpha : -1));
    if (!fits[i]) {
      quasi = false;
      continue;
    }
    if (fits[i]->beta != fits[0].value_or(AffineFit{0, -1}).beta) quasi = false;
    alpha = std::max(alpha, fits[i]->alpha);
  }
  v.diagnostics.push_back(beta_series);
  v.diagnostics.push_back(alpha_series);

  if (mode == Mode::kQuasi) {
    if (quasi) {
      v.status = Status::kCertifiedOnWindow;
      v.label = "quasi-equivalent";
      v.witness = affine_witness(alpha, fits[0]->beta);
    } else {
      v.status = Status::kInconclusive;
      v.label = "no-stable-affine-witness";
    }
    return v;
  }

  bool stable = std::all_of(phis.begin(), phis.end(),
                            [&](const auto& p) { return p == phis.back(); });
  // A saturated level is unbounded on the window, not a finite bound.
  bool saturated = std::any_of(phis.back().begin(), phis.back().end(),
                               [](std::int64_t t) { return t >= kInfiniteLevel; });
  if (stable && saturated) {
    v.status = Status::kInconclusive;
    v.label = "level-saturated";
  } else if (stable) {
    v.status = Status::kCertifiedOnWindow;
    v.label = "coarse-equivalent";
    v.witness = tabulated_witness(phis.back());
  } else if (quasi) {
    std::vector<std::int64_t> induced;
    for (std::int64_t n = 1; n <= opts.n_max; ++n) induced.push_back(fits[0]->beta * n + alpha);
    v.status = Status::kCertifiedOnWindow;
    v.label = "coarse-equivalent-induced";
    v.witness = tabulated_witness(induced);
  } else {
    v.status = Status::kInconclusive;
    v.label = "transfer-unstable";
  }
  return v;
}

Verdict precedes(const LevelFunction& e, const LevelFunction& f, Mode mode,
                 const Window& w, const EquivalenceOptions& opts) {
  Verdict v = equivalent(e, meet(e, f), mode, w, opts);
  v.claim = to_string(mode) + "-precedes(" + e.name() + "," + f.name() + ")";
  return v;
}

Verdict is_zero(const LevelFunction& e, Mode mode, const Window& w,
                const ZeroOptions& opts) {
  const MetricSpace& s = *e.space();
  auto radii = sweep_radii(w, opts.factors);
  Verdict v;
  v.claim = to_string(mode) + "-zero(" + e.name() + ")";
  v.window_radius = w.radius;
  // sup{d(x, x0) : lambda(x) <= n}; -1 when A_n misses the window.
  std::vector<std::vector<Rational>> sups;
  for (const auto& r : radii) {
    Window wr{r, w.base};
    std::vector<Rational> sup(opts.n_max + 1, Rational(-1));
    for (const auto& x : window_points(s, wr)) {
      std::int64_t l = e(x);
      if (l > opts.n_max) continue;
      Rational d = s.distance(x, w.base);
      for (std::int64_t n = l; n <= opts.n_max; ++n) sup[n] = max(sup[n], d);
    }
    Series ser{"sup_d(x,x0)@" + r.str(), {}};
    for (std::int64_t n = 1; n <= opts.n_max; ++n) ser.points.emplace_back(Rational(n), sup[n]);
    v.diagnostics.push_back(ser);
    sups.push_back(sup);
  }
  bool stable = std::all_of(sups.begin(), sups.end(),
                            [&](const auto& t) { return t == sups.back(); });
  if (!stable) {
    bool escapes = false;
    for (std::int64_t n = 1; n <= opts.n_max && !escapes; ++n) {
      bool strict = true;
      for (std::size_t i = 1; i < sups.size(); ++i) {
        if (!(sups[i - 1][n] < sups[i][n])) strict = false;
      }
      escapes = strict;
    }
    v.status = Status::kInconclusive;
    v.label = escapes ? "nonzero-evidence" : "unstable";
    return v;
  }
  Witness wit;
  wit.kind = "zero_bound";
  for (std::int64_t n = 1; n <= opts.n_max; ++n) wit.table.emplace_back(n, sups.back()[n]);
  if (mode == Mode::kQuasi) {
    std::optional<AffineFit> fit;
    for (std::int64_t beta = 1; beta <= opts.grid.beta_max && !fit; ++beta) {
      Rational need = 0;
      for (std::int64_t n = 1; n <= opts.n_max; ++n) {
        need = max(need, sups.back()[n] - Rational(beta * n));
      }
      Rational a = need.ceil();
      if (a <= opts.grid.alpha_max) fit = AffineFit{a.to_int64(), beta};
    }
    if (!fit) {
      v.status = Status::kInconclusive;
      v.label = "bounded-without-affine-witness";
      v.witness = wit;
      return v;
    }
    wit.params["alpha"] = Rational(fit->alpha);
    wit.params["beta"] = Rational(fit->beta);
  }
  v.status = Status::kCertifiedOnWindow;
  v.label = "zero";
  v.witness = wit;
  return v;
}

SweepReport sweep(const std::function<Verdict(const Window&)>& claim,
                  const MetricSpace& space, const std::vector<Rational>& radii) {
  if (radii.size() < 3) throw DomainError("a sweep needs at least 3 radii");
  for (std::size_t i = 1; i < radii.size(); ++i) {
    if (!(radii[i - 1] < radii[i])) throw DomainError("sweep radii must increase strictly");
  }
  SweepReport rep;
  rep.radii = radii;
  for (const auto& r : radii) rep.per_radius.push_back(claim(space.window(r)));
  const auto& pr = rep.per_radius;
  bool all = std::all_of(pr.begin(), pr.end(), [](const Verdict& v) { return v.certified(); });
  bool none = std::none_of(pr.begin(), pr.end(), [](const Verdict& v) { return v.certified(); });
  if (all) {
    bool same = std::all_of(pr.begin(), pr.end(),
                            [&](const Verdict& v) { return v.witness == pr.back().witness; });
    rep.trend = same ? "stable" : "certified-varying";
  } else if (none) {
    rep.trend = "never-certified";
  } else {
    // Find whether certification switches on once or off once.
    std::size_t first = 0;
    while (!pr[first].certified()) ++first;
    bool tail_all = std::all_of(pr.begin() + first, pr.end(),
                                [](const Verdict& v) { return v.certified(); });
    std::size_t firstbad = 0;
    while (pr[firstbad].certified()) ++firstbad;
    bool bad_tail = std::none_of(pr.begin() + firstbad, pr.end(),
                                 [](const Verdict& v) { return v.certified(); });
    rep.trend = tail_all ? "strengthening" : (bad_tail ? "degrading" : "mixed");
  }
  rep.final = pr.back();
  rep.final.trend = rep.trend;
  return rep;
}

}  // namespace coarse
