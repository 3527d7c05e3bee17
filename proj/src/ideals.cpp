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

#include "coarse/ideals.hpp"

#include "coarse/errors.hpp"

namespace coarse {

Rational ApproximateUnit::operator()(std::int64_t n, const PointId& x) const {
  const MetricSpace& s = *source.space();
  s.require(x);
  std::optional<Rational> best;
  for (const auto& p : s.ball(x, 1)) {
    if (source(p) > 2 * n) continue;
    Rational d = s.distance(x, p);
    if (!best || d < *best) best = d;
  }
  return best ? 1 - *best : Rational(0);
}

Rational unit_eval(const ApproximateUnit& u, std::int64_t n, const PointId& x, const Window& w) {
  const MetricSpace& s = *u.source.space();
  if (s.distance(w.base, x) > w.radius) {
    throw DomainError(s.label(x) + " lies outside the window");
  }
  return u(n, x);
}

AuReport check_au(const ApproximateUnit& u, const Window& w, std::int64_t n_max) {
  const MetricSpace& s = *u.source.space();
  AuReport rep;
  auto note = [&](const std::string& what) {
    if (rep.first_violation.empty()) rep.first_violation = what;
  };
  for (const auto& x : window_points(s, w)) {
    for (std::int64_t n = 1; n <= n_max; ++n) {
      Rational a = u(n, x), b = u(n + 1, x);
      if (a.sign() > 0 && b != 1) {
        rep.au1 = false;
        note("(au1) at " + s.label(x) + ", n=" + std::to_string(n));
      }
      if (a * b != a) {
        rep.au1 = false;
        note("u_n u_{n+1} != u_n at " + s.label(x) + ", n=" + std::to_string(n));
      }
      if (a > b) {
        rep.monotone = false;
        note("u_n > u_{n+1} at " + s.label(x));
      }
      if (a != 1) continue;
      // Only y within distance 1 can break (au2).
      for (const auto& y : s.ball(x, 1)) {
        if (u(n, y).sign() != 0) continue;
        Rational d = s.distance(x, y);
        if (d < 1) {
          rep.au2_relaxed = false;
          note("(au2) at " + s.label(x) + ", " + s.label(y));
        } else {
          ++rep.strict_count;
          if (rep.strict_violations.size() < 8) {
            rep.strict_violations.push_back("n=" + std::to_string(n) + " x=" + s.label(x) +
                                            " y=" + s.label(y));
          }
        }
      }
    }
  }
  return rep;
}

UnitFn unit_meet(const ApproximateUnit& u, const ApproximateUnit& v, std::int64_t n) {
  return [u, v, n](const PointId& x) { return u(n, x) * v(n, x); };
}

UnitFn unit_join(const ApproximateUnit& u, const ApproximateUnit& v, std::int64_t n) {
  return [u, v, n](const PointId& x) { return min(u(n, x) + v(n, x), Rational(1)); };
}

LevelSetReport level_set_identities(const ApproximateUnit& u, const ApproximateUnit& v,
                                    std::int64_t n, const Window& w) {
  if (u.source.space() != v.source.space()) throw DomainError("units live on different spaces");
  const MetricSpace& s = *u.source.space();
  LevelSetReport rep;
  UnitFn wn = unit_meet(u, v, n), tn = unit_join(u, v, n);
  for (const auto& x : window_points(s, w)) {
    std::int64_t a = u.source(x), b = v.source(x);
    bool in_meet = a <= 2 * n && b <= 2 * n;
    if ((wn(x) == 1) != in_meet) {
      rep.meet_ok = false;
      if (rep.first_violation.empty()) rep.first_violation = "{w_n=1} differs at " + s.label(x);
    }
    bool t1 = tn(x) == 1;
    bool lower = a <= 2 * n || b <= 2 * n;
    bool upper = a <= 2 * n + 2 || b <= 2 * n + 2;
    if ((lower && !t1) || (t1 && !upper)) {
      rep.join_ok = false;
      if (rep.first_violation.empty()) rep.first_violation = "{t_n=1} sandwich fails at " + s.label(x);
    }
  }
  return rep;
}

LevelFunction recovered_levels(const ApproximateUnit& u) {
  return levels_from_function(u.source.space(), "units(" + u.source.name() + ")",
                              [u](const PointId& x) -> std::int64_t {
                                std::int64_t hi = 1;
                                while (u(hi, x) != 1) {
                                  if (hi >= kInfiniteLevel / 2) return kInfiniteLevel;
                                  hi *= 2;
                                }
                                std::int64_t lo = hi / 2;  // u_lo(x) < 1 unless hi = 1
                                if (hi == 1) return 1;
                                while (hi - lo > 1) {
                                  std::int64_t mid = lo + (hi - lo) / 2;
                                  (u(mid, x) == 1 ? hi : lo) = mid;
                                }
                                return hi;
                              });
}

RecoveryReport check_recovery(const ApproximateUnit& u, const Window& w, std::int64_t n_max) {
  RecoveryReport rep;
  LevelFunction r = recovered_levels(u);
  rep.forward = transfer(u.source, r, w);
  rep.backward = transfer(r, u.source, w);
  for (const auto* t : {&rep.forward, &rep.backward}) {
    for (std::int64_t n = 1; n <= n_max; ++n) {
      auto v = t->at(n);
      if (v && *v > 2 * n + 2) {
        rep.pass = false;
        if (rep.first_violation.empty()) {
          rep.first_violation = "T(" + std::to_string(n) + ") = " + std::to_string(*v);
        }
      }
    }
  }
  return rep;
}

}  // namespace coarse
