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

#include "coarse/boolean.hpp"

#include <algorithm>
#include <cctype>

#include "coarse/errors.hpp"

namespace coarse {

std::string AtomPattern::str() const {
  std::string s;
  for (bool b : bits) s.push_back(b ? '1' : '0');
  return s;
}

AtomPattern AtomPattern::parse(const std::string& s) {
  AtomPattern p;
  for (char c : s) {
    if (c != '0' && c != '1') throw std::invalid_argument("bad atom pattern '" + s + "'");
    p.bits.push_back(c == '1');
  }
  return p;
}

std::string TwoValuedHom::str() const {
  std::string s;
  for (int a : assignment) s.push_back(a ? '1' : '0');
  return s;
}

std::pair<LevelFunction, LevelFunction> atom_pair(
    const AtomPattern& s, const std::vector<LevelFunction>& gens) {
  if (gens.empty()) throw DomainError("atoms need at least one generator");
  if (s.bits.size() != gens.size()) throw DomainError("pattern length differs from generator count");
  const SpacePtr& space = gens.front().space();
  std::optional<LevelFunction> m, j;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (s.bits[i]) {
      m = m ? meet(*m, gens[i]) : gens[i];
    } else {
      j = j ? join(*j, gens[i]) : gens[i];
    }
  }
  LevelFunction mm = m ? *m : unit_levels(space);
  LevelFunction jj = j ? *j : zero_levels(space, space->basepoint());
  return {mm, meet(mm, jj)};
}

Verdict atom_nonzero(const AtomPattern& s, const std::vector<LevelFunction>& gens,
                     const Window& w, const EquivalenceOptions& opts) {
  auto [m, mj] = atom_pair(s, gens);
  const MetricSpace& space = *m.space();
  Verdict eq = equivalent(m, mj, Mode::kCoarse, w, opts);
  Verdict v;
  v.claim = "atom(" + s.str() + ")";
  v.window_radius = w.radius;
  v.diagnostics = eq.diagnostics;
  if (eq.certified()) {
    v.status = Status::kCertifiedOnWindow;
    v.label = "zero";
    v.witness = eq.witness;
    return v;
  }
  auto radii = sweep_radii(w, opts.factors);
  for (std::int64_t n = 1; n <= opts.n_max; ++n) {
    std::vector<std::vector<std::string>> rows;
    std::optional<std::int64_t> prev, first;
    bool grows = true;
    for (const auto& r : radii) {
      std::optional<PointId> arg;
      std::int64_t best = 0;
      for (const auto& x : window_points(space, space.window(r))) {
        if (m(x) > n) continue;
        std::int64_t t = mj(x);
        if (!arg || t > best) {
          arg = x;
          best = t;
        }
      }
      if (!arg || best >= kInfiniteLevel || (prev && best < *prev)) {
        grows = false;
        break;
      }
      if (!first) first = best;
      prev = best;
      rows.push_back({r.str(), space.label(*arg), std::to_string(n), std::to_string(best)});
    }
    if (grows && *prev > *first) {
      v.status = Status::kCertifiedOnWindow;
      v.label = "nonzero";
      Witness wit;
      wit.kind = "escape";
      wit.rows = rows;
      v.witness = wit;
      return v;
    }
  }
  v.status = Status::kInconclusive;
  v.label = "undetermined";
  return v;
}

std::vector<AtomResult> enumerate_atoms(const std::vector<LevelFunction>& gens,
                                        const Window& w,
                                        const EquivalenceOptions& opts) {
  if (gens.size() > 16) throw DomainError("at most 16 generators");
  std::vector<AtomResult> out;
  const std::size_t k = gens.size();
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    AtomPattern p;
    // Generator 1 is the leading bit, so patterns come out in binary order.
    for (std::size_t i = 0; i < k; ++i) p.bits.push_back((mask >> (k - 1 - i)) & 1u);
    out.push_back({p, atom_nonzero(p, gens, w, opts)});
  }
  return out;
}

std::vector<TwoValuedHom> homs(const std::vector<AtomResult>& atoms) {
  std::vector<TwoValuedHom> out;
  for (const auto& a : atoms) {
    if (!a.nonzero()) continue;
    TwoValuedHom h;
    for (bool b : a.pattern.bits) h.assignment.push_back(b ? 1 : 0);
    out.push_back(h);
  }
  return out;
}

namespace {

class TermParser {
 public:
  explicit TermParser(const std::string& s) : s_(s) {}

  FormalSum sum() {
    FormalSum f;
    f.terms.push_back(word());
    while (eat('+')) f.terms.push_back(word());
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& why) {
    throw std::invalid_argument("formal sum '" + s_ + "': " + why);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  LatticeTerm word() {
    LatticeTerm t = atom();
    for (;;) {
      char op = eat('^') ? '^' : (eat('v') ? 'v' : 0);
      if (!op) return t;
      LatticeTerm n;
      n.op = op;
      n.kids = {t, atom()};
      t = n;
    }
  }
  LatticeTerm atom() {
    skip();
    if (eat('(')) {
      LatticeTerm t = word();
      if (!eat(')')) fail("missing ')'");
      return t;
    }
    LatticeTerm t;
    if (eat('1')) {
      t.op = '1';
      return t;
    }
    if (eat('0')) {
      t.op = '0';
      return t;
    }
    if (!eat('e')) fail("expected a generator");
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("generator index expected");
    t.op = 'g';
    t.gen = std::stoi(s_.substr(start, pos_ - start));
    return t;
  }

  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace

FormalSum FormalSum::parse(const std::string& text) { return TermParser(text).sum(); }

std::string to_string(const LatticeTerm& t) {
  switch (t.op) {
    case 'g': return "e" + std::to_string(t.gen);
    case '1': return "1";
    case '0': return "0";
    default:
      return "(" + to_string(t.kids[0]) + std::string(1, t.op) + to_string(t.kids[1]) + ")";
  }
}

std::string FormalSum::str() const {
  std::string s;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) s += "+";
    s += to_string(terms[i]);
  }
  return s;
}

LevelFunction term_levels(const LatticeTerm& t, const std::vector<LevelFunction>& gens) {
  if (gens.empty()) throw DomainError("no generators");
  const SpacePtr& space = gens.front().space();
  switch (t.op) {
    case 'g':
      if (t.gen < 1 || t.gen > static_cast<int>(gens.size())) {
        throw DomainError("generator e" + std::to_string(t.gen) + " is not in the list");
      }
      return gens[t.gen - 1];
    case '1': return unit_levels(space);
    case '0': return zero_levels(space, space->basepoint());
    case '^': return meet(term_levels(t.kids[0], gens), term_levels(t.kids[1], gens));
    default: return join(term_levels(t.kids[0], gens), term_levels(t.kids[1], gens));
  }
}

int eval_hom(const TwoValuedHom& phi, const LatticeTerm& t) {
  switch (t.op) {
    case 'g':
      if (t.gen < 1 || t.gen > static_cast<int>(phi.assignment.size())) {
        throw DomainError("generator e" + std::to_string(t.gen) + " is foreign to the hom");
      }
      return phi.assignment[t.gen - 1];
    case '1': return 1;
    case '0': return 0;
    case '^': return std::min(eval_hom(phi, t.kids[0]), eval_hom(phi, t.kids[1]));
    default: return std::max(eval_hom(phi, t.kids[0]), eval_hom(phi, t.kids[1]));
  }
}

int extend_hom(const TwoValuedHom& phi, const FormalSum& s) {
  int v = 0;
  for (const auto& t : s.terms) v ^= eval_hom(phi, t);
  return v;
}

HomReport check_hom(const TwoValuedHom& phi, const std::vector<LevelFunction>& gens,
                    const std::vector<std::pair<int, int>>& pairs, const Window& w,
                    const EquivalenceOptions& opts) {
  if (phi.assignment.size() != gens.size()) throw DomainError("hom and generators differ in size");
  HomReport r;
  const SpacePtr& space = gens.front().space();
  // phi(x) = 1 iff the atom of phi meets x.
  auto value_on = [&](const LevelFunction& x) -> int {
    std::vector<LevelFunction> ext = gens;
    ext.push_back(x);
    AtomPattern p;
    for (int a : phi.assignment) p.bits.push_back(a != 0);
    p.bits.push_back(true);
    Verdict v = atom_nonzero(p, ext, w, opts);
    if (!v.certified()) return -1;
    return v.label == "nonzero" ? 1 : 0;
  };
  auto expect = [&](const std::string& what, const LevelFunction& x, int want) {
    int got = value_on(x);
    if (got < 0) {
      r.inconclusive.push_back(what);
    } else if (got != want) {
      r.pass = false;
      r.violations.push_back(what + ": expected " + std::to_string(want) + ", atom gives " +
                             std::to_string(got));
    }
  };
  expect("phi(1)", unit_levels(space), 1);
  expect("phi(0)", zero_levels(space, space->basepoint()), 0);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    expect("phi(e" + std::to_string(i + 1) + ")", gens[i], phi.assignment[i]);
  }
  for (auto [i, j] : pairs) {
    if (i < 1 || j < 1 || i > static_cast<int>(gens.size()) || j > static_cast<int>(gens.size())) {
      throw DomainError("pair index out of range");
    }
    int a = phi.assignment[i - 1], b = phi.assignment[j - 1];
    std::string tag = "e" + std::to_string(i) + ",e" + std::to_string(j);
    expect("phi(" + tag + " meet)", meet(gens[i - 1], gens[j - 1]), std::min(a, b));
    expect("phi(" + tag + " join)", join(gens[i - 1], gens[j - 1]), std::max(a, b));
  }
  return r;
}

FilterBase tail_filter_base(const MetricSpace& space, const PointSet& a, int count) {
  if (count < 1) throw DomainError("filter base needs at least one set");
  std::vector<std::pair<Rational, PointId>> found;
  Rational r = 1;
  for (int i = 0; i < 400 && static_cast<int>(found.size()) < count; ++i, r *= 2) {
    found.clear();
    for (const auto& p : space.ball(space.basepoint(), r)) {
      if (a.contains(space, p)) found.emplace_back(space.distance(space.basepoint(), p), p);
    }
  }
  if (static_cast<int>(found.size()) < count) {
    throw DomainError("set " + a.name() + " has too few points for the filter base");
  }
  std::sort(found.begin(), found.end());
  FilterBase f;
  f.name = "tails(" + a.name() + ")";
  for (int k = 0; k < count; ++k) {
    Rational t = found[k].first;
    f.sets.push_back(PointSet::from_predicate(
        a.name() + "@>=" + t.str(), [a, t](const MetricSpace& s, const PointId& p) {
          return a.contains(s, p) && s.distance(s.basepoint(), p) >= t;
        }));
  }
  return f;
}

FilterReport check_filter_base(const MetricSpace& space, const FilterBase& f,
                               const Window& w) {
  FilterReport r;
  auto pts = window_points(space, w);
  for (std::size_t k = 0; k < f.sets.size() && r.pass; ++k) {
    bool any = false;
    for (const auto& p : pts) {
      bool in = f.sets[k].contains(space, p);
      any = any || in;
      if (k > 0 && in && !f.sets[k - 1].contains(space, p)) {
        r.pass = false;
        r.first_violation = "F_" + std::to_string(k + 1) + " leaves F_" + std::to_string(k) +
                            " at " + space.label(p);
        break;
      }
    }
    if (r.pass && !any) {
      r.pass = false;
      r.first_violation = "F_" + std::to_string(k + 1) + " misses the window";
    }
  }
  return r;
}

namespace {

using Membership = std::function<bool(const PointId&)>;

std::vector<PointId> select(const MetricSpace& s, const Rational& r, const Membership& m) {
  std::vector<PointId> out;
  for (const auto& p : window_points(s, s.window(r))) {
    if (m(p)) out.push_back(p);
  }
  return out;
}

bool stable_finite(const MetricSpace& s, const std::vector<Rational>& radii,
                   const Membership& m) {
  std::vector<PointId> last = select(s, radii.back(), m);
  for (std::size_t i = 0; i + 1 < radii.size(); ++i) {
    if (select(s, radii[i], m) != last) return false;
  }
  return true;
}

}  // namespace

TauResult tau(const FilterBase& f, const LevelFunction& e, const Window& w,
              const TauOptions& opts) {
  const MetricSpace& s = *e.space();
  auto radii = sweep_radii(w, opts.factors);
  TauResult r;
  for (const auto& fk : f.sets) {
    std::vector<std::int64_t> row;
    for (std::int64_t n = 1; n <= opts.n_max; ++n) {
      row.push_back(static_cast<std::int64_t>(
          select(s, radii.back(), [&](const PointId& p) { return fk.contains(s, p) && e(p) <= n; })
              .size()));
    }
    r.matrix.push_back(row);
  }
  for (std::int64_t n = 1; n <= opts.n_max; ++n) {
    for (std::size_t k = 0; k < f.sets.size(); ++k) {
      const PointSet& fk = f.sets[k];
      if (stable_finite(s, radii, [&](const PointId& p) { return fk.contains(s, p) && e(p) > n; })) {
        r.value = 1;
        r.evidence = "F_" + std::to_string(k + 1) + " \\ A_" + std::to_string(n) +
                     " is a stable finite set";
        return r;
      }
    }
  }
  std::string ev;
  for (std::int64_t n = 1; n <= opts.n_max; ++n) {
    bool found = false;
    for (std::size_t k = 0; k < f.sets.size() && !found; ++k) {
      const PointSet& fk = f.sets[k];
      if (stable_finite(s, radii, [&](const PointId& p) { return fk.contains(s, p) && e(p) <= n; })) {
        found = true;
        if (!ev.empty()) ev += ", ";
        ev += "n=" + std::to_string(n) + ":k=" + std::to_string(k + 1);
      }
    }
    if (!found) {
      r.value = -1;
      r.evidence = "no decision for n=" + std::to_string(n);
      return r;
    }
  }
  r.value = 0;
  r.evidence = "F_k ^ A_n stable finite for " + ev;
  return r;
}

int filter_decides(const MetricSpace& space, const FilterBase& f, const PointSet& a,
                   const Window& w, const std::vector<Rational>& factors) {
  auto radii = sweep_radii(w, factors);
  for (const auto& fk : f.sets) {
    if (stable_finite(space, radii, [&](const PointId& p) {
          return fk.contains(space, p) && !a.contains(space, p);
        })) {
      return 1;
    }
  }
  for (const auto& fk : f.sets) {
    if (stable_finite(space, radii, [&](const PointId& p) {
          return fk.contains(space, p) && a.contains(space, p);
        })) {
      return 0;
    }
  }
  return -1;
}

Separation separating_set(const LevelFunction& e, const Window& w) {
  const MetricSpace& s = *e.space();
  auto pts = window_points(s, w);
  std::vector<std::pair<Rational, PointId>> order;
  for (const auto& p : pts) order.emplace_back(s.distance(w.base, p), p);
  std::sort(order.begin(), order.end());
  Separation out;
  std::size_t next = 0;
  for (std::int64_t n = 1;; ++n) {
    PointSet an = e.sublevel(n);
    bool found = false;
    for (; next < order.size(); ++next) {
      const PointId& x = order[next].second;
      if (nearest_distance(s, x, an, Rational(n))) continue;
      std::optional<Rational> margin;
      for (const auto& p : pts) {
        if (e(p) <= n) {
          Rational d = s.distance(x, p);
          if (!margin || d < *margin) margin = d;
        }
      }
      out.points.push_back(x);
      out.margins.emplace_back(n, margin.value_or(Rational(-1)));
      ++next;
      found = true;
      break;
    }
    if (!found) break;
  }
  if (out.points.empty()) {
    throw InconclusiveError("no point of the window is farther than 1 from A_1", w.radius);
  }
  out.set = PointSet::from_points(out.points, "B[" + e.name() + "]");
  return out;
}

bool check_separating(const Separation& b, const LevelFunction& e, const Window& w,
                      std::int64_t m_max, const std::vector<Rational>& factors) {
  const MetricSpace& s = *e.space();
  auto radii = sweep_radii(w, factors);
  for (std::int64_t m = 1; m <= m_max; ++m) {
    Rational rm(m);
    bool ok = stable_finite(s, radii, [&](const PointId& p) {
      if (e(p) > m) return false;
      for (const auto& q : b.points) {
        if (s.distance(p, q) <= rm) return true;
      }
      return false;
    });
    if (!ok) return false;
  }
  return true;
}

}  // namespace coarse
