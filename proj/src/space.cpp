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

#include "coarse/space.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "coarse/errors.hpp"

namespace coarse {
namespace {

std::int64_t isqrt_floor(std::int64_t v) {
  if (v <= 0) return 0;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
  while (r > 0 && r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

std::int64_t isqrt_ceil(std::int64_t v) {
  std::int64_t r = isqrt_floor(v);
  return r * r == v ? r : r + 1;
}

std::int64_t ruler(std::int64_t n) {
  std::int64_t v = 1;
  while (n > 0 && (n & 1) == 0) {
    n >>= 1;
    ++v;
  }
  return v;
}

constexpr std::int64_t kMaxBall = 50'000'000;

std::int64_t floor_radius(const Rational& r) {
  Rational f = r.floor();
  if (!f.fits_int64() || f.to_int64() > kMaxBall) {
    throw DomainError("ball radius " + r.str() + " too large to enumerate");
  }
  return f.to_int64();
}

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

}  // namespace

SpacePtr MetricSpace::builtin(std::string_view name) {
  if (name == "TwoTails") return two_tails(ruler, "1+v2(n)");
  auto s = std::shared_ptr<MetricSpace>(new MetricSpace());
  s->name_ = std::string(name);
  if (name == "NatLine") {
    s->kind_ = SpaceKind::kNatLine;
    s->basepoint_ = PointId{0, 0, 1};
  } else if (name == "IntLine") {
    s->kind_ = SpaceKind::kIntLine;
    s->basepoint_ = PointId{0, 0, 1};
  } else if (name == "GeomLine") {
    s->kind_ = SpaceKind::kGeomLine;
    s->basepoint_ = PointId{1, 0, 1};
  } else {
    throw DomainError("unknown space '" + std::string(name) + "'");
  }
  return s;
}

SpacePtr MetricSpace::two_tails(std::function<std::int64_t(std::int64_t)> phi,
                                std::string phi_name) {
  auto s = std::shared_ptr<MetricSpace>(new MetricSpace());
  s->kind_ = SpaceKind::kTwoTails;
  s->name_ = "TwoTails";
  s->dim_ = 2;
  s->phi_ = std::move(phi);
  s->phi_name_ = std::move(phi_name);
  s->basepoint_ = PointId{1, s->phi_(1), 2};
  return s;
}

SpacePtr MetricSpace::custom(std::vector<PointId> points, CustomMetric metric,
                             std::vector<std::vector<Rational>> table,
                             std::optional<Rational> certified_radius,
                             std::optional<PointId> basepoint) {
  if (points.empty()) throw DomainError("custom space without points");
  auto s = std::shared_ptr<MetricSpace>(new MetricSpace());
  s->kind_ = SpaceKind::kCustom;
  s->name_ = "Custom";
  s->dim_ = points.front().dim;
  for (const auto& p : points) {
    if (p.dim != s->dim_) throw DomainError("custom points of mixed dimension");
  }
  std::vector<PointId> sorted = points;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw DomainError("custom space lists a point twice");
  }
  s->metric_ = metric;
  if (metric == CustomMetric::kTable) {
    if (table.size() != points.size()) {
      throw DomainError("distance table has wrong size");
    }
    // Reorder the table to the sorted point order.
    std::map<PointId, std::size_t> original;
    for (std::size_t i = 0; i < points.size(); ++i) original[points[i]] = i;
    std::vector<std::vector<Rational>> t(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      const auto& row = table[original[sorted[i]]];
      if (row.size() != points.size()) {
        throw DomainError("distance table has wrong size");
      }
      for (std::size_t j = 0; j < sorted.size(); ++j) {
        t[i].push_back(row[original[sorted[j]]]);
      }
    }
    for (std::size_t i = 0; i < t.size(); ++i) {
      for (std::size_t j = 0; j < t.size(); ++j) {
        if ((i == j) != (t[i][j] == 0) || t[i][j].sign() < 0 ||
            t[i][j] != t[j][i]) {
          throw DomainError("distance table is not a metric at (" +
                            std::to_string(i) + "," + std::to_string(j) + ")");
        }
      }
    }
    s->table_ = std::move(t);
  }
  for (std::size_t i = 0; i < sorted.size(); ++i) s->index_[sorted[i]] = i;
  s->points_ = std::move(sorted);
  s->certified_radius_ = std::move(certified_radius);
  s->basepoint_ = basepoint ? *basepoint : s->points_.front();
  s->require(s->basepoint_);
  return s;
}

bool MetricSpace::contains(const PointId& p) const {
  switch (kind_) {
    case SpaceKind::kNatLine:
      return p.dim == 1 && p.c1 == 0 && p.c0 >= 0;
    case SpaceKind::kIntLine:
      return p.dim == 1 && p.c1 == 0;
    case SpaceKind::kGeomLine:
      return p.dim == 1 && p.c1 == 0 && p.c0 >= 1;
    case SpaceKind::kTwoTails: {
      if (p.dim != 2 || p.c0 < 1) return false;
      std::int64_t n = isqrt_floor(p.c0);
      if (n * n != p.c0) return false;
      std::int64_t h = phi_(n);
      return p.c1 == h || p.c1 == -h;
    }
    case SpaceKind::kCustom:
      return index_.count(p) != 0;
  }
  return false;
}

void MetricSpace::require(const PointId& p) const {
  if (!contains(p)) {
    throw DomainError("point " + label(p) + " is not in " + name_);
  }
}

std::size_t MetricSpace::custom_index(const PointId& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) require(p);
  return it->second;
}

Rational MetricSpace::distance(const PointId& p, const PointId& q) const {
  switch (kind_) {
    case SpaceKind::kNatLine:
    case SpaceKind::kIntLine:
      return Rational(p.c0 > q.c0 ? p.c0 - q.c0 : q.c0 - p.c0);
    case SpaceKind::kGeomLine: {
      std::int64_t a = std::max(p.c0, q.c0), b = std::min(p.c0, q.c0);
      if (a == b) return Rational(0);
      if (a < 62) return Rational((std::int64_t{1} << a) - (std::int64_t{1} << b));
      return Rational((BigInt(1) << a) - (BigInt(1) << b));
    }
    case SpaceKind::kTwoTails:
      return Rational(std::abs(p.c0 - q.c0) + std::abs(p.c1 - q.c1));
    case SpaceKind::kCustom: {
      if (metric_ == CustomMetric::kTable) {
        return table_[custom_index(p)][custom_index(q)];
      }
      std::int64_t d0 = std::abs(p.c0 - q.c0), d1 = std::abs(p.c1 - q.c1);
      if (metric_ == CustomMetric::kManhattan) return Rational(d0 + d1);
      return ceil_root(Rational(d0) * d0 + Rational(d1) * d1, 2);
    }
  }
  return Rational(0);
}

std::vector<PointId> MetricSpace::ball(const PointId& center,
                                       const Rational& r) const {
  std::vector<PointId> out;
  if (r.sign() < 0) return out;
  switch (kind_) {
    case SpaceKind::kNatLine:
    case SpaceKind::kIntLine: {
      std::int64_t k = floor_radius(r);
      std::int64_t lo = center.c0 - k;
      if (kind_ == SpaceKind::kNatLine) lo = std::max<std::int64_t>(lo, 0);
      for (std::int64_t v = lo; v <= center.c0 + k; ++v) out.push_back({v, 0, 1});
      break;
    }
    case SpaceKind::kGeomLine: {
      Rational c = coordinate(center, 0);
      Rational lo = c - r, hi = c + r;
      for (unsigned m = 1;; ++m) {
        Rational v = Rational::pow2(m);
        if (v > hi) break;
        if (v >= lo) out.push_back({static_cast<std::int64_t>(m), 0, 1});
      }
      break;
    }
    case SpaceKind::kTwoTails: {
      std::int64_t k = floor_radius(r);
      std::int64_t n0 = isqrt_ceil(std::max<std::int64_t>(1, center.c0 - k));
      std::int64_t n1 = isqrt_floor(center.c0 + k);
      for (std::int64_t n = std::max<std::int64_t>(n0, 1); n <= n1; ++n) {
        std::int64_t h = phi_(n);
        for (std::int64_t y : {-h, h}) {
          PointId p{n * n, y, 2};
          if (distance(center, p) <= r) out.push_back(p);
        }
      }
      break;
    }
    case SpaceKind::kCustom: {
      if (certified_radius_ &&
          distance(basepoint_, center) + r > *certified_radius_) {
        throw IncompleteEnumeration(
            "incomplete enumeration: custom space is certified only up to "
            "radius " + certified_radius_->str(),
            distance(basepoint_, center) + r);
      }
      for (const auto& p : points_) {
        if (distance(center, p) <= r) out.push_back(p);
      }
      break;
    }
  }
  return out;
}

Rational MetricSpace::coordinate(const PointId& p, int axis) const {
  if (axis < 0 || axis >= dim_) throw DomainError("no such axis");
  if (kind_ == SpaceKind::kGeomLine) {
    return Rational::pow2(static_cast<unsigned>(p.c0));
  }
  return Rational(axis == 0 ? p.c0 : p.c1);
}

std::string MetricSpace::label(const PointId& p) const {
  if (p.dim == 2) {
    return "(" + std::to_string(p.c0) + "," + std::to_string(p.c1) + ")";
  }
  if (kind_ == SpaceKind::kGeomLine) {
    if (p.c0 >= 1 && p.c0 <= 64) return coordinate(p, 0).str();
    return "2^" + std::to_string(p.c0);
  }
  return std::to_string(p.c0);
}

PointId MetricSpace::parse_point(std::string_view text) const {
  std::string s = trim(text);
  if (!s.empty() && s.front() == '(' && s.back() == ')') {
    s = s.substr(1, s.size() - 2);
  }
  std::vector<Rational> coords;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    part = trim(part);
    auto caret = part.find('^');
    if (caret != std::string::npos) {
      Rational base = Rational::parse(trim(part.substr(0, caret)));
      Rational e = Rational::parse(trim(part.substr(caret + 1)));
      Rational v = 1;
      for (std::int64_t i = 0; i < e.to_int64(); ++i) v *= base;
      coords.push_back(v);
    } else {
      coords.push_back(Rational::parse(part));
    }
  }
  return point_from_coords(coords);
}

PointId MetricSpace::point_from_coords(const std::vector<Rational>& coords) const {
  if (static_cast<int>(coords.size()) != dim_) {
    throw DomainError("expected " + std::to_string(dim_) +
                      " coordinate(s) for a point of " + name_);
  }
  PointId p;
  p.dim = static_cast<std::uint8_t>(dim_);
  if (kind_ == SpaceKind::kGeomLine) {
    const Rational& v = coords[0];
    if (!v.is_integer() || v.sign() <= 0) {
      throw DomainError(v.str() + " is not in GeomLine");
    }
    BigInt n = v.numerator();
    std::int64_t e = 0;
    while ((n & 1) == 0) {
      n >>= 1;
      ++e;
    }
    if (n != 1 || e < 1) throw DomainError(v.str() + " is not in GeomLine");
    p.c0 = e;
  } else {
    for (int i = 0; i < dim_; ++i) {
      if (!coords[i].fits_int64()) {
        throw DomainError("coordinate " + coords[i].str() + " is not an integer");
      }
    }
    p.c0 = coords[0].to_int64();
    if (dim_ == 2) p.c1 = coords[1].to_int64();
  }
  require(p);
  return p;
}

void MetricSpace::bind(ExprEnv& env, const std::string& v,
                       const PointId& p) const {
  env[v] = coordinate(p, 0);
  env[v + "0"] = coordinate(p, 0);
  if (dim_ == 2) env[v + "1"] = coordinate(p, 1);
  env["r" + v] = distance(p, basepoint_);
}

std::vector<PointId> window_points(const MetricSpace& space, const Window& w) {
  if (w.radius.sign() < 0) throw DomainError("negative window radius");
  auto key = std::make_pair(w.base, w.radius);
  {
    std::lock_guard<std::mutex> lock(space.cache_mu_);
    auto it = space.window_cache_.find(key);
    if (it != space.window_cache_.end()) return *it->second;
  }
  space.require(w.base);
  auto pts = std::make_shared<const std::vector<PointId>>(space.ball(w.base, w.radius));
  std::lock_guard<std::mutex> lock(space.cache_mu_);
  if (space.window_cache_.size() > 256) space.window_cache_.clear();
  space.window_cache_.emplace(key, pts);
  return *pts;
}

Rational base_distance(const MetricSpace& space, const PointId& x,
                       const PointId& y) {
  space.require(x);
  space.require(y);
  return space.distance(x, y);
}

PointSet PointSet::from_predicate(std::string name, Predicate pred) {
  PointSet s;
  s.name_ = std::move(name);
  s.pred_ = std::move(pred);
  return s;
}

PointSet PointSet::from_points(std::vector<PointId> points, std::string name) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  PointSet s;
  s.name_ = std::move(name);
  s.explicit_ = std::make_shared<const std::vector<PointId>>(std::move(points));
  return s;
}

bool PointSet::contains(const MetricSpace& space, const PointId& p) const {
  if (explicit_) return std::binary_search(explicit_->begin(), explicit_->end(), p);
  if (!pred_) return false;
  return pred_(space, p);
}

PointSet PointSet::complement() const {
  PointSet self = *this;
  return from_predicate("not:" + name_, [self](const MetricSpace& s, const PointId& p) {
    return !self.contains(s, p);
  });
}

namespace {

bool is_power_of_two(const Rational& v, std::int64_t* exponent) {
  if (!v.is_integer() || v.sign() <= 0) return false;
  BigInt n = v.numerator();
  std::int64_t e = 0;
  while ((n & 1) == 0) {
    n >>= 1;
    ++e;
  }
  if (n != 1) return false;
  *exponent = e;
  return true;
}

Rational value_of(const MetricSpace& s, const PointId& p) {
  return s.coordinate(p, 0);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

PointSet parse_point_set(const MetricSpace& space, std::string_view spec_in) {
  std::string spec = trim(spec_in);
  auto numeric = [&](std::function<bool(const Rational&)> test) {
    return PointSet::from_predicate(
        spec, [test](const MetricSpace& s, const PointId& p) {
          return test(value_of(s, p));
        });
  };
  auto starts = [&](std::string_view prefix) { return spec.rfind(prefix, 0) == 0; };

  if (spec == "all") {
    return PointSet::from_predicate(spec, [](const MetricSpace&, const PointId&) { return true; });
  }
  if (spec == "none") return PointSet::from_points({}, spec);
  if (spec == "evens" || spec == "odds") {
    bool even = spec == "evens";
    return numeric([even](const Rational& v) {
      if (!v.is_integer()) return false;
      bool is_even = v.fits_int64() ? (v.to_int64() % 2 == 0) : ((v.numerator() & 1) == 0);
      return is_even == even;
    });
  }
  if (spec == "squares") {
    return numeric([](const Rational& v) {
      if (!v.is_integer() || v.sign() < 0) return false;
      Rational r = ceil_root(v, 2);
      return r * r == v;
    });
  }
  if (spec == "pow2" || spec == "pow4" || spec == "2pow4") {
    int parity = spec == "pow2" ? -1 : (spec == "pow4" ? 0 : 1);
    return numeric([parity](const Rational& v) {
      std::int64_t e = 0;
      if (!is_power_of_two(v, &e)) return false;
      return parity < 0 || e % 2 == parity;
    });
  }
  if (spec == "plus" || spec == "minus") {
    if (space.dim() != 2) throw DomainError("'" + spec + "' needs a two-dimensional space");
    bool plus = spec == "plus";
    return PointSet::from_predicate(spec, [plus](const MetricSpace&, const PointId& p) {
      return plus ? p.c1 > 0 : p.c1 < 0;
    });
  }
  if (starts("mod:")) {
    auto parts = split(spec, ':');
    if (parts.size() != 3) throw std::invalid_argument("bad set spec '" + spec + "'");
    Rational m = Rational::parse(parts[1]), r = Rational::parse(parts[2]);
    if (m.sign() <= 0) throw std::invalid_argument("bad modulus in '" + spec + "'");
    return numeric([m, r](const Rational& v) {
      if (!v.is_integer()) return false;
      Rational q = (v / m).floor();
      return v - q * m == r;
    });
  }
  if (starts("le:") || starts("ge:")) {
    bool le = starts("le:");
    Rational bound = Rational::parse(spec.substr(3));
    return numeric([le, bound](const Rational& v) { return le ? v <= bound : v >= bound; });
  }
  if (starts("set:")) {
    std::vector<PointId> pts;
    for (const auto& item : split(spec.substr(4), ';')) {
      if (!trim(item).empty()) pts.push_back(space.parse_point(item));
    }
    return PointSet::from_points(std::move(pts), spec);
  }
  if (starts("not:")) {
    PointSet inner = parse_point_set(space, spec.substr(4));
    PointSet c = inner.complement();
    return c;
  }
  if (starts("and:") || starts("or:")) {
    bool conj = starts("and:");
    std::vector<PointSet> parts;
    for (const auto& item : split(spec.substr(conj ? 4 : 3), conj ? '&' : '|')) {
      parts.push_back(parse_point_set(space, item));
    }
    return PointSet::from_predicate(spec, [parts, conj](const MetricSpace& s, const PointId& p) {
      for (const auto& part : parts) {
        if (part.contains(s, p) != conj) return !conj;
      }
      return conj;
    });
  }
  throw std::invalid_argument("unknown set spec '" + spec + "'");
}

SetDistance dist_to_set(const MetricSpace& space, const PointId& x,
                        const PointSet& a, const Window& w) {
  space.require(x);
  std::optional<Rational> best;
  for (const auto& p : window_points(space, w)) {
    if (!a.contains(space, p)) continue;
    Rational d = space.distance(x, p);
    if (!best || d < *best) best = d;
  }
  if (!best) {
    throw InconclusiveError("set " + a.name() + " does not meet the window",
                            w.radius);
  }
  SetDistance out;
  out.value = *best;
  out.required_radius = space.distance(w.base, x) + *best;
  out.exact = out.required_radius <= w.radius;
  return out;
}

std::optional<Rational> nearest_distance(const MetricSpace& space,
                                         const PointId& x, const PointSet& a,
                                         const Rational& cap) {
  if (a.contains(space, x)) return Rational(0);
  if (a.is_explicit()) {
    std::optional<Rational> best;
    for (const auto& p : a.points()) {
      if (!space.contains(p)) continue;
      Rational d = space.distance(x, p);
      if (!best || d < *best) best = d;
    }
    if (best && *best <= cap) return best;
    return std::nullopt;
  }
  SpaceKind k = space.kind();
  if (k == SpaceKind::kNatLine || k == SpaceKind::kIntLine ||
      k == SpaceKind::kGeomLine) {
    // Walk outward on both sides; each side is increasing in distance, so
    // merging them visits points in distance order.
    std::int64_t lo_limit = k == SpaceKind::kNatLine ? 0 : (k == SpaceKind::kGeomLine ? 1 : INT64_MIN);
    std::int64_t left = x.c0 - 1, right = x.c0 + 1;
    for (;;) {
      std::optional<Rational> dl, dr;
      if (left >= lo_limit) dl = space.distance(x, PointId{left, 0, 1});
      dr = space.distance(x, PointId{right, 0, 1});
      bool take_left = dl && *dl <= *dr;
      const Rational& d = take_left ? *dl : *dr;
      if (d > cap) return std::nullopt;
      PointId p{take_left ? left : right, 0, 1};
      if (a.contains(space, p)) return d;
      if (take_left) --left; else ++right;
    }
  }
  Rational r = 1;
  for (;;) {
    Rational rr = min(r, cap);
    std::optional<Rational> best;
    for (const auto& p : space.ball(x, rr)) {
      if (!a.contains(space, p)) continue;
      Rational d = space.distance(x, p);
      if (!best || d < *best) best = d;
    }
    if (best) return best;
    if (rr >= cap) return std::nullopt;
    r *= 4;
  }
}

PointSet neighborhood(const MetricSpace& space, const PointSet& a,
                      const Rational& r, const Window& w) {
  if (r.sign() < 0) throw DomainError("negative neighborhood radius");
  std::vector<PointId> pts;
  for (const auto& p : window_points(space, w)) {
    if (nearest_distance(space, p, a, r)) pts.push_back(p);
  }
  return PointSet::from_points(std::move(pts), "N(" + r.str() + "," + a.name() + ")");
}

}  // namespace coarse
