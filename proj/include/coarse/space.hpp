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

#ifndef COARSE_SPACE_HPP_
#define COARSE_SPACE_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coarse/expr.hpp"
#include "coarse/rational.hpp"

namespace coarse {

// Integer coordinates of a point. One-dimensional spaces use c0 only.
// GeomLine stores the exponent: the point 2^n has c0 = n.
struct PointId {
  std::int64_t c0 = 0;
  std::int64_t c1 = 0;
  std::uint8_t dim = 1;

  auto operator<=>(const PointId&) const = default;
};

struct PointIdHash {
  std::size_t operator()(const PointId& p) const {
    std::size_t h = std::hash<std::int64_t>{}(p.c0);
    return h * 1000003u ^ std::hash<std::int64_t>{}(p.c1) ^ p.dim;
  }
};

enum class SpaceKind { kNatLine, kIntLine, kGeomLine, kTwoTails, kCustom };

class MetricSpace;
using SpacePtr = std::shared_ptr<const MetricSpace>;

struct Window {
  Rational radius;
  PointId base;
};

class MetricSpace : public std::enable_shared_from_this<MetricSpace> {
 public:
  enum class CustomMetric { kManhattan, kEuclideanRounded, kTable };

  // "NatLine", "IntLine", "GeomLine" or "TwoTails".
  static SpacePtr builtin(std::string_view name);
  // TwoTails with a caller-supplied height function phi(n) >= 1, n >= 1.
  static SpacePtr two_tails(std::function<std::int64_t(std::int64_t)> phi,
                            std::string phi_name);
  static SpacePtr custom(std::vector<PointId> points, CustomMetric metric,
                         std::vector<std::vector<Rational>> table,
                         std::optional<Rational> certified_radius,
                         std::optional<PointId> basepoint);

  SpaceKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const PointId& basepoint() const { return basepoint_; }
  int dim() const { return dim_; }

  Window window(const Rational& radius) const { return {radius, basepoint_}; }

  bool contains(const PointId& p) const;
  void require(const PointId& p) const;  // throws DomainError

  // Distance without the membership check.
  Rational distance(const PointId& p, const PointId& q) const;

  // Points at distance <= r from center, lexicographic order.
  std::vector<PointId> ball(const PointId& center, const Rational& r) const;

  // Coordinate on an axis, in the space's own units (2^n for GeomLine).
  Rational coordinate(const PointId& p, int axis) const;
  std::string label(const PointId& p) const;
  // Accepts "7", "2^5" (GeomLine), "(4,-2)" or "4,-2".
  PointId parse_point(std::string_view text) const;
  PointId point_from_coords(const std::vector<Rational>& coords) const;

  // Binds a point to variables <v>, <v>0, <v>1 and r<v> (distance to the
  // basepoint) for use in expressions.
  void bind(ExprEnv& env, const std::string& v, const PointId& p) const;

  std::int64_t phi(std::int64_t n) const { return phi_(n); }
  const std::string& phi_name() const { return phi_name_; }

  const std::vector<PointId>& custom_points() const { return points_; }
  CustomMetric custom_metric() const { return metric_; }
  const std::vector<std::vector<Rational>>& custom_table() const {
    return table_;
  }
  const std::optional<Rational>& certified_radius() const {
    return certified_radius_;
  }

 private:
  MetricSpace() = default;
  std::size_t custom_index(const PointId& p) const;

  SpaceKind kind_ = SpaceKind::kNatLine;
  std::string name_;
  PointId basepoint_;
  int dim_ = 1;

  std::function<std::int64_t(std::int64_t)> phi_;
  std::string phi_name_;

  std::vector<PointId> points_;
  std::map<PointId, std::size_t> index_;
  CustomMetric metric_ = CustomMetric::kManhattan;
  std::vector<std::vector<Rational>> table_;
  std::optional<Rational> certified_radius_;

  mutable std::mutex cache_mu_;
  mutable std::map<std::pair<PointId, Rational>,
                   std::shared_ptr<const std::vector<PointId>>>
      window_cache_;
  friend std::vector<PointId> window_points(const MetricSpace&, const Window&);
};

// Exactly the points of the window, lexicographically ordered.
std::vector<PointId> window_points(const MetricSpace& space, const Window& w);

// Distance with membership checks on both points.
Rational base_distance(const MetricSpace& space, const PointId& x,
                       const PointId& y);

class PointSet {
 public:
  using Predicate = std::function<bool(const MetricSpace&, const PointId&)>;

  PointSet() = default;
  static PointSet from_predicate(std::string name, Predicate pred);
  static PointSet from_points(std::vector<PointId> points, std::string name);

  bool contains(const MetricSpace& space, const PointId& p) const;
  PointSet complement() const;
  const std::string& name() const { return name_; }

  bool is_explicit() const { return explicit_ != nullptr; }
  // Sorted; only for explicit sets.
  const std::vector<PointId>& points() const { return *explicit_; }

 private:
  std::string name_;
  Predicate pred_;
  std::shared_ptr<const std::vector<PointId>> explicit_;
};

// Set mini-language: all, none, evens, odds, squares, pow2, pow4, 2pow4,
// mod:M:R, le:V, ge:V, plus, minus, set:P;P;..., not:SPEC, and:S1&S2.
// Numeric tests use the point's value on one-dimensional spaces.
PointSet parse_point_set(const MetricSpace& space, std::string_view spec);

struct SetDistance {
  Rational value;
  bool exact = false;
  // Radius from which the value is certified.
  Rational required_radius;
};

// min over A inside the window, certified when the ball of that radius
// around x lies inside the window. Throws InconclusiveError if A misses W.
SetDistance dist_to_set(const MetricSpace& space, const PointId& x,
                        const PointSet& a, const Window& w);

// Exact d(x, A) when it does not exceed cap, by searching growing balls.
std::optional<Rational> nearest_distance(const MetricSpace& space,
                                         const PointId& x, const PointSet& a,
                                         const Rational& cap);

// Window points at distance <= r from A. Always exact: membership of each
// point is decided on its own ball of radius r.
PointSet neighborhood(const MetricSpace& space, const PointSet& a,
                      const Rational& r, const Window& w);

}  // namespace coarse

template <>
struct std::hash<coarse::PointId> {
  std::size_t operator()(const coarse::PointId& p) const {
    return coarse::PointIdHash{}(p);
  }
};

#endif  // COARSE_SPACE_HPP_
