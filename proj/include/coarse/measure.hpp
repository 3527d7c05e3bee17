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

#ifndef COARSE_MEASURE_HPP_
#define COARSE_MEASURE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coarse/expr.hpp"
#include "coarse/projection.hpp"

namespace coarse {

// Shell counts the annulus R/2 < d(x0, x) <= R, Natural the ball B_R(x0),
// Weighted the ball with a nonnegative weight expression in x.
enum class DensityKind { kShell, kNatural, kWeighted };

struct DensityMeasure {
  DensityKind kind = DensityKind::kShell;
  std::optional<Expression> weight;

  static DensityMeasure shell() { return {}; }
  static DensityMeasure natural() { return {DensityKind::kNatural, std::nullopt}; }
  static DensityMeasure weighted(Expression w) { return {DensityKind::kWeighted, std::move(w)}; }
  static DensityMeasure parse(const std::string& text);
  std::string name() const;
};

struct Schedule {
  std::vector<Rational> radii;

  // r0, 2 r0, ..., 2^(steps-1) r0.
  static Schedule geometric(const Rational& r0 = 32, int steps = 6);
  // Index of the first radius in the tail (the last ceil(half)).
  std::size_t tail_start() const { return radii.size() / 2; }
};

inline const Rational kMeasureTolerance{1, 32};

struct DensityInterval {
  Rational lo, hi;
  std::vector<std::pair<Rational, Rational>> series;  // radius, value

  bool contains(const Rational& v) const { return lo <= v && v <= hi; }
  Rational width() const { return hi - lo; }
  std::string str() const;
};

// Tail min/max of a per-radius series.
DensityInterval interval_from_series(std::vector<std::pair<Rational, Rational>> series,
                                     const Schedule& schedule);

DensityInterval density(const MetricSpace& space, const DensityMeasure& mu, const PointSet& a,
                        const Schedule& schedule);

struct NuHat {
  DensityInterval interval;
  std::vector<DensityInterval> per_n;  // density of A_n, n = 1..n_max
  bool monotone = true;
};

NuHat nu_hat(const DensityMeasure& mu, const LevelFunction& e, std::int64_t n_max = 8,
             const Schedule& schedule = Schedule::geometric());

// Alternating sum over sigma_i of the formal sum e_1 + ... + e_k.
DensityInterval nu_bar(const DensityMeasure& mu, const std::vector<LevelFunction>& s,
                       std::int64_t n_max = 8,
                       const Schedule& schedule = Schedule::geometric());

struct ModularityReport {
  bool counts_exact = true;  // |A^B| + |AvB| = |A| + |B| for every radius and n
  bool interval_ok = true;
  bool complement_ok = true;
  std::string first_violation;
  DensityInterval lhs, rhs;  // nu(e^f) + nu(evf), nu(e) + nu(f)
  bool pass() const { return counts_exact && interval_ok && complement_ok; }
};

ModularityReport check_modularity(const DensityMeasure& mu, const LevelFunction& e,
                                  const LevelFunction& f, std::int64_t n_max = 8,
                                  const Schedule& schedule = Schedule::geometric());

struct Measure0Report {
  bool pass = false;
  DensityInterval direct;     // nu_hat(e)
  DensityInterval recovered;  // sup_n nu_hat of the levels of A_n
  std::vector<DensityInterval> per_n;
};

Measure0Report measure0_check(const DensityMeasure& mu, const LevelFunction& e,
                              std::int64_t n_max = 8,
                              const Schedule& schedule = Schedule::geometric());

}  // namespace coarse

#endif  // COARSE_MEASURE_HPP_
