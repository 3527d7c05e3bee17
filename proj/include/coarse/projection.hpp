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

#ifndef COARSE_PROJECTION_HPP_
#define COARSE_PROJECTION_HPP_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "coarse/double_metric.hpp"
#include "coarse/space.hpp"
#include "coarse/verdict.hpp"

namespace coarse {

// Level of a point that lies in no A_n reachable by the search.
inline constexpr std::int64_t kInfiniteLevel = INT64_MAX / 4;

// lambda(x) = min{n : x in A_n} for an expanding sequence {A_n}. Values are
// computed lazily and memoized; copies share the memo.
class LevelFunction {
 public:
  using Fn = std::function<std::int64_t(const PointId&)>;

  LevelFunction() = default;
  LevelFunction(SpacePtr space, std::string name, std::string provenance, Fn fn);

  std::int64_t operator()(const PointId& p) const;

  const SpacePtr& space() const { return space_; }
  const std::string& name() const { return name_; }
  const std::string& provenance() const { return provenance_; }

  // A_n as a point set.
  PointSet sublevel(std::int64_t n) const;

  // Closed form used outside a serialized table, when known.
  std::optional<Expression> tail;

 private:
  struct Memo;
  SpacePtr space_;
  std::string name_;
  std::string provenance_;
  Fn fn_;
  std::shared_ptr<Memo> memo_;
};

LevelFunction unit_levels(SpacePtr space);
// Levels of the zero projection: 2 d_X(x, x0) + 1.
LevelFunction zero_levels(SpacePtr space, const PointId& x0);
// The sequence N_{n/2}(A): max(1, ceil(2 d_X(x, A))).
LevelFunction levels_from_subset(SpacePtr space, const PointSet& a);
// ceil of an expression in x (x0, x1, rx), at least 1.
LevelFunction levels_from_expression(SpacePtr space, const Expression& e);
LevelFunction levels_from_function(SpacePtr space, std::string name,
                                   LevelFunction::Fn fn);
// Window table with a closed-form tail outside it.
LevelFunction levels_from_table(SpacePtr space, std::string name,
                                std::vector<std::pair<PointId, std::int64_t>> table,
                                std::optional<Expression> tail);

// min{n : d(x,x') <= n}, certified per point.
LevelFunction levels_from_metric(const DoubleMetric& d, const Window& w);

DeltaFunction delta_from_levels(const LevelFunction& l);
DoubleMetric metric_from_levels(const LevelFunction& l);

LevelFunction meet(const LevelFunction& e, const LevelFunction& f);
LevelFunction join(const LevelFunction& e, const LevelFunction& f);

struct LevelReport {
  bool pass = true;
  std::string first_violation;
};
// (e1), (e2), (e3) on the window.
LevelReport check_levels(const LevelFunction& l, const Window& w);

// Levels of d(x, X') and of d(x', X). With require_exact = false the
// window minimum is accepted where no certificate exists.
LevelFunction source_projection(const DoubleMetric& d, const Window& w,
                                bool require_exact = true);
LevelFunction range_projection(const DoubleMetric& d, const Window& w,
                               bool require_exact = true);

struct WitnessGrid {
  std::int64_t alpha_max = 8;
  std::int64_t beta_max = 8;
};

// -alpha + d(x,x')/beta <= d(x,X') on every window point.
Verdict projection_criterion(const DoubleMetric& d, const Window& w,
                             const WitnessGrid& grid = {});

// A function in C_m(X): positive and 2-Lipschitz.
struct CmFunction {
  SpacePtr space;
  std::string name;
  std::function<Rational(const PointId&)> f;
};

struct CmReport {
  bool pass = true;
  Rational epsilon;  // minimum over the window
  std::string first_violation;
};

CmFunction F_map(const DoubleMetric& d, const Window& w);
CmFunction cm_max(const CmFunction& f, const CmFunction& g);
CmFunction cm_min(const CmFunction& f, const CmFunction& g);
CmReport check_Cm(const CmFunction& f, const Window& w);

// PointwiseMax and MinGlue of two projections; both operands must be
// certified by projection_criterion on w.
DoubleMetric metric_meet(const DoubleMetric& d1, const DoubleMetric& d2,
                         const Window& w, const WitnessGrid& grid = {});
DoubleMetric metric_join(const DoubleMetric& d1, const DoubleMetric& d2,
                         const Window& w, const WitnessGrid& grid = {});

struct TypeParams {
  std::int64_t n_max = 8;
  std::int64_t k_max = 64;
  std::int64_t m_max = 24;
};

// Type I is certified for a core n when every A_m (m <= m_max) lies in
// N_k(A_n) with the same k table at every radius. Type II is only
// evidenced: for every n some required k grows strictly across radii.
Verdict classify_type(const LevelFunction& e, const std::vector<Rational>& radii,
                      const TypeParams& params = {});

}  // namespace coarse

#endif  // COARSE_PROJECTION_HPP_
