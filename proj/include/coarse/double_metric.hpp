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

#ifndef COARSE_DOUBLE_METRIC_HPP_
#define COARSE_DOUBLE_METRIC_HPP_

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "coarse/expr.hpp"
#include "coarse/rational.hpp"
#include "coarse/space.hpp"

namespace coarse {

// A value computed on a window. When exact is false the value is the
// minimum over the window only, hence an upper bound for the true infimum.
struct KernelValue {
  Rational value;
  bool exact = true;
  Rational required_radius;
  // False when no window, however large, can certify the value (the
  // minimization variable is not controlled by any coercive bound).
  bool certifiable = true;
};

// Certified bound d(x,y') >= d_X(x,y) + floor (coercive) or
// d(x,y') >= floor (not coercive).
struct LowerBound {
  bool coercive = true;
  Rational floor = 1;
};

// u -> delta(u) >= floor. Level-derived and expression deltas are exact;
// deltas built from other kernels may depend on the window.
struct DeltaFunction {
  std::string name;
  Rational floor = 1;
  std::function<KernelValue(const PointId&, const Window&)> fn;
  std::optional<Expression> expr;
  // fn ignores its window argument, so values may be shared across windows.
  bool window_independent = false;
};

DeltaFunction delta_from_expression(SpacePtr space, const Expression& e);

class Kernel {
 public:
  explicit Kernel(SpacePtr space) : space_(std::move(space)) {}
  virtual ~Kernel() = default;

  virtual std::string kind() const = 0;
  virtual std::string describe() const = 0;
  virtual LowerBound lower_bound() const = 0;
  virtual KernelValue eval(const PointId& x, const PointId& y,
                           const Window& w) const = 0;
  // Closed form for d(x, X') when one is known.
  virtual std::optional<KernelValue> closed_dist_to_copy(const PointId&,
                                                         const Window&) const {
    return std::nullopt;
  }
  // Unpruned minimization over the whole window. Test oracle.
  virtual KernelValue brute_force(const PointId& x, const PointId& y,
                                  const Window& w) const {
    return eval(x, y, w);
  }
  // True when d(x,y') = d(y,x') holds by construction.
  virtual bool symmetric() const { return false; }

  const SpacePtr& space() const { return space_; }

 private:
  SpacePtr space_;
};

class DoubleMetric {
 public:
  DoubleMetric() = default;
  explicit DoubleMetric(std::shared_ptr<const Kernel> k) : kernel_(std::move(k)) {}

  const SpacePtr& space() const { return kernel_->space(); }
  const Kernel& kernel() const { return *kernel_; }
  const std::shared_ptr<const Kernel>& kernel_ptr() const { return kernel_; }
  std::string kind() const { return kernel_->kind(); }
  std::string describe() const { return kernel_->describe(); }
  LowerBound lower_bound() const { return kernel_->lower_bound(); }

  // d(x, y') minimized over the window, with its exactness flag.
  KernelValue eval(const PointId& x, const PointId& y, const Window& w) const;

 private:
  std::shared_ptr<const Kernel> kernel_;
};

DoubleMetric delta_generated(SpacePtr space, DeltaFunction delta);
DoubleMetric zero_at(SpacePtr space, const PointId& x0);
// b_A(x,y') = d_X(x,A) + 1 + d_X(y,A). Throws DomainError for empty A.
DoubleMetric subset_metric(SpacePtr space, const PointSet& a);
// Kernel from an expression in x.., y.. and dxy; the caller states the
// lower bound it guarantees.
DoubleMetric expression_kernel(SpacePtr space, const Expression& e,
                               LowerBound bound);
DoubleMetric adjoint(const DoubleMetric& d);
// (rho o d)(x,z) = inf_y [d(x,y') + rho(y,z')].
DoubleMetric compose(const DoubleMetric& d, const DoubleMetric& rho);
DoubleMetric pointwise_max(const DoubleMetric& d1, const DoubleMetric& d2);
// inf_u [d_X(x,u) + min(d1(u,u'), d2(u,u')) + d_X(u,y)].
DoubleMetric min_glue(const DoubleMetric& d1, const DoubleMetric& d2);

// Evaluates on growing windows until the value is certified.
KernelValue eval_certified(const DoubleMetric& d, const PointId& x,
                           const PointId& y, const Window& w);

// inf_y d(x, y').
KernelValue dist_to_copy(const DoubleMetric& d, const PointId& x,
                         const Window& w);
KernelValue dist_to_copy_certified(const DoubleMetric& d, const PointId& x,
                                   const Window& w);

// Minimum over all window points, no pruning. Test oracle.
KernelValue brute_force_eval(const DoubleMetric& d, const PointId& x,
                             const PointId& y, const Window& w);

struct AxiomReport {
  bool pass = true;
  // False when some kernel value could only be bounded on the window.
  bool exact = true;
  std::size_t points = 0;
  std::size_t checks = 0;
  std::string first_violation;
};

// (d1) holds structurally; checks (d2) and both mixed triangle
// inequalities on both copies, exhaustively over the window.
AxiomReport check_axioms(const DoubleMetric& d, const Window& w);

}  // namespace coarse

#endif  // COARSE_DOUBLE_METRIC_HPP_
