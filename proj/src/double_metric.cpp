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

#include "coarse/double_metric.hpp"

#include <map>
#include <mutex>
#include <unordered_map>

#include "coarse/errors.hpp"

namespace coarse {
namespace {

bool in_window(const MetricSpace& s, const Window& w, const PointId& p) {
  return s.distance(w.base, p) <= w.radius;
}

// Window points within `bound` of center.
std::vector<PointId> candidates(const MetricSpace& s, const Window& w,
                                const PointId& center, const Rational& bound) {
  std::vector<PointId> out;
  if (bound.sign() < 0) return out;
  if (bound <= w.radius) {
    for (const auto& p : s.ball(center, bound)) {
      if (in_window(s, w, p)) out.push_back(p);
    }
  } else {
    for (const auto& p : window_points(s, w)) {
      if (s.distance(center, p) <= bound) out.push_back(p);
    }
  }
  return out;
}

void absorb(KernelValue& acc, const KernelValue& v) {
  acc.exact = acc.exact && v.exact;
  acc.certifiable = acc.certifiable && v.certifiable;
  acc.required_radius = max(acc.required_radius, v.required_radius);
}

// Thread-safe memo keyed by point and window. A few windows are kept so
// that certification retries at growing radii do not evict each other.
class ValueCache {
 public:
  template <class F>
  KernelValue get(const PointId& p, const Window& w, F compute) const {
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto slot = slots_.find({w.radius, w.base});
      if (slot != slots_.end()) {
        auto it = slot->second.find(p);
        if (it != slot->second.end()) return it->second;
      }
    }
    KernelValue v = compute();
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_pair(w.radius, w.base);
    if (!slots_.count(key) && slots_.size() >= kSlots) slots_.clear();
    auto& map = slots_[key];
    if (map.size() > (1u << 20)) map.clear();
    map.emplace(p, v);
    return v;
  }

 private:
  static constexpr std::size_t kSlots = 8;
  mutable std::mutex mu_;
  mutable std::map<std::pair<Rational, PointId>,
                   std::unordered_map<PointId, KernelValue, PointIdHash>>
      slots_;
};

// Thread-safe memo of a window-independent per-point value.
class PointCache {
 public:
  template <class F>
  Rational get(const PointId& p, F compute) const {
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = map_.find(p);
      if (it != map_.end()) return it->second;
    }
    Rational v = compute();
    std::lock_guard<std::mutex> lock(mu_);
    if (map_.size() > (1u << 20)) map_.clear();
    map_.emplace(p, v);
    return v;
  }

 private:
  mutable std::mutex mu_;
  mutable std::unordered_map<PointId, Rational> map_;
};

class DeltaKernel : public Kernel {
 public:
  DeltaKernel(SpacePtr s, DeltaFunction delta)
      : Kernel(std::move(s)), delta_(std::move(delta)) {
    if (delta_.floor.sign() <= 0) {
      throw DomainError("delta function needs a positive floor");
    }
  }
  std::string kind() const override { return "delta"; }
  std::string describe() const override { return "delta[" + delta_.name + "]"; }
  LowerBound lower_bound() const override { return {true, delta_.floor}; }
  bool symmetric() const override { return true; }
  const DeltaFunction& delta() const { return delta_; }

  KernelValue delta_at(const PointId& u, const Window& w) const {
    static const Window kAnyWindow{Rational(-1), PointId{}};
    return cache_.get(u, delta_.window_independent ? kAnyWindow : w, [&] {
      KernelValue v = delta_.fn(u, w);
      if (v.value < delta_.floor) {
        throw DomainError("delta " + delta_.name + " is below its floor " +
                          delta_.floor.str() + " at " + space()->label(u));
      }
      return v;
    });
  }

  KernelValue eval(const PointId& x, const PointId& y,
                   const Window& w) const override {
    const MetricSpace& s = *space();
    KernelValue dx = delta_at(x, w), dy = delta_at(y, w);
    Rational dxy = s.distance(x, y);
    KernelValue out;
    out.value = min(dx.value, dy.value) + dxy;
    // Any u outside this bound costs more than the u = x or u = y candidate.
    Rational bound = out.value - delta_.floor;
    out.required_radius = s.distance(w.base, x) + bound;
    out.exact = out.required_radius <= w.radius;
    absorb(out, dx);
    absorb(out, dy);
    for (const auto& u : candidates(s, w, x, bound)) {
      Rational path = s.distance(x, u) + s.distance(u, y);
      if (path > bound) continue;
      KernelValue du = delta_at(u, w);
      absorb(out, du);
      Rational v = path + du.value;
      if (v < out.value) out.value = v;
    }
    return out;
  }

  KernelValue brute_force(const PointId& x, const PointId& y,
                          const Window& w) const override {
    const MetricSpace& s = *space();
    std::optional<Rational> best;
    for (const auto& u : window_points(s, w)) {
      Rational v = s.distance(x, u) + delta_.fn(u, w).value + s.distance(u, y);
      if (!best || v < *best) best = v;
    }
    KernelValue out;
    out.value = *best;
    out.exact = false;
    return out;
  }

 private:
  DeltaFunction delta_;
  ValueCache cache_;
};

class MinGlueKernel : public DeltaKernel {
 public:
  MinGlueKernel(SpacePtr s, DeltaFunction delta, std::string name)
      : DeltaKernel(std::move(s), std::move(delta)), name_(std::move(name)) {}
  std::string kind() const override { return "minglue"; }
  std::string describe() const override { return name_; }

 private:
  std::string name_;
};

class ZeroAtKernel : public Kernel {
 public:
  ZeroAtKernel(SpacePtr s, PointId x0) : Kernel(std::move(s)), x0_(x0) {
    space()->require(x0_);
  }
  std::string kind() const override { return "zero_at"; }
  std::string describe() const override {
    return "zero_at(" + space()->label(x0_) + ")";
  }
  LowerBound lower_bound() const override { return {true, 1}; }
  bool symmetric() const override { return true; }
  const PointId& x0() const { return x0_; }
  KernelValue eval(const PointId& x, const PointId& y,
                   const Window&) const override {
    const MetricSpace& s = *space();
    return {s.distance(x, x0_) + 1 + s.distance(x0_, y), true, 0, true};
  }
  std::optional<KernelValue> closed_dist_to_copy(const PointId& x,
                                                 const Window&) const override {
    return KernelValue{space()->distance(x, x0_) + 1, true, 0, true};
  }

 private:
  PointId x0_;
};

class SubsetKernel : public Kernel {
 public:
  SubsetKernel(SpacePtr s, PointSet a) : Kernel(std::move(s)), a_(std::move(a)) {
    auto d = nearest_distance(*space(), space()->basepoint(), a_, Rational(1 << 20));
    if (!d) throw DomainError("subset " + a_.name() + " is empty near the basepoint");
    base_to_set_ = *d;
  }
  std::string kind() const override { return "subset"; }
  std::string describe() const override { return "b[" + a_.name() + "]"; }
  LowerBound lower_bound() const override { return {false, 1}; }
  bool symmetric() const override { return true; }
  const PointSet& set() const { return a_; }

  Rational dist(const PointId& x) const {
    return cache_.get(x, [&] {
      // d(x,A) <= d(x,b) + d(b,A), so this search always succeeds.
      Rational cap = space()->distance(x, space()->basepoint()) + base_to_set_;
      return *nearest_distance(*space(), x, a_, cap);
    });
  }

  KernelValue eval(const PointId& x, const PointId& y,
                   const Window&) const override {
    return {dist(x) + 1 + dist(y), true, 0, true};
  }
  std::optional<KernelValue> closed_dist_to_copy(const PointId& x,
                                                 const Window&) const override {
    return KernelValue{dist(x) + 1, true, 0, true};
  }

 private:
  PointSet a_;
  Rational base_to_set_;
  PointCache cache_;
};

class ExpressionKernel : public Kernel {
 public:
  ExpressionKernel(SpacePtr s, Expression e, LowerBound b)
      : Kernel(std::move(s)), expr_(std::move(e)), bound_(std::move(b)) {}
  std::string kind() const override { return "expr"; }
  std::string describe() const override { return "expr[" + expr_.source() + "]"; }
  LowerBound lower_bound() const override { return bound_; }
  const Expression& expression() const { return expr_; }
  KernelValue eval(const PointId& x, const PointId& y,
                   const Window&) const override {
    ExprEnv env;
    space()->bind(env, "x", x);
    space()->bind(env, "y", y);
    env["dxy"] = space()->distance(x, y);
    return {expr_.eval(env), true, 0, true};
  }

 private:
  Expression expr_;
  LowerBound bound_;
};

class AdjointKernel : public Kernel {
 public:
  explicit AdjointKernel(DoubleMetric d) : Kernel(d.space()), d_(std::move(d)) {}
  std::string kind() const override { return "adjoint"; }
  std::string describe() const override { return "adjoint(" + d_.describe() + ")"; }
  LowerBound lower_bound() const override { return d_.lower_bound(); }
  bool symmetric() const override { return d_.kernel().symmetric(); }
  const DoubleMetric& inner() const { return d_; }
  KernelValue eval(const PointId& x, const PointId& y,
                   const Window& w) const override {
    return d_.kernel().eval(y, x, w);
  }
  KernelValue brute_force(const PointId& x, const PointId& y,
                          const Window& w) const override {
    return d_.kernel().brute_force(y, x, w);
  }

 private:
  DoubleMetric d_;
};

class ComposeKernel : public Kernel {
 public:
  ComposeKernel(DoubleMetric d, DoubleMetric rho)
      : Kernel(d.space()), d_(std::move(d)), rho_(std::move(rho)) {
    if (d_.space() != rho_.space()) {
      throw DomainError("composition of metrics on different spaces");
    }
  }
  std::string kind() const override { return "compose"; }
  std::string describe() const override {
    return "compose(" + d_.describe() + "," + rho_.describe() + ")";
  }
  LowerBound lower_bound() const override {
    LowerBound a = d_.lower_bound(), b = rho_.lower_bound();
    return {a.coercive && b.coercive, a.floor + b.floor};
  }
  const DoubleMetric& first() const { return d_; }
  const DoubleMetric& second() const { return rho_; }

  KernelValue eval(const PointId& x, const PointId& z,
                   const Window& w) const override {
    const MetricSpace& s = *space();
    const Kernel& dk = d_.kernel();
    const Kernel& rk = rho_.kernel();
    LowerBound ld = d_.lower_bound(), lr = rho_.lower_bound();

    KernelValue out;
    auto consider = [&](const PointId& y) {
      KernelValue a = dk.eval(x, y, w);
      KernelValue b = rk.eval(y, z, w);
      absorb(out, a);
      absorb(out, b);
      Rational v = a.value + b.value;
      if (v < out.value) out.value = v;
    };
    {
      KernelValue a = dk.eval(x, x, w), b = rk.eval(x, z, w);
      out.value = a.value + b.value;
      out.exact = a.exact && b.exact;
      out.certifiable = a.certifiable && b.certifiable;
      out.required_radius = max(a.required_radius, b.required_radius);
    }
    consider(z);

    std::vector<PointId> ys;
    if (ld.coercive) {
      Rational bound = out.value - ld.floor - lr.floor;
      Rational req = s.distance(w.base, x) + bound;
      out.required_radius = max(out.required_radius, req);
      if (req > w.radius) out.exact = false;
      ys = candidates(s, w, x, bound);
    } else if (lr.coercive) {
      Rational bound = out.value - lr.floor - ld.floor;
      Rational req = s.distance(w.base, z) + bound;
      out.required_radius = max(out.required_radius, req);
      if (req > w.radius) out.exact = false;
      ys = candidates(s, w, z, bound);
    } else {
      // Nothing controls y: the window minimum is only an upper bound.
      out.exact = false;
      out.certifiable = false;
      ys = window_points(s, w);
    }
    for (const auto& y : ys) consider(y);
    return out;
  }

  KernelValue brute_force(const PointId& x, const PointId& z,
                          const Window& w) const override {
    std::optional<Rational> best;
    for (const auto& y : window_points(*space(), w)) {
      Rational v = d_.kernel().brute_force(x, y, w).value +
                   rho_.kernel().brute_force(y, z, w).value;
      if (!best || v < *best) best = v;
    }
    return {*best, false, 0, true};
  }

 private:
  DoubleMetric d_;
  DoubleMetric rho_;
};

class MaxKernel : public Kernel {
 public:
  MaxKernel(DoubleMetric a, DoubleMetric b)
      : Kernel(a.space()), a_(std::move(a)), b_(std::move(b)) {
    if (a_.space() != b_.space()) throw DomainError("max of metrics on different spaces");
  }
  std::string kind() const override { return "max"; }
  std::string describe() const override {
    return "max(" + a_.describe() + "," + b_.describe() + ")";
  }
  LowerBound lower_bound() const override {
    LowerBound la = a_.lower_bound(), lb = b_.lower_bound();
    if (la.coercive && lb.coercive) return {true, max(la.floor, lb.floor)};
    if (la.coercive) return la;
    if (lb.coercive) return lb;
    return {false, max(la.floor, lb.floor)};
  }
  bool symmetric() const override {
    return a_.kernel().symmetric() && b_.kernel().symmetric();
  }
  const DoubleMetric& first() const { return a_; }
  const DoubleMetric& second() const { return b_; }
  KernelValue eval(const PointId& x, const PointId& y,
                   const Window& w) const override {
    KernelValue p = a_.kernel().eval(x, y, w), q = b_.kernel().eval(x, y, w);
    KernelValue out = p;
    out.value = max(p.value, q.value);
    absorb(out, q);
    return out;
  }
  KernelValue brute_force(const PointId& x, const PointId& y,
                          const Window& w) const override {
    return {max(a_.kernel().brute_force(x, y, w).value,
                b_.kernel().brute_force(x, y, w).value),
            false, 0, true};
  }

 private:
  DoubleMetric a_;
  DoubleMetric b_;
};

}  // namespace

DeltaFunction delta_from_expression(SpacePtr space, const Expression& e) {
  DeltaFunction d;
  d.name = e.source();
  d.expr = e;
  d.window_independent = true;
  d.fn = [space, e](const PointId& u, const Window&) {
    ExprEnv env;
    space->bind(env, "x", u);
    return KernelValue{e.eval(env), true, 0, true};
  };
  return d;
}

KernelValue DoubleMetric::eval(const PointId& x, const PointId& y,
                               const Window& w) const {
  space()->require(x);
  space()->require(y);
  return kernel_->eval(x, y, w);
}

DoubleMetric delta_generated(SpacePtr space, DeltaFunction delta) {
  return DoubleMetric(std::make_shared<DeltaKernel>(std::move(space), std::move(delta)));
}

DoubleMetric zero_at(SpacePtr space, const PointId& x0) {
  return DoubleMetric(std::make_shared<ZeroAtKernel>(std::move(space), x0));
}

DoubleMetric subset_metric(SpacePtr space, const PointSet& a) {
  return DoubleMetric(std::make_shared<SubsetKernel>(std::move(space), a));
}

DoubleMetric expression_kernel(SpacePtr space, const Expression& e,
                               LowerBound bound) {
  return DoubleMetric(std::make_shared<ExpressionKernel>(std::move(space), e, bound));
}

DoubleMetric adjoint(const DoubleMetric& d) {
  if (auto* a = dynamic_cast<const AdjointKernel*>(&d.kernel())) return a->inner();
  return DoubleMetric(std::make_shared<AdjointKernel>(d));
}

DoubleMetric compose(const DoubleMetric& d, const DoubleMetric& rho) {
  return DoubleMetric(std::make_shared<ComposeKernel>(d, rho));
}

DoubleMetric pointwise_max(const DoubleMetric& d1, const DoubleMetric& d2) {
  return DoubleMetric(std::make_shared<MaxKernel>(d1, d2));
}

DoubleMetric min_glue(const DoubleMetric& d1, const DoubleMetric& d2) {
  if (d1.space() != d2.space()) throw DomainError("join of metrics on different spaces");
  DeltaFunction delta;
  delta.name = "min(" + d1.describe() + "," + d2.describe() + ")";
  delta.floor = min(d1.lower_bound().floor, d2.lower_bound().floor);
  delta.fn = [d1, d2](const PointId& u, const Window& w) {
    KernelValue a = d1.kernel().eval(u, u, w), b = d2.kernel().eval(u, u, w);
    KernelValue out = a;
    out.value = min(a.value, b.value);
    absorb(out, b);
    return out;
  };
  return DoubleMetric(std::make_shared<MinGlueKernel>(
      d1.space(), std::move(delta),
      "minglue(" + d1.describe() + "," + d2.describe() + ")"));
}

KernelValue eval_certified(const DoubleMetric& d, const PointId& x,
                           const PointId& y, const Window& w) {
  Window cur = w;
  for (int i = 0; i < 48; ++i) {
    KernelValue v = d.eval(x, y, cur);
    if (v.exact) return v;
    if (!v.certifiable) {
      throw InconclusiveError("value of " + d.describe() +
                                  " cannot be certified on any window",
                              cur.radius);
    }
    cur.radius = max(v.required_radius, cur.radius * 2 + 1);
  }
  throw InconclusiveError("value of " + d.describe() + " not certified",
                          cur.radius);
}

KernelValue dist_to_copy(const DoubleMetric& d, const PointId& x,
                         const Window& w) {
  const MetricSpace& s = *d.space();
  s.require(x);
  if (auto v = d.kernel().closed_dist_to_copy(x, w)) return *v;
  KernelValue out = d.kernel().eval(x, x, w);
  LowerBound lb = d.lower_bound();
  std::vector<PointId> ys;
  if (lb.coercive) {
    Rational bound = out.value - lb.floor;
    Rational req = s.distance(w.base, x) + bound;
    out.required_radius = max(out.required_radius, req);
    if (req > w.radius) out.exact = false;
    ys = candidates(s, w, x, bound);
  } else {
    out.exact = false;
    out.certifiable = false;
    ys = window_points(s, w);
  }
  for (const auto& y : ys) {
    KernelValue v = d.kernel().eval(x, y, w);
    absorb(out, v);
    if (v.value < out.value) out.value = v.value;
  }
  return out;
}

KernelValue dist_to_copy_certified(const DoubleMetric& d, const PointId& x,
                                   const Window& w) {
  Window cur = w;
  for (int i = 0; i < 48; ++i) {
    KernelValue v = dist_to_copy(d, x, cur);
    if (v.exact) return v;
    if (!v.certifiable) {
      throw InconclusiveError("d(x,X') for " + d.describe() +
                                  " cannot be certified on any window",
                              cur.radius);
    }
    cur.radius = max(v.required_radius, cur.radius * 2 + 1);
  }
  throw InconclusiveError("d(x,X') for " + d.describe() + " not certified",
                          cur.radius);
}

KernelValue brute_force_eval(const DoubleMetric& d, const PointId& x,
                             const PointId& y, const Window& w) {
  return d.kernel().brute_force(x, y, w);
}

namespace {

// Big integers with a floating shadow; exact arithmetic only near ties.
struct Filtered {
  BigInt v;
  long double f;
};

bool exceeds(std::int64_t a, std::int64_t b, std::int64_t c) { return a > b + c; }

bool exceeds(const Filtered& a, const Filtered& b, const Filtered& c) {
  long double sum = b.f + c.f;
  if (a.f < sum * (1 - 1e-15L)) return false;
  if (a.f > sum * (1 + 1e-15L)) return true;
  return a.v > b.v + c.v;
}

bool positive(std::int64_t a) { return a > 0; }
bool positive(const Filtered& a) { return a.v > 0; }

template <class T>
void run_triangles(const std::vector<std::vector<T>>& k,
                   const std::vector<std::vector<T>>& dx,
                   const std::vector<PointId>& pts, const MetricSpace& s,
                   AxiomReport& r) {
  const std::size_t n = pts.size();
  auto fail = [&](const std::string& what) {
    if (r.pass) {
      r.pass = false;
      r.first_violation = what;
    }
  };
  auto name = [&](std::size_t i) { return s.label(pts[i]); };
  for (std::size_t i = 0; i < n && r.pass; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      ++r.checks;
      if (!positive(k[i][j])) {
        fail("(d2) d(" + name(i) + "," + name(j) + "') is not positive");
        break;
      }
    }
  }
  // d_X(x1,x2) <= d(x1,y') + d(x2,y')
  for (std::size_t a = 0; a < n && r.pass; ++a) {
    for (std::size_t b = 0; b < n && r.pass; ++b) {
      for (std::size_t y = 0; y < n; ++y) {
        ++r.checks;
        if (exceeds(dx[a][b], k[a][y], k[b][y])) {
          fail("triangle d_X(x1,x2) <= d(x1,y')+d(x2,y') fails at (x1=" +
               name(a) + ",x2=" + name(b) + ",y=" + name(y) + ")");
          break;
        }
      }
    }
  }
  // d(x1,y') <= d_X(x1,x2) + d(x2,y')
  for (std::size_t a = 0; a < n && r.pass; ++a) {
    for (std::size_t b = 0; b < n && r.pass; ++b) {
      for (std::size_t y = 0; y < n; ++y) {
        ++r.checks;
        if (exceeds(k[a][y], dx[a][b], k[b][y])) {
          fail("triangle d(x1,y') <= d_X(x1,x2)+d(x2,y') fails at (x1=" +
               name(a) + ",x2=" + name(b) + ",y=" + name(y) + ")");
          break;
        }
      }
    }
  }
  // The same two inequalities with the roles of the copies exchanged.
  for (std::size_t x = 0; x < n && r.pass; ++x) {
    for (std::size_t a = 0; a < n && r.pass; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        ++r.checks;
        if (exceeds(dx[a][b], k[x][a], k[x][b])) {
          fail("triangle d_X(y1,y2) <= d(x,y1')+d(x,y2') fails at (x=" +
               name(x) + ",y1=" + name(a) + ",y2=" + name(b) + ")");
          break;
        }
        if (exceeds(k[x][a], k[x][b], dx[b][a])) {
          fail("triangle d(x,y1') <= d(x,y2')+d_X(y2,y1) fails at (x=" +
               name(x) + ",y1=" + name(a) + ",y2=" + name(b) + ")");
          break;
        }
      }
    }
  }
}

}  // namespace

AxiomReport check_axioms(const DoubleMetric& d, const Window& w) {
  const MetricSpace& s = *d.space();
  std::vector<PointId> pts = window_points(s, w);
  const std::size_t n = pts.size();
  AxiomReport r;
  r.points = n;
  std::vector<std::vector<Rational>> k(n, std::vector<Rational>(n));
  std::vector<std::vector<Rational>> dx(n, std::vector<Rational>(n));
  BigInt lcm = 1;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      KernelValue v;
      try {
        v = eval_certified(d, pts[i], pts[j], w);
      } catch (const InconclusiveError&) {
        v = d.eval(pts[i], pts[j], w);
        r.exact = false;
      }
      k[i][j] = v.value;
      dx[i][j] = s.distance(pts[i], pts[j]);
      if (!k[i][j].is_integer()) lcm = boost::multiprecision::lcm(lcm, k[i][j].denominator());
      if (!dx[i][j].is_integer()) lcm = boost::multiprecision::lcm(lcm, dx[i][j].denominator());
    }
  }
  // Compare on a common integer scale; 64-bit when everything fits.
  bool small = true;
  static const Rational kLimit = Rational::pow2(60);
  Rational scale(lcm);
  for (std::size_t i = 0; i < n && small; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if ((k[i][j] * scale).abs() >= kLimit || (dx[i][j] * scale).abs() >= kLimit) {
        small = false;
        break;
      }
    }
  }
  if (small) {
    std::vector<std::vector<std::int64_t>> ki(n, std::vector<std::int64_t>(n)), di = ki;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        ki[i][j] = (k[i][j] * scale).to_int64();
        di[i][j] = (dx[i][j] * scale).to_int64();
      }
    }
    run_triangles(ki, di, pts, s, r);
  } else {
    std::vector<std::vector<Filtered>> kb(n, std::vector<Filtered>(n)), db = kb;
    auto shadow = [](const Rational& q) {
      BigInt v = q.numerator();
      return Filtered{v, v.convert_to<long double>()};
    };
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        kb[i][j] = shadow(k[i][j] * scale);
        db[i][j] = shadow(dx[i][j] * scale);
      }
    }
    run_triangles(kb, db, pts, s, r);
  }
  return r;
}

}  // namespace coarse
