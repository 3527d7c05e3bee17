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

#ifndef COARSE_IDEALS_HPP_
#define COARSE_IDEALS_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "coarse/asymptotics.hpp"
#include "coarse/projection.hpp"

namespace coarse {

// u_n(x) = max(0, 1 - d_X(x, A_{2n})).
struct ApproximateUnit {
  LevelFunction source;

  Rational operator()(std::int64_t n, const PointId& x) const;
};

Rational unit_eval(const ApproximateUnit& u, std::int64_t n, const PointId& x, const Window& w);

struct AuReport {
  bool au1 = true;
  bool monotone = true;
  bool au2_relaxed = true;
  std::size_t strict_count = 0;
  std::vector<std::string> strict_violations;  // first few pairs with d(x, y) = 1
  std::string first_violation;
  bool pass() const { return au1 && monotone && au2_relaxed; }
};

AuReport check_au(const ApproximateUnit& u, const Window& w, std::int64_t n_max = 6);

using UnitFn = std::function<Rational(const PointId&)>;

UnitFn unit_meet(const ApproximateUnit& u, const ApproximateUnit& v, std::int64_t n);
UnitFn unit_join(const ApproximateUnit& u, const ApproximateUnit& v, std::int64_t n);

struct LevelSetReport {
  bool meet_ok = true;   // {w_n = 1} = A_{2n} ^ B_{2n}
  bool join_ok = true;   // A_{2n} v B_{2n} within {t_n = 1} within A_{2n+2} v B_{2n+2}
  std::string first_violation;
  bool pass() const { return meet_ok && join_ok; }
};

LevelSetReport level_set_identities(const ApproximateUnit& u, const ApproximateUnit& v,
                                    std::int64_t n, const Window& w);

// min{n >= 1 : u_n(x) = 1}.
LevelFunction recovered_levels(const ApproximateUnit& u);

struct RecoveryReport {
  bool pass = true;
  TransferFunction forward, backward;  // source to recovered and back
  std::string first_violation;
};

// Both transfers satisfy T(n) <= 2n + 2 for n <= n_max.
RecoveryReport check_recovery(const ApproximateUnit& u, const Window& w,
                              std::int64_t n_max = 16);

}  // namespace coarse

#endif  // COARSE_IDEALS_HPP_
