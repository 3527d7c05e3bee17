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

#ifndef COARSE_WITNESS_CHECK_HPP_
#define COARSE_WITNESS_CHECK_HPP_

#include <string>

#include "coarse/double_metric.hpp"
#include "coarse/projection.hpp"
#include "coarse/verdict.hpp"

namespace coarse {

// Re-validates a certified verdict by substituting its witness into the
// defining inequalities, point by point, on the verdict's window. Nothing
// here reuses the searchers' tables.
struct CheckResult {
  bool ok = true;
  std::string detail;
};

CheckResult check_equivalence_witness(const Verdict& v, const LevelFunction& e1,
                                      const LevelFunction& e2);
CheckResult check_zero_witness(const Verdict& v, const LevelFunction& e);
CheckResult check_projection_witness(const Verdict& v, const DoubleMetric& d);
CheckResult check_type_witness(const Verdict& v, const LevelFunction& e);
// Escape witnesses list points whose levels grow across the sweep.
CheckResult check_escape_witness(const Verdict& v, const LevelFunction& from,
                                 const LevelFunction& to);

}  // namespace coarse

#endif  // COARSE_WITNESS_CHECK_HPP_
