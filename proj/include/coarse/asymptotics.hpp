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

#ifndef COARSE_ASYMPTOTICS_HPP_
#define COARSE_ASYMPTOTICS_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "coarse/projection.hpp"
#include "coarse/verdict.hpp"

namespace coarse {

// T(n) = max{lambda2(x) : x in W, lambda1(x) <= n}, stored at the levels of
// lambda1 realized in W. T is a step function between them.
struct TransferFunction {
  std::vector<std::pair<std::int64_t, std::int64_t>> table;

  // nullopt when no window point has lambda1 <= n.
  std::optional<std::int64_t> at(std::int64_t n) const;
};

TransferFunction transfer(const LevelFunction& e1, const LevelFunction& e2,
                          const Window& w);

enum class Mode { kQuasi, kCoarse };
std::string to_string(Mode m);

// Radii of the stabilization sweep are factors of the window radius.
std::vector<Rational> default_sweep_factors();
std::vector<Rational> sweep_radii(const Window& w,
                                  const std::vector<Rational>& factors);

struct EquivalenceOptions {
  WitnessGrid grid;
  std::int64_t n_max = 6;  // domain of the tabulated coarse witness
  std::vector<Rational> factors = default_sweep_factors();
};

Verdict equivalent(const LevelFunction& e1, const LevelFunction& e2, Mode mode,
                   const Window& w, const EquivalenceOptions& opts = {});

// e below f: e equivalent to e ^ f.
Verdict precedes(const LevelFunction& e, const LevelFunction& f, Mode mode,
                 const Window& w, const EquivalenceOptions& opts = {});

struct ZeroOptions {
  WitnessGrid grid;
  std::int64_t n_max = 10;
  std::vector<Rational> factors = default_sweep_factors();
};

// Bounded A_n for every n <= n_max, with a stable bound across the sweep.
Verdict is_zero(const LevelFunction& e, Mode mode, const Window& w,
                const ZeroOptions& opts = {});

struct SweepReport {
  std::vector<Rational> radii;
  std::vector<Verdict> per_radius;
  std::string trend;
  Verdict final;
};

// Runs a claim per radius and reports how its witnesses evolve.
SweepReport sweep(const std::function<Verdict(const Window&)>& claim,
                  const MetricSpace& space, const std::vector<Rational>& radii);

}  // namespace coarse

#endif  // COARSE_ASYMPTOTICS_HPP_
