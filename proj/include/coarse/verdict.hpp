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

#ifndef COARSE_VERDICT_HPP_
#define COARSE_VERDICT_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coarse/rational.hpp"

namespace coarse {

enum class Status { kCertifiedOnWindow, kFalsified, kInconclusive };

std::string to_string(Status s);
Status status_from_string(const std::string& s);

// Witness kinds: "affine" (alpha, beta), "tabulated" (table n -> phi(n)),
// "power_law", "log", "type_i" (core n, table m -> k), "zero_bound"
// (table n -> radius, optional alpha/beta), "escape" (rows of radius,
// point label, level, witnessed value).
struct Witness {
  std::string kind;
  std::map<std::string, Rational> params;
  std::vector<std::pair<std::int64_t, Rational>> table;
  std::vector<std::vector<std::string>> rows;

  bool operator==(const Witness&) const = default;
};

struct Series {
  std::string name;
  std::vector<std::pair<Rational, Rational>> points;

  bool operator==(const Series&) const = default;
};

struct Verdict {
  Status status = Status::kInconclusive;
  std::string claim;
  std::string label;
  std::optional<Witness> witness;
  std::optional<std::string> counterexample;
  std::vector<Series> diagnostics;
  Rational window_radius;
  std::string trend;

  bool certified() const { return status == Status::kCertifiedOnWindow; }
  bool operator==(const Verdict&) const = default;
};

Witness affine_witness(std::int64_t alpha, std::int64_t beta);

}  // namespace coarse

#endif  // COARSE_VERDICT_HPP_
