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

#ifndef COARSE_SERIALIZE_HPP_
#define COARSE_SERIALIZE_HPP_

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "coarse/boolean.hpp"
#include "coarse/double_metric.hpp"
#include "coarse/measure.hpp"
#include "coarse/projection.hpp"
#include "coarse/verdict.hpp"

namespace coarse {

using Json = nlohmann::json;

inline constexpr const char* kSchema = "coarse-double/1";
inline constexpr const char* kVersion = "0.1.0";

// Spaces: {"builtin": name} or {"points": [[c1,c2],...], "metric": ..., "table": [[...]]}.
SpacePtr space_from_json(const Json& j);
Json space_to_json(const MetricSpace& s);
// A built-in name, a JSON document, or @path to one.
SpacePtr load_space(const std::string& text);

// Kernels keep the document they were built from.
struct KernelSpec {
  Json doc;
  DoubleMetric metric;
};

// {"kind": "delta", "delta": expr} | {"kind": "zero_at", "point": p}
// | {"kind": "subset", "set": s} | {"kind": "levels", "levels": levels-doc}
// | {"kind": "expression", "expr": e, "coercive": b, "floor": q}
// | {"kind": "adjoint", "of": k} | {"kind": "compose"|"max"|"min_glue", "a": k, "b": k}.
// Invariants are rechecked on a probe window; violations throw DomainError.
KernelSpec kernel_from_json(const SpacePtr& space, const Json& j);
// Short forms: delta:E, zero:P, subset:S, proj:S, proj-expr:E, or a JSON document.
KernelSpec parse_kernel(const SpacePtr& space, const std::string& text);

// Level documents: {"subset": s} | {"expr": e} | {"unit": true} | {"zero": p}
// | {"meet": [a, b]} | {"join": [a, b]} | {"metric": k, "radius": r}
// | {"levels": [[point, level], ...], "tail": e}.
LevelFunction levels_from_json(const SpacePtr& space, const Json& j);
// Short forms: subset:S, expr:E, unit, zero, zero:P, or a JSON document.
LevelFunction parse_levels(const SpacePtr& space, const std::string& text);
// Tabulates the window; the closed-form tail is kept when known.
Json levels_to_json(const LevelFunction& l, const Window& w);

Json to_json(const Verdict& v);
Verdict verdict_from_json(const Json& j);

Json to_json(const DensityInterval& d);
Json measure_to_json(const DensityMeasure& mu, const NuHat& h);

Json algebra_to_json(const std::vector<LevelFunction>& gens,
                     const std::vector<AtomResult>& atoms,
                     const std::vector<TwoValuedHom>& homs);

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
  bool operator==(const Check&) const = default;
};

struct RunReport {
  std::string command;
  std::vector<Verdict> verdicts;
  std::vector<std::pair<std::string, DensityInterval>> intervals;
  std::vector<Check> checks;
  Json extra = Json::object();
  std::optional<double> timing_ms;

  bool ok() const;
};

Json to_json(const RunReport& r);
RunReport report_from_json(const Json& j);
std::string render(const RunReport& r);

// One line per (series, x, value).
std::string series_csv(const std::vector<Series>& series);
std::string report_csv(const RunReport& r);

}  // namespace coarse

#endif  // COARSE_SERIALIZE_HPP_
