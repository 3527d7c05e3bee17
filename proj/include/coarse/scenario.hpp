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

#ifndef COARSE_SCENARIO_HPP_
#define COARSE_SCENARIO_HPP_

#include <map>
#include <string>
#include <vector>

#include "coarse/serialize.hpp"

namespace coarse {

struct ScenarioSpec {
  std::string name;
  Json params = Json::object();
  // Observation key -> expected value. Kept as data next to the scenario.
  std::map<std::string, std::string> expected;

  static ScenarioSpec from_json(const Json& j);
  // Reads <dir>/<name>.json; dir defaults to the installed scenario table.
  static ScenarioSpec load(const std::string& name, const std::string& dir = "");
};

std::vector<std::string> scenario_names();

// Runs the scenario and compares every observation with its expectation;
// one check per expected key.
RunReport run_scenario(const ScenarioSpec& spec);

}  // namespace coarse

#endif  // COARSE_SCENARIO_HPP_
