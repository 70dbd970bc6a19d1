// Copyright 2026 The quasinv Authors
//
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


// Scenario runner behind the quasinv command-line tool. Kept as a library so
// the reports can be produced and compared in-process by tests.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "quasinv/serialize.hpp"

namespace quasinv::tools {

struct ScenarioConfig {
  std::string scenario = "product";
  int d = 2;
  int n_sites = 3;
  int group = 0;  // symmetric-group degree; 0 selects the scenario default
  std::uint64_t seed = 1;
  double floor = 0.05;
  double tol = 1e-9;
  bool plant_defect = false;
  std::string out;  // report path; empty writes to stdout
};

struct ScenarioInfo {
  std::string name;
  std::string description;
  std::string anchor;
};

const std::vector<ScenarioInfo>& scenario_list();

// Field-level problems; empty when the config is usable.
std::vector<std::string> validate(const ScenarioConfig& config);

// Overrides fields present in a JSON object. Throws ConfigInvalid for
// unknown keys or wrongly typed values.
void apply_json(ScenarioConfig& config, const Json& j);

// Throws ConfigInvalid (with every field diagnostic) when validation fails.
Json run_scenario(const ScenarioConfig& config);

bool report_passed(const Json& report);

}  // namespace quasinv::tools
