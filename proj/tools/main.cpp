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


#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "scenarios.hpp"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

int list_command(bool json) {
  using quasinv::tools::scenario_list;
  if (json) {
    quasinv::Json out = quasinv::Json::array();
    for (const auto& s : scenario_list()) {
      quasinv::Json e;
      e["name"] = s.name;
      e["description"] = s.description;
      e["paper_anchor"] = s.anchor;
      out.push_back(std::move(e));
    }
    std::cout << out.dump(2) << '\n';
    return 0;
  }
  for (const auto& s : scenario_list()) {
    std::cout << s.name << "  " << s.description << "  [" << s.anchor << "]\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quasinv: verification runner for quasi-invariant states"};
  app.require_subcommand(1);

  quasinv::tools::ScenarioConfig config;
  std::string config_file;
  bool print_json = false;

  CLI::App* run = app.add_subcommand("run", "run one scenario and write its report");
  run->add_option("--config", config_file, "JSON config file (flags override it)")
      ->check(CLI::ExistingFile);
  CLI::Option* o_scenario = run->add_option("--scenario", config.scenario, "scenario kind");
  CLI::Option* o_d = run->add_option("--d", config.d, "local dimension");
  CLI::Option* o_n = run->add_option("--n-sites", config.n_sites, "number of sites");
  CLI::Option* o_g = run->add_option("--group", config.group,
                                     "symmetric-group degree (0 = scenario default)");
  CLI::Option* o_seed = run->add_option("--seed", config.seed, "random seed");
  CLI::Option* o_floor = run->add_option("--floor", config.floor, "density eigenvalue floor");
  CLI::Option* o_tol = run->add_option("--tol", config.tol, "verification tolerance");
  CLI::Option* o_out = run->add_option("--out", config.out, "report path (default stdout)");
  CLI::Option* o_plant =
      run->add_flag("--plant-defect", config.plant_defect, "perturb one entry by 1e-3");
  run->add_flag("--json", print_json, "also print the report to stdout when --out is set");

  bool list_json = false;
  CLI::App* list = app.add_subcommand("list", "list scenario kinds");
  list->add_flag("--json", list_json, "machine-readable list");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (list->parsed()) return list_command(list_json);

  try {
    if (!config_file.empty()) {
      quasinv::tools::ScenarioConfig from_file;
      std::ifstream in(config_file);
      quasinv::Json j;
      try {
        j = quasinv::Json::parse(in);
      } catch (const nlohmann::json::exception& e) {
        throw quasinv::Error(quasinv::ErrorCode::ConfigInvalid, std::string("config: ") + e.what());
      }
      quasinv::tools::apply_json(from_file, j);
      // Flags given on the command line win over the file.
      const auto keep = [](CLI::Option* o, auto& dst, const auto& src) {
        if (o->count() == 0) dst = src;
      };
      keep(o_scenario, config.scenario, from_file.scenario);
      keep(o_d, config.d, from_file.d);
      keep(o_n, config.n_sites, from_file.n_sites);
      keep(o_g, config.group, from_file.group);
      keep(o_seed, config.seed, from_file.seed);
      keep(o_floor, config.floor, from_file.floor);
      keep(o_tol, config.tol, from_file.tol);
      keep(o_out, config.out, from_file.out);
      keep(o_plant, config.plant_defect, from_file.plant_defect);
    }

    const quasinv::Json report = quasinv::tools::run_scenario(config);
    const std::string text = report.dump(2) + "\n";
    if (config.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(config.out, std::ios::binary);
      if (!out) {
        std::cerr << "error: cannot write " << config.out << '\n';
        return kExitConfig;
      }
      out << text;
      if (print_json) std::cout << text;
    }
    std::cerr << report["scenario"].get<std::string>() << ": "
              << report["summary"]["passed"].get<int>() << "/"
              << report["summary"]["total"].get<int>() << " checks passed\n";
    return quasinv::tools::report_passed(report) ? 0 : kExitFail;
  } catch (const quasinv::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == quasinv::ErrorCode::ConfigInvalid ? kExitConfig : kExitFail;
  }
}
