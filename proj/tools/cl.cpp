// Copyright 2026 The curlab Authors.
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

// Command-line front end. Talks to the engine only through the C interface.
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "curlab/curlab.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

int report(curlab_status s) {
  std::cerr << "error: " << curlab_last_error() << "\n";
  return s == CURLAB_ERR_CONFIG ? kExitUsage : kExitRuntime;
}

std::vector<std::string> split_names(const char* csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  for (std::string name; std::getline(ss, name, ',');) out.push_back(name);
  return out;
}

struct RunFlags {
  std::string config;
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string out;
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--config", f.config, "Run configuration (TOML)")->required();
  cmd->add_option("--seed", f.seed, "Override the config seed");
  cmd->add_option("--jobs", f.jobs, "Worker threads for independent study cells")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out", f.out, "Override the output directory");
}

// Loads the config and applies flag overrides; the snapshot written with the
// outputs reflects the overridden values.
int load(const RunFlags& f, bool seed_given, curlab_config** cfg) {
  if (curlab_status s = curlab_config_load(f.config.c_str(), cfg); s != CURLAB_OK) return report(s);
  if (seed_given)
    if (curlab_status s = curlab_config_set_seed(*cfg, f.seed); s != CURLAB_OK) return report(s);
  if (!f.out.empty())
    if (curlab_status s = curlab_config_set_output_dir(*cfg, f.out.c_str()); s != CURLAB_OK)
      return report(s);
  return kExitOk;
}

int finish(curlab_status s, curlab_run_result* res) {
  if (s != CURLAB_OK) return report(s);
  std::cout << curlab_run_result_table(res);
  for (size_t i = 0; i < curlab_run_result_warning_count(res); ++i)
    std::cerr << "warning: " << curlab_run_result_warning(res, i) << "\n";
  std::cerr << "artifacts: " << curlab_run_result_dir(res) << "\n";
  curlab_run_result_free(res);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curriculum labeling for semi-supervised classification"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(curlab_version()));

  RunFlags train_flags;
  auto* train = app.add_subcommand("train", "Run one curriculum (or fixed-threshold) training");
  add_run_flags(train, train_flags);

  RunFlags study_flags;
  std::string study_name;
  const std::vector<std::string> studies = split_names(curlab_study_names());
  std::string study_list;
  for (const auto& s : studies) study_list += (study_list.empty() ? "" : ", ") + s;
  auto* study = app.add_subcommand("study", "Run a comparative study (" + study_list + ")");
  study->add_option("name", study_name, "Study name")->required();
  add_run_flags(study, study_flags);

  int draws = 0;
  std::uint64_t theory_seed = 20200827;
  bool inject = false;
  auto* theory = app.add_subcommand("theory-check", "Verify the utility and pacing-prior identities");
  theory->add_option("--draws", draws, "Random draws for the identity check")
      ->check(CLI::PositiveNumber);
  theory->add_option("--seed", theory_seed, "Seed of the random draws");
  theory->add_flag("--inject-fault", inject)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (*theory) {
    char* text = nullptr;
    curlab_status s = curlab_theory_check(theory_seed, draws, inject ? 1 : 0, &text);
    if (text) {
      std::cout << text;
      curlab_string_free(text);
    }
    if (s == CURLAB_OK) return kExitOk;
    std::cerr << "error: " << curlab_last_error() << "\n";
    return kExitRuntime;
  }

  if (*study) {
    bool known = false;
    for (const auto& s : studies) known = known || s == study_name;
    if (!known) {
      std::cerr << "error: unknown study \"" << study_name << "\"; valid studies: " << study_list
                << "\n";
      return kExitUsage;
    }
  }

  RunFlags& flags = *train ? train_flags : study_flags;
  CLI::App* cmd = *train ? train : study;
  curlab_config* cfg = nullptr;
  if (int rc = load(flags, cmd->count("--seed") > 0, &cfg); rc != kExitOk) {
    curlab_config_free(cfg);
    return rc;
  }
  curlab_run_result* res = nullptr;
  curlab_status s = *train ? curlab_run_train(cfg, &res)
                           : curlab_run_study(cfg, study_name.c_str(), flags.jobs, &res);
  curlab_config_free(cfg);
  return finish(s, res);
}
