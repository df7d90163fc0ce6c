// Copyright 2026 The restartkit Authors
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
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "experiment.hpp"
#include "restartkit/core.hpp"
#include "restartkit/restart.hpp"
#include "restartkit/schedule.hpp"
#include "restartkit/trace_io.hpp"

namespace {

using restartkit::ConfigError;
using nlohmann::json;

constexpr int kExitConfig = 2;
constexpr int kExitDiverged = 3;

struct ConfigSource {
  std::string path;
  std::vector<std::string> overrides;
  std::optional<std::string> output;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> budget_t;
};

void add_config_options(CLI::App* cmd, ConfigSource& src) {
  cmd->add_option("config", src.path, "Experiment config (JSON)")->required();
  cmd->add_option("--set", src.overrides, "Override a config field, key=value");
  cmd->add_option("-o,--output", src.output, "Trace CSV path");
  cmd->add_option("--seed", src.seed, "Random seed");
  cmd->add_option("-t,--iterations", src.budget_t, "Inner iteration budget t");
}

restartkit::tools::ExperimentConfig resolve(const ConfigSource& src) {
  std::ifstream in(src.path);
  if (!in) throw ConfigError("cannot open config '" + src.path + "'");
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded()) throw ConfigError("config '" + src.path + "' is not valid JSON");
  for (const auto& o : src.overrides) restartkit::tools::apply_override(doc, o);
  if (src.output) doc["output_path"] = *src.output;
  if (src.seed) doc["seed"] = *src.seed;
  if (src.budget_t) doc["t"] = *src.budget_t;
  return restartkit::tools::parse_config(doc);
}

std::vector<double> parse_values(const std::string& list) {
  std::vector<double> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw ConfigError("");
    } catch (const std::exception&) {
      throw ConfigError("--values: cannot parse '" + item + "'");
    }
  }
  return out;
}

int run_command(const ConfigSource& src) {
  const auto config = resolve(src);
  const auto result = restartkit::tools::run_experiment(config);
  if (config.output_path.empty()) {
    restartkit::write_trace_csv(std::cout, result.outcome.trace);
    std::cerr << restartkit::tools::to_json(result.summary).dump(2) << '\n';
  } else {
    std::cout << restartkit::tools::to_json(result.summary).dump(2) << '\n';
  }
  return 0;
}

int sweep_command(const ConfigSource& src, const std::string& param,
                  const std::string& values) {
  const auto config = resolve(src);
  const auto list = parse_values(values);
  const auto entries =
      restartkit::tools::sweep(config, param, list, restartkit::worker_limit());
  if (!entries.empty()) restartkit::tools::write_sweep_table(std::cout, param, entries);
  return 0;
}

struct DumpOptions {
  std::string mode = "both_unknown";
  double c1 = 2.0;
  double c2 = 2.0;
  std::int64_t count = 20;
  std::optional<int> i_min, i_max, j_min, j_max;
};

int schedule_dump(const DumpOptions& opt) {
  restartkit::ScheduleCriterion criterion;
  try {
    criterion.mode = restartkit::parse_schedule_mode(opt.mode);
  } catch (const std::exception&) {
    throw ConfigError("--mode: unknown schedule mode '" + opt.mode + "'");
  }
  criterion.c1 = opt.c1;
  criterion.c2 = opt.c2;
  if (opt.i_min || opt.i_max || opt.j_min || opt.j_max) {
    if (!(opt.i_min && opt.i_max && opt.j_min && opt.j_max)) {
      throw ConfigError("--i-min, --i-max, --j-min, --j-max go together");
    }
    criterion.ranges = restartkit::IndexRanges{*opt.i_min, *opt.i_max, *opt.j_min, *opt.j_max};
  }
  if (opt.count < 0) throw ConfigError("--count must be nonnegative");
  try {
    criterion.validate();
  } catch (const restartkit::InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  restartkit::AssignmentEnumerator phi(criterion);
  std::cout << "n,i,j,k,h\n";
  for (std::int64_t n = 1; n <= opt.count; ++n) {
    const auto p = phi.next_point();
    std::cout << n << ',' << p.i << ',' << p.j << ',' << p.k << ','
              << restartkit::format_double(restartkit::h_value(criterion, p)) << '\n';
  }
  return 0;
}

int oracle_command(const ConfigSource& src, std::int64_t budget) {
  const auto config = resolve(src);
  const auto ref = restartkit::tools::run_oracle(config, budget);
  json doc;
  doc["value"] = ref.value;
  doc["uncertainty"] = ref.uncertainty;
  doc["inner_iterations"] = ref.inner_iterations;
  std::cout << doc.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"restartkit: restarted first-order methods for sharp convex problems"};
  app.require_subcommand(1);

  ConfigSource run_src;
  auto* run = app.add_subcommand("run", "Run one experiment and write its trace");
  add_config_options(run, run_src);

  ConfigSource sweep_src;
  std::string sweep_param;
  std::string sweep_values;
  auto* sw = app.add_subcommand("sweep", "Run one experiment per parameter value");
  add_config_options(sw, sweep_src);
  sw->add_option("--param", sweep_param, "alpha, beta, noise, lambda or mu")->required();
  sw->add_option("--values", sweep_values, "Comma-separated values")->required();

  DumpOptions dump;
  auto* schedule = app.add_subcommand("schedule", "Inspect the grid-search schedule");
  schedule->require_subcommand(1);
  auto* dump_cmd = schedule->add_subcommand("dump", "Print the first N grid triples");
  dump_cmd->add_option("--mode", dump.mode, "both_unknown, alpha_known, beta_known, "
                                            "both_known or ranges_known");
  dump_cmd->add_option("--c1", dump.c1, "Exponent on |i| + 1");
  dump_cmd->add_option("--c2", dump.c2, "Exponent on j + 1");
  dump_cmd->add_option("--count", dump.count, "Number of triples");
  dump_cmd->add_option("--i-min", dump.i_min);
  dump_cmd->add_option("--i-max", dump.i_max);
  dump_cmd->add_option("--j-min", dump.j_min);
  dump_cmd->add_option("--j-max", dump.j_max);

  ConfigSource oracle_src;
  std::int64_t budget = 100000;
  auto* oracle = app.add_subcommand("oracle", "Estimate the optimal value by a long run");
  add_config_options(oracle, oracle_src);
  oracle->add_option("--budget", budget, "Inner iteration budget")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (run->parsed()) return run_command(run_src);
    if (sw->parsed()) return sweep_command(sweep_src, sweep_param, sweep_values);
    if (dump_cmd->parsed()) return schedule_dump(dump);
    if (oracle->parsed()) return oracle_command(oracle_src, budget);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const restartkit::IngestionError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const restartkit::InvalidArgument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const restartkit::DivergedError& e) {
    std::cerr << "solver diverged: " << e.what() << '\n';
    return kExitDiverged;
  } catch (const restartkit::AbortedRun& e) {
    std::cerr << "run aborted: " << e.what() << '\n';
    return kExitDiverged;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
