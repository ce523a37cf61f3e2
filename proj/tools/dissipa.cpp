// Copyright 2026 The dissipa Authors
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

// dissipa: command-line front end for the experiment runner.
//
// Exit codes: 0 success, 1 verification failure, 2 config error,
// 3 numerical abort.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "dissipa/experiment.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kConfigError = 2;
constexpr int kNumericalAbort = 3;

dissipa::ExperimentConfig load(const std::string& path, const std::string& out) {
  auto cfg = dissipa::ExperimentConfig::load(path);
  if (!out.empty()) cfg.output_dir = out;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Open-system state preparation with Lyapunov feedback"};
  app.require_subcommand(1);

  std::string config, out, etas;
  int jobs = 1;

  auto* simulate = app.add_subcommand("simulate", "Propagate one trajectory; writes trajectory.csv");
  simulate->add_option("--config", config, "Config file")->required()->check(CLI::ExistingFile);
  simulate->add_option("--out", out, "Output directory")->required();

  auto* sweep = app.add_subcommand("sweep", "Grid over the sweep.* axes; writes sweep.csv");
  sweep->add_option("--config", config, "Config file")->required()->check(CLI::ExistingFile);
  sweep->add_option("--out", out, "Output directory")->required();
  sweep->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "Check the stationary-state conditions; writes verify.csv");
  verify->add_option("--config", config, "Config file")->required()->check(CLI::ExistingFile);
  verify->add_option("--out", out, "Output directory (default: config output_dir)");

  auto* noise = app.add_subcommand("noise-scan", "Final fidelity over eta x gamma; writes noise.csv");
  noise->add_option("--config", config, "Config file")->required()->check(CLI::ExistingFile);
  noise->add_option("--etas", etas, "Comma-separated noise intensities")->required();
  noise->add_option("--out", out, "Output directory")->required();
  noise->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  auto* zeno = app.add_subcommand("compare-zeno", "Full vs effective picture; writes compare.csv");
  zeno->add_option("--config", config, "Config file")->required()->check(CLI::ExistingFile);
  zeno->add_option("--out", out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*simulate) {
      const auto record = dissipa::run_simulate(load(config, out));
      std::cout << "records: " << record.size() << "  final V: "
                << dissipa::format_double(record.v.back()) << '\n';
    } else if (*sweep) {
      const auto result = dissipa::run_sweep(load(config, out), jobs);
      const auto& best = result.best();
      std::cout << "cells: " << result.cells.size() << "  best F_S: "
                << dissipa::format_double(best.fidelity) << " at";
      for (std::size_t a = 0; a < result.axes.size(); ++a) {
        std::cout << ' ' << result.axes[a].path << '=' << best.values[a];
      }
      std::cout << '\n';
    } else if (*verify) {
      const auto report = dissipa::run_verify(load(config, out), std::cout);
      return report.all_pass() ? kOk : kVerifyFailed;
    } else if (*noise) {
      const auto rows =
          dissipa::run_noise_scan(load(config, out), dissipa::parse_value_list(etas), jobs);
      std::cout << "rows: " << rows.size() << '\n';
    } else if (*zeno) {
      const auto cmp = dissipa::run_compare_zeno(load(config, out));
      std::cout << "max |dP_S|: " << dissipa::format_double(cmp.max_abs_delta_ps) << '\n';
    }
  } catch (const dissipa::InvalidInput& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const dissipa::PropagationError& e) {
    std::cerr << "numerical abort: " << e.what() << '\n';
    return kNumericalAbort;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  }
  return kOk;
}
