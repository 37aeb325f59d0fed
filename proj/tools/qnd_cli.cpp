// Copyright 2026 The qnd Authors
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

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qnd/harness.hpp"

int main(int argc, char** argv) {
  CLI::App app{"qnd: noise and disturbance of quantum instruments"};
  app.require_subcommand(1);

  qnd::AnalyzeOptions analyze;
  CLI::App* analyze_cmd = app.add_subcommand("analyze", "Analyze one instrument against X and Z");
  analyze_cmd->add_option("--instrument", analyze.instrument, "Instrument JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  analyze_cmd->add_option("--obs-x", analyze.obs_x, "Observable X JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  analyze_cmd->add_option("--obs-z", analyze.obs_z, "Observable Z JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  analyze_cmd->add_option("--restarts", analyze.restarts, "Random restarts of the POVM search")
      ->capture_default_str();
  analyze_cmd->add_option("--seed", analyze.seed, "Seed of the POVM search")->capture_default_str();
  analyze_cmd->add_option("--out", analyze.out, "Report file (default: stdout)");
  analyze_cmd->add_option("--format", analyze.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  qnd::VerifyOptions verify;
  std::string verify_out;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Check every bound on random instruments");
  verify_cmd->add_option("--dim", verify.dim, "Hilbert space dimension (2, 3 or 4)")
      ->capture_default_str();
  verify_cmd->add_option("--trials", verify.trials, "Number of random trials")
      ->capture_default_str();
  verify_cmd->add_option("--seed", verify.seed, "Seed of trial 0")->capture_default_str();
  verify_cmd->add_option("--outcomes", verify.outcomes, "Outcomes per instrument (0: dim)")
      ->capture_default_str();
  verify_cmd->add_option("--kraus-per-outcome", verify.kraus_per_outcome,
                         "Kraus operators per outcome")
      ->capture_default_str();
  verify_cmd->add_flag("--mub", verify.mub, "Draw mutually unbiased basis pairs");
  verify_cmd->add_option("--out", verify_out, "Summary JSON file (default: stdout)");

  qnd::SweepOptions sweep;
  std::string sweep_out;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Scan an instrument family to CSV");
  sweep_cmd->add_option("--family", sweep.family, "weak or noisy-luders")->capture_default_str();
  sweep_cmd->add_option("--from", sweep.from, "First parameter value")->capture_default_str();
  sweep_cmd->add_option("--to", sweep.to, "Last parameter value")->capture_default_str();
  sweep_cmd->add_option("--steps", sweep.steps, "Number of grid points")->capture_default_str();
  sweep_cmd->add_option("--restarts", sweep.restarts, "Random restarts of the POVM search")
      ->capture_default_str();
  sweep_cmd->add_option("--seed", sweep.seed, "Seed of the POVM search")->capture_default_str();
  sweep_cmd->add_option("--out", sweep_out, "CSV file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (*analyze_cmd) return qnd::cmd_analyze(analyze, std::cout, std::cerr);
  if (*verify_cmd) return qnd::cmd_verify(verify, verify_out, std::cout, std::cerr);
  return qnd::cmd_sweep(sweep, sweep_out, std::cout, std::cerr);
}
