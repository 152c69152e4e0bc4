// Copyright 2026 The floqrylov Authors
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

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "floqrylov/spectral.hpp"
#include "floqrylov/sweeps.hpp"

namespace floqrylov::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,      // unexpected internal error
  kExitConfig = 2,       // bad flags, config file or parameter values
  kExitIo = 3,           // unreadable input or unwritable output
  kExitNumerical = 4,    // numerical failure, or a sweep with failed points
};

using KeyValues = std::map<std::string, std::string>;

/// Flat "key = value" text; '#' starts a comment, blank lines are skipped.
/// Throws ParseError with the offending line number.
KeyValues parse_config_text(const std::string& text);

/// Every parameter a subcommand can take. Built from merged key/value pairs by
/// build_config, which validates all of them before anything runs.
struct RunConfig {
  std::string subcommand;

  Model model = Model::ToralQkr;
  std::string matrix_path;
  int n_dim = 32;
  double kappa = 10.0;
  double alpha = 0.0;
  double beta = 0.0;

  std::string mode = "state";  // state | operator | log_uf
  std::optional<InitialCondition> initial;
  std::string engine = "lanczos";  // log_uf only: lanczos | arnoldi
  std::uint64_t seed = 0;
  double tol = kDefaultKrylovTolerance;
  int max_steps = 0;
  std::optional<int> steps;  // complexity steps; default steps_factor * D_K
  int steps_factor = 4;
  double window_fraction = kDefaultSaturationWindow;
  bool amplitudes = false;

  std::string study = "sweep";  // sweep | dk_vs_coupling | fluctuation_vs_size
  std::vector<int> n_values;
  std::vector<double> kappa_values;
  std::optional<int> extra_diagonal;
  bool with_complexity = false;
  int parallelism = 1;

  int n_bins = kDefaultBins;
  double s_max = kDefaultSpacingMax;

  std::string figure;  // repro only
  std::filesystem::path out_dir = "floqrylov_out";

  InitialCondition initial_or_default() const;
  SweepSpec sweep_spec() const;
};

/// Validates and types the merged key/value pairs for one subcommand.
/// Unknown keys and out-of-range values throw ParseError / UsageError naming
/// the key.
RunConfig build_config(const std::string& subcommand, const KeyValues& values);

struct Outcome {
  int exit_code = kExitOk;
  std::vector<std::filesystem::path> files;
  std::map<std::string, std::string> summary;  // printed as the stdout line
};

Outcome cmd_map(const RunConfig& cfg, std::ostream& log);
Outcome cmd_krylov(const RunConfig& cfg, std::ostream& log);
Outcome cmd_sweep(const RunConfig& cfg, std::ostream& log);
Outcome cmd_spectrum(const RunConfig& cfg, std::ostream& log);
Outcome cmd_repro(const RunConfig& cfg, std::ostream& log);

/// Canned configuration for fig1 .. fig8, one entry per run. Keys omitted here
/// take the usual defaults.
struct ReproRun {
  std::string name;
  std::string subcommand;
  KeyValues values;
};
std::vector<ReproRun> repro_runs(const std::string& figure);
std::vector<std::string> repro_figures();

/// Full command line: flags and key=value overrides beat environment
/// variables (FLOQRYLOV_OUT, FLOQRYLOV_SEED), which beat the --config file,
/// which beats the defaults. Logs go to `err`, the one-line summary to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace floqrylov::cli
