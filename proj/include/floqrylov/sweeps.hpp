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

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "floqrylov/complexity.hpp"

namespace floqrylov {

enum class Model { ToralQkr, KickedHarper, FromFile };
enum class Mode { State, Operator };

std::string to_string(Model model);
std::string to_string(Mode mode);
Model parse_model(const std::string& text);
Mode parse_mode(const std::string& text);

struct SweepSpec {
  Model model = Model::ToralQkr;
  Mode mode = Mode::State;
  std::vector<FloquetParams> grid;
  InitialCondition initial;
  std::uint64_t seed = 0;
  double tol = kDefaultKrylovTolerance;
  int max_steps = 0;  // Krylov dimension cap; 0 means the theoretical maximum
  std::string matrix_path;  // Model::FromFile only

  // Optional extra diagonal of h whose fluctuation is reported (offset as in
  // hessenberg_diagonal).
  std::optional<int> extra_diagonal;

  // Complexity traces per point: steps = steps_factor * D_K, both amplitude
  // routes evaluated and compared.
  bool with_complexity = false;
  int steps_factor = 4;
  double window_fraction = kDefaultSaturationWindow;
};

struct SweepRow {
  int index = 0;
  FloquetParams params;
  int dk = 0;
  int dk_max = 0;
  double h_subdiag_std = 0.0;
  std::optional<double> extra_std;
  bool terminated = false;
  std::string status = "ok";

  std::optional<ComplexityTrace> trace;
  double route_max_diff = 0.0;
  double max_norm_defect = 0.0;

  bool ok() const { return status == "ok"; }
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::string metadata_json;
};

/// Grid of all (N, kappa) combinations, N-major.
std::vector<FloquetParams> product_grid(const std::vector<int>& n_values, const std::vector<double>& kappas,
                                        double alpha, double beta);

/// Theoretical Krylov dimension bound for the mode.
int max_krylov_dim(Mode mode, int n_dim);

UnitaryMatrix build_model(Model model, const FloquetParams& params, const std::string& matrix_path = "");
Liouvillian make_liouvillian(Mode mode, const UnitaryMatrix& u);

/// Population standard deviation; NaN for an empty sequence.
double population_std(const std::vector<double>& values);

/// One grid point, computed from scratch. Numerical failures become an
/// error status on the row.
SweepRow run_point(const SweepSpec& spec, int index);

/// Runs every grid point with at most `parallelism` in flight. Rows come back
/// in grid order and do not depend on the parallelism level. Throws UsageError
/// for an invalid spec (empty grid, mode/initial mismatch, parallelism < 1).
SweepResult run_sweep(const SweepSpec& spec, int parallelism = 1);

/// D_K against kappa; the grid must share N, alpha and beta.
SweepResult dk_vs_coupling(const SweepSpec& spec, int parallelism = 1);

/// Subdiagonal fluctuation against N; the grid must hold at least two kappas.
SweepResult fluctuation_vs_size(const SweepSpec& spec, int parallelism = 1);

/// CSV "index,N,kappa,alpha,beta,dk,dk_max,h_subdiag_std,status".
std::string sweep_csv(const SweepResult& result);

/// Calls fn(i) for i in [0, count) on up to `parallelism` threads. Each index
/// runs exactly once; callers write results into index-addressed slots.
inline void parallel_for_index(std::size_t count, int parallelism, const std::function<void(std::size_t)>& fn) {
  const auto workers = static_cast<std::size_t>(std::max(1, parallelism));
  if (workers == 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  std::vector<std::thread> pool;
  const std::size_t n_threads = std::min(workers, count);
  pool.reserve(n_threads);
  for (std::size_t t = 0; t < n_threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  // lowest failing index wins, independent of scheduling
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace floqrylov
