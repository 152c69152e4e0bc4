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

#include "floqrylov/sweeps.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <set>

#include <json.hpp>

#include "floqrylov/io.hpp"

namespace floqrylov {

std::string to_string(Model model) {
  switch (model) {
    case Model::ToralQkr: return "toral_qkr";
    case Model::KickedHarper: return "kicked_harper";
    case Model::FromFile: return "from_file";
  }
  return "unknown";
}

std::string to_string(Mode mode) { return mode == Mode::State ? "state" : "operator"; }

Model parse_model(const std::string& text) {
  if (text == "toral_qkr") return Model::ToralQkr;
  if (text == "kicked_harper") return Model::KickedHarper;
  if (text == "from_file") return Model::FromFile;
  throw ParseError("unknown model '" + text + "' (toral_qkr, kicked_harper, from_file)");
}

Mode parse_mode(const std::string& text) {
  if (text == "state") return Mode::State;
  if (text == "operator") return Mode::Operator;
  throw ParseError("unknown mode '" + text + "' (state, operator)");
}

std::vector<FloquetParams> product_grid(const std::vector<int>& n_values, const std::vector<double>& kappas,
                                        double alpha, double beta) {
  std::vector<FloquetParams> grid;
  for (int n : n_values) {
    for (double kappa : kappas) grid.push_back(FloquetParams::make(n, kappa, alpha, beta));
  }
  return grid;
}

int max_krylov_dim(Mode mode, int n_dim) { return mode == Mode::State ? n_dim : n_dim * n_dim - n_dim + 1; }

UnitaryMatrix build_model(Model model, const FloquetParams& params, const std::string& matrix_path) {
  switch (model) {
    case Model::ToralQkr: return build_toral_qkr(params);
    case Model::KickedHarper: return build_kicked_harper(params.n_dim, params.kappa);
    case Model::FromFile: {
      auto u = load_unitary(matrix_path);
      if (u.dim() != params.n_dim) {
        throw UsageError("matrix file has N = " + std::to_string(u.dim()) + ", grid point expects " +
                         std::to_string(params.n_dim));
      }
      return u;
    }
  }
  throw UsageError("unhandled model");
}

Liouvillian make_liouvillian(Mode mode, const UnitaryMatrix& u) {
  return mode == Mode::State ? Liouvillian::unitary_on_state(u) : Liouvillian::unitary_conjugation(u);
}

double population_std(const std::vector<double>& values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  return std::sqrt(var / static_cast<double>(values.size()));
}

namespace {

// CSV-safe single-line status text
std::string sanitize(std::string s) {
  for (char& c : s) {
    if (c == ',' || c == '\n' || c == '\r' || c == '"') c = ';';
  }
  return s;
}

void validate(const SweepSpec& spec, int parallelism) {
  if (spec.grid.empty()) throw UsageError("sweep grid is empty");
  if (parallelism < 1) throw UsageError("parallelism must be >= 1");
  const SpaceKind want = spec.mode == Mode::State ? SpaceKind::State : SpaceKind::Operator;
  if (spec.initial.space() != want) {
    throw UsageError("initial condition '" + spec.initial.to_string() + "' does not live in " + to_string(spec.mode) +
                     " space");
  }
  if (!(spec.tol > 0.0)) throw UsageError("tol must be > 0");
  if (spec.max_steps < 0) throw UsageError("max_steps must be >= 0");
  if (spec.model == Model::FromFile && spec.matrix_path.empty()) throw UsageError("from_file model needs a matrix path");
  if (spec.with_complexity && spec.steps_factor < 0) throw UsageError("steps_factor must be >= 0");
  for (const auto& p : spec.grid) {
    if (p.n_dim < 1) throw UsageError("grid point with N < 1");
  }
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

nlohmann::json json_number(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

std::string metadata(const SweepSpec& spec, const SweepResult& result, const std::string& study) {
  nlohmann::json grid = nlohmann::json::array();
  for (const auto& p : spec.grid) {
    grid.push_back({{"N", p.n_dim}, {"kappa", p.kappa}, {"alpha", p.alpha}, {"beta", p.beta}});
  }
  nlohmann::json extras = nlohmann::json::array();
  for (const auto& row : result.rows) {
    nlohmann::json e = {{"index", row.index}, {"terminated", row.terminated}};
    if (row.extra_std) e["extra_diagonal_std"] = json_number(*row.extra_std);
    if (row.trace) {
      e["saturation_mean"] = json_number(row.trace->saturation_mean);
      e["saturation_std"] = json_number(row.trace->saturation_std);
      e["route_max_diff"] = json_number(row.route_max_diff);
      e["max_norm_defect"] = json_number(row.max_norm_defect);
    }
    extras.push_back(std::move(e));
  }
  nlohmann::json doc = {
      {"study", study},
      {"spec",
       {{"model", to_string(spec.model)},
        {"mode", to_string(spec.mode)},
        {"initial", spec.initial.to_string()},
        {"seed", spec.seed},
        {"tol", spec.tol},
        {"max_steps", spec.max_steps},
        {"matrix_path", spec.matrix_path},
        {"extra_diagonal", spec.extra_diagonal ? nlohmann::json(*spec.extra_diagonal) : nlohmann::json(nullptr)},
        {"with_complexity", spec.with_complexity},
        {"steps_factor", spec.steps_factor},
        {"window_fraction", spec.window_fraction},
        {"grid", grid}}},
      {"dk_max_rule", spec.mode == Mode::State ? "N" : "N^2-N+1"},
      {"rows", extras},
      {"code_version", kVersion},
      {"timestamp", utc_timestamp()},
  };
  return doc.dump(2) + "\n";
}

}  // namespace

SweepRow run_point(const SweepSpec& spec, int index) {
  SweepRow row;
  row.index = index;
  row.params = spec.grid.at(static_cast<std::size_t>(index));
  row.dk_max = max_krylov_dim(spec.mode, row.params.n_dim);
  try {
    const UnitaryMatrix u = build_model(spec.model, row.params, spec.matrix_path);
    const Liouvillian l = make_liouvillian(spec.mode, u);
    const KrylovVector v0 = initial_vector(spec.initial, row.params.n_dim, spec.seed);
    const int max_dim = spec.max_steps > 0 ? spec.max_steps : l.max_krylov_dim();
    const KrylovBasis basis = arnoldi_iterate(l, v0, max_dim, spec.tol);
    row.dk = basis.dk;
    row.terminated = basis.terminated;
    row.h_subdiag_std = population_std(subdiagonal(basis));
    if (spec.extra_diagonal) row.extra_std = population_std(hessenberg_diagonal(basis, *spec.extra_diagonal));
    if (spec.with_complexity) {
      const int steps = spec.steps_factor * basis.dk;
      const AmplitudeSeries direct = amplitudes_direct(basis, l, v0, steps);
      const AmplitudeSeries recursive = amplitudes_recursive(basis.hessenberg, basis.dk, steps);
      row.route_max_diff = max_abs(direct.amps - recursive.amps);
      row.max_norm_defect = std::max(direct.max_norm_defect(), recursive.max_norm_defect());
      row.trace = complexity_trace(direct, spec.window_fraction);
    }
  } catch (const Error& e) {
    row.status = sanitize(std::string("error: ") + e.what());
  } catch (const std::exception& e) {
    row.status = sanitize(std::string("error: ") + e.what());
  }
  return row;
}

SweepResult run_sweep(const SweepSpec& spec, int parallelism) {
  validate(spec, parallelism);
  SweepResult result;
  result.rows.resize(spec.grid.size());
  parallel_for_index(spec.grid.size(), parallelism,
                     [&](std::size_t i) { result.rows[i] = run_point(spec, static_cast<int>(i)); });
  result.metadata_json = metadata(spec, result, "sweep");
  return result;
}

SweepResult dk_vs_coupling(const SweepSpec& spec, int parallelism) {
  validate(spec, parallelism);
  const auto& first = spec.grid.front();
  for (const auto& p : spec.grid) {
    if (p.n_dim != first.n_dim || p.alpha != first.alpha || p.beta != first.beta) {
      throw UsageError("dk_vs_coupling needs a grid with fixed N, alpha and beta");
    }
  }
  SweepResult result = run_sweep(spec, parallelism);
  result.metadata_json = metadata(spec, result, "dk_vs_coupling");
  return result;
}

SweepResult fluctuation_vs_size(const SweepSpec& spec, int parallelism) {
  validate(spec, parallelism);
  std::set<double> kappas;
  for (const auto& p : spec.grid) kappas.insert(p.kappa);
  if (kappas.size() < 2) throw UsageError("fluctuation_vs_size needs at least two kappa values");
  SweepResult result = run_sweep(spec, parallelism);
  result.metadata_json = metadata(spec, result, "fluctuation_vs_size");
  return result;
}

std::string sweep_csv(const SweepResult& result) {
  std::string out = "index,N,kappa,alpha,beta,dk,dk_max,h_subdiag_std,status\n";
  for (const auto& row : result.rows) {
    out += std::to_string(row.index) + "," + std::to_string(row.params.n_dim) + "," + format_double(row.params.kappa) +
           "," + format_double(row.params.alpha) + "," + format_double(row.params.beta) + "," +
           std::to_string(row.dk) + "," + std::to_string(row.dk_max) + "," + format_double(row.h_subdiag_std) + "," +
           row.status + "\n";
  }
  return out;
}

}  // namespace floqrylov
