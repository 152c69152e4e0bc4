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

#include "floqrylov/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "floqrylov/io.hpp"

namespace floqrylov::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(trim(cur));
  return parts;
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value, const std::string& want) {
  throw ParseError("config key '" + key + "': cannot read '" + value + "' as " + want);
}

long long parse_integer(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(value, &used);
  } catch (const std::exception&) {
    bad_value(key, value, "an integer");
  }
  if (used != value.size()) bad_value(key, value, "an integer");
  return v;
}

int parse_int(const std::string& key, const std::string& value) {
  const long long v = parse_integer(key, value);
  if (v < -1'000'000'000 || v > 1'000'000'000) throw UsageError("config key '" + key + "' out of range");
  return static_cast<int>(v);
}

double parse_real(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    bad_value(key, value, "a number");
  }
  if (used != value.size() || !std::isfinite(v)) bad_value(key, value, "a finite number");
  return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  bad_value(key, value, "a boolean");
}

std::uint64_t parse_seed(const std::string& key, const std::string& value) {
  if (value.empty() || value.find_first_not_of("0123456789") != std::string::npos) {
    bad_value(key, value, "a non-negative integer");
  }
  try {
    return std::stoull(value);
  } catch (const std::exception&) {
    bad_value(key, value, "a 64-bit seed");
  }
}

// "a,b,c" or an inclusive range "start:stop:step"
std::vector<double> parse_real_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  if (value.find(':') != std::string::npos) {
    const auto parts = split(value, ':');
    if (parts.size() != 3) bad_value(key, value, "start:stop:step");
    const double start = parse_real(key, parts[0]);
    const double stop = parse_real(key, parts[1]);
    const double step = parse_real(key, parts[2]);
    if (!(step > 0.0) || stop < start) bad_value(key, value, "an ascending range with step > 0");
    const auto count = static_cast<long long>(std::floor((stop - start) / step + 1e-9)) + 1;
    if (count > 100000) throw UsageError("config key '" + key + "': range has too many points");
    for (long long i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
  }
  for (const auto& part : split(value, ',')) out.push_back(parse_real(key, part));
  if (out.empty()) bad_value(key, value, "a non-empty list");
  return out;
}

std::vector<int> parse_int_list(const std::string& key, const std::string& value) {
  std::vector<int> out;
  if (value.find(':') != std::string::npos) {
    const auto parts = split(value, ':');
    if (parts.size() != 3) bad_value(key, value, "start:stop:step");
    const int start = parse_int(key, parts[0]);
    const int stop = parse_int(key, parts[1]);
    const int step = parse_int(key, parts[2]);
    if (step < 1 || stop < start) bad_value(key, value, "an ascending range with step >= 1");
    for (int v = start; v <= stop; v += step) out.push_back(v);
    return out;
  }
  for (const auto& part : split(value, ',')) out.push_back(parse_int(key, part));
  if (out.empty()) bad_value(key, value, "a non-empty list");
  return out;
}

const std::set<std::string> kCommonKeys = {"out", "seed", "tol", "parallelism", "model", "matrix",
                                           "n", "kappa", "alpha", "beta"};

std::set<std::string> allowed_keys(const std::string& subcommand) {
  std::set<std::string> keys = kCommonKeys;
  if (subcommand == "krylov") {
    keys.insert({"mode", "initial", "engine", "max_steps", "steps", "steps_factor", "window_fraction", "amplitudes"});
  } else if (subcommand == "sweep") {
    keys.insert({"mode", "initial", "max_steps", "study", "n_values", "kappa_values", "extra_diagonal",
                 "with_complexity", "steps_factor", "window_fraction"});
  } else if (subcommand == "spectrum") {
    keys.insert({"n_bins", "s_max"});
  } else if (subcommand == "repro") {
    keys.insert("figure");
  }
  return keys;
}

void check_initial_indices(const InitialCondition& ic, int n_dim) {
  const bool one = ic.kind == InitialCondition::Kind::PositionState || ic.kind == InitialCondition::Kind::MomentumState;
  const bool two = ic.kind == InitialCondition::Kind::BasisOperator;
  if ((one || two) && ic.index_a >= n_dim) {
    throw UsageError("initial condition '" + ic.to_string() + "' has an index out of range for N = " +
                     std::to_string(n_dim));
  }
  if (two && ic.index_b >= n_dim) {
    throw UsageError("initial condition '" + ic.to_string() + "' has an index out of range for N = " +
                     std::to_string(n_dim));
  }
}

std::string json_text(const json& doc) { return doc.dump(2) + "\n"; }

json number_or_null(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

void write_file(Outcome& outcome, const fs::path& path, const std::string& content) {
  write_text_file(path, content);
  outcome.files.push_back(path);
}

void prepare_out_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());
}

UnitaryMatrix build_unitary(const RunConfig& cfg) {
  return build_model(cfg.model, FloquetParams::make(cfg.n_dim, cfg.kappa, cfg.alpha, cfg.beta), cfg.matrix_path);
}

std::string subdiagonal_csv(const std::vector<double>& values) {
  std::string out = "n,h_sub\n";
  for (std::size_t i = 0; i < values.size(); ++i) out += std::to_string(i + 1) + "," + format_double(values[i]) + "\n";
  return out;
}

json params_json(const RunConfig& cfg) {
  return {{"model", to_string(cfg.model)}, {"N", cfg.n_dim},      {"kappa", cfg.kappa},
          {"alpha", cfg.alpha},            {"beta", cfg.beta},    {"matrix", cfg.matrix_path}};
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const IoError*>(&e)) return kExitIo;
  if (dynamic_cast<const NumericalError*>(&e)) return kExitNumerical;
  if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const UsageError*>(&e) ||
      dynamic_cast<const ValidationError*>(&e)) {
    return kExitConfig;
  }
  return kExitFailure;
}

std::string quote_if_needed(const std::string& v) {
  if (v.find_first_of(" \t\"=") == std::string::npos && !v.empty()) return v;
  std::string q = "\"";
  for (char c : v) {
    if (c == '"' || c == '\\') q += '\\';
    q += (c == '\n' ? ' ' : c);
  }
  return q + "\"";
}

void print_summary(std::ostream& out, const std::string& subcommand, int code,
                   const std::map<std::string, std::string>& fields) {
  out << "floqrylov subcommand=" << (subcommand.empty() ? "none" : subcommand)
      << " status=" << (code == kExitOk ? "ok" : "error") << " exit=" << code;
  for (const auto& [k, v] : fields) out << " " << k << "=" << quote_if_needed(v);
  out << std::endl;
}

}  // namespace

KeyValues parse_config_text(const std::string& text) {
  KeyValues values;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ParseError("config line " + std::to_string(lineno) + ": empty key");
    if (values.count(key)) throw ParseError("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    values[key] = trim(line.substr(eq + 1));
  }
  return values;
}

InitialCondition RunConfig::initial_or_default() const {
  if (initial) return *initial;
  if (mode == "state") return InitialCondition::parse("random_state");
  return InitialCondition::parse("random_hermitian_operator");
}

SweepSpec RunConfig::sweep_spec() const {
  SweepSpec spec;
  spec.model = model;
  spec.mode = parse_mode(mode);
  spec.grid = product_grid(n_values.empty() ? std::vector<int>{n_dim} : n_values,
                           kappa_values.empty() ? std::vector<double>{kappa} : kappa_values, alpha, beta);
  spec.initial = initial_or_default();
  spec.seed = seed;
  spec.tol = tol;
  spec.max_steps = max_steps;
  spec.matrix_path = matrix_path;
  spec.extra_diagonal = extra_diagonal;
  spec.with_complexity = with_complexity;
  spec.steps_factor = steps_factor;
  spec.window_fraction = window_fraction;
  return spec;
}

RunConfig build_config(const std::string& subcommand, const KeyValues& values) {
  static const std::set<std::string> kSubcommands = {"map", "krylov", "sweep", "spectrum", "repro"};
  if (!kSubcommands.count(subcommand)) throw UsageError("unknown subcommand '" + subcommand + "'");
  const auto allowed = allowed_keys(subcommand);
  for (const auto& [key, value] : values) {
    if (!allowed.count(key)) throw ParseError("unknown config key '" + key + "' for subcommand " + subcommand);
  }
  const auto get = [&](const std::string& key) -> const std::string* {
    const auto it = values.find(key);
    return it == values.end() ? nullptr : &it->second;
  };

  RunConfig cfg;
  cfg.subcommand = subcommand;
  if (auto v = get("out")) {
    if (v->empty()) throw UsageError("config key 'out' is empty");
    cfg.out_dir = *v;
  }
  if (auto v = get("seed")) cfg.seed = parse_seed("seed", *v);
  if (auto v = get("tol")) cfg.tol = parse_real("tol", *v);
  if (!(cfg.tol > 0.0)) throw UsageError("config key 'tol' must be > 0");
  if (auto v = get("parallelism")) cfg.parallelism = parse_int("parallelism", *v);
  if (cfg.parallelism < 1) throw UsageError("config key 'parallelism' must be >= 1");
  if (subcommand == "repro") {
    if (auto v = get("figure")) cfg.figure = *v;
    if (cfg.figure.empty()) throw UsageError("repro needs a figure: " + [] {
      std::string s;
      for (const auto& f : repro_figures()) s += f + " ";
      return s + "all";
    }());
    if (cfg.figure != "all" && repro_runs(cfg.figure).empty()) throw UsageError("unknown figure '" + cfg.figure + "'");
    return cfg;
  }

  if (auto v = get("model")) cfg.model = parse_model(*v);
  if (auto v = get("matrix")) cfg.matrix_path = *v;
  if (cfg.model == Model::FromFile && cfg.matrix_path.empty()) throw UsageError("model from_file needs matrix=PATH");
  if (auto v = get("mode")) cfg.mode = *v;
  if (subcommand == "krylov" && cfg.mode != "state" && cfg.mode != "operator" && cfg.mode != "log_uf") {
    throw ParseError("config key 'mode' must be state, operator or log_uf");
  }
  if (subcommand == "sweep" && cfg.mode != "state" && cfg.mode != "operator") {
    throw ParseError("config key 'mode' must be state or operator");
  }

  const bool large_default = subcommand == "spectrum" || (subcommand != "map" && cfg.mode == "state");
  cfg.n_dim = large_default ? 350 : 32;
  if (cfg.model == Model::FromFile) cfg.n_dim = load_unitary(cfg.matrix_path).dim();
  if (auto v = get("n")) {
    cfg.n_dim = parse_int("n", *v);
    if (cfg.model == Model::FromFile) throw UsageError("config key 'n' is implied by the matrix file");
  }
  if (cfg.n_dim < 1) throw UsageError("config key 'n' must be >= 1");
  if (subcommand == "spectrum" && cfg.n_dim < 2) throw UsageError("spectrum needs n >= 2");
  if (auto v = get("kappa")) cfg.kappa = parse_real("kappa", *v);
  if (cfg.kappa < 0.0) throw UsageError("config key 'kappa' must be >= 0");
  if (auto v = get("alpha")) cfg.alpha = parse_real("alpha", *v);
  if (auto v = get("beta")) cfg.beta = parse_real("beta", *v);
  const auto reduced = FloquetParams::make(cfg.n_dim, cfg.kappa, cfg.alpha, cfg.beta);
  cfg.alpha = reduced.alpha;
  cfg.beta = reduced.beta;

  if (auto v = get("initial")) cfg.initial = InitialCondition::parse(*v);
  if (auto v = get("engine")) {
    if (cfg.mode != "log_uf") throw UsageError("config key 'engine' only applies to mode=log_uf");
    if (*v != "lanczos" && *v != "arnoldi") throw ParseError("config key 'engine' must be lanczos or arnoldi");
    cfg.engine = *v;
  }
  if (auto v = get("max_steps")) cfg.max_steps = parse_int("max_steps", *v);
  if (cfg.max_steps < 0) throw UsageError("config key 'max_steps' must be >= 0");
  if (auto v = get("steps")) {
    cfg.steps = parse_int("steps", *v);
    if (*cfg.steps < 0) throw UsageError("config key 'steps' must be >= 0");
  }
  if (auto v = get("steps_factor")) cfg.steps_factor = parse_int("steps_factor", *v);
  if (cfg.steps_factor < 0) throw UsageError("config key 'steps_factor' must be >= 0");
  if (auto v = get("window_fraction")) cfg.window_fraction = parse_real("window_fraction", *v);
  if (!(cfg.window_fraction > 0.0 && cfg.window_fraction <= 1.0)) {
    throw UsageError("config key 'window_fraction' must lie in (0, 1]");
  }
  if (auto v = get("amplitudes")) cfg.amplitudes = parse_bool("amplitudes", *v);

  if (auto v = get("study")) cfg.study = *v;
  if (cfg.study != "sweep" && cfg.study != "dk_vs_coupling" && cfg.study != "fluctuation_vs_size") {
    throw ParseError("config key 'study' must be sweep, dk_vs_coupling or fluctuation_vs_size");
  }
  if (auto v = get("n_values")) {
    if (cfg.model == Model::FromFile) throw UsageError("config key 'n_values' is implied by the matrix file");
    cfg.n_values = parse_int_list("n_values", *v);
  }
  for (int n : cfg.n_values) {
    if (n < 1) throw UsageError("config key 'n_values' must hold values >= 1");
  }
  if (auto v = get("kappa_values")) cfg.kappa_values = parse_real_list("kappa_values", *v);
  for (double k : cfg.kappa_values) {
    if (k < 0.0) throw UsageError("config key 'kappa_values' must hold values >= 0");
  }
  if (auto v = get("extra_diagonal")) cfg.extra_diagonal = parse_int("extra_diagonal", *v);
  if (auto v = get("with_complexity")) cfg.with_complexity = parse_bool("with_complexity", *v);

  if (auto v = get("n_bins")) cfg.n_bins = parse_int("n_bins", *v);
  if (cfg.n_bins < 1) throw UsageError("config key 'n_bins' must be >= 1");
  if (auto v = get("s_max")) cfg.s_max = parse_real("s_max", *v);
  if (!(cfg.s_max > 0.0)) throw UsageError("config key 's_max' must be > 0");

  if (subcommand == "krylov" || subcommand == "sweep") {
    const InitialCondition ic = cfg.initial_or_default();
    if (cfg.mode == "state" && ic.space() != SpaceKind::State) {
      throw UsageError("initial condition '" + ic.to_string() + "' is an operator but mode=state");
    }
    if (cfg.mode == "operator" && ic.space() != SpaceKind::Operator) {
      throw UsageError("initial condition '" + ic.to_string() + "' is a state but mode=operator");
    }
    const int smallest = cfg.n_values.empty() ? cfg.n_dim : *std::min_element(cfg.n_values.begin(), cfg.n_values.end());
    check_initial_indices(ic, smallest);
  }
  return cfg;
}

Outcome cmd_map(const RunConfig& cfg, std::ostream& log) {
  const UnitaryMatrix u = build_unitary(cfg);
  log << "floqrylov: built " << to_string(cfg.model) << " N=" << cfg.n_dim << ", unitarity defect " << u.defect()
      << "\n";
  Outcome outcome;
  prepare_out_dir(cfg.out_dir);
  write_file(outcome, cfg.out_dir / "matrix.json", unitary_to_json(u.matrix()));
  outcome.summary["defect"] = format_double(u.defect());
  outcome.summary["N"] = std::to_string(u.dim());
  return outcome;
}

Outcome cmd_krylov(const RunConfig& cfg, std::ostream& log) {
  const UnitaryMatrix u = build_unitary(cfg);
  const InitialCondition ic = cfg.initial_or_default();
  const KrylovVector v0 = initial_vector(ic, cfg.n_dim, cfg.seed);

  json summary = {{"subcommand", "krylov"}, {"mode", cfg.mode},   {"params", params_json(cfg)},
                  {"initial", ic.to_string()}, {"seed", cfg.seed}, {"tol", cfg.tol}};
  std::string hessenberg, lanczos, amplitudes;
  std::vector<double> sub;
  std::optional<ComplexityTrace> trace;
  int dk = 0;
  int dk_max = 0;
  AmplitudeSeries amps;

  if (cfg.mode == "log_uf") {
    const CMatrix h = effective_hamiltonian(u);
    const Liouvillian l = ic.space() == SpaceKind::State ? Liouvillian::hermitian_on_state(h)
                                                          : Liouvillian::hermitian_commutator(h);
    const int max_dim = cfg.max_steps > 0 ? cfg.max_steps : l.max_krylov_dim();
    dk_max = l.max_krylov_dim();
    std::vector<double> a, b;
    bool terminated = false;
    if (cfg.engine == "lanczos") {
      const LanczosData data = lanczos_iterate(l, v0, max_dim, cfg.tol);
      a = data.a;
      b = data.b;
      terminated = data.terminated;
      lanczos = lanczos_csv(data);
    } else {
      const KrylovBasis basis = arnoldi_iterate(l, v0, max_dim, cfg.tol);
      for (int n = 0; n < basis.dk; ++n) a.push_back(basis.hessenberg(n, n).real());
      b = subdiagonal(basis);
      terminated = basis.terminated;
      hessenberg = hessenberg_csv(basis.hessenberg);
    }
    dk = static_cast<int>(a.size());
    CMatrix tri = CMatrix::Zero(dk, dk);
    for (int n = 0; n < dk; ++n) tri(n, n) = a[static_cast<std::size_t>(n)];
    for (int n = 0; n + 1 < dk; ++n) tri(n + 1, n) = tri(n, n + 1) = b[static_cast<std::size_t>(n)];
    if (hessenberg.empty()) hessenberg = hessenberg_csv(tri);
    if (lanczos.empty()) {
      LanczosData as_lanczos;
      as_lanczos.a = a;
      as_lanczos.b = b;
      as_lanczos.dk = dk;
      lanczos = lanczos_csv(as_lanczos);
    }
    sub = b;
    const int steps = cfg.steps.value_or(cfg.steps_factor * dk);
    std::vector<double> times(static_cast<std::size_t>(steps) + 1);
    for (int j = 0; j <= steps; ++j) times[static_cast<std::size_t>(j)] = j;
    amps = evolve_chain(a, b, times);
    summary["engine"] = cfg.engine;
    summary["terminated"] = terminated;
    summary["steps"] = steps;
  } else {
    const Liouvillian l = make_liouvillian(parse_mode(cfg.mode), u);
    const int max_dim = cfg.max_steps > 0 ? cfg.max_steps : l.max_krylov_dim();
    dk_max = l.max_krylov_dim();
    const KrylovBasis basis = arnoldi_iterate(l, v0, max_dim, cfg.tol);
    dk = basis.dk;
    hessenberg = hessenberg_csv(basis.hessenberg);
    sub = subdiagonal(basis);
    const int steps = cfg.steps.value_or(cfg.steps_factor * dk);
    amps = amplitudes_direct(basis, l, v0, steps);
    const AmplitudeSeries recursive = amplitudes_recursive(basis.hessenberg, dk, steps);
    summary["terminated"] = basis.terminated;
    summary["steps"] = steps;
    summary["route_max_diff"] = number_or_null(max_abs(amps.amps - recursive.amps));
    summary["max_norm_defect"] = number_or_null(std::max(amps.max_norm_defect(), recursive.max_norm_defect()));
  }
  trace = complexity_trace(amps, cfg.window_fraction);
  log << "floqrylov: " << cfg.mode << " run N=" << cfg.n_dim << " kappa=" << cfg.kappa << ": D_K=" << dk << " of "
      << dk_max << "\n";

  summary["dk"] = dk;
  summary["dk_max"] = dk_max;
  summary["h_subdiag_std"] = number_or_null(population_std(sub));
  summary["window_fraction"] = cfg.window_fraction;
  summary["saturation_mean"] = number_or_null(trace->saturation_mean);
  summary["saturation_std"] = number_or_null(trace->saturation_std);

  Outcome outcome;
  prepare_out_dir(cfg.out_dir);
  write_file(outcome, cfg.out_dir / "hessenberg.csv", hessenberg);
  write_file(outcome, cfg.out_dir / "subdiagonal.csv", subdiagonal_csv(sub));
  write_file(outcome, cfg.out_dir / "complexity.csv", complexity_csv(*trace));
  if (!lanczos.empty()) write_file(outcome, cfg.out_dir / "lanczos.csv", lanczos);
  if (cfg.amplitudes) write_file(outcome, cfg.out_dir / "amplitudes.csv", amplitudes_csv(amps));
  write_file(outcome, cfg.out_dir / "summary.json", json_text(summary));
  outcome.summary["dk"] = std::to_string(dk);
  outcome.summary["dk_max"] = std::to_string(dk_max);
  outcome.summary["saturation_mean"] = format_double(trace->saturation_mean);
  return outcome;
}

Outcome cmd_sweep(const RunConfig& cfg, std::ostream& log) {
  const SweepSpec spec = cfg.sweep_spec();
  log << "floqrylov: " << cfg.study << " over " << spec.grid.size() << " points, parallelism " << cfg.parallelism
      << "\n";
  SweepResult result;
  if (cfg.study == "dk_vs_coupling") {
    result = dk_vs_coupling(spec, cfg.parallelism);
  } else if (cfg.study == "fluctuation_vs_size") {
    result = fluctuation_vs_size(spec, cfg.parallelism);
  } else {
    result = run_sweep(spec, cfg.parallelism);
  }
  Outcome outcome;
  prepare_out_dir(cfg.out_dir);
  write_file(outcome, cfg.out_dir / "sweep.csv", sweep_csv(result));
  write_file(outcome, cfg.out_dir / "sweep_meta.json", result.metadata_json);
  int failed = 0;
  for (const auto& row : result.rows) {
    if (row.ok()) continue;
    ++failed;
    log << "floqrylov: point " << row.index << " failed: " << row.status << "\n";
  }
  outcome.summary["points"] = std::to_string(result.rows.size());
  outcome.summary["failed"] = std::to_string(failed);
  if (failed > 0) outcome.exit_code = kExitNumerical;
  return outcome;
}

Outcome cmd_spectrum(const RunConfig& cfg, std::ostream& log) {
  const UnitaryMatrix u = build_unitary(cfg);
  QuasiEnergySpectrum spectrum = quasi_energies(u);
  const SpectrumStats stats = spectrum_stats(spectrum, cfg.n_bins, cfg.s_max);
  const json summary = {
      {"subcommand", "spectrum"},
      {"params", params_json(cfg)},
      {"n_spacings", stats.spacings.size()},
      {"n_bins", cfg.n_bins},
      {"s_max", cfg.s_max},
      {"r_mean", stats.r_mean},
      {"l1_to_poisson", stats.histogram.l1_to_poisson()},
      {"l1_to_gue", stats.histogram.l1_to_gue()},
  };
  log << "floqrylov: spectrum N=" << cfg.n_dim << " r_mean=" << stats.r_mean << "\n";
  Outcome outcome;
  prepare_out_dir(cfg.out_dir);
  write_file(outcome, cfg.out_dir / "histogram.csv", histogram_csv(stats.histogram));
  write_file(outcome, cfg.out_dir / "spectrum_summary.json", json_text(summary));
  outcome.summary["r_mean"] = format_double(stats.r_mean);
  outcome.summary["l1_to_poisson"] = format_double(stats.histogram.l1_to_poisson());
  outcome.summary["l1_to_gue"] = format_double(stats.histogram.l1_to_gue());
  return outcome;
}

std::vector<std::string> repro_figures() {
  return {"fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8"};
}

std::vector<ReproRun> repro_runs(const std::string& figure) {
  const KeyValues state_weak = {{"mode", "state"}, {"n", "350"}, {"kappa", "0.5"}};
  const KeyValues state_strong = {{"mode", "state"}, {"n", "350"}, {"kappa", "10"}};
  const KeyValues op_weak = {{"mode", "operator"}, {"n", "32"}, {"kappa", "0.5"}};
  const KeyValues op_strong = {{"mode", "operator"}, {"n", "32"}, {"kappa", "10"}};
  if (figure == "fig1") {
    return {{"weak", "krylov", state_weak},
            {"strong", "krylov", state_strong},
            {"strong_offsets", "krylov", {{"mode", "state"}, {"n", "350"}, {"kappa", "10"}, {"alpha", "0.2"}, {"beta", "0.3"}}}};
  }
  if (figure == "fig2") {
    return {{"fluctuation", "sweep",
             {{"study", "fluctuation_vs_size"}, {"mode", "state"}, {"n_values", "50:350:50"}, {"kappa_values", "0.5,10"}}},
            {"dk", "sweep", {{"study", "dk_vs_coupling"}, {"mode", "state"}, {"n", "350"}, {"kappa_values", "0:10:0.25"}}}};
  }
  if (figure == "fig3") return {{"weak", "krylov", state_weak}, {"strong", "krylov", state_strong}};
  if (figure == "fig4") return {{"weak", "krylov", op_weak}, {"strong", "krylov", op_strong}};
  if (figure == "fig5") {
    return {{"fluctuation", "sweep",
             {{"study", "fluctuation_vs_size"}, {"mode", "operator"}, {"n_values", "8:40:4"}, {"kappa_values", "0.5,10"}}},
            {"dk", "sweep",
             {{"study", "dk_vs_coupling"},
              {"mode", "operator"},
              {"n", "32"},
              {"alpha", "0.2"},
              {"beta", "0.3"},
              {"kappa_values", "0,0.25,0.5,1,2,3,4,6,8,10"}}}};
  }
  if (figure == "fig6") return {{"weak", "krylov", op_weak}, {"strong", "krylov", op_strong}};
  if (figure == "fig7") {
    return {{"weak", "krylov", {{"mode", "log_uf"}, {"n", "32"}, {"kappa", "0.5"}}},
            {"strong", "krylov", {{"mode", "log_uf"}, {"n", "32"}, {"kappa", "10"}}}};
  }
  if (figure == "fig8") {
    return {{"integrable", "spectrum", {{"n", "350"}, {"kappa", "0.3"}}},
            {"chaotic", "spectrum", {{"n", "350"}, {"kappa", "10"}, {"alpha", "0.2"}, {"beta", "0.3"}}}};
  }
  return {};
}

namespace {

Outcome dispatch(const RunConfig& cfg, std::ostream& log) {
  // fail on an unusable output directory before spending any compute
  if (cfg.subcommand != "repro") prepare_out_dir(cfg.out_dir);
  if (cfg.subcommand == "map") return cmd_map(cfg, log);
  if (cfg.subcommand == "krylov") return cmd_krylov(cfg, log);
  if (cfg.subcommand == "sweep") return cmd_sweep(cfg, log);
  if (cfg.subcommand == "spectrum") return cmd_spectrum(cfg, log);
  return cmd_repro(cfg, log);
}

}  // namespace

Outcome cmd_repro(const RunConfig& cfg, std::ostream& log) {
  const std::vector<std::string> figures = cfg.figure == "all" ? repro_figures() : std::vector<std::string>{cfg.figure};
  // build every config first so a bad override fails before any run starts
  std::vector<std::pair<RunConfig, std::string>> plan;
  for (const auto& fig : figures) {
    for (const auto& run : repro_runs(fig)) {
      KeyValues values = run.values;
      values["seed"] = std::to_string(cfg.seed);
      values["tol"] = format_double(cfg.tol);
      values["parallelism"] = std::to_string(cfg.parallelism);
      values["out"] = (cfg.out_dir / fig / run.name).string();
      std::string text;
      for (const auto& [k, v] : values) {
        if (k != "out") text += k + " = " + v + "\n";
      }
      plan.emplace_back(build_config(run.subcommand, values), run.subcommand + "\n" + text);
    }
  }
  Outcome total;
  int runs = 0;
  for (const auto& [run_cfg, text] : plan) {
    log << "floqrylov: repro " << run_cfg.out_dir.string() << "\n";
    Outcome one = dispatch(run_cfg, log);
    const auto nl = text.find('\n');
    write_file(one, run_cfg.out_dir / "config.txt", "# floqrylov " + text.substr(0, nl) + "\n" + text.substr(nl + 1));
    total.files.insert(total.files.end(), one.files.begin(), one.files.end());
    total.exit_code = std::max(total.exit_code, one.exit_code);
    ++runs;
  }
  total.summary["runs"] = std::to_string(runs);
  return total;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Krylov subspaces and complexity for Floquet quantum maps", "floqrylov"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  struct Shared {
    std::string config;
    std::optional<std::string> out_dir;
    std::optional<std::string> seed;
    std::optional<std::string> tol;
    std::optional<std::string> parallelism;
    std::vector<std::string> positional;
  };
  std::map<std::string, Shared> shared;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"map", "build a Floquet matrix and save it as JSON"},
      {"krylov", "Arnoldi (or Lanczos for mode=log_uf) plus complexity traces"},
      {"sweep", "parameter sweep over an N x kappa grid"},
      {"spectrum", "quasi-energy spacing statistics"},
      {"repro", "canned runs for fig1 .. fig8 (or all)"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    auto& s = shared[name];
    sub->add_option("--config", s.config, "flat key = value config file");
    sub->add_option("--out", s.out_dir, "output directory");
    sub->add_option("--seed", s.seed, "random seed");
    sub->add_option("--tol", s.tol, "Krylov termination tolerance");
    sub->add_option("--parallelism", s.parallelism, "concurrent sweep points");
    sub->add_option("params", s.positional, name == "repro" ? "figure name, then key=value overrides"
                                                            : "key=value overrides");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "floqrylov: " << e.what() << "\n";
    print_summary(out, "", kExitConfig, {{"message", e.what()}});
    return kExitConfig;
  }

  std::string subcommand;
  for (const auto* sub : app.get_subcommands()) subcommand = sub->get_name();
  const Shared& s = shared[subcommand];

  Outcome outcome;
  try {
    KeyValues values;
    if (!s.config.empty()) values = parse_config_text(read_text_file(s.config));
    if (const char* env = std::getenv("FLOQRYLOV_OUT"); env && *env) values["out"] = env;
    if (const char* env = std::getenv("FLOQRYLOV_SEED"); env && *env) values["seed"] = env;
    for (const auto& item : s.positional) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) {
        if (subcommand != "repro") throw UsageError("expected key=value, got '" + item + "'");
        values["figure"] = item;
        continue;
      }
      const std::string key = trim(item.substr(0, eq));
      if (key.empty()) throw UsageError("empty key in '" + item + "'");
      values[key] = trim(item.substr(eq + 1));
    }
    if (s.out_dir) values["out"] = *s.out_dir;
    if (s.seed) values["seed"] = *s.seed;
    if (s.tol) values["tol"] = *s.tol;
    if (s.parallelism) values["parallelism"] = *s.parallelism;

    const RunConfig cfg = build_config(subcommand, values);
    outcome = dispatch(cfg, err);
    outcome.summary["out"] = cfg.out_dir.string();
  } catch (const std::exception& e) {
    const int code = exit_code_for(e);
    err << "floqrylov: error: " << e.what() << "\n";
    print_summary(out, subcommand, code, {{"message", e.what()}});
    return code;
  }
  outcome.summary["files"] = std::to_string(outcome.files.size());
  for (const auto& f : outcome.files) err << "floqrylov: wrote " << f.string() << "\n";
  print_summary(out, subcommand, outcome.exit_code, outcome.summary);
  return outcome.exit_code;
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace floqrylov::cli
