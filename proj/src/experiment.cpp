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

#include "dissipa/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

namespace dissipa {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_factor(std::string_view token, std::string_view whole) {
  token = trim(token);
  if (token == "pi") return std::numbers::pi;
  double value = 0.0;
  const char* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (token.empty() || ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw ConfigError("invalid number '" + std::string(whole) + "'");
  }
  return value;
}

// A number, "pi", or a product/quotient of those such as "pi/4" or "0.5*pi".
double parse_number(std::string_view text) {
  text = trim(text);
  double result = 1.0;
  char op = '*';
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    // A sign right after an exponent marker belongs to the number.
    if (i < text.size() && text[i] != '*' && text[i] != '/') continue;
    const double f = parse_factor(text.substr(start, i - start), text);
    result = op == '*' ? result * f : result / f;
    if (i < text.size()) op = text[i];
    start = i + 1;
  }
  if (!std::isfinite(result)) throw ConfigError("invalid number '" + std::string(text) + "'");
  return result;
}

int parse_int(std::string_view text) {
  const double v = parse_number(text);
  if (v != std::floor(v) || std::abs(v) > 1e9) {
    throw ConfigError("expected an integer, got '" + std::string(text) + "'");
  }
  return static_cast<int>(v);
}

bool parse_bool(std::string_view text) {
  const auto v = trim(text);
  if (v == "on" || v == "true" || v == "yes" || v == "1") return true;
  if (v == "off" || v == "false" || v == "no" || v == "0") return false;
  throw ConfigError("expected on/off, got '" + std::string(v) + "'");
}

ComplexMatrix parse_real_matrix(std::string_view text) {
  const auto rows = split(text, ';');
  const auto n = static_cast<Eigen::Index>(rows.size());
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto cols = split(rows[static_cast<std::size_t>(i)], ',');
    if (static_cast<Eigen::Index>(cols.size()) != n) {
      throw ConfigError("initial_state matrix must be square");
    }
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = parse_number(cols[static_cast<std::size_t>(j)]);
  }
  return m;
}

std::string join_path(const std::filesystem::path& dir, const char* name) {
  return (dir / name).string();
}

std::ofstream open_output(const std::filesystem::path& file) {
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  std::ofstream os(file, std::ios::binary);
  if (!os) throw ConfigError("cannot open '" + file.string() + "' for writing");
  return os;
}

template <typename Fn>
void parallel_for(std::size_t count, int jobs, Fn&& fn) {
  const auto workers =
      static_cast<std::size_t>(std::clamp<long long>(jobs, 1, static_cast<long long>(std::max<std::size_t>(count, 1))));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

// --- Model kinds --------------------------------------------------------------

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::LambdaFull: return "lambda_full";
    case ModelKind::LambdaEffective: return "lambda_effective";
    case ModelKind::TwoAtomFull: return "two_atom_full";
    case ModelKind::TwoAtomEffective: return "two_atom_effective";
  }
  return "unknown";
}

ModelKind parse_model_kind(std::string_view name) {
  name = trim(name);
  if (name == "lambda_full") return ModelKind::LambdaFull;
  if (name == "lambda_effective") return ModelKind::LambdaEffective;
  if (name == "two_atom_full") return ModelKind::TwoAtomFull;
  if (name == "two_atom_effective") return ModelKind::TwoAtomEffective;
  throw ConfigError("unknown model '" + std::string(name) +
                    "' (expected lambda_full, lambda_effective, two_atom_full or "
                    "two_atom_effective)");
}

bool is_lambda(ModelKind kind) {
  return kind == ModelKind::LambdaFull || kind == ModelKind::LambdaEffective;
}

// --- Config -------------------------------------------------------------------

std::vector<double> parse_value_list(std::string_view text) {
  text = trim(text);
  std::vector<double> values;
  if (text.find(':') != std::string_view::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw ConfigError("range must be start:stop:step");
    const double start = parse_number(parts[0]);
    const double stop = parse_number(parts[1]);
    const double step = parse_number(parts[2]);
    if (!(step > 0.0) || stop < start) throw ConfigError("range needs step > 0 and stop >= start");
    const auto n = static_cast<long long>(std::floor((stop - start) / step + 1e-9));
    if (n > 100000) throw ConfigError("range has too many values");
    for (long long i = 0; i <= n; ++i) values.push_back(start + static_cast<double>(i) * step);
  } else {
    for (const auto& part : split(text, ',')) values.push_back(parse_number(part));
  }
  if (values.empty()) throw ConfigError("empty value list");
  return values;
}

void ExperimentConfig::set(std::string_view path, double value) {
  if (!std::isfinite(value)) throw ConfigError("non-finite value for '" + std::string(path) + "'");
  const auto integer = [&]() {
    if (value != std::floor(value)) throw ConfigError("'" + std::string(path) + "' must be an integer");
    return static_cast<int>(value);
  };

  if (path == "t_final") { t_final = value; return; }
  if (path == "dt") { dt = value; return; }
  if (path == "record_stride") { record_stride = integer(); return; }
  if (path == "model.control_gain") { control_gain = value; return; }
  if (path == "model.control_cap") { control_cap = value; return; }

  if (is_lambda(model)) {
    auto& p = lambda;
    if (path == "model.omega0") p.omega0 = value;
    else if (path == "model.theta") p.theta = value;
    else if (path == "model.phi") p.phi = value;
    else if (path == "model.gamma") p.gamma1 = p.gamma2 = value;
    else if (path == "model.gamma1") p.gamma1 = value;
    else if (path == "model.gamma2") p.gamma2 = value;
    else if (path == "model.mu1") p.mu1 = value;
    else if (path == "model.mu2") p.mu2 = value;
    else if (path == "model.eta") p.eta = value;
    else throw ConfigError("unknown parameter '" + std::string(path) + "' for " + to_string(model));
    return;
  }
  auto& p = two_atom;
  if (path == "model.omega0") p.omega0 = value;
  else if (path == "model.omega_mw") p.omega_mw = value;
  else if (path == "model.delta") p.delta = value;
  else if (path == "model.lambda_c") p.lambda_c = value;
  else if (path == "model.kappa") p.kappa = value;
  else if (path == "model.gamma1") p.gamma1 = value;
  else if (path == "model.gamma2") p.gamma2 = value;
  else if (path == "model.gamma2_ratio") gamma2_ratio = value;
  else if (path == "model.mu1") p.mu1 = value;
  else if (path == "model.mu2") p.mu2 = value;
  else if (path == "model.n_max") p.n_max = integer();
  else throw ConfigError("unknown parameter '" + std::string(path) + "' for " + to_string(model));
}

ExperimentConfig ExperimentConfig::with(std::string_view path, double value) const {
  ExperimentConfig copy = *this;
  copy.set(path, value);
  return copy;
}

ExperimentConfig ExperimentConfig::with_model(ModelKind kind) const {
  if (is_lambda(kind) != is_lambda(model)) {
    throw ConfigError("cannot switch between the lambda and two-atom families");
  }
  ExperimentConfig copy = *this;
  copy.model = kind;
  return copy;
}

ExperimentConfig ExperimentConfig::parse(std::string_view text) {
  struct Entry {
    std::string key;
    std::string value;
    int line;
  };
  std::vector<Entry> entries;
  std::set<std::string> seen;
  int line_no = 0;
  for (auto raw : split(text, '\n')) {
    ++line_no;
    const auto hash = raw.find('#');
    const auto line = trim(raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const auto where = " (line " + std::to_string(line_no) + ")";
    if (eq == std::string_view::npos) throw ConfigError("expected key = value" + where);
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty() || value.empty()) throw ConfigError("empty key or value" + where);
    if (!seen.insert(key).second) throw ConfigError("duplicate key '" + key + "'" + where);
    entries.push_back({key, value, line_no});
  }

  ExperimentConfig cfg;
  for (const auto& e : entries) {
    if (e.key == "model") cfg.model = parse_model_kind(e.value);
  }
  std::optional<ComplexMatrix> real_part, imag_part;
  for (const auto& e : entries) {
    const auto where = " (line " + std::to_string(e.line) + ")";
    try {
      if (e.key == "model") continue;
      if (e.key == "initial_state") {
        cfg.initial_state = e.value;
      } else if (e.key == "initial_state.real") {
        real_part = parse_real_matrix(e.value);
      } else if (e.key == "initial_state.imag") {
        imag_part = parse_real_matrix(e.value);
      } else if (e.key == "controls") {
        cfg.controls_enabled = parse_bool(e.value);
      } else if (e.key == "output_dir") {
        cfg.output_dir = e.value;
      } else if (e.key.rfind("sweep.", 0) == 0) {
        SweepAxis axis{e.key.substr(6), parse_value_list(e.value)};
        ExperimentConfig probe = cfg;
        probe.set(axis.path, axis.values.front());
        cfg.sweep.push_back(std::move(axis));
      } else if (e.key == "record_stride" || e.key == "model.n_max") {
        cfg.set(e.key, parse_int(e.value));
      } else {
        cfg.set(e.key, parse_number(e.value));
      }
    } catch (const ConfigError& err) {
      throw ConfigError(std::string(err.what()) + where);
    }
  }
  if (cfg.initial_state == "matrix") {
    if (!real_part) throw ConfigError("initial_state = matrix needs initial_state.real");
    ComplexMatrix m = *real_part;
    if (imag_part) {
      if (imag_part->rows() != m.rows()) throw ConfigError("initial_state.imag has the wrong size");
      m += Complex(0.0, 1.0) * *imag_part;
    }
    cfg.initial_matrix = std::move(m);
  } else if (real_part || imag_part) {
    throw ConfigError("initial_state.real/imag require initial_state = matrix");
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& file) {
  std::ifstream is(file, std::ios::binary);
  if (!is) throw ConfigError("cannot read config '" + file.string() + "'");
  std::ostringstream buffer;
  buffer << is.rdbuf();
  return parse(buffer.str());
}

void ExperimentConfig::validate() const {
  if (!(t_final > 0.0)) throw ConfigError("t_final must be > 0");
  if (!(dt > 0.0) || dt > t_final) throw ConfigError("dt must satisfy 0 < dt <= t_final");
  if (record_stride < 1) throw ConfigError("record_stride must be >= 1");
  if (sweep.size() > 3) throw ConfigError("at most 3 sweep axes are supported");
  std::set<std::string> paths;
  for (const auto& axis : sweep) {
    if (axis.values.empty()) throw ConfigError("sweep axis '" + axis.path + "' has no values");
    if (!paths.insert(axis.path).second) throw ConfigError("sweep axis '" + axis.path + "' repeated");
    for (double v : axis.values) {
      if (!std::isfinite(v)) throw ConfigError("sweep axis '" + axis.path + "' has a non-finite value");
    }
  }
  if (gamma2_ratio && !(*gamma2_ratio >= 0.0)) throw ConfigError("model.gamma2_ratio must be >= 0");
  if (!(control_gain >= 0.0)) throw ConfigError("model.control_gain must be >= 0");
  if (control_cap && !(*control_cap > 0.0)) throw ConfigError("model.control_cap must be > 0");
  if (initial_state == "matrix" && !initial_matrix) throw ConfigError("initial_state matrix missing");
}

CatalogModel ExperimentConfig::build() const {
  validate();
  auto finish = [&](CatalogModel built) {
    built.model.control_gain = control_gain;
    built.model.control_cap = control_cap;
    return built;
  };
  TwoAtomParams p = two_atom;
  if (gamma2_ratio) p.gamma2 = *gamma2_ratio * p.gamma1;
  try {
    switch (model) {
      case ModelKind::LambdaFull: return finish(build_lambda_full(lambda));
      case ModelKind::LambdaEffective: return finish(build_lambda_effective(lambda));
      case ModelKind::TwoAtomFull: return finish(build_two_atom_full(p));
      case ModelKind::TwoAtomEffective: return finish(build_two_atom_effective(p));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const InvalidInput& e) {
    throw ConfigError(e.what());
  }
  throw ConfigError("unknown model kind");
}

DensityMatrix ExperimentConfig::initial_state_for(const CatalogModel& built) const {
  try {
    if (initial_matrix) {
      if (initial_matrix->rows() != built.model.dim()) {
        throw ConfigError("initial_state matrix dimension does not match the model");
      }
      return DensityMatrix(*initial_matrix);
    }
    const std::string label = initial_state.empty() ? built.default_initial : initial_state;
    const std::string_view view = trim(label);
    if (view.rfind("mixture(", 0) == 0 && view.back() == ')') {
      std::vector<KetVector> kets;
      for (const auto& name : split(view.substr(8, view.size() - 9), ',')) {
        kets.push_back(built.state(std::string(name)));
      }
      return DensityMatrix::mixture(kets);
    }
    return DensityMatrix::pure(built.state(std::string(view)));
  } catch (const ConfigError&) {
    throw;
  } catch (const InvalidInput& e) {
    throw ConfigError(std::string("initial_state: ") + e.what());
  }
}

PropagationOptions ExperimentConfig::propagation_options() const {
  PropagationOptions o;
  o.t_final = t_final;
  o.dt = dt;
  o.record_stride = record_stride;
  return o;
}

// --- simulate -------------------------------------------------------------------

TrajectoryRecord simulate(const ExperimentConfig& config) {
  const CatalogModel built = config.build();
  const DensityMatrix rho0 = config.initial_state_for(built);
  if (config.controls_enabled && built.model.controls.empty()) {
    throw ConfigError("controls requested but the model has no control Hamiltonians");
  }
  if (config.controls_enabled) {
    const LyapunovController controller(built.model);
    return propagate(built.model, rho0, config.propagation_options(), &controller);
  }
  return propagate(built.model, rho0, config.propagation_options());
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.16e", x == 0.0 ? 0.0 : x);
  return buf;
}

void write_trajectory_csv(std::ostream& os, const TrajectoryRecord& record) {
  const std::size_t n_ctrl = record.controls.empty() ? 0 : record.controls.front().size();
  os << "t,V,Vdot";
  for (std::size_t n = 0; n < n_ctrl; ++n) os << ",f_" << n + 1;
  for (const auto& label : record.population_labels) os << ",P_" << label;
  os << '\n';
  for (std::size_t i = 0; i < record.size(); ++i) {
    os << format_double(record.times[i]) << ',' << format_double(record.v[i]) << ','
       << format_double(record.vdot[i]);
    for (double f : record.controls[i]) os << ',' << format_double(f);
    for (double p : record.populations[i]) os << ',' << format_double(p);
    os << '\n';
  }
}

void write_trajectory_csv(const std::filesystem::path& file, const TrajectoryRecord& record) {
  auto os = open_output(file);
  write_trajectory_csv(os, record);
}

TrajectoryRecord run_simulate(const ExperimentConfig& config) {
  if (!config.sweep.empty()) throw ConfigError("simulate does not accept a sweep section");
  TrajectoryRecord record = simulate(config);
  write_trajectory_csv(join_path(config.output_dir, "trajectory.csv"), record);
  return record;
}

// --- sweep ----------------------------------------------------------------------

const SweepCell& SweepResult::best() const {
  if (cells.empty()) throw InvalidInput("SweepResult::best: empty sweep");
  const auto it = std::max_element(cells.begin(), cells.end(),
                                   [](const SweepCell& a, const SweepCell& b) {
                                     return a.fidelity < b.fidelity;
                                   });
  return *it;
}

SweepResult sweep(const ExperimentConfig& config, int jobs) {
  config.validate();
  if (config.sweep.empty()) throw ConfigError("sweep requires at least one sweep axis");

  SweepResult result;
  result.axes = config.sweep;
  std::size_t total = 1;
  for (const auto& axis : config.sweep) total *= axis.values.size();

  result.cells.resize(total);
  for (std::size_t flat = 0; flat < total; ++flat) {
    auto& cell = result.cells[flat];
    cell.indices.resize(config.sweep.size());
    std::size_t rest = flat;
    for (std::size_t a = config.sweep.size(); a-- > 0;) {
      const auto n = config.sweep[a].values.size();
      cell.indices[a] = rest % n;
      rest /= n;
    }
    for (std::size_t a = 0; a < config.sweep.size(); ++a) {
      cell.values.push_back(config.sweep[a].values[cell.indices[a]]);
    }
  }

  ExperimentConfig base = config;
  base.sweep.clear();
  parallel_for(total, jobs, [&](std::size_t flat) {
    auto& cell = result.cells[flat];
    ExperimentConfig cfg = base;
    for (std::size_t a = 0; a < result.axes.size(); ++a) cfg.set(result.axes[a].path, cell.values[a]);
    const TrajectoryRecord record = simulate(cfg);
    cell.fidelity = record.v.back();
    cell.max_vdot = *std::max_element(record.vdot.begin(), record.vdot.end());
    const std::size_t n_ctrl = record.controls.front().size();
    cell.max_abs_controls.assign(n_ctrl, 0.0);
    for (const auto& row : record.controls) {
      for (std::size_t n = 0; n < n_ctrl; ++n) {
        cell.max_abs_controls[n] = std::max(cell.max_abs_controls[n], std::abs(row[n]));
      }
    }
  });
  return result;
}

void write_sweep_csv(std::ostream& os, const SweepResult& result) {
  for (const auto& axis : result.axes) os << axis.path << ',';
  os << "F_S,max_Vdot";
  const std::size_t n_ctrl =
      result.cells.empty() ? 0 : result.cells.front().max_abs_controls.size();
  for (std::size_t n = 0; n < n_ctrl; ++n) os << ",max_abs_f_" << n + 1;
  os << '\n';
  for (const auto& cell : result.cells) {
    for (double v : cell.values) os << format_double(v) << ',';
    os << format_double(cell.fidelity) << ',' << format_double(cell.max_vdot);
    for (double f : cell.max_abs_controls) os << ',' << format_double(f);
    os << '\n';
  }
}

SweepResult run_sweep(const ExperimentConfig& config, int jobs) {
  SweepResult result = sweep(config, jobs);
  auto os = open_output(join_path(config.output_dir, "sweep.csv"));
  write_sweep_csv(os, result);
  return result;
}

// --- verify ---------------------------------------------------------------------

StationarityReport verify(const ExperimentConfig& config) {
  const CatalogModel built = config.build();
  return verify_stationarity(built.model, built.target, built.complement);
}

namespace {

struct VerifyRow {
  std::string condition;
  double value;
  bool pass;
};

std::vector<VerifyRow> verify_rows(const StationarityReport& r) {
  std::vector<VerifyRow> rows;
  rows.push_back({"H|S> = 0", r.hamiltonian_residual, r.h_annihilates_target});
  for (std::size_t k = 0; k < r.lindblad_residuals.size(); ++k) {
    const double v = r.lindblad_residuals[k];
    rows.push_back({"L_" + std::to_string(k + 1) + "|S> = 0", v,
                    v <= StationarityReport::kThreshold});
  }
  for (std::size_t k = 0; k < r.lindblad_feed_norms.size(); ++k) {
    // Reported per operator; only one of them has to feed |S>.
    rows.push_back({"L_" + std::to_string(k + 1) + "^dag|S> != 0", r.lindblad_feed_norms[k],
                    r.target_reachable});
  }
  for (std::size_t m = 0; m < r.complement_drive_norms.size(); ++m) {
    const double v = r.complement_drive_norms[m];
    rows.push_back({"H|M_" + std::to_string(m + 1) + "> != 0", v,
                    v > StationarityReport::kThreshold});
  }
  return rows;
}

}  // namespace

void print_verify_table(std::ostream& os, const StationarityReport& report) {
  os << std::left << std::setw(22) << "condition" << std::setw(26) << "norm" << "status\n";
  for (const auto& row : verify_rows(report)) {
    os << std::left << std::setw(22) << row.condition << std::setw(26) << format_double(row.value)
       << (row.pass ? "pass" : "FAIL") << '\n';
  }
  os << "overall: " << (report.all_pass() ? "pass" : "FAIL") << '\n';
}

void write_verify_csv(std::ostream& os, const StationarityReport& report) {
  os << "condition,norm,pass\n";
  for (const auto& row : verify_rows(report)) {
    os << row.condition << ',' << format_double(row.value) << ',' << (row.pass ? 1 : 0) << '\n';
  }
  os << "all," << format_double(report.all_pass() ? 1.0 : 0.0) << ','
     << (report.all_pass() ? 1 : 0) << '\n';
}

StationarityReport run_verify(const ExperimentConfig& config, std::ostream& os) {
  const StationarityReport report = verify(config);
  print_verify_table(os, report);
  auto csv = open_output(join_path(config.output_dir, "verify.csv"));
  write_verify_csv(csv, report);
  return report;
}

// --- noise scan -----------------------------------------------------------------

std::vector<NoiseRow> noise_scan(const ExperimentConfig& config, const std::vector<double>& etas,
                                 int jobs) {
  config.validate();
  if (!is_lambda(config.model)) {
    throw ConfigError("noise-scan needs a model with noise channels (lambda_full or lambda_effective)");
  }
  if (etas.empty()) throw ConfigError("noise-scan needs at least one eta value");
  for (double eta : etas) {
    if (!(eta >= 0.0) || !std::isfinite(eta)) throw ConfigError("eta values must be finite and >= 0");
  }

  std::string gamma_path = "model.gamma";
  std::vector<double> gammas{config.lambda.gamma1};
  for (const auto& axis : config.sweep) {
    if (axis.path == "model.gamma" || axis.path == "model.gamma1") {
      gamma_path = axis.path;
      gammas = axis.values;
    } else {
      throw ConfigError("noise-scan only sweeps the decay rate; remove sweep." + axis.path);
    }
  }
  if (config.sweep.empty() && config.lambda.gamma1 != config.lambda.gamma2) gamma_path = "model.gamma1";

  ExperimentConfig base = config;
  base.sweep.clear();
  std::vector<NoiseRow> rows(etas.size() * gammas.size());
  parallel_for(rows.size(), jobs, [&](std::size_t i) {
    const double eta = etas[i / gammas.size()];
    const double gamma = gammas[i % gammas.size()];
    ExperimentConfig cfg = base.with("model.eta", eta);
    cfg.set(gamma_path, gamma);
    rows[i] = {eta, gamma, simulate(cfg).v.back()};
  });
  return rows;
}

void write_noise_csv(std::ostream& os, const std::vector<NoiseRow>& rows) {
  os << "eta,gamma,F_S\n";
  for (const auto& r : rows) {
    os << format_double(r.eta) << ',' << format_double(r.gamma) << ',' << format_double(r.fidelity)
       << '\n';
  }
}

std::vector<NoiseRow> run_noise_scan(const ExperimentConfig& config, const std::vector<double>& etas,
                                     int jobs) {
  auto rows = noise_scan(config, etas, jobs);
  auto os = open_output(join_path(config.output_dir, "noise.csv"));
  write_noise_csv(os, rows);
  return rows;
}

// --- full vs effective ------------------------------------------------------------

ZenoComparison compare_zeno(const ExperimentConfig& config) {
  if (config.initial_matrix) {
    throw ConfigError("compare-zeno needs a labeled initial state; the bases of the two pictures differ");
  }
  if (!config.sweep.empty()) throw ConfigError("compare-zeno does not accept a sweep section");
  const bool lambda = is_lambda(config.model);
  const ExperimentConfig full =
      config.with_model(lambda ? ModelKind::LambdaFull : ModelKind::TwoAtomFull);
  const ExperimentConfig effective =
      config.with_model(lambda ? ModelKind::LambdaEffective : ModelKind::TwoAtomEffective);

  ZenoComparison out{simulate(full), simulate(effective), 0.0};
  const auto ps_full = out.full.population("S");
  const auto ps_eff = out.effective.population("S");
  for (std::size_t i = 0; i < std::min(ps_full.size(), ps_eff.size()); ++i) {
    out.max_abs_delta_ps = std::max(out.max_abs_delta_ps, std::abs(ps_full[i] - ps_eff[i]));
  }
  return out;
}

ZenoComparison run_compare_zeno(const ExperimentConfig& config) {
  ZenoComparison cmp = compare_zeno(config);
  write_trajectory_csv(join_path(config.output_dir, "trajectory_full.csv"), cmp.full);
  write_trajectory_csv(join_path(config.output_dir, "trajectory_effective.csv"), cmp.effective);
  auto os = open_output(join_path(config.output_dir, "compare.csv"));
  os << "max_abs_delta_P_S,final_P_S_full,final_P_S_effective\n"
     << format_double(cmp.max_abs_delta_ps) << ','
     << format_double(cmp.full.population("S").back()) << ','
     << format_double(cmp.effective.population("S").back()) << '\n';
  return cmp;
}

}  // namespace dissipa
