// Copyright 2026 The wqed Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "wqed/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "wqed/error.hpp"
#include "wqed/fieldspace.hpp"
#include "wqed/parallel.hpp"
#include "wqed/qfi.hpp"
#include "wqed/spectrum.hpp"

namespace wqed::cli {
namespace {

const std::set<std::string> kCommands = {"dynamics", "spectrum", "qfi",
                                         "qfi-scan", "qbic",     "baseline"};
const std::set<std::string> kKeys = {
    "command", "eta",    "delta",  "beta", "phi2",    "t",      "t-max",
    "dt",      "method", "omega-range",   "j-cut",   "out",    "format",
    "log",     "workers"};
const std::set<std::string> kAxes = {"eta", "delta", "t", "omega-range"};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string short_fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_number(const std::string& key, const std::string& text) {
  const std::string s = trim(text);
  double x = 0.0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, x);
  if (s.empty() || ec != std::errc() || ptr != end || !std::isfinite(x)) {
    throw ConfigError("--" + key + ": '" + text + "' is not a finite number");
  }
  return x;
}

int parse_int(const std::string& key, const std::string& text) {
  const std::string s = trim(text);
  int x = 0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, x);
  if (s.empty() || ec != std::errc() || ptr != end) {
    throw ConfigError("--" + key + ": '" + text + "' is not an integer");
  }
  return x;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::string point_label(double eta, double delta, double t) {
  return "(eta=" + short_fmt(eta) + ", delta=" + short_fmt(delta) +
         ", gamma_t=" + short_fmt(t) + ")";
}

std::string point_label(double eta, double delta) {
  return "(eta=" + short_fmt(eta) + ", delta=" + short_fmt(delta) + ")";
}

using Rows = std::vector<std::vector<double>>;

// Calls fn and re-raises any failure with the parameter point appended,
// keeping configuration errors distinct from numerical ones.
template <typename Fn>
auto at_point(const std::string& label, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string(e.what()) + " at " + label);
  } catch (const std::exception& e) {
    throw NumericalError(std::string(e.what()) + " at " + label);
  }
}

// Runs every task, possibly concurrently, and concatenates their rows in
// index order. The lowest failing index decides the reported error.
Rows farm(const std::vector<std::function<Rows(Exec)>>& tasks) {
  const int n = static_cast<int>(tasks.size());
  std::vector<Rows> parts(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  // A single task gets the workers itself; otherwise parallelism is across tasks.
  const Exec inner = n == 1 ? Exec::kParallel : Exec::kSerial;
#pragma omp parallel for schedule(dynamic, 1) if (n > 1)
  for (int i = 0; i < n; ++i) {
    try {
      parts[i] = tasks[i](inner);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  Rows rows;
  for (auto& part : parts) {
    for (auto& r : part) rows.push_back(std::move(r));
  }
  return rows;
}

SystemParams params_at(const SweepConfig& c, double eta, double delta) {
  SystemParams p = c.params;
  p.eta = eta;
  p.delta = delta;
  return p;
}

Rows run_dynamics(const SweepConfig& c) {
  const SystemParams p = params_at(c, c.eta->values[0], c.delta->values[0]);
  at_point(point_label(p.eta, p.delta), [&] { p.validate(); });
  const AmplitudeTrace trace = at_point(point_label(p.eta, p.delta), [&] {
    if (c.method == Method::kOde) {
      return amplitude_ode(p, c.t_max, std::min({c.dt, 1e-2, p.eta / 10.0}));
    }
    std::vector<double> times;
    const auto steps = static_cast<long>(std::floor(c.t_max / c.dt + 1e-9));
    for (long k = 0; k <= steps; ++k) times.push_back(static_cast<double>(k) * c.dt);
    return c.method == Method::kSeries ? amplitude_series(p, times)
                                       : amplitude_poles(p, times);
  });
  Rows rows;
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    const Complex a = trace.c1[i];
    const Complex b = trace.c2[i];
    rows.push_back({trace.times[i], a.real(), a.imag(), b.real(), b.imag(),
                    std::norm(a), std::norm(b)});
  }
  return rows;
}

Rows run_spectrum(const SweepConfig& c) {
  std::vector<std::function<Rows(Exec)>> tasks;
  for (double eta : c.eta->values) {
    for (double delta : c.delta->values) {
      const SystemParams p = params_at(c, eta, delta);
      tasks.push_back([p, &c](Exec exec) {
        const SpectrumGrid g = at_point(point_label(p.eta, p.delta), [&] {
          return spectrum_g(p, c.omega ? c.omega->values : default_spectrum_grid(p), exec);
        });
        Rows rows;
        for (std::size_t i = 0; i < g.g.size(); ++i) {
          rows.push_back({p.eta, p.delta, g.omega_bar[i], g.g[i]});
        }
        return rows;
      });
    }
  }
  return farm(tasks);
}

// One model per (eta, delta); every time on the axis reuses it.
Rows run_qfi(const SweepConfig& c) {
  std::vector<std::function<Rows(Exec)>> tasks;
  for (double eta : c.eta->values) {
    for (double delta : c.delta->values) {
      const SystemParams p = params_at(c, eta, delta);
      tasks.push_back([p, &c](Exec exec) {
        const QfiModel model =
            at_point(point_label(p.eta, p.delta), [&] { return QfiModel(p, exec); });
        Rows rows;
        for (double t : c.t->values) {
          const double h =
              at_point(point_label(p.eta, p.delta, t), [&] { return model.qfi(t, exec).h; });
          rows.push_back({p.eta, p.delta, t, h});
        }
        return rows;
      });
    }
  }
  return farm(tasks);
}

Rows run_qbic(const SweepConfig& c) {
  std::vector<std::function<Rows(Exec)>> tasks;
  for (double eta : c.eta->values) {
    for (double delta : c.delta->values) {
      const SystemParams p = params_at(c, eta, delta);
      const double t = qbic_time(eta);
      tasks.push_back([p, t](Exec) {
        return at_point(point_label(p.eta, p.delta, t), [&] {
          return Rows{{p.eta, p.delta, t, loss_rate(p, t).gamma_rate,
                       loss_rate_gradient(p, t)}};
        });
      });
    }
  }
  return farm(tasks);
}

Rows run_baseline(const SweepConfig& c) {
  Rows rows;
  for (double t : c.t->values) {
    rows.push_back({t, at_point("(gamma_t=" + short_fmt(t) + ")", [&] { return baseline_qfi(t); })});
  }
  return rows;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

const Axis& require(const std::optional<Axis>& axis, const std::string& name,
                    const std::string& command) {
  if (!axis) {
    throw ConfigError(command + ": missing required axis --" + name);
  }
  return *axis;
}

void require_single(const std::optional<Axis>& axis, const std::string& name,
                    const std::string& command) {
  if (require(axis, name, command).values.size() != 1) {
    throw ConfigError(command + ": --" + name + " must be a single value");
  }
}

// Turns a validated key-value map into a config.
SweepConfig from_map(const std::map<std::string, std::string>& kv) {
  for (const auto& [key, value] : kv) {
    if (!kKeys.count(key)) throw ConfigError("unknown option '" + key + "'");
  }
  auto get = [&kv](const std::string& key) -> std::optional<std::string> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    return it->second;
  };

  SweepConfig c;
  c.command = get("command").value_or("");
  if (!kCommands.count(c.command)) {
    throw ConfigError("unknown command '" + c.command +
                      "' (expected dynamics, spectrum, qfi, qfi-scan, qbic or baseline)");
  }

  if (auto v = get("log")) {
    for (const auto& name : split(*v, ',')) {
      if (name.empty()) continue;
      if (!kAxes.count(name)) {
        throw ConfigError("--log: '" + name + "' is not an axis (eta, delta, t, omega-range)");
      }
      if (std::find(c.log_axes.begin(), c.log_axes.end(), name) == c.log_axes.end()) {
        c.log_axes.push_back(name);
      }
    }
    std::sort(c.log_axes.begin(), c.log_axes.end());
  }
  auto is_log = [&c](const std::string& name) {
    return std::find(c.log_axes.begin(), c.log_axes.end(), name) != c.log_axes.end();
  };
  auto axis = [&](const std::string& key) -> std::optional<Axis> {
    auto v = get(key);
    if (!v) return std::nullopt;
    return parse_axis(key, *v, is_log(key));
  };
  c.eta = axis("eta");
  c.delta = axis("delta");
  c.t = axis("t");
  c.omega = axis("omega-range");

  if (auto v = get("beta")) c.params.beta = parse_number("beta", *v);
  if (auto v = get("phi2")) c.params.phi2 = parse_number("phi2", *v);
  if (auto v = get("j-cut")) c.params.j_cut = parse_int("j-cut", *v);
  if (auto v = get("t-max")) c.t_max = parse_number("t-max", *v);
  if (auto v = get("dt")) c.dt = parse_number("dt", *v);
  if (auto v = get("out")) c.out = *v;
  if (auto v = get("method")) {
    if (*v == "series") {
      c.method = Method::kSeries;
    } else if (*v == "poles") {
      c.method = Method::kPoles;
    } else if (*v == "ode") {
      c.method = Method::kOde;
    } else {
      throw ConfigError("--method: '" + *v + "' (expected series, poles or ode)");
    }
  }
  if (auto v = get("format")) {
    if (*v == "csv") {
      c.format = Format::kCsv;
    } else if (*v == "json") {
      c.format = Format::kJson;
    } else {
      throw ConfigError("--format: '" + *v + "' (expected csv or json)");
    }
  }
  c.workers = workers_from_env(1);
  if (auto v = get("workers")) c.workers = parse_int("workers", *v);
  if (c.workers < 1) throw ConfigError("--workers: must be >= 1");

  if (!(c.params.beta > 0.0) || c.params.beta > 1.0) {
    throw ConfigError("--beta: must lie in (0, 1]");
  }
  if (c.params.j_cut < 1) throw ConfigError("--j-cut: must be >= 1");
  if (!(c.t_max > 0.0)) throw ConfigError("--t-max: must be > 0");
  if (!(c.dt > 0.0) || c.dt > c.t_max) throw ConfigError("--dt: must lie in (0, t-max]");
  if (c.eta) {
    for (double e : c.eta->values) {
      if (!(e > 0.0)) throw ConfigError("--eta: every value must be > 0");
    }
  }
  if (c.t) {
    for (double t : c.t->values) {
      if (t < 0.0) throw ConfigError("--t: every value must be >= 0");
    }
  }

  const std::string& cmd = c.command;
  if (cmd == "dynamics") {
    require_single(c.eta, "eta", cmd);
    require_single(c.delta, "delta", cmd);
  } else if (cmd == "spectrum" || cmd == "qbic") {
    require(c.eta, "eta", cmd);
    require(c.delta, "delta", cmd);
  } else if (cmd == "qfi" || cmd == "qfi-scan") {
    if (cmd == "qfi") {
      require_single(c.eta, "eta", cmd);
      require_single(c.delta, "delta", cmd);
      require_single(c.t, "t", cmd);
    } else {
      require(c.eta, "eta", cmd);
      require(c.delta, "delta", cmd);
      require(c.t, "t", cmd);
    }
    if (c.params.beta != 1.0) throw ConfigError(cmd + ": requires --beta 1");
  } else {
    require(c.t, "t", cmd);
  }
  return c;
}

struct Flags {
  std::map<std::string, CLI::Option*> options;
  std::map<std::string, std::string> values;
  std::vector<std::string> log;
  std::string config;
  std::string command;
};

void build_app(CLI::App& app, Flags& f) {
  app.require_subcommand(1);
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"dynamics", "Emitter amplitudes on a time grid"},
      {"spectrum", "Radiated field spectrum"},
      {"qfi", "Fisher information for the detuning at one point"},
      {"qfi-scan", "Fisher information on a parameter grid"},
      {"qbic", "Loss rate and its detuning gradient after the first round trip"},
      {"baseline", "Fisher information of non-interacting emitters"}};
  for (const auto& [name, help] : commands) {
    app.add_subcommand(name, help)->fallthrough();
  }
  const std::vector<std::pair<std::string, std::string>> options = {
      {"eta", "Round-trip delay (range start:stop:count, list a,b,c or value)"},
      {"delta", "Detuning (range, list or value)"},
      {"beta", "Waveguide coupling efficiency in (0, 1]"},
      {"phi2", "Propagation phase of the second emitter"},
      {"t", "Evaluation times (range, list or value)"},
      {"t-max", "Trace length for dynamics"},
      {"dt", "Output spacing for dynamics"},
      {"method", "Amplitude solver: series, poles or ode"},
      {"omega-range", "Spectrum frequency grid (range)"},
      {"j-cut", "Highest pole branch kept"},
      {"out", "Output path (default: standard output)"},
      {"format", "Output format: csv or json"},
      {"workers", "Worker threads (default: WQED_WORKERS or 1)"}};
  for (const auto& [name, help] : options) {
    f.options[name] = app.add_option("--" + name, f.values[name], help);
  }
  app.add_option("--log", f.log, "Use geometric spacing on this axis (repeatable)");
  app.add_option("--config", f.config, "Key-value file mirroring the flags");
}

}  // namespace

Axis parse_axis(const std::string& name, const std::string& text, bool log) {
  Axis a;
  a.text = trim(text);
  a.log = log;
  if (a.text.find(':') != std::string::npos) {
    const auto parts = split(a.text, ':');
    if (parts.size() != 3) {
      throw ConfigError("--" + name + ": '" + text + "' is not start:stop:count");
    }
    const double start = parse_number(name, parts[0]);
    const double stop = parse_number(name, parts[1]);
    const int count = parse_int(name, parts[2]);
    if (count < 1) throw ConfigError("--" + name + ": count must be >= 1");
    if (count > 1 && !(start < stop)) {
      throw ConfigError("--" + name + ": start must be below stop");
    }
    if (log && !(start > 0.0)) {
      throw ConfigError("--" + name + ": log spacing needs positive endpoints");
    }
    for (int i = 0; i < count; ++i) {
      if (count == 1) {
        a.values.push_back(start);
      } else if (i == count - 1) {
        a.values.push_back(stop);
      } else {
        const double u = static_cast<double>(i) / (count - 1);
        a.values.push_back(log ? start * std::pow(stop / start, u)
                               : start + u * (stop - start));
      }
    }
  } else {
    for (const auto& item : split(a.text, ',')) {
      a.values.push_back(parse_number(name, item));
    }
  }
  return a;
}

std::map<std::string, std::string> SweepConfig::echo() const {
  std::map<std::string, std::string> kv;
  kv["command"] = command;
  if (eta) kv["eta"] = eta->text;
  if (delta) kv["delta"] = delta->text;
  if (t) kv["t"] = t->text;
  if (omega) kv["omega-range"] = omega->text;
  kv["beta"] = fmt(params.beta);
  kv["phi2"] = fmt(params.phi2);
  kv["j-cut"] = std::to_string(params.j_cut);
  kv["t-max"] = fmt(t_max);
  kv["dt"] = fmt(dt);
  kv["method"] = method_name(method);
  kv["format"] = format == Format::kCsv ? "csv" : "json";
  if (!out.empty()) kv["out"] = out;
  if (!log_axes.empty()) {
    std::string s;
    for (const auto& a : log_axes) s += (s.empty() ? "" : ",") + a;
    kv["log"] = s;
  }
  return kv;
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(number) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    if (!kKeys.count(key)) {
      throw ConfigError("config line " + std::to_string(number) + ": unknown key '" + key + "'");
    }
    kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

std::string config_text(const std::map<std::string, std::string>& kv) {
  std::string s;
  for (const auto& [key, value] : kv) s += key + " = " + value + "\n";
  return s;
}

SweepConfig config_from_map(const std::map<std::string, std::string>& kv) {
  return from_map(kv);
}

SweepConfig parse_config(const std::vector<std::string>& args) {
  CLI::App app{"Two detuned emitters in a waveguide with delay", "wqed"};
  Flags f;
  build_app(app, f);
  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();  // program name
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    throw;
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  std::map<std::string, std::string> kv;
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) throw ConfigError("--config: cannot read '" + f.config + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    kv = parse_config_text(buf.str());
  }
  const std::string command = app.get_subcommands().front()->get_name();
  if (kv.count("command") && kv["command"] != command) {
    throw ConfigError("config file is for '" + kv["command"] + "' but the command is '" +
                      command + "'");
  }
  kv["command"] = command;
  for (const auto& [name, opt] : f.options) {
    if (opt->count() > 0) kv[name] = f.values[name];
  }
  if (!f.log.empty()) {
    std::string s;
    for (const auto& a : f.log) s += (s.empty() ? "" : ",") + a;
    kv["log"] = s;
  }
  return from_map(kv);
}

ResultTable run_sweep(const SweepConfig& config) {
  ResultTable table;
  table.config = config.echo();
  const std::string& cmd = config.command;
  if (cmd == "dynamics") {
    table.columns = {"gamma_t", "re_c1", "im_c1", "re_c2", "im_c2", "p1", "p2"};
    table.rows = run_dynamics(config);
  } else if (cmd == "spectrum") {
    table.columns = {"eta", "delta", "omega_bar", "g"};
    table.rows = run_spectrum(config);
  } else if (cmd == "qfi" || cmd == "qfi-scan") {
    table.columns = {"eta", "delta", "gamma_t", "qfi"};
    table.rows = run_qfi(config);
  } else if (cmd == "qbic") {
    table.columns = {"eta", "delta", "gamma_t", "loss_rate", "d_delta_loss_rate"};
    table.rows = run_qbic(config);
  } else if (cmd == "baseline") {
    table.columns = {"gamma_t", "qfi"};
    table.rows = run_baseline(config);
  } else {
    throw ConfigError("unknown command '" + cmd + "'");
  }
  return table;
}

std::string emit(const ResultTable& table, Format format) {
  if (format == Format::kCsv) {
    std::string s;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      s += (i ? "," : "") + csv_field(table.columns[i]);
    }
    s += "\r\n";
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + fmt(row[i]);
      s += "\r\n";
    }
    return s;
  }
  nlohmann::ordered_json meta;
  meta["config"] = table.config;
  meta["version"] = kVersion;
  meta["kappa"] = kKappa;
  nlohmann::ordered_json doc;
  doc["metadata"] = meta;
  doc["columns"] = table.columns;
  nlohmann::ordered_json data = nlohmann::ordered_json::object();
  for (std::size_t j = 0; j < table.columns.size(); ++j) {
    auto col = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) col.push_back(row[j]);
    data[table.columns[j]] = col;
  }
  doc["data"] = data;
  return doc.dump(2) + "\n";
}

int run(const std::vector<std::string>& args) {
  try {
    const SweepConfig config = parse_config(args);
    set_workers(config.workers);
    const std::string bytes = emit(run_sweep(config), config.format);
    if (config.out.empty()) {
      std::cout << bytes << std::flush;
    } else {
      std::ofstream out(config.out, std::ios::binary);
      if (!out) throw ConfigError("--out: cannot open '" + config.out + "'");
      out << bytes;
      if (!out) throw NumericalError("--out: write to '" + config.out + "' failed");
    }
    return 0;
  } catch (const CLI::CallForHelp&) {
    CLI::App app{"Two detuned emitters in a waveguide with delay", "wqed"};
    Flags f;
    build_app(app, f);
    std::cout << app.help();
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "wqed: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "wqed: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace wqed::cli
