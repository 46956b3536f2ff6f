// Copyright 2026 The qprep Authors
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

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qprep/applications.hpp"
#include "qprep/log_concavity.hpp"
#include "qprep/serialization.hpp"
#include "qprep/state_prep.hpp"

namespace {

namespace dist = qprep::dist;
namespace prep = qprep::prep;
namespace sim = qprep::sim;
namespace apps = qprep::apps;
namespace io = qprep::io;
using nlohmann::ordered_json;

// Exit codes: 0 success, 1 a result check failed or the computation
// did not converge, 2 bad arguments or malformed input, 3 filesystem.
constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct Options {
  std::optional<std::string> dist_spec;  // inline JSON or a file path
  std::optional<std::string> family;
  std::optional<double> mean;
  std::optional<double> stddev;
  std::optional<double> rate;
  std::vector<double> support;  // empty or exactly two values
  std::optional<std::string> components;
  std::optional<std::string> xs;
  std::optional<std::string> ps;
  std::optional<int> num_qubits;
  std::optional<std::string> backend;
  std::optional<double> tolerance;
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> output;
  std::optional<std::string> format;
  std::optional<std::string> config_path;
  // Per-command extras.
  bool decompose = false;
  std::optional<std::uint64_t> shots;
  std::optional<std::string> marked;
  std::optional<int> iterations;
  std::optional<std::uint64_t> k;
  std::optional<int> grid_points;
};

// Every key a config file may carry, across all commands. Unknown keys
// are an error so that typos cannot silently change a run.
const std::vector<std::string>& known_config_keys() {
  static const std::vector<std::string> keys = {
      "dist",    "family", "mean",       "stddev", "rate",   "support",
      "components", "xs",  "ps",         "n",      "backend", "tolerance",
      "samples", "seed",   "output",     "format", "decompose", "shots",
      "marked",  "iterations", "k",      "grid-points"};
  return keys;
}

double parse_double_strict(const std::string& text) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    throw std::invalid_argument("not a number: '" + text + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(text.substr(start));
      return out;
    }
    out.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

std::vector<double> parse_csv_doubles(const std::string& text) {
  std::vector<double> out;
  for (const auto& piece : split(text, ',')) out.push_back(parse_double_strict(piece));
  return out;
}

std::vector<std::size_t> parse_csv_indices(const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto& piece : split(text, ',')) {
    const double v = parse_double_strict(piece);
    if (v < 0 || v != std::floor(v)) {
      throw std::invalid_argument("not a basis index: '" + piece + "'");
    }
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

std::vector<dist::GaussianComponent> parse_components(const std::string& text) {
  std::vector<dist::GaussianComponent> out;
  for (const auto& piece : split(text, ';')) {
    const auto nums = parse_csv_doubles(piece);
    if (nums.size() != 3) {
      throw std::invalid_argument(
          "component '" + piece + "' must be weight,mean,stddev");
    }
    out.push_back({nums[0], nums[1], nums[2]});
  }
  return out;
}

// Config file values fill any option the command line left unset.
void merge_config(const nlohmann::json& cfg, Options& o) {
  if (!cfg.is_object()) {
    throw std::invalid_argument("config file must hold a JSON object");
  }
  const auto& known = known_config_keys();
  for (const auto& [key, value] : cfg.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
    if (key == "dist" && !o.dist_spec) o.dist_spec = value.get<std::string>();
    else if (key == "family" && !o.family) o.family = value.get<std::string>();
    else if (key == "mean" && !o.mean) o.mean = value.get<double>();
    else if (key == "stddev" && !o.stddev) o.stddev = value.get<double>();
    else if (key == "rate" && !o.rate) o.rate = value.get<double>();
    else if (key == "support" && o.support.empty()) {
      o.support = value.get<std::vector<double>>();
      if (o.support.size() != 2) {
        throw std::invalid_argument("config support must be [lo, hi]");
      }
    } else if (key == "components" && !o.components) {
      o.components = value.get<std::string>();
    } else if (key == "xs" && !o.xs) o.xs = value.get<std::string>();
    else if (key == "ps" && !o.ps) o.ps = value.get<std::string>();
    else if (key == "n" && !o.num_qubits) o.num_qubits = value.get<int>();
    else if (key == "backend" && !o.backend) o.backend = value.get<std::string>();
    else if (key == "tolerance" && !o.tolerance) o.tolerance = value.get<double>();
    else if (key == "samples" && !o.samples) o.samples = value.get<std::uint64_t>();
    else if (key == "seed" && !o.seed) o.seed = value.get<std::uint64_t>();
    else if (key == "output" && !o.output) o.output = value.get<std::string>();
    else if (key == "format" && !o.format) {
      o.format = value.get<std::string>();
    } else if (key == "decompose" && !o.decompose) o.decompose = value.get<bool>();
    else if (key == "shots" && !o.shots) o.shots = value.get<std::uint64_t>();
    else if (key == "marked" && !o.marked) o.marked = value.get<std::string>();
    else if (key == "iterations" && !o.iterations) o.iterations = value.get<int>();
    else if (key == "k" && !o.k) o.k = value.get<std::uint64_t>();
    else if (key == "grid-points" && !o.grid_points) o.grid_points = value.get<int>();
  }
}

dist::Distribution resolve_distribution(const Options& o) {
  if (o.dist_spec) {
    const std::string& spec = *o.dist_spec;
    const std::string text =
        (!spec.empty() && spec.front() == '{') ? spec : io::read_file(spec);
    return dist::Distribution::from_json(nlohmann::json::parse(text));
  }
  if (!o.family) {
    throw std::invalid_argument(
        "no distribution given; pass --dist or --family");
  }
  const bool has_support = !o.support.empty();
  if (has_support && o.support.size() != 2) {
    throw std::invalid_argument("--support takes exactly two values");
  }
  const auto lo = [&] { return o.support[0]; };
  const auto hi = [&] { return o.support[1]; };
  const auto opt_lo = [&] {
    return has_support ? std::optional<double>(lo()) : std::nullopt;
  };
  const auto opt_hi = [&] {
    return has_support ? std::optional<double>(hi()) : std::nullopt;
  };
  const std::string& family = *o.family;
  if (family == "uniform") {
    if (!has_support) throw std::invalid_argument("uniform needs --support");
    return dist::Distribution::uniform(lo(), hi());
  }
  if (family == "exponential") {
    if (!o.rate) throw std::invalid_argument("exponential needs --rate");
    return dist::Distribution::exponential(*o.rate, opt_lo(), opt_hi());
  }
  if (family == "gaussian") {
    if (!o.mean || !o.stddev) {
      throw std::invalid_argument("gaussian needs --mean and --stddev");
    }
    return dist::Distribution::gaussian(*o.mean, *o.stddev, opt_lo(), opt_hi());
  }
  if (family == "truncated_gaussian" || family == "truncated-gaussian") {
    if (!o.mean || !o.stddev || !has_support) {
      throw std::invalid_argument(
          "truncated_gaussian needs --mean, --stddev, and --support");
    }
    return dist::Distribution::truncated_gaussian(*o.mean, *o.stddev, lo(), hi());
  }
  if (family == "mixture") {
    if (!o.components) throw std::invalid_argument("mixture needs --components");
    return dist::Distribution::mixture(parse_components(*o.components), opt_lo(),
                                       opt_hi());
  }
  if (family == "tabulated") {
    if (!o.xs || !o.ps) {
      throw std::invalid_argument("tabulated needs --xs and --ps");
    }
    return dist::Distribution::tabulated(parse_csv_doubles(*o.xs),
                                         parse_csv_doubles(*o.ps));
  }
  throw std::invalid_argument("unknown family '" + family + "'");
}

dist::IntegrationBackend resolve_backend(const Options& o) {
  dist::IntegrationBackend b;
  b.method = dist::method_from_name(o.backend.value_or("analytic"));
  switch (b.method) {
    case dist::IntegrationMethod::AnalyticCdf:
      break;
    case dist::IntegrationMethod::AdaptiveQuadrature:
      b.tolerance = o.tolerance.value_or(1e-10);
      break;
    case dist::IntegrationMethod::MonteCarlo:
      b.sample_count = o.samples.value_or(100000);
      b.seed = o.seed.value_or(1);
      break;
  }
  dist::validate_backend(b);
  return b;
}

int resolve_qubits(const Options& o) {
  const int n = o.num_qubits.value_or(4);
  if (n < 1 || n > sim::Statevector::kMaxQubits) {
    throw std::invalid_argument("qubit count out of range");
  }
  return n;
}

std::string resolve_prefix(const Options& o, const std::string& command) {
  if (o.output) return *o.output;
  const char* dir = std::getenv("QPREP_OUT_DIR");
  return std::string(dir != nullptr ? dir : ".") + "/" + command;
}

ordered_json backend_echo(const dist::IntegrationBackend& b) {
  ordered_json doc;
  doc["method"] = dist::method_name(b.method);
  switch (b.method) {
    case dist::IntegrationMethod::AnalyticCdf:
      break;
    case dist::IntegrationMethod::AdaptiveQuadrature:
      doc["tolerance"] = b.tolerance;
      break;
    case dist::IntegrationMethod::MonteCarlo:
      doc["samples"] = b.sample_count;
      doc["seed"] = b.seed;
      break;
  }
  return doc;
}

struct CheckList {
  ordered_json entries = ordered_json::array();
  bool all_passed = true;

  void add(const std::string& name, bool passed, const std::string& detail) {
    ordered_json entry;
    entry["name"] = name;
    entry["passed"] = passed;
    entry["detail"] = detail;
    entries.push_back(std::move(entry));
    all_passed = all_passed && passed;
  }
};

int write_report(const std::string& prefix, const std::string& command,
                 ordered_json config, ordered_json results,
                 const CheckList& checks) {
  ordered_json doc;
  doc["format"] = io::kReportFormat;
  doc["command"] = command;
  doc["config"] = std::move(config);
  doc["results"] = std::move(results);
  doc["checks"] = checks.entries;
  doc["all_checks_passed"] = checks.all_passed;
  io::write_file_atomic(prefix + ".json", doc.dump(2) + "\n");
  return checks.all_passed ? kExitOk : kExitCheckFailed;
}

void write_state_artifact(const std::string& prefix, const std::string& format,
                          const sim::Statevector& state) {
  if (format == "csv") {
    io::write_file_atomic(prefix + ".state.csv", io::to_csv(state));
  } else {
    io::write_file_atomic(prefix + ".state.json", io::to_json_text(state));
  }
}

ordered_json common_echo(const dist::Distribution& d,
                         const dist::IntegrationBackend& b, int n,
                         const Options& o) {
  ordered_json cfg;
  cfg["distribution"] = d.to_json();
  cfg["n"] = n;
  cfg["backend"] = backend_echo(b);
  cfg["format"] = o.format.value_or("json");
  return cfg;
}

int run_prepare(const Options& o) {
  const auto d = resolve_distribution(o);
  const auto backend = resolve_backend(o);
  const int n = resolve_qubits(o);
  const std::string prefix = resolve_prefix(o, "prepare");

  const auto result = prep::prepare_with_diagnostics(d, n, backend);
  const auto circuit = prep::synthesize(result.angles);
  const auto intact = prep::gate_count_report(circuit, false);
  const auto lowered = prep::gate_count_report(circuit, true);

  long double mass_sum = 0.0L;
  double min_mass = 1.0;
  double max_mass = 0.0;
  for (double m : result.masses.masses) {
    mass_sum += m;
    min_mass = std::min(min_mass, m);
    max_mass = std::max(max_mass, m);
  }

  CheckList checks;
  checks.add("normalized", std::abs(result.state.norm() - 1.0) <= 1e-9,
             "statevector norm " + io::format_real(result.state.norm()));
  checks.add("mass_conserved",
             std::abs(static_cast<double>(mass_sum - 1.0L)) <= 1e-9,
             "leaf masses sum to " +
                 io::format_real(static_cast<double>(mass_sum)));
  bool angles_ok = true;
  for (const auto& level : result.angles.levels) {
    for (double a : level) {
      angles_ok = angles_ok && a >= 0.0 && a <= 1.5707963267948970;
    }
  }
  checks.add("angles_in_range", angles_ok, "all angles within [0, pi/2]");

  ordered_json results;
  results["num_qubits"] = n;
  results["error_budget"] = result.error_budget;
  results["leaf_count"] = result.masses.masses.size();
  results["min_mass"] = min_mass;
  results["max_mass"] = max_mass;
  results["gates"] = {
      {"ry", intact.ry},
      {"multiplexed_ry", intact.multiplexed_ry},
      {"depth", intact.depth},
      {"lowered_ry", lowered.ry},
      {"lowered_cnot", lowered.cnot},
      {"lowered_depth", lowered.depth},
  };

  write_state_artifact(prefix, o.format.value_or("json"), result.state);
  return write_report(prefix, "prepare", common_echo(d, backend, n, o),
                      std::move(results), checks);
}

int run_synthesize(const Options& o) {
  const auto d = resolve_distribution(o);
  const auto backend = resolve_backend(o);
  const int n = resolve_qubits(o);
  const std::string prefix = resolve_prefix(o, "synthesize");

  const auto table = prep::compute_angles(d, n, backend);
  const auto cascade = prep::synthesize(table);
  const auto written = o.decompose ? prep::decompose_circuit(cascade) : cascade;
  const std::string text = io::to_text(written);

  CheckList checks;
  const auto reparsed = io::circuit_from_text(text);
  bool round_trip = reparsed.gates.size() == written.gates.size();
  for (std::size_t i = 0; round_trip && i < written.gates.size(); ++i) {
    round_trip = reparsed.gates[i].kind == written.gates[i].kind &&
                 reparsed.gates[i].angles == written.gates[i].angles;
  }
  checks.add("circuit_text_round_trip", round_trip,
             "parsing the emitted text reproduces the circuit");

  const auto counts = prep::gate_count_report(written, false);
  std::size_t expected_ry = o.decompose ? (std::size_t{1} << n) - 1 : 1;
  std::size_t expected_cnot =
      o.decompose && n > 1 ? (std::size_t{1} << n) - 2 : 0;
  checks.add("expected_gate_counts",
             counts.ry == expected_ry && counts.cnot == expected_cnot,
             "ry=" + std::to_string(counts.ry) +
                 " cnot=" + std::to_string(counts.cnot));

  ordered_json results;
  results["num_qubits"] = n;
  results["decomposed"] = o.decompose;
  results["gates"] = {
      {"ry", counts.ry},
      {"cnot", counts.cnot},
      {"multiplexed_ry", counts.multiplexed_ry},
      {"depth", counts.depth},
  };

  io::write_file_atomic(prefix + ".angles.json",
                        io::angle_table_to_json_text(table));
  io::write_file_atomic(prefix + ".circuit.txt", text);
  auto cfg = common_echo(d, backend, n, o);
  cfg["decompose"] = o.decompose;
  return write_report(prefix, "synthesize", std::move(cfg), std::move(results),
                      checks);
}

int run_simulate(const Options& o) {
  const auto d = resolve_distribution(o);
  const auto backend = resolve_backend(o);
  const int n = resolve_qubits(o);
  const std::string prefix = resolve_prefix(o, "simulate");
  if (o.decompose && n > 14) {
    throw std::invalid_argument(
        "decomposed simulation is capped at 14 qubits");
  }

  const auto direct = prep::prepare_direct(d, n, backend);
  const auto cascade = prep::synthesize(prep::compute_angles(d, n, backend));
  const auto circuit =
      o.decompose ? prep::decompose_circuit(cascade) : cascade;
  const auto state = sim::apply_circuit(sim::Statevector(n), circuit);
  const double fid = sim::fidelity(direct, state);

  CheckList checks;
  checks.add("matches_direct_preparation", fid >= 1.0 - 1e-9,
             "fidelity " + io::format_real(fid));
  checks.add("normalized", std::abs(state.norm() - 1.0) <= 1e-9,
             "statevector norm " + io::format_real(state.norm()));

  ordered_json results;
  results["num_qubits"] = n;
  results["decomposed"] = o.decompose;
  results["fidelity"] = fid;
  if (o.shots) {
    const std::uint64_t shots = *o.shots;
    const auto counts = sim::measure_histogram(state, shots, o.seed.value_or(1));
    ordered_json histogram = ordered_json::array();
    for (std::size_t i = 0; i < counts.size(); ++i) {
      if (counts[i] == 0) continue;
      ordered_json row;
      row["index"] = i;
      row["bits"] = io::bit_label(i, n);
      row["count"] = counts[i];
      histogram.push_back(std::move(row));
    }
    results["shots"] = shots;
    results["histogram"] = std::move(histogram);
  }

  write_state_artifact(prefix, o.format.value_or("json"), state);
  auto cfg = common_echo(d, backend, n, o);
  cfg["decompose"] = o.decompose;
  return write_report(prefix, "simulate", std::move(cfg), std::move(results),
                      checks);
}

int run_demo_grover(const Options& o) {
  const auto d = resolve_distribution(o);
  const auto backend = resolve_backend(o);
  const int n = resolve_qubits(o);
  const std::string prefix = resolve_prefix(o, "demo-grover");
  if (!o.marked) throw std::invalid_argument("demo-grover needs --marked");
  const auto marked = parse_csv_indices(*o.marked);

  const auto prior = prep::prepare_direct(d, n, backend);
  double p0 = 0.0;
  for (std::size_t m : marked) {
    if (m >= prior.dimension()) {
      throw std::invalid_argument("marked index out of range");
    }
    p0 += std::norm(prior[m]);
  }

  int iterations;
  if (o.iterations) {
    iterations = *o.iterations;
    if (iterations < 0) throw std::invalid_argument("iterations must be >= 0");
  } else {
    iterations = apps::grover_iterations_to(p0, 0.99);
    if (iterations < 0) {
      throw std::invalid_argument(
          "marked set has too little prior mass to amplify to 0.99");
    }
  }

  const auto run = apps::grover_search(prior, marked, iterations);

  CheckList checks;
  double worst = 0.0;
  for (int t = 0; t <= iterations; ++t) {
    const double theory = apps::grover_success_closed_form(t, p0);
    worst = std::max(
        worst, std::abs(run.success_trace[static_cast<std::size_t>(t)] - theory));
  }
  checks.add("matches_closed_form", worst <= 1e-9,
             "largest deviation " + io::format_real(worst));
  checks.add("normalized", std::abs(run.final_state.norm() - 1.0) <= 1e-9,
             "final norm " + io::format_real(run.final_state.norm()));

  ordered_json results;
  results["num_qubits"] = n;
  results["marked"] = marked;
  results["initial_success"] = p0;
  results["iterations"] = iterations;
  results["iterations_to_99"] = apps::grover_iterations_to(p0, 0.99);
  ordered_json trace = ordered_json::array();
  for (int t = 0; t <= iterations; ++t) {
    ordered_json row;
    row["iteration"] = t;
    row["success"] = run.success_trace[static_cast<std::size_t>(t)];
    row["theory"] = apps::grover_success_closed_form(t, p0);
    trace.push_back(std::move(row));
  }
  results["trace"] = std::move(trace);

  if (o.format.value_or("json") == "csv") {
    std::string csv = "iteration,success,theory\n";
    for (int t = 0; t <= iterations; ++t) {
      csv += std::to_string(t) + "," +
             io::format_real(run.success_trace[static_cast<std::size_t>(t)]) +
             "," +
             io::format_real(apps::grover_success_closed_form(t, p0)) + "\n";
    }
    io::write_file_atomic(prefix + ".csv", csv);
  }
  auto cfg = common_echo(d, backend, n, o);
  cfg["marked"] = marked;
  return write_report(prefix, "demo-grover", std::move(cfg),
                      std::move(results), checks);
}

ordered_json concavity_echo(const dist::LogConcavityReport& report) {
  ordered_json doc;
  doc["passes"] = report.passes;
  doc["worst_point"] = report.worst_point;
  doc["worst_value"] = report.worst_value;
  doc["evaluated_points"] = report.evaluated_points;
  doc["skipped_points"] = report.skipped_points;
  return doc;
}

int run_demo_interference(const Options& o) {
  const auto d = resolve_distribution(o);
  const auto backend = resolve_backend(o);
  const int n = resolve_qubits(o);
  const std::string prefix = resolve_prefix(o, "demo-interference");

  const auto report = apps::interference_demo(d, n, backend);

  CheckList checks;
  checks.add("matches_signed_sum", report.max_abs_diff <= 1e-9,
             "largest deviation " + io::format_real(report.max_abs_diff));
  long double total = 0.0L;
  for (double qj : report.q) total += qj;
  checks.add("pattern_normalized",
             std::abs(static_cast<double>(total - 1.0L)) <= 1e-9,
             "pattern sums to " +
                 io::format_real(static_cast<double>(total)));

  ordered_json results;
  results["num_qubits"] = n;
  results["max_abs_diff"] = report.max_abs_diff;
  results["input_log_concavity"] = concavity_echo(report.input_report);
  results["output_log_concavity"] =
      report.output_report ? concavity_echo(*report.output_report)
                           : ordered_json(nullptr);
  results["q"] = report.q;
  results["reference_q"] = report.reference_q;

  if (o.format.value_or("json") == "csv") {
    std::string csv = "index,q,reference\n";
    for (std::size_t j = 0; j < report.q.size(); ++j) {
      csv += std::to_string(j) + "," + io::format_real(report.q[j]) + "," +
             io::format_real(report.reference_q[j]) + "\n";
    }
    io::write_file_atomic(prefix + ".csv", csv);
  }
  return write_report(prefix, "demo-interference",
                      common_echo(d, backend, n, o), std::move(results),
                      checks);
}

int run_demo_fourier(const Options& o) {
  const auto d = resolve_distribution(o);
  const auto backend = resolve_backend(o);
  const int n = resolve_qubits(o);
  const std::string prefix = resolve_prefix(o, "demo-fourier");
  const std::uint64_t k = o.k.value_or(1);

  const auto report = apps::fourier_component_demo(d, n, k, backend);

  CheckList checks;
  checks.add("matches_direct_sum", report.abs_diff <= 1e-9,
             "deviation " + io::format_real(report.abs_diff));

  ordered_json results;
  results["num_qubits"] = n;
  results["k"] = report.k;
  results["magnitude"] = report.magnitude;
  results["reference"] = report.reference;
  results["abs_diff"] = report.abs_diff;

  if (o.format.value_or("json") == "csv") {
    io::write_file_atomic(prefix + ".csv",
                          "k,magnitude,reference\n" + std::to_string(k) + "," +
                              io::format_real(report.magnitude) + "," +
                              io::format_real(report.reference) + "\n");
  }
  auto cfg = common_echo(d, backend, n, o);
  cfg["k"] = k;
  return write_report(prefix, "demo-fourier", std::move(cfg),
                      std::move(results), checks);
}

int run_check_logconcave(const Options& o) {
  const auto d = resolve_distribution(o);
  const std::string prefix = resolve_prefix(o, "check-logconcave");
  const int grid_points = o.grid_points.value_or(257);

  const auto report = dist::check_log_concavity(d, grid_points);

  // The verdict is a result, not a failure: a correctly diagnosed
  // non-concave density still exits 0.
  CheckList checks;
  ordered_json results = concavity_echo(report);
  results["grid_points"] = grid_points;

  ordered_json cfg;
  cfg["distribution"] = d.to_json();
  cfg["grid_points"] = grid_points;
  return write_report(prefix, "check-logconcave", std::move(cfg),
                      std::move(results), checks);
}

void register_common(CLI::App* sub, Options& o, bool needs_qubits) {
  sub->add_option("--dist", o.dist_spec,
                  "distribution as inline JSON ('{...}') or a path to a "
                  "JSON file");
  sub->add_option("--family", o.family,
                  "one of uniform, exponential, gaussian, "
                  "truncated_gaussian, mixture, tabulated");
  sub->add_option("--mean", o.mean, "gaussian mean");
  sub->add_option("--stddev", o.stddev, "gaussian standard deviation");
  sub->add_option("--rate", o.rate, "exponential rate");
  sub->add_option("--support", o.support, "support interval lo hi")
      ->expected(2);
  sub->add_option("--components", o.components,
                  "mixture components 'w,mean,sd;w,mean,sd;...'");
  sub->add_option("--xs", o.xs, "tabulated grid points, comma separated");
  sub->add_option("--ps", o.ps, "tabulated densities, comma separated");
  if (needs_qubits) {
    sub->add_option("-n,--qubits", o.num_qubits, "register size in qubits");
  }
  sub->add_option("--backend", o.backend,
                  "mass integration: analytic, quadrature, or montecarlo");
  sub->add_option("--tolerance", o.tolerance,
                  "quadrature absolute error target (default 1e-10)");
  sub->add_option("--samples", o.samples,
                  "montecarlo samples per interval (default 100000)");
  sub->add_option("--seed", o.seed,
                  "seed for montecarlo masses and measurement sampling");
  sub->add_option("--output", o.output,
                  "artifact path prefix (default $QPREP_OUT_DIR/<command> "
                  "or ./<command>)");
  sub->add_option("--format", o.format, "state/demo data format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--config", o.config_path,
                  "JSON file of defaults; explicit flags win");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app(
      "qprep: encodes an efficiently integrable probability density into "
      "quantum register amplitudes by recursive bisection, and runs small "
      "demonstrations on the prepared state.\n");
  app.require_subcommand(1);
  app.footer(
      "Artifacts (written atomically; reruns with equal inputs are "
      "byte-identical):\n"
      "  <prefix>.json        run report: format qprep-report-v1, with\n"
      "                       config echo, results, checks, all_checks_passed\n"
      "  <prefix>.state.json  amplitudes [{index, bits, re, im, prob}],\n"
      "                       bits shows qubit 0 first (most significant)\n"
      "  <prefix>.state.csv   header 'index,bits,re,im,prob'\n"
      "  <prefix>.angles.json rotation angles per level, qprep-angles-v1\n"
      "  <prefix>.circuit.txt gate listing, qprep-circuit-v1\n"
      "  demo-grover CSV      header 'iteration,success,theory'\n"
      "  demo-interference CSV header 'index,q,reference'\n"
      "  demo-fourier CSV     header 'k,magnitude,reference'\n"
      "Exit codes: 0 ok, 1 check failed, 2 bad input, 3 file system.\n");

  Options o;
  auto* prepare =
      app.add_subcommand("prepare", "compute amplitudes for a density");
  register_common(prepare, o, true);
  auto* synthesize = app.add_subcommand(
      "synthesize", "emit the rotation cascade as angles and a circuit");
  register_common(synthesize, o, true);
  synthesize->add_flag("--decompose", o.decompose,
                       "lower multiplexed rotations to Ry and CNOT");
  auto* simulate = app.add_subcommand(
      "simulate", "run the synthesized circuit and compare with the "
                  "direct amplitudes");
  register_common(simulate, o, true);
  simulate->add_flag("--decompose", o.decompose,
                     "simulate the lowered Ry/CNOT form (n <= 14)");
  simulate->add_option("--shots", o.shots,
                       "also sample a measurement histogram");
  auto* grover = app.add_subcommand(
      "demo-grover", "amplitude amplification with the prepared state as "
                     "the prior");
  register_common(grover, o, true);
  grover->add_option("--marked", o.marked,
                     "marked basis indices, comma separated");
  grover->add_option("--iterations", o.iterations,
                     "Grover iterations (default: first t reaching 0.99)");
  auto* interference = app.add_subcommand(
      "demo-interference", "Hadamard interference pattern of the prepared "
                           "state (n <= 12)");
  register_common(interference, o, true);
  auto* fourier = app.add_subcommand(
      "demo-fourier", "one Fourier magnitude of the prepared state, "
                      "cross-checked against a direct sum");
  register_common(fourier, o, true);
  fourier->add_option("-k", o.k, "frequency index (default 1)");
  auto* logconcave = app.add_subcommand(
      "check-logconcave", "grid check of log-concavity of a density");
  register_common(logconcave, o, false);
  logconcave->add_option("--grid-points", o.grid_points,
                         "uniform grid size (default 257)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (o.config_path) {
      merge_config(nlohmann::json::parse(io::read_file(*o.config_path)), o);
    }
    if (prepare->parsed()) return run_prepare(o);
    if (synthesize->parsed()) return run_synthesize(o);
    if (simulate->parsed()) return run_simulate(o);
    if (grover->parsed()) return run_demo_grover(o);
    if (interference->parsed()) return run_demo_interference(o);
    if (fourier->parsed()) return run_demo_fourier(o);
    if (logconcave->parsed()) return run_check_logconcave(o);
    std::cerr << "no command given\n";
    return kExitUsage;
  } catch (const io::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const dist::IntegrationError& e) {
    std::cerr << "integration failed: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const dist::DegenerateInputError& e) {
    std::cerr << "degenerate input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "bad json: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "bad input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "bad input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
}
