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

#include "qprep/state_prep.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace qprep::prep {

namespace {

constexpr double kMassSumTolerance = 1e-9;
constexpr double kAngleRangeSlack = 1e-12;

void validate_prep_size(int num_qubits) {
  if (num_qubits < 1 || num_qubits > sim::Statevector::kMaxQubits) {
    throw std::invalid_argument(
        "qubit count must be between 1 and 24 for dense preparation");
  }
}

/**
 * One level of the bisection: for each parent region (level, i) with
 * tracked mass p, measures the left fraction f, records the rotation
 * angle arccos(sqrt(f)), and splits p into children (alpha, beta).
 *
 * The split computes the smaller child by multiplication and recovers
 * the larger by subtraction; Sterbenz's lemma then makes the
 * subtraction exact, so alpha + beta == p bitwise and the total mass is
 * conserved exactly across every level.
 */
std::pair<std::vector<double>, std::vector<double>> refine_step(
    int level, const std::vector<double>& masses, const dist::Distribution& d,
    const dist::IntegrationBackend& backend, double& error_budget) {
  const std::size_t count = masses.size();
  std::vector<double> angles(count);
  std::vector<double> children(2 * count);
  for (std::size_t i = 0; i < count; ++i) {
    const dist::Region region = dist::region_bounds(
        level, i, d.support_lo(), d.support_hi());
    const dist::LeftFractionEstimate lf =
        dist::left_fraction_with_error(d, region, backend);
    error_budget += lf.error_estimate;
    const double p = masses[i];
    const double f =
        (p < dist::kZeroMassThreshold) ? 0.5 : lf.fraction;
    angles[i] = std::acos(std::sqrt(f));
    double alpha;
    double beta;
    if (f >= 0.5) {
      alpha = p * f;
      beta = p - alpha;
    } else {
      beta = p * (1.0 - f);
      alpha = p - beta;
    }
    children[2 * i] = alpha;
    children[2 * i + 1] = beta;
  }
  return {std::move(angles), std::move(children)};
}

struct Walk {
  AngleTable angles;
  std::vector<double> masses;
  double error_budget = 0.0;
};

Walk level_walk(const dist::Distribution& d, int num_qubits,
                const dist::IntegrationBackend& backend) {
  validate_prep_size(num_qubits);
  dist::validate_backend(backend);
  Walk walk;
  walk.masses = {1.0};
  for (int m = 0; m < num_qubits; ++m) {
    auto [angles, children] =
        refine_step(m, walk.masses, d, backend, walk.error_budget);
    walk.angles.levels.push_back(std::move(angles));
    walk.masses = std::move(children);
  }
  return walk;
}

}  // namespace

void validate_discretized(const DiscretizedDistribution& d) {
  if (d.level < 0 || d.level >= sim::Statevector::kMaxQubits) {
    throw std::invalid_argument("discretization level out of range");
  }
  if (d.masses.size() != (std::size_t{1} << d.level)) {
    throw std::invalid_argument("discretization needs 2^level masses");
  }
  long double sum = 0.0L;
  for (double p : d.masses) {
    if (!(p >= 0.0)) {
      throw std::invalid_argument("discretized masses must be nonnegative");
    }
    sum += p;
  }
  if (std::abs(static_cast<double>(sum) - 1.0) > kMassSumTolerance) {
    throw std::invalid_argument("discretized masses must sum to 1");
  }
}

void validate_angle_table(const AngleTable& table) {
  const int n = table.num_qubits();
  if (n < 1 || n > sim::Statevector::kMaxQubits) {
    throw std::invalid_argument("angle table level count out of range");
  }
  for (int m = 0; m < n; ++m) {
    const auto& level = table.levels[static_cast<std::size_t>(m)];
    if (level.size() != (std::size_t{1} << m)) {
      throw std::invalid_argument("angle table level m needs 2^m entries");
    }
    for (double a : level) {
      if (!std::isfinite(a) || a < -kAngleRangeSlack ||
          a > std::numbers::pi / 2 + kAngleRangeSlack) {
        throw std::invalid_argument("angles must lie in [0, pi/2]");
      }
    }
  }
}

DiscretizedDistribution refine(const DiscretizedDistribution& coarse,
                               const dist::Distribution& d,
                               const dist::IntegrationBackend& backend) {
  validate_discretized(coarse);
  dist::validate_backend(backend);
  double budget = 0.0;
  auto [angles, children] =
      refine_step(coarse.level, coarse.masses, d, backend, budget);
  (void)angles;
  return DiscretizedDistribution{coarse.level + 1, std::move(children)};
}

AngleTable compute_angles(const dist::Distribution& d, int num_qubits,
                          const dist::IntegrationBackend& backend) {
  return level_walk(d, num_qubits, backend).angles;
}

sim::Statevector prepare_direct(const dist::Distribution& d, int num_qubits,
                                const dist::IntegrationBackend& backend) {
  Walk walk = level_walk(d, num_qubits, backend);
  std::vector<sim::Complex> amps(walk.masses.size());
  for (std::size_t i = 0; i < walk.masses.size(); ++i) {
    amps[i] = sim::Complex{std::sqrt(walk.masses[i]), 0.0};
  }
  return sim::Statevector(num_qubits, std::move(amps));
}

PreparationResult prepare_with_diagnostics(const dist::Distribution& d,
                                           int num_qubits,
                                           const dist::IntegrationBackend& backend) {
  Walk walk = level_walk(d, num_qubits, backend);
  std::vector<sim::Complex> amps(walk.masses.size());
  for (std::size_t i = 0; i < walk.masses.size(); ++i) {
    amps[i] = sim::Complex{std::sqrt(walk.masses[i]), 0.0};
  }
  sim::Statevector state(num_qubits, std::move(amps));
  return PreparationResult{std::move(state), std::move(walk.angles),
                           DiscretizedDistribution{num_qubits,
                                                   std::move(walk.masses)},
                           walk.error_budget};
}

sim::Circuit synthesize(const AngleTable& table) {
  validate_angle_table(table);
  const int n = table.num_qubits();
  sim::Circuit circuit;
  circuit.num_qubits = n;
  circuit.gates.push_back(sim::Gate::ry(0, table.levels[0][0]));
  for (int m = 1; m < n; ++m) {
    std::vector<int> controls(static_cast<std::size_t>(m));
    for (int q = 0; q < m; ++q) controls[static_cast<std::size_t>(q)] = q;
    circuit.gates.push_back(sim::Gate::multiplexed_ry(
        std::move(controls), m, table.levels[static_cast<std::size_t>(m)]));
  }
  return circuit;
}

std::vector<sim::Gate> decompose_multiplexed(const sim::Gate& gate) {
  if (gate.kind == sim::GateKind::Ry) return {gate};
  if (gate.kind != sim::GateKind::MultiplexedRy) {
    throw std::invalid_argument("decompose_multiplexed needs an MRY or RY");
  }
  const std::size_t k = gate.controls.size();
  if (k == 0) return {sim::Gate::ry(gate.target, gate.angles[0])};
  const std::size_t count = std::size_t{1} << k;
  if (gate.angles.size() != count) {
    throw std::invalid_argument("MRY has the wrong number of angles");
  }

  // Fast Walsh-Hadamard transform of the angle word:
  // wht[w] = sum_b (-1)^{popcount(b & w)} angles[b].
  std::vector<double> wht = gate.angles;
  for (std::size_t len = 1; len < count; len <<= 1) {
    for (std::size_t block = 0; block < count; block += 2 * len) {
      for (std::size_t t = block; t < block + len; ++t) {
        const double x = wht[t];
        const double y = wht[t + len];
        wht[t] = x + y;
        wht[t + len] = x - y;
      }
    }
  }
  const double scale = 1.0 / static_cast<double>(count);

  // Alternating Ry / Cnot walk along the Gray code: step j rotates by
  // the mixed angle for Gray word g(j) = j ^ (j >> 1), then flips the
  // target conditioned on the control bit where g(j) and g(j+1) differ.
  // The final Cnot uses the top control, closing the cycle so the
  // product reproduces the multiplexer exactly.
  std::vector<sim::Gate> out;
  out.reserve(2 * count);
  for (std::size_t j = 0; j < count; ++j) {
    const std::size_t gray = j ^ (j >> 1);
    out.push_back(sim::Gate::ry(gate.target, wht[gray] * scale));
    const int bit = (j + 1 == count)
                        ? static_cast<int>(k - 1)
                        : std::countr_zero(static_cast<std::uint64_t>(j + 1));
    const int control = gate.controls[k - 1 - static_cast<std::size_t>(bit)];
    out.push_back(sim::Gate::cnot(control, gate.target));
  }
  return out;
}

sim::Circuit decompose_circuit(const sim::Circuit& circuit) {
  sim::Circuit out;
  out.num_qubits = circuit.num_qubits;
  for (const sim::Gate& g : circuit.gates) {
    if (g.kind == sim::GateKind::MultiplexedRy) {
      auto seq = decompose_multiplexed(g);
      out.gates.insert(out.gates.end(), seq.begin(), seq.end());
    } else {
      out.gates.push_back(g);
    }
  }
  return out;
}

GateCountReport gate_count_report(const sim::Circuit& circuit,
                                  bool decomposed) {
  sim::Circuit lowered;
  if (decomposed) lowered = decompose_circuit(circuit);
  const sim::Circuit& counted = decomposed ? lowered : circuit;
  GateCountReport report;
  std::vector<std::size_t> frontier(
      static_cast<std::size_t>(counted.num_qubits), 0);
  auto touch = [&](const std::vector<int>& qubits) {
    std::size_t start = 0;
    for (int q : qubits) {
      start = std::max(start, frontier[static_cast<std::size_t>(q)]);
    }
    for (int q : qubits) frontier[static_cast<std::size_t>(q)] = start + 1;
  };
  std::vector<int> all(static_cast<std::size_t>(counted.num_qubits));
  for (int q = 0; q < counted.num_qubits; ++q) {
    all[static_cast<std::size_t>(q)] = q;
  }
  for (const sim::Gate& g : counted.gates) {
    switch (g.kind) {
      case sim::GateKind::Ry:
        ++report.ry;
        touch({g.target});
        break;
      case sim::GateKind::Cnot:
        ++report.cnot;
        touch({g.controls[0], g.target});
        break;
      case sim::GateKind::MultiplexedRy: {
        ++report.multiplexed_ry;
        std::vector<int> qubits = g.controls;
        qubits.push_back(g.target);
        touch(qubits);
        break;
      }
      case sim::GateKind::H:
        ++report.other;
        touch({g.target});
        break;
      default:
        ++report.other;
        touch(all);
        break;
    }
  }
  for (std::size_t f : frontier) report.depth = std::max(report.depth, f);
  return report;
}

nlohmann::json angle_table_to_json(const AngleTable& table) {
  validate_angle_table(table);
  nlohmann::json levels = nlohmann::json::object();
  for (std::size_t m = 0; m < table.levels.size(); ++m) {
    levels[std::to_string(m)] = table.levels[m];
  }
  return nlohmann::json{{"format", "qprep-angles-v1"},
                        {"num_qubits", table.num_qubits()},
                        {"levels", std::move(levels)}};
}

AngleTable angle_table_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) {
    throw std::invalid_argument("angle table document must be a JSON object");
  }
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (it.key() != "format" && it.key() != "num_qubits" &&
        it.key() != "levels") {
      throw std::invalid_argument("unknown key \"" + it.key() +
                                  "\" in angle table");
    }
  }
  if (!doc.contains("format") || doc["format"] != "qprep-angles-v1") {
    throw std::invalid_argument("angle table format tag missing or unknown");
  }
  if (!doc.contains("num_qubits") || !doc["num_qubits"].is_number_integer()) {
    throw std::invalid_argument("angle table needs an integer num_qubits");
  }
  const int n = doc["num_qubits"].get<int>();
  if (n < 1 || n > sim::Statevector::kMaxQubits) {
    throw std::invalid_argument("angle table num_qubits out of range");
  }
  if (!doc.contains("levels") || !doc["levels"].is_object()) {
    throw std::invalid_argument("angle table needs a levels object");
  }
  AngleTable table;
  table.levels.resize(static_cast<std::size_t>(n));
  std::size_t seen = 0;
  for (auto it = doc["levels"].begin(); it != doc["levels"].end(); ++it) {
    int m;
    try {
      std::size_t pos = 0;
      m = std::stoi(it.key(), &pos);
      if (pos != it.key().size()) throw std::invalid_argument(it.key());
    } catch (const std::exception&) {
      throw std::invalid_argument("angle table level key is not an integer");
    }
    if (m < 0 || m >= n) {
      throw std::invalid_argument("angle table level key out of range");
    }
    if (!it.value().is_array()) {
      throw std::invalid_argument("angle table level must be an array");
    }
    std::vector<double> level;
    for (const auto& v : it.value()) {
      if (!v.is_number()) {
        throw std::invalid_argument("angle table entries must be numbers");
      }
      level.push_back(v.get<double>());
    }
    table.levels[static_cast<std::size_t>(m)] = std::move(level);
    ++seen;
  }
  if (seen != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("angle table is missing levels");
  }
  validate_angle_table(table);
  return table;
}

}  // namespace qprep::prep
