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

#pragma once

#include <cstddef>
#include <vector>

#include <json.hpp>

#include "qprep/gates.hpp"
#include "qprep/integration.hpp"
#include "qprep/statevector.hpp"

namespace qprep::prep {

/**
 * Level-m coarse graining of a density: masses[i] is the probability of
 * the i-th of 2^m equal slices of the support. masses sum to 1 within
 * 1e-9 and are nonnegative.
 */
struct DiscretizedDistribution {
  int level = 0;
  std::vector<double> masses;
};

void validate_discretized(const DiscretizedDistribution& d);

/**
 * Rotation angles for the bisection cascade. levels[m] holds 2^m angles
 * in [0, pi/2]; levels[m][i] rotates the qubit that splits region
 * (m, i) into its two children. levels.size() qubits total.
 */
struct AngleTable {
  std::vector<std::vector<double>> levels;

  int num_qubits() const { return static_cast<int>(levels.size()); }
};

void validate_angle_table(const AngleTable& table);

nlohmann::json angle_table_to_json(const AngleTable& table);
AngleTable angle_table_from_json(const nlohmann::json& doc);

/**
 * One bisection step: splits every level-m mass p into children
 * (alpha, beta) with alpha = f * p for the region's left fraction f.
 * The split is arranged so that alpha + beta == p holds bitwise, hence
 * the child masses sum to exactly the same total as the parents.
 */
DiscretizedDistribution refine(const DiscretizedDistribution& coarse,
                               const dist::Distribution& d,
                               const dist::IntegrationBackend& backend);

/** Angles for all n levels: levels[m][i] = arccos(sqrt(f(m, i))). */
AngleTable compute_angles(const dist::Distribution& d, int num_qubits,
                          const dist::IntegrationBackend& backend);

/** sqrt of the level-n masses as a statevector, bypassing any circuit. */
sim::Statevector prepare_direct(const dist::Distribution& d, int num_qubits,
                                const dist::IntegrationBackend& backend);

struct PreparationResult {
  sim::Statevector state;
  AngleTable angles;
  DiscretizedDistribution masses;  // level-n coarse graining
  /** Sum of the error estimates of every interval integral performed:
   *  0 analytic, quadrature estimates, or Monte Carlo standard errors. */
  double error_budget;
};

PreparationResult prepare_with_diagnostics(const dist::Distribution& d,
                                           int num_qubits,
                                           const dist::IntegrationBackend& backend);

/**
 * The bisection cascade as a circuit: Ry(levels[0][0]) on qubit 0, then
 * for each level m >= 1 a MultiplexedRy on target m controlled by
 * qubits 0..m-1 with angle word levels[m]. Applied to |0...0> it
 * reproduces prepare_direct up to rounding.
 */
sim::Circuit synthesize(const AngleTable& table);

/**
 * Lowers one MultiplexedRy with k controls to the standard alternating
 * sequence of 2^k Ry and 2^k Cnot gates (Gray-code angle mixing); the
 * final Cnot is controlled by the last control qubit, giving an exact
 * unitary match. k = 0 lowers to the bare Ry. A plain Ry passes
 * through unchanged.
 */
std::vector<sim::Gate> decompose_multiplexed(const sim::Gate& gate);

/** decompose_multiplexed applied to every gate of the circuit. */
sim::Circuit decompose_circuit(const sim::Circuit& circuit);

struct GateCountReport {
  std::size_t ry = 0;
  std::size_t cnot = 0;
  std::size_t multiplexed_ry = 0;
  std::size_t other = 0;
  /** Critical-path length with each listed gate as one time step. */
  std::size_t depth = 0;
};

/** Counts for the circuit as-is, or for its fully lowered form when
 *  `decomposed` is set. A full n-qubit cascade lowers to 2^n - 1 Ry and
 *  2^n - 2 Cnot gates. */
GateCountReport gate_count_report(const sim::Circuit& circuit,
                                  bool decomposed);

}  // namespace qprep::prep
