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

#include <cstdint>
#include <string>
#include <vector>

#include "qprep/statevector.hpp"

namespace qprep::sim {

enum class GateKind {
  H,
  Ry,
  Cnot,
  MultiplexedRy,
  PhaseOracle,
  QftBlock,
  InverseQftBlock,
};

std::string gate_kind_name(GateKind kind);

/**
 * One circuit operation. Which fields are meaningful depends on kind:
 *   H              target
 *   Ry             target, angles[0]
 *   Cnot           controls[0], target
 *   MultiplexedRy  controls (k of them), target, angles (2^k of them);
 *                  angles[c] is applied when the controls, read in list
 *                  order as msb-first bits, spell out c
 *   PhaseOracle    marked (basis indices whose amplitude flips sign)
 *   QftBlock / InverseQftBlock   whole register, no fields
 *
 * Ry uses the full-angle convention
 *   Ry(theta)|0> = cos(theta)|0> + sin(theta)|1>,
 *   Ry(theta)|1> = -sin(theta)|0> + cos(theta)|1>.
 */
struct Gate {
  GateKind kind;
  int target = 0;
  std::vector<int> controls;
  std::vector<double> angles;
  std::vector<std::uint64_t> marked;

  static Gate h(int target);
  static Gate ry(int target, double angle);
  static Gate cnot(int control, int target);
  static Gate multiplexed_ry(std::vector<int> controls, int target,
                             std::vector<double> angles);
  static Gate phase_oracle(std::vector<std::uint64_t> marked);
  static Gate qft_block();
  static Gate inverse_qft_block();
};

struct Circuit {
  int num_qubits = 0;
  std::vector<Gate> gates;
};

/** Throws std::invalid_argument on out-of-range qubits, duplicate or
 *  target-overlapping controls, wrong angle counts, or marked indices
 *  outside the register. */
void validate_gate(const Gate& gate, int num_qubits);
void validate_circuit(const Circuit& circuit);

void apply_gate_in_place(Statevector& state, const Gate& gate);
Statevector apply_gate(Statevector state, const Gate& gate);
Statevector apply_circuit(Statevector state, const Circuit& circuit);

/** H on every qubit. */
Statevector walsh_hadamard(Statevector state);

/**
 * Discrete Fourier transform of the amplitude vector,
 *   out[k] = (1/sqrt(N)) sum_i exp(+2 pi i * ik / N) in[i],
 * and its inverse (conjugate kernel). Unitary; qft then inverse_qft
 * returns the input within 1e-10.
 */
Statevector qft(Statevector state);
Statevector inverse_qft(Statevector state);

/** |amplitude k of qft(state)|. Requires k < 2^n. */
double fourier_magnitude(const Statevector& state, std::uint64_t k);

}  // namespace qprep::sim
