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

#include "qprep/gates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>
#include <utility>

namespace qprep::sim {

namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

std::uint64_t qubit_mask(int qubit, int num_qubits) {
  return std::uint64_t{1} << (num_qubits - 1 - qubit);
}

void apply_h(Statevector& state, int target) {
  const int n = state.num_qubits();
  const std::uint64_t tb = qubit_mask(target, n);
  const std::uint64_t dim = state.dimension();
  for (std::uint64_t i = 0; i < dim; ++i) {
    if (i & tb) continue;
    const std::uint64_t j = i | tb;
    const Complex a = state[i];
    const Complex b = state[j];
    state[i] = (a + b) * kInvSqrt2;
    state[j] = (a - b) * kInvSqrt2;
  }
}

void apply_ry(Statevector& state, int target, double angle) {
  const int n = state.num_qubits();
  const std::uint64_t tb = qubit_mask(target, n);
  const std::uint64_t dim = state.dimension();
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  for (std::uint64_t i = 0; i < dim; ++i) {
    if (i & tb) continue;
    const std::uint64_t j = i | tb;
    const Complex a = state[i];
    const Complex b = state[j];
    state[i] = c * a - s * b;
    state[j] = s * a + c * b;
  }
}

void apply_cnot(Statevector& state, int control, int target) {
  const int n = state.num_qubits();
  const std::uint64_t cb = qubit_mask(control, n);
  const std::uint64_t tb = qubit_mask(target, n);
  const std::uint64_t dim = state.dimension();
  for (std::uint64_t i = 0; i < dim; ++i) {
    if ((i & cb) && !(i & tb)) {
      std::swap(state[i], state[i | tb]);
    }
  }
}

void apply_multiplexed_ry(Statevector& state, const Gate& gate) {
  const int n = state.num_qubits();
  const std::uint64_t tb = qubit_mask(gate.target, n);
  const std::uint64_t dim = state.dimension();
  const std::size_t k = gate.controls.size();
  // Precompute cos/sin per control word; the word is read msb-first in
  // control-list order.
  std::vector<double> cs(gate.angles.size());
  std::vector<double> sn(gate.angles.size());
  for (std::size_t c = 0; c < gate.angles.size(); ++c) {
    cs[c] = std::cos(gate.angles[c]);
    sn[c] = std::sin(gate.angles[c]);
  }
  for (std::uint64_t i = 0; i < dim; ++i) {
    if (i & tb) continue;
    std::uint64_t word = 0;
    for (std::size_t q = 0; q < k; ++q) {
      word = (word << 1) |
             static_cast<std::uint64_t>(
                 Statevector::bit_of(i, gate.controls[q], n));
    }
    const std::uint64_t j = i | tb;
    const Complex a = state[i];
    const Complex b = state[j];
    state[i] = cs[word] * a - sn[word] * b;
    state[j] = sn[word] * a + cs[word] * b;
  }
}

void apply_phase_oracle(Statevector& state, const Gate& gate) {
  for (std::uint64_t m : gate.marked) {
    state[m] = -state[m];
  }
}

/**
 * In-place radix-2 transform of the amplitude vector,
 *   a[k] <- (1/sqrt(N)) sum_j a[j] exp(sign * 2 pi i * jk / N).
 * Twiddles are generated fresh per stage from std::polar, so rounding
 * does not accumulate along a recurrence.
 */
void fft_unitary(std::span<Complex> a, int sign) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  std::vector<Complex> twiddle;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const double step =
        static_cast<double>(sign) * 2.0 * std::numbers::pi /
        static_cast<double>(len);
    twiddle.resize(half);
    for (std::size_t t = 0; t < half; ++t) {
      twiddle[t] = std::polar(1.0, step * static_cast<double>(t));
    }
    for (std::size_t block = 0; block < n; block += len) {
      for (std::size_t t = 0; t < half; ++t) {
        const Complex u = a[block + t];
        const Complex v = a[block + t + half] * twiddle[t];
        a[block + t] = u + v;
        a[block + t + half] = u - v;
      }
    }
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (Complex& x : a) x *= scale;
}

void check_qubit(int qubit, int num_qubits, const char* what) {
  if (qubit < 0 || qubit >= num_qubits) {
    throw std::invalid_argument(std::string(what) +
                                " qubit index out of range");
  }
}

}  // namespace

std::string gate_kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::H: return "H";
    case GateKind::Ry: return "RY";
    case GateKind::Cnot: return "CNOT";
    case GateKind::MultiplexedRy: return "MRY";
    case GateKind::PhaseOracle: return "ORACLE";
    case GateKind::QftBlock: return "QFT";
    case GateKind::InverseQftBlock: return "IQFT";
  }
  throw std::invalid_argument("unknown gate kind enum value");
}

Gate Gate::h(int target) {
  Gate g;
  g.kind = GateKind::H;
  g.target = target;
  return g;
}

Gate Gate::ry(int target, double angle) {
  Gate g;
  g.kind = GateKind::Ry;
  g.target = target;
  g.angles = {angle};
  return g;
}

Gate Gate::cnot(int control, int target) {
  Gate g;
  g.kind = GateKind::Cnot;
  g.target = target;
  g.controls = {control};
  return g;
}

Gate Gate::multiplexed_ry(std::vector<int> controls, int target,
                          std::vector<double> angles) {
  Gate g;
  g.kind = GateKind::MultiplexedRy;
  g.target = target;
  g.controls = std::move(controls);
  g.angles = std::move(angles);
  return g;
}

Gate Gate::phase_oracle(std::vector<std::uint64_t> marked) {
  Gate g;
  g.kind = GateKind::PhaseOracle;
  g.marked = std::move(marked);
  return g;
}

Gate Gate::qft_block() {
  Gate g;
  g.kind = GateKind::QftBlock;
  return g;
}

Gate Gate::inverse_qft_block() {
  Gate g;
  g.kind = GateKind::InverseQftBlock;
  return g;
}

void validate_gate(const Gate& gate, int num_qubits) {
  if (num_qubits < 1 || num_qubits > Statevector::kMaxQubits) {
    throw std::invalid_argument("gate register size out of range");
  }
  auto require_angles = [&](std::size_t count) {
    if (gate.angles.size() != count) {
      throw std::invalid_argument(gate_kind_name(gate.kind) +
                                  " has the wrong number of angles");
    }
    for (double a : gate.angles) {
      if (!std::isfinite(a)) {
        throw std::invalid_argument("gate angles must be finite");
      }
    }
  };
  auto require_controls = [&](std::size_t count) {
    if (gate.controls.size() != count) {
      throw std::invalid_argument(gate_kind_name(gate.kind) +
                                  " has the wrong number of controls");
    }
  };
  switch (gate.kind) {
    case GateKind::H:
      check_qubit(gate.target, num_qubits, "target");
      require_controls(0);
      require_angles(0);
      break;
    case GateKind::Ry:
      check_qubit(gate.target, num_qubits, "target");
      require_controls(0);
      require_angles(1);
      break;
    case GateKind::Cnot:
      check_qubit(gate.target, num_qubits, "target");
      require_controls(1);
      check_qubit(gate.controls[0], num_qubits, "control");
      if (gate.controls[0] == gate.target) {
        throw std::invalid_argument("CNOT control must differ from target");
      }
      require_angles(0);
      break;
    case GateKind::MultiplexedRy: {
      check_qubit(gate.target, num_qubits, "target");
      if (gate.controls.size() >= 63) {
        throw std::invalid_argument("MRY control count out of range");
      }
      std::set<int> seen;
      for (int c : gate.controls) {
        check_qubit(c, num_qubits, "control");
        if (c == gate.target) {
          throw std::invalid_argument("MRY controls must differ from target");
        }
        if (!seen.insert(c).second) {
          throw std::invalid_argument("MRY controls must be distinct");
        }
      }
      require_angles(std::size_t{1} << gate.controls.size());
      break;
    }
    case GateKind::PhaseOracle: {
      require_controls(0);
      require_angles(0);
      const std::uint64_t dim = std::uint64_t{1} << num_qubits;
      std::set<std::uint64_t> seen;
      for (std::uint64_t m : gate.marked) {
        if (m >= dim) {
          throw std::invalid_argument("marked index outside the register");
        }
        if (!seen.insert(m).second) {
          throw std::invalid_argument("marked indices must be distinct");
        }
      }
      break;
    }
    case GateKind::QftBlock:
    case GateKind::InverseQftBlock:
      require_controls(0);
      require_angles(0);
      break;
  }
}

void validate_circuit(const Circuit& circuit) {
  if (circuit.num_qubits < 1 || circuit.num_qubits > Statevector::kMaxQubits) {
    throw std::invalid_argument("circuit qubit count out of range");
  }
  for (const Gate& g : circuit.gates) validate_gate(g, circuit.num_qubits);
}

void apply_gate_in_place(Statevector& state, const Gate& gate) {
  validate_gate(gate, state.num_qubits());
  switch (gate.kind) {
    case GateKind::H:
      apply_h(state, gate.target);
      break;
    case GateKind::Ry:
      apply_ry(state, gate.target, gate.angles[0]);
      break;
    case GateKind::Cnot:
      apply_cnot(state, gate.controls[0], gate.target);
      break;
    case GateKind::MultiplexedRy:
      apply_multiplexed_ry(state, gate);
      break;
    case GateKind::PhaseOracle:
      apply_phase_oracle(state, gate);
      break;
    case GateKind::QftBlock:
      fft_unitary(state.amplitudes(), +1);
      break;
    case GateKind::InverseQftBlock:
      fft_unitary(state.amplitudes(), -1);
      break;
  }
}

Statevector apply_gate(Statevector state, const Gate& gate) {
  apply_gate_in_place(state, gate);
  return state;
}

Statevector apply_circuit(Statevector state, const Circuit& circuit) {
  if (circuit.num_qubits != state.num_qubits()) {
    throw std::invalid_argument("circuit and state register sizes differ");
  }
  for (const Gate& g : circuit.gates) apply_gate_in_place(state, g);
  return state;
}

Statevector walsh_hadamard(Statevector state) {
  for (int q = 0; q < state.num_qubits(); ++q) apply_h(state, q);
  return state;
}

Statevector qft(Statevector state) {
  fft_unitary(state.amplitudes(), +1);
  return state;
}

Statevector inverse_qft(Statevector state) {
  fft_unitary(state.amplitudes(), -1);
  return state;
}

double fourier_magnitude(const Statevector& state, std::uint64_t k) {
  if (k >= state.dimension()) {
    throw std::out_of_range("fourier index outside the register");
  }
  Statevector transformed =
      qft(Statevector(state.num_qubits(),
                      std::vector<Complex>(state.amplitudes().begin(),
                                           state.amplitudes().end())));
  return std::abs(transformed[k]);
}

}  // namespace qprep::sim
