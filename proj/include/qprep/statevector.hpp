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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace qprep::sim {

using Complex = std::complex<double>;

/**
 * Dense n-qubit state. Qubit 0 is the most significant bit of the basis
 * index: basis state |b_0 b_1 ... b_{n-1}> lives at index
 * sum_q b_q * 2^(n-1-q). Dense simulation is capped at kMaxQubits.
 */
class Statevector {
 public:
  static constexpr int kMaxQubits = 24;

  /** |0...0> on num_qubits qubits. */
  explicit Statevector(int num_qubits);
  /** Takes ownership of amplitudes; norm must be 1 within 1e-10. */
  Statevector(int num_qubits, std::vector<Complex> amplitudes);

  int num_qubits() const { return num_qubits_; }
  std::size_t dimension() const { return amps_.size(); }

  std::span<const Complex> amplitudes() const { return amps_; }
  std::span<Complex> amplitudes() { return amps_; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }
  Complex& operator[](std::size_t i) { return amps_[i]; }

  std::vector<double> probabilities() const;
  double norm() const;

  /** Bit of qubit q in basis index i under the msb-first convention. */
  static int bit_of(std::uint64_t index, int qubit, int num_qubits) {
    return static_cast<int>((index >> (num_qubits - 1 - qubit)) & 1u);
  }

 private:
  int num_qubits_;
  std::vector<Complex> amps_;
};

/** |<a|b>|; states must have equal qubit counts. */
double fidelity(const Statevector& a, const Statevector& b);

/** (1/2) sum_i |p_i - q_i| over two equal-length probability vectors. */
double total_variation(std::span<const double> p, std::span<const double> q);

/**
 * Multinomial sample of `shots` measurement outcomes in the
 * computational basis; counts[i] = times index i was drawn. Identical
 * (state, shots, seed) give identical counts on every platform.
 */
std::vector<std::uint64_t> measure_histogram(const Statevector& state,
                                             std::uint64_t shots,
                                             std::uint64_t seed);

}  // namespace qprep::sim
