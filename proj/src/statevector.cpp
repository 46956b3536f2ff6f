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

#include "qprep/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qprep/detail/random.hpp"

namespace qprep::sim {

namespace {

constexpr double kNormTolerance = 1e-10;

void validate_qubit_count(int num_qubits) {
  if (num_qubits < 1 || num_qubits > Statevector::kMaxQubits) {
    throw std::invalid_argument(
        "qubit count must be between 1 and 24 for dense simulation");
  }
}

}  // namespace

Statevector::Statevector(int num_qubits) : num_qubits_(num_qubits) {
  validate_qubit_count(num_qubits);
  amps_.assign(std::size_t{1} << num_qubits, Complex{0.0, 0.0});
  amps_[0] = Complex{1.0, 0.0};
}

Statevector::Statevector(int num_qubits, std::vector<Complex> amplitudes)
    : num_qubits_(num_qubits), amps_(std::move(amplitudes)) {
  validate_qubit_count(num_qubits);
  if (amps_.size() != (std::size_t{1} << num_qubits)) {
    throw std::invalid_argument("amplitude vector must have length 2^n");
  }
  if (std::abs(norm() - 1.0) > kNormTolerance) {
    throw std::invalid_argument("amplitude vector must be normalized");
  }
}

std::vector<double> Statevector::probabilities() const {
  std::vector<double> p(amps_.size());
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    p[i] = std::norm(amps_[i]);
  }
  return p;
}

double Statevector::norm() const {
  long double s = 0.0L;
  for (const Complex& a : amps_) s += std::norm(a);
  return static_cast<double>(std::sqrt(s));
}

double fidelity(const Statevector& a, const Statevector& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw std::invalid_argument("fidelity needs equal qubit counts");
  }
  long double re = 0.0L;
  long double im = 0.0L;
  const auto av = a.amplitudes();
  const auto bv = b.amplitudes();
  for (std::size_t i = 0; i < av.size(); ++i) {
    const Complex term = std::conj(av[i]) * bv[i];
    re += term.real();
    im += term.imag();
  }
  return static_cast<double>(std::sqrt(re * re + im * im));
}

double total_variation(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) {
    throw std::invalid_argument("total variation needs equal-length vectors");
  }
  long double s = 0.0L;
  for (std::size_t i = 0; i < p.size(); ++i) {
    s += std::abs(static_cast<long double>(p[i]) - q[i]);
  }
  return static_cast<double>(0.5L * s);
}

std::vector<std::uint64_t> measure_histogram(const Statevector& state,
                                             std::uint64_t shots,
                                             std::uint64_t seed) {
  const std::size_t n = state.dimension();
  std::vector<double> cum(n);
  double running = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double p = std::norm(state[i]);
    if (p > 0.0) last_positive = i;
    running += p;
    cum[i] = running;
  }
  const double total = cum.back();
  std::vector<std::uint64_t> counts(n, 0);
  std::mt19937_64 rng(detail::mix64(seed));
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = detail::uniform_unit(rng) * total;
    auto it = std::upper_bound(cum.begin(), cum.end(), u);
    std::size_t idx =
        (it == cum.end()) ? last_positive
                          : static_cast<std::size_t>(it - cum.begin());
    ++counts[idx];
  }
  return counts;
}

}  // namespace qprep::sim
