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

#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "oracles.hpp"
#include "qprep/gates.hpp"
#include "qprep/statevector.hpp"

using qprep::sim::apply_circuit;
using qprep::sim::apply_gate;
using qprep::sim::Circuit;
using qprep::sim::Complex;
using qprep::sim::Gate;
using qprep::sim::Statevector;

namespace {

Statevector make_state(int n, std::uint64_t seed) {
  return Statevector(n, oracle::random_state(std::size_t{1} << n, seed));
}

double max_abs_diff(const Statevector& s, const std::vector<Complex>& v) {
  double worst = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    worst = std::max(worst, std::abs(s[i] - v[i]));
  }
  return worst;
}

}  // namespace

TEST_CASE("statevector construction and validation") {
  const Statevector zero(3);
  CHECK(zero.dimension() == 8);
  CHECK(zero[0] == Complex{1.0, 0.0});
  for (std::size_t i = 1; i < 8; ++i) CHECK(zero[i] == Complex{0.0, 0.0});
  CHECK(zero.norm() == doctest::Approx(1.0).epsilon(1e-15));

  CHECK_THROWS_AS(Statevector(0), std::invalid_argument);
  CHECK_THROWS_AS(Statevector(25), std::invalid_argument);
  CHECK_THROWS_AS(Statevector(2, std::vector<Complex>(3)),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      Statevector(1, {Complex{1.0, 0.0}, Complex{0.5, 0.0}}),
      std::invalid_argument);
}

TEST_CASE("qubit 0 is the most significant index bit") {
  CHECK(Statevector::bit_of(4, 0, 3) == 1);
  CHECK(Statevector::bit_of(4, 1, 3) == 0);
  CHECK(Statevector::bit_of(4, 2, 3) == 0);
  CHECK(Statevector::bit_of(1, 2, 3) == 1);

  // |100>: qubit 0 set. CNOT with control 0, target 2 flips the lsb.
  std::vector<Complex> amps(8, Complex{0.0, 0.0});
  amps[4] = Complex{1.0, 0.0};
  auto state = apply_gate(Statevector(3, std::move(amps)), Gate::cnot(0, 2));
  CHECK(state[5] == Complex{1.0, 0.0});
  CHECK(std::abs(state[4]) == 0.0);
}

TEST_CASE("ry uses the full-angle convention") {
  const double theta = 0.3;
  auto state = apply_gate(Statevector(1), Gate::ry(0, theta));
  CHECK(state[0].real() == doctest::Approx(std::cos(theta)).epsilon(1e-15));
  CHECK(state[1].real() == doctest::Approx(std::sin(theta)).epsilon(1e-15));
}

TEST_CASE("single-qubit gates match their dense embeddings") {
  for (int n = 2; n <= 4; ++n) {
    for (int q = 0; q < n; ++q) {
      const auto base = make_state(n, 1000 + static_cast<std::uint64_t>(10 * n + q));
      const std::vector<Complex> in(base.amplitudes().begin(),
                                    base.amplitudes().end());

      const auto h_ref = oracle::matvec(
          oracle::embed_single(n, q, oracle::h_matrix()), in);
      CHECK(max_abs_diff(apply_gate(base, Gate::h(q)), h_ref) < 1e-14);

      const double theta = 0.17 * (q + 1) + 0.05 * n;
      const auto ry_ref = oracle::matvec(
          oracle::embed_single(n, q, oracle::ry_matrix(theta)), in);
      CHECK(max_abs_diff(apply_gate(base, Gate::ry(q, theta)), ry_ref) < 1e-14);
    }
  }
}

TEST_CASE("cnot matches its dense permutation") {
  const int n = 3;
  for (int c = 0; c < n; ++c) {
    for (int t = 0; t < n; ++t) {
      if (c == t) continue;
      const auto base =
          make_state(n, 2000 + static_cast<std::uint64_t>(10 * c + t));
      const std::vector<Complex> in(base.amplitudes().begin(),
                                    base.amplitudes().end());
      const auto ref = oracle::matvec(oracle::cnot_matrix(n, c, t), in);
      CHECK(max_abs_diff(apply_gate(base, Gate::cnot(c, t)), ref) < 1e-14);
    }
  }
}

TEST_CASE("multiplexed rotation reads its control word msb-first") {
  // Control list {2, 0}: qubit 2 supplies the high bit of the word.
  const int n = 3;
  const std::vector<int> controls = {2, 0};
  const std::vector<double> angles = {0.1, 0.7, 1.2, 0.4};
  const auto base = make_state(n, 31);
  const std::vector<Complex> in(base.amplitudes().begin(),
                                base.amplitudes().end());
  const auto ref = oracle::matvec(
      oracle::multiplexed_ry_matrix(n, controls, 1, angles), in);
  const auto out = apply_gate(base, Gate::multiplexed_ry(controls, 1, angles));
  CHECK(max_abs_diff(out, ref) < 1e-14);
}

TEST_CASE("multiplexed rotations match dense references across shapes") {
  const int n = 4;
  const std::vector<std::vector<int>> control_sets = {
      {}, {0}, {3}, {0, 1}, {2, 0}, {0, 1, 3}};
  std::uint64_t seed = 500;
  for (const auto& controls : control_sets) {
    for (int target = 0; target < n; ++target) {
      bool clash = false;
      for (int c : controls) clash = clash || c == target;
      if (clash) continue;
      std::vector<double> angles(std::size_t{1} << controls.size());
      for (std::size_t i = 0; i < angles.size(); ++i) {
        angles[i] = 0.05 + 0.4 * static_cast<double>(i) + 0.01 * target;
      }
      const auto base = make_state(n, seed++);
      const std::vector<Complex> in(base.amplitudes().begin(),
                                    base.amplitudes().end());
      const auto ref = oracle::matvec(
          oracle::multiplexed_ry_matrix(n, controls, target, angles), in);
      const auto out =
          apply_gate(base, Gate::multiplexed_ry(controls, target, angles));
      CHECK(max_abs_diff(out, ref) < 1e-14);
    }
  }
}

TEST_CASE("phase oracle flips exactly the marked amplitudes") {
  const auto base = make_state(3, 77);
  const auto out = apply_gate(base, Gate::phase_oracle({1, 6}));
  for (std::size_t i = 0; i < 8; ++i) {
    if (i == 1 || i == 6) {
      CHECK(out[i] == -base[i]);
    } else {
      CHECK(out[i] == base[i]);
    }
  }
}

TEST_CASE("gates preserve the norm") {
  auto state = make_state(4, 4242);
  Circuit circuit;
  circuit.num_qubits = 4;
  circuit.gates = {
      Gate::h(2),
      Gate::ry(0, 0.37),
      Gate::cnot(1, 3),
      Gate::multiplexed_ry({0, 2}, 3, {0.2, 0.9, 1.1, 0.01}),
      Gate::phase_oracle({0, 5, 9}),
      Gate::qft_block(),
      Gate::inverse_qft_block(),
  };
  state = apply_circuit(std::move(state), circuit);
  CHECK(state.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("walsh-hadamard equals hadamards on every qubit and involutes") {
  const int n = 3;
  const auto base = make_state(n, 11);
  auto manual = base;
  for (int q = 0; q < n; ++q) manual = apply_gate(std::move(manual), Gate::h(q));
  const auto wh = qprep::sim::walsh_hadamard(base);
  CHECK(max_abs_diff(wh, std::vector<Complex>(manual.amplitudes().begin(),
                                              manual.amplitudes().end())) == 0.0);
  const auto twice = qprep::sim::walsh_hadamard(wh);
  CHECK(max_abs_diff(twice, std::vector<Complex>(base.amplitudes().begin(),
                                                 base.amplitudes().end())) <
        1e-12);
}

TEST_CASE("fourier transform matches the quadratic-time reference") {
  for (int n = 1; n <= 8; ++n) {
    const auto base = make_state(n, 9000 + static_cast<std::uint64_t>(n));
    const std::vector<Complex> in(base.amplitudes().begin(),
                                  base.amplitudes().end());
    const auto forward_ref = oracle::dft(in, +1);
    const auto forward = qprep::sim::qft(base);
    CHECK(max_abs_diff(forward, forward_ref) < 1e-12);

    const auto inverse_ref = oracle::dft(in, -1);
    const auto inverse = qprep::sim::inverse_qft(base);
    CHECK(max_abs_diff(inverse, inverse_ref) < 1e-12);

    // Round trip within 1e-10.
    const auto round = qprep::sim::inverse_qft(forward);
    CHECK(max_abs_diff(round, in) < 1e-10);

    // The block gates are the same transform.
    const auto block = apply_gate(base, Gate::qft_block());
    CHECK(max_abs_diff(block,
                       std::vector<Complex>(forward.amplitudes().begin(),
                                            forward.amplitudes().end())) == 0.0);
  }
}

TEST_CASE("fourier magnitude reads one transform coefficient") {
  const auto base = make_state(5, 321);
  const std::vector<Complex> in(base.amplitudes().begin(),
                                base.amplitudes().end());
  const auto ref = oracle::dft(in, +1);
  for (std::uint64_t k = 0; k < 32; k += 5) {
    CHECK(qprep::sim::fourier_magnitude(base, k) ==
          doctest::Approx(std::abs(ref[k])).epsilon(1e-12));
  }
  CHECK_THROWS_AS(qprep::sim::fourier_magnitude(base, 32), std::out_of_range);
}

TEST_CASE("measurement histograms are reproducible and faithful") {
  // Two-qubit state with known probabilities and one dead outcome.
  const std::vector<double> p = {0.49, 0.0, 0.09, 0.42};
  std::vector<Complex> amps(4);
  for (std::size_t i = 0; i < 4; ++i) amps[i] = Complex{std::sqrt(p[i]), 0.0};
  const Statevector state(2, std::move(amps));

  const std::uint64_t shots = 100000;
  const auto a = qprep::sim::measure_histogram(state, shots, 7);
  const auto b = qprep::sim::measure_histogram(state, shots, 7);
  CHECK(a == b);

  std::uint64_t total = 0;
  for (auto c : a) total += c;
  CHECK(total == shots);
  CHECK(a[1] == 0);

  for (std::size_t i = 0; i < 4; ++i) {
    const double expected = static_cast<double>(shots) * p[i];
    const double sigma =
        std::sqrt(static_cast<double>(shots) * p[i] * (1.0 - p[i]));
    if (p[i] > 0.0) {
      CHECK(std::abs(static_cast<double>(a[i]) - expected) <= 5.0 * sigma);
    }
  }

  const auto c = qprep::sim::measure_histogram(state, shots, 8);
  CHECK(a != c);
}

TEST_CASE("fidelity and total variation behave as metrics") {
  const auto a = make_state(3, 1);
  CHECK(qprep::sim::fidelity(a, a) == doctest::Approx(1.0).epsilon(1e-14));

  // A global phase does not change fidelity.
  std::vector<Complex> rotated(a.amplitudes().begin(), a.amplitudes().end());
  const Complex phase = std::polar(1.0, 1.2345);
  for (auto& x : rotated) x *= phase;
  CHECK(qprep::sim::fidelity(a, Statevector(3, std::move(rotated))) ==
        doctest::Approx(1.0).epsilon(1e-14));

  std::vector<Complex> e0(8, Complex{0.0, 0.0});
  e0[0] = Complex{1.0, 0.0};
  std::vector<Complex> e1(8, Complex{0.0, 0.0});
  e1[1] = Complex{1.0, 0.0};
  CHECK(qprep::sim::fidelity(Statevector(3, e0), Statevector(3, e1)) == 0.0);

  const std::vector<double> p = {0.5, 0.5, 0.0};
  const std::vector<double> q = {0.25, 0.25, 0.5};
  CHECK(qprep::sim::total_variation(p, q) ==
        doctest::Approx(0.5).epsilon(1e-15));
  CHECK(qprep::sim::total_variation(p, p) == 0.0);
  const std::vector<double> shorter = {1.0};
  CHECK_THROWS_AS(qprep::sim::total_variation(p, shorter),
                  std::invalid_argument);
  CHECK_THROWS_AS(qprep::sim::fidelity(a, Statevector(2)),
                  std::invalid_argument);
}

TEST_CASE("gate validation rejects malformed gates") {
  CHECK_THROWS_AS(apply_gate(Statevector(2), Gate::h(2)),
                  std::invalid_argument);
  CHECK_THROWS_AS(apply_gate(Statevector(2), Gate::cnot(0, 0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(apply_gate(Statevector(2), Gate::cnot(-1, 0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      apply_gate(Statevector(2), Gate::multiplexed_ry({0, 0}, 1, {1, 2, 3, 4})),
      std::invalid_argument);
  CHECK_THROWS_AS(
      apply_gate(Statevector(2), Gate::multiplexed_ry({0}, 1, {1, 2, 3})),
      std::invalid_argument);
  CHECK_THROWS_AS(
      apply_gate(Statevector(2), Gate::multiplexed_ry({0}, 0, {1, 2})),
      std::invalid_argument);
  CHECK_THROWS_AS(apply_gate(Statevector(2), Gate::phase_oracle({4})),
                  std::invalid_argument);
  CHECK_THROWS_AS(apply_gate(Statevector(2), Gate::phase_oracle({1, 1})),
                  std::invalid_argument);

  Circuit mismatched;
  mismatched.num_qubits = 3;
  mismatched.gates = {Gate::h(0)};
  CHECK_THROWS_AS(apply_circuit(Statevector(2), mismatched),
                  std::invalid_argument);
}
