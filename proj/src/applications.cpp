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

#include "qprep/applications.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

#include "qprep/state_prep.hpp"

namespace qprep::apps {

namespace {

constexpr int kInterferenceMaxQubits = 12;

double marked_probability(const sim::Statevector& state,
                          const std::vector<std::uint64_t>& marked) {
  long double s = 0.0L;
  for (std::uint64_t m : marked) s += std::norm(state[m]);
  return static_cast<double>(s);
}

}  // namespace

GroverRun grover_search(const sim::Statevector& initial,
                        const std::vector<std::uint64_t>& marked,
                        int iterations) {
  if (marked.empty()) {
    throw std::invalid_argument("marked set must be nonempty");
  }
  std::set<std::uint64_t> seen;
  for (std::uint64_t m : marked) {
    if (m >= initial.dimension()) {
      throw std::invalid_argument("marked index outside the register");
    }
    if (!seen.insert(m).second) {
      throw std::invalid_argument("marked indices must be distinct");
    }
  }
  if (iterations < 0) {
    throw std::invalid_argument("iteration count must be nonnegative");
  }

  sim::Statevector state = initial;
  std::vector<double> trace;
  trace.reserve(static_cast<std::size_t>(iterations) + 1);
  trace.push_back(marked_probability(state, marked));
  const std::size_t dim = state.dimension();
  for (int t = 0; t < iterations; ++t) {
    for (std::uint64_t m : marked) state[m] = -state[m];
    // Reflection about the initial state: psi <- 2 <psi0|psi> psi0 - psi.
    long double re = 0.0L;
    long double im = 0.0L;
    for (std::size_t i = 0; i < dim; ++i) {
      const sim::Complex term = std::conj(initial[i]) * state[i];
      re += term.real();
      im += term.imag();
    }
    const sim::Complex overlap{static_cast<double>(re),
                               static_cast<double>(im)};
    for (std::size_t i = 0; i < dim; ++i) {
      state[i] = 2.0 * overlap * initial[i] - state[i];
    }
    trace.push_back(marked_probability(state, marked));
  }
  return GroverRun{marked, iterations, std::move(trace), std::move(state)};
}

double grover_success_closed_form(int t, double initial_success) {
  if (t < 0) throw std::invalid_argument("iteration count must be nonnegative");
  const double amplitude =
      std::clamp(std::sqrt(std::clamp(initial_success, 0.0, 1.0)), 0.0, 1.0);
  const double theta = std::asin(amplitude);
  const double s = std::sin((2.0 * t + 1.0) * theta);
  return s * s;
}

int grover_iterations_to(double initial_success, double threshold,
                         int max_iterations) {
  if (!(threshold > 0.0) || !(threshold <= 1.0)) {
    throw std::invalid_argument("threshold must be in (0, 1]");
  }
  if (!(initial_success > 0.0)) return -1;
  for (int t = 0; t <= max_iterations; ++t) {
    if (grover_success_closed_form(t, initial_success) >= threshold) return t;
  }
  return -1;
}

std::vector<double> interference_distribution(const dist::Distribution& d,
                                              int num_qubits,
                                              const dist::IntegrationBackend& backend) {
  if (num_qubits < 1 || num_qubits > kInterferenceMaxQubits) {
    throw std::invalid_argument(
        "interference pattern is capped at 12 qubits");
  }
  return sim::walsh_hadamard(prep::prepare_direct(d, num_qubits, backend))
      .probabilities();
}

InterferenceReport interference_demo(const dist::Distribution& d,
                                     int num_qubits,
                                     const dist::IntegrationBackend& backend) {
  if (num_qubits < 1 || num_qubits > kInterferenceMaxQubits) {
    throw std::invalid_argument(
        "interference pattern is capped at 12 qubits");
  }
  prep::PreparationResult prepared =
      prep::prepare_with_diagnostics(d, num_qubits, backend);
  std::vector<double> q =
      sim::walsh_hadamard(prepared.state).probabilities();

  // Independent route: q_j = (1/N) (sum_i (-1)^{popcount(i & j)} sqrt(p_i))^2.
  const std::size_t n = q.size();
  std::vector<double> roots(n);
  for (std::size_t i = 0; i < n; ++i) {
    roots[i] = std::sqrt(prepared.masses.masses[i]);
  }
  std::vector<double> reference(n);
  for (std::size_t j = 0; j < n; ++j) {
    long double s = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
      if (std::popcount(i & j) & 1u) {
        s -= roots[i];
      } else {
        s += roots[i];
      }
    }
    const long double scaled = s * s / static_cast<long double>(n);
    reference[j] = static_cast<double>(scaled);
  }

  double max_abs_diff = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    max_abs_diff = std::max(max_abs_diff, std::abs(q[j] - reference[j]));
  }

  InterferenceReport report{std::move(prepared.masses.masses), std::move(q),
                            std::move(reference), max_abs_diff,
                            dist::check_log_concavity(d), std::nullopt};

  // The interference pattern itself, viewed as a density over the index
  // line [0, 1): knots at j / N. Patterns concentrated on a handful of
  // indices leave no evaluable stencil; that is reported as absent
  // rather than as a pass or fail.
  std::vector<double> xs(n);
  for (std::size_t j = 0; j < n; ++j) {
    xs[j] = static_cast<double>(j) / static_cast<double>(n);
  }
  try {
    dist::Distribution pattern = dist::Distribution::tabulated(xs, report.q);
    report.output_report =
        dist::check_log_concavity(pattern, static_cast<int>(n));
  } catch (const dist::DegenerateInputError&) {
    report.output_report = std::nullopt;
  } catch (const std::invalid_argument&) {
    report.output_report = std::nullopt;
  }
  return report;
}

FourierComponentReport fourier_component_demo(const dist::Distribution& d,
                                              int num_qubits, std::uint64_t k,
                                              const dist::IntegrationBackend& backend) {
  sim::Statevector state = prep::prepare_direct(d, num_qubits, backend);
  if (k >= state.dimension()) {
    throw std::out_of_range("fourier index outside the register");
  }
  const double magnitude = sim::fourier_magnitude(state, k);

  // Independent route: one coefficient by direct summation.
  const std::uint64_t n = state.dimension();
  long double re = 0.0L;
  long double im = 0.0L;
  for (std::uint64_t i = 0; i < n; ++i) {
    // i, k < 2^24 so i * k fits comfortably in 64 bits.
    const std::uint64_t phase_index = (i * k) % n;
    const double angle = 2.0 * std::numbers::pi *
                         static_cast<double>(phase_index) /
                         static_cast<double>(n);
    const sim::Complex w{std::cos(angle), std::sin(angle)};
    const sim::Complex term = state[i] * w;
    re += term.real();
    im += term.imag();
  }
  const long double scale = 1.0L / std::sqrt(static_cast<long double>(n));
  const double reference = static_cast<double>(
      std::sqrt(re * re + im * im) * scale);

  return FourierComponentReport{k, magnitude, reference,
                                std::abs(magnitude - reference)};
}

}  // namespace qprep::apps
