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
#include <optional>
#include <vector>

#include "qprep/gates.hpp"
#include "qprep/integration.hpp"
#include "qprep/log_concavity.hpp"
#include "qprep/statevector.hpp"

namespace qprep::apps {

/**
 * Amplitude-amplification run: alternate a sign flip on the marked
 * indices with a reflection about the initial state,
 *   psi <- 2 <psi0|psi> psi0 - psi.
 * success_trace[t] is the marked-set probability after t rounds
 * (t = 0 is the initial state), so it has iterations + 1 entries.
 *
 * Because both reflections preserve the plane spanned by the initial
 * state and its marked-set projection, the trace follows
 * sin^2((2t+1) asin(sqrt(success_trace[0]))) exactly, whatever the
 * initial state.
 */
struct GroverRun {
  std::vector<std::uint64_t> marked;
  int iterations = 0;
  std::vector<double> success_trace;
  sim::Statevector final_state;
};

GroverRun grover_search(const sim::Statevector& initial,
                        const std::vector<std::uint64_t>& marked,
                        int iterations);

/** sin^2((2t+1) asin(sqrt(p0))): the closed-form success probability
 *  after t rounds from initial marked-set probability p0. */
double grover_success_closed_form(int t, double initial_success);

/** First t with closed-form success >= threshold, scanning from 0.
 *  Returns -1 if no t up to the cap reaches it. */
int grover_iterations_to(double initial_success, double threshold,
                         int max_iterations = 1 << 20);

/**
 * Probabilities after H on every qubit of the prepared state:
 * q_j = (1/N) (sum_i (-1)^{popcount(i & j)} sqrt(p_i))^2.
 * num_qubits <= 12.
 */
std::vector<double> interference_distribution(const dist::Distribution& d,
                                              int num_qubits,
                                              const dist::IntegrationBackend& backend);

struct InterferenceReport {
  std::vector<double> masses;       // level-n input coarse graining p
  std::vector<double> q;            // simulated interference pattern
  std::vector<double> reference_q;  // direct signed-sum evaluation
  double max_abs_diff;              // vs reference
  dist::LogConcavityReport input_report;
  /** Concavity of q as a tabulated density on [0, 1); absent when the
   *  pattern is too concentrated to form any stencil. */
  std::optional<dist::LogConcavityReport> output_report;
};

/** Runs the interference demo and cross-checks the simulated pattern
 *  against the direct signed-sum formula; also reports log-concavity of
 *  the input density and of the output pattern. */
InterferenceReport interference_demo(const dist::Distribution& d,
                                     int num_qubits,
                                     const dist::IntegrationBackend& backend);

struct FourierComponentReport {
  std::uint64_t k = 0;
  double magnitude = 0.0;    // |qft(prepared)[k]| via the transform
  double reference = 0.0;    // direct O(N) sum for the same coefficient
  double abs_diff = 0.0;
};

/** Prepares the state for d, reads one Fourier magnitude through the
 *  transform, and cross-checks it against a direct coefficient sum. */
FourierComponentReport fourier_component_demo(const dist::Distribution& d,
                                              int num_qubits, std::uint64_t k,
                                              const dist::IntegrationBackend& backend);

}  // namespace qprep::apps
