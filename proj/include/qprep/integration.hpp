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
#include <stdexcept>
#include <string>

#include "qprep/distribution.hpp"

namespace qprep::dist {

/** Region masses below this are treated as unresolvable noise; the
 *  left-fraction of such a region is defined as exactly 0.5. */
inline constexpr double kZeroMassThreshold = 1e-15;

enum class IntegrationMethod {
  AnalyticCdf,
  AdaptiveQuadrature,
  MonteCarlo,
};

std::string method_name(IntegrationMethod method);
IntegrationMethod method_from_name(const std::string& name);

/**
 * Strategy + knobs for evaluating interval masses. tolerance is the
 * absolute error target for the quadrature path; sample_count and seed
 * drive the Monte Carlo path. Identical backends (seed included) give
 * bit-identical results on identical inputs.
 */
struct IntegrationBackend {
  IntegrationMethod method = IntegrationMethod::AnalyticCdf;
  double tolerance = 1e-12;
  std::uint64_t sample_count = 100000;
  std::uint64_t seed = 1;

  static IntegrationBackend analytic();
  static IntegrationBackend quadrature(double tolerance);
  static IntegrationBackend monte_carlo(std::uint64_t sample_count,
                                        std::uint64_t seed);
};

void validate_backend(const IntegrationBackend& backend);

/** Mass of an interval plus the backend's own error estimate: exactly 0
 *  for the analytic path, the quadrature error estimate, or the Monte
 *  Carlo standard error. */
struct MassEstimate {
  double mass;
  double error_estimate;
};

/** Thrown when a backend cannot reach its error budget; carries the
 *  error estimate it did achieve. */
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_error_(achieved) {}
  double achieved_error() const { return achieved_error_; }

 private:
  double achieved_error_;
};

/**
 * Mass of [lo, hi] under d, clamped to [0, 1].
 * Requires support_lo <= lo <= hi <= support_hi.
 */
MassEstimate integrate_with_error(const Distribution& d, double lo, double hi,
                                  const IntegrationBackend& backend);
double integrate(const Distribution& d, double lo, double hi,
                 const IntegrationBackend& backend);

/**
 * Conditional mass of the left half of a region: mass([left, mid]) /
 * mass([left, right]) clamped to [0, 1], where mid is the region's
 * dyadic midpoint. Regions with total mass below kZeroMassThreshold get
 * exactly 0.5.
 */
double left_fraction(const Distribution& d, const Region& region,
                     const IntegrationBackend& backend);

/** left_fraction plus the error estimates of the two integrals behind
 *  it, for callers that track an accumulated error budget. */
struct LeftFractionEstimate {
  double fraction;
  double region_mass;
  double error_estimate;  // sum of the child and region integral estimates
};

LeftFractionEstimate left_fraction_with_error(const Distribution& d,
                                              const Region& region,
                                              const IntegrationBackend& backend);

}  // namespace qprep::dist
