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

#include "qprep/integration.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "qprep/detail/random.hpp"

namespace qprep::dist {

namespace {

// Splitting stops once the per-interval budget is met or this depth is
// reached; deeper recursion than 2^-40 of the original width only
// grinds rounding noise.
constexpr int kMaxSimpsonDepth = 40;

struct QuadAccum {
  double error = 0.0;
  bool depth_exhausted = false;
};

double simpson_segment(const Distribution& d, double a, double fa, double m,
                       double fm, double b, double fb, double whole,
                       double tolerance, int depth, QuadAccum& accum) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = d.pdf(lm);
  const double frm = d.pdf(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  // |delta| / 15 estimates the error of the Richardson-extrapolated sum.
  if (std::abs(delta) <= 15.0 * tolerance || depth >= kMaxSimpsonDepth) {
    if (depth >= kMaxSimpsonDepth && std::abs(delta) > 15.0 * tolerance) {
      accum.depth_exhausted = true;
    }
    accum.error += std::abs(delta) / 15.0;
    return left + right + delta / 15.0;
  }
  return simpson_segment(d, a, fa, lm, flm, m, fm, left, 0.5 * tolerance,
                         depth + 1, accum) +
         simpson_segment(d, m, fm, rm, frm, b, fb, right, 0.5 * tolerance,
                         depth + 1, accum);
}

MassEstimate integrate_quadrature(const Distribution& d, double lo, double hi,
                                  double tolerance) {
  if (lo == hi) return {0.0, 0.0};
  const double mid = 0.5 * (lo + hi);
  const double flo = d.pdf(lo);
  const double fmid = d.pdf(mid);
  const double fhi = d.pdf(hi);
  const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
  QuadAccum accum;
  double value =
      simpson_segment(d, lo, flo, mid, fmid, hi, fhi, whole, tolerance, 0,
                      accum);
  if (accum.depth_exhausted && accum.error > tolerance) {
    throw IntegrationError(
        "adaptive quadrature hit maximum depth before reaching its budget",
        accum.error);
  }
  return {std::clamp(value, 0.0, 1.0), accum.error};
}

MassEstimate integrate_monte_carlo(const Distribution& d, double lo, double hi,
                                   const IntegrationBackend& backend) {
  const double width = hi - lo;
  if (width == 0.0) return {0.0, 0.0};
  std::mt19937_64 rng(detail::derive_seed(backend.seed, lo, hi));
  const std::uint64_t samples = backend.sample_count;
  // Welford running moments keep the variance stable for large counts.
  double mean = 0.0;
  double m2 = 0.0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    const double x = lo + width * detail::uniform_unit(rng);
    const double v = d.pdf(x);
    const double delta = v - mean;
    mean += delta / static_cast<double>(s + 1);
    m2 += delta * (v - mean);
  }
  const double mass = std::clamp(width * mean, 0.0, 1.0);
  double se;
  if (samples >= 2) {
    const double n = static_cast<double>(samples);
    se = width * std::sqrt(m2 / ((n - 1.0) * n));
  } else {
    se = width;  // a single sample carries no variance information
  }
  return {mass, se};
}

}  // namespace

std::string method_name(IntegrationMethod method) {
  switch (method) {
    case IntegrationMethod::AnalyticCdf: return "analytic";
    case IntegrationMethod::AdaptiveQuadrature: return "quadrature";
    case IntegrationMethod::MonteCarlo: return "montecarlo";
  }
  throw std::invalid_argument("unknown integration method enum value");
}

IntegrationMethod method_from_name(const std::string& name) {
  if (name == "analytic") return IntegrationMethod::AnalyticCdf;
  if (name == "quadrature") return IntegrationMethod::AdaptiveQuadrature;
  if (name == "montecarlo") return IntegrationMethod::MonteCarlo;
  throw std::invalid_argument("unknown integration method: " + name);
}

IntegrationBackend IntegrationBackend::analytic() {
  return IntegrationBackend{};
}

IntegrationBackend IntegrationBackend::quadrature(double tolerance) {
  IntegrationBackend b;
  b.method = IntegrationMethod::AdaptiveQuadrature;
  b.tolerance = tolerance;
  return b;
}

IntegrationBackend IntegrationBackend::monte_carlo(std::uint64_t sample_count,
                                                   std::uint64_t seed) {
  IntegrationBackend b;
  b.method = IntegrationMethod::MonteCarlo;
  b.sample_count = sample_count;
  b.seed = seed;
  return b;
}

void validate_backend(const IntegrationBackend& backend) {
  if (!(backend.tolerance > 0.0) || !std::isfinite(backend.tolerance)) {
    throw std::invalid_argument("backend tolerance must be positive");
  }
  if (backend.method == IntegrationMethod::MonteCarlo &&
      backend.sample_count == 0) {
    throw std::invalid_argument("backend sample_count must be positive");
  }
}

MassEstimate integrate_with_error(const Distribution& d, double lo, double hi,
                                  const IntegrationBackend& backend) {
  validate_backend(backend);
  if (!(d.support_lo() <= lo) || !(lo <= hi) || !(hi <= d.support_hi())) {
    throw std::invalid_argument(
        "integration bounds must satisfy support_lo <= lo <= hi <= support_hi");
  }
  switch (backend.method) {
    case IntegrationMethod::AnalyticCdf: {
      double mass = std::clamp(d.cdf(hi) - d.cdf(lo), 0.0, 1.0);
      return {mass, 0.0};
    }
    case IntegrationMethod::AdaptiveQuadrature:
      return integrate_quadrature(d, lo, hi, backend.tolerance);
    case IntegrationMethod::MonteCarlo:
      return integrate_monte_carlo(d, lo, hi, backend);
  }
  throw std::logic_error("unreachable integration method");
}

double integrate(const Distribution& d, double lo, double hi,
                 const IntegrationBackend& backend) {
  return integrate_with_error(d, lo, hi, backend).mass;
}

LeftFractionEstimate left_fraction_with_error(const Distribution& d,
                                              const Region& region,
                                              const IntegrationBackend& backend) {
  const Region canonical =
      region_bounds(region.level, region.index, d.support_lo(), d.support_hi());
  if (region.left != canonical.left || region.right != canonical.right) {
    throw std::invalid_argument(
        "region bounds do not match the dyadic tiling of the support");
  }
  const MassEstimate whole =
      integrate_with_error(d, region.left, region.right, backend);
  if (whole.mass < kZeroMassThreshold) {
    // Unresolvably small mass: split evenly rather than amplify noise.
    return {0.5, whole.mass, whole.error_estimate};
  }
  const Region left_child = region_bounds(region.level + 1, 2 * region.index,
                                          d.support_lo(), d.support_hi());
  const MassEstimate left =
      integrate_with_error(d, left_child.left, left_child.right, backend);
  const double fraction = std::clamp(left.mass / whole.mass, 0.0, 1.0);
  return {fraction, whole.mass, whole.error_estimate + left.error_estimate};
}

double left_fraction(const Distribution& d, const Region& region,
                     const IntegrationBackend& backend) {
  return left_fraction_with_error(d, region, backend).fraction;
}

}  // namespace qprep::dist
