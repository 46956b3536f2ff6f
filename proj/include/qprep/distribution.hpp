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
#include <string>
#include <vector>

#include <json.hpp>

namespace qprep::dist {

enum class Family {
  Uniform,
  Exponential,
  Gaussian,
  TruncatedGaussian,
  Mixture,
  Tabulated,
};

std::string family_name(Family family);
Family family_from_name(const std::string& name);

/** One weighted Gaussian term of a mixture density. */
struct GaussianComponent {
  double weight;
  double mean;
  double stddev;
};

/**
 * A probability density truncated to a finite support [a, b] and
 * renormalized so it integrates to exactly 1 over that support.
 *
 * pdf() is 0 outside [a, b]. cdf() is the renormalized cumulative,
 * clamped to [0, 1], with cdf(a) == 0 and cdf(b) == 1. Every built-in
 * family ships a closed-form CDF; cdf_available() reports it so callers
 * can pick an integration strategy.
 */
class Distribution {
 public:
  static Distribution uniform(double a, double b);
  /** Support defaults to [0, 20/rate] when not given. */
  static Distribution exponential(double rate,
                                  std::optional<double> a = std::nullopt,
                                  std::optional<double> b = std::nullopt);
  /** Support defaults to mean +- 5 stddev when not given. */
  static Distribution gaussian(double mean, double stddev,
                               std::optional<double> a = std::nullopt,
                               std::optional<double> b = std::nullopt);
  /** Gaussian shape restricted to an explicit [a, b]. */
  static Distribution truncated_gaussian(double mean, double stddev, double a,
                                         double b);
  /** Support defaults to the envelope of component mean +- 5 stddev. */
  static Distribution mixture(std::vector<GaussianComponent> components,
                              std::optional<double> a = std::nullopt,
                              std::optional<double> b = std::nullopt);
  /**
   * Piecewise-linear density through (xs[i], ps[i]). xs strictly
   * increasing, ps nonnegative with positive total integral; values are
   * renormalized internally. Support is [xs.front(), xs.back()].
   */
  static Distribution tabulated(std::vector<double> xs,
                                std::vector<double> ps);

  Family family() const { return family_; }
  double support_lo() const { return lo_; }
  double support_hi() const { return hi_; }
  // Every built-in family carries a closed-form cumulative (tabulated
  // densities integrate piecewise exactly), so the analytic path is
  // always available. The flag stays on the interface for callers that
  // branch on it.
  bool cdf_available() const { return true; }

  double pdf(double x) const;
  double cdf(double x) const;

  /**
   * Parses {"family": ..., "params": {...}, "support": [a, b]}.
   * Unknown families and malformed parameters throw std::invalid_argument
   * naming the offending key.
   */
  static Distribution from_json(const nlohmann::json& spec);
  nlohmann::json to_json() const;

 private:
  Distribution() = default;

  Family family_ = Family::Uniform;
  double lo_ = 0.0;
  double hi_ = 1.0;
  // Family parameters; meaning depends on family_.
  double rate_ = 1.0;
  double mean_ = 0.0;
  double stddev_ = 1.0;
  std::vector<GaussianComponent> components_;
  std::vector<double> xs_;
  std::vector<double> ps_;       // renormalized knot densities
  std::vector<double> cum_;      // cdf at each knot, cum_.back() == 1
  double norm_ = 1.0;            // raw mass over [lo_, hi_] before renormalization
};

/**
 * Dyadic subregion of a support interval: region (level m, index i) is
 * the i-th of 2^m equal slices of [a, b].
 *
 * Boundaries are computed from the exact dyadic fraction i / 2^m, so a
 * boundary shared between levels (e.g. the right edge of (m, i) and of
 * (m+1, 2i+1)) is bitwise identical, and the level-m slices tile the
 * support without gaps or overlaps.
 */
struct Region {
  int level;
  std::uint64_t index;
  double left;
  double right;
};

Region region_bounds(int level, std::uint64_t index, double support_lo,
                     double support_hi);

}  // namespace qprep::dist
