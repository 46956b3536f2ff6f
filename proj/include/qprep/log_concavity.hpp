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

#include <cstddef>
#include <stdexcept>

#include "qprep/distribution.hpp"

namespace qprep::dist {

/** Second differences of log pdf up to this slack still count as
 *  concave; absorbs rounding noise in the finite-difference stencil. */
inline constexpr double kLogConcavityTolerance = 1e-9;

/** Grid points with pdf below this are skipped (and counted) rather
 *  than pushed through log(), where they would only amplify noise. */
inline constexpr double kPdfPositivityThreshold = 1e-12;

/** Thrown when fewer than one central difference can be formed, i.e.
 *  the density is below the positivity threshold almost everywhere on
 *  the grid. */
class DegenerateInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct LogConcavityReport {
  bool passes;
  /** Grid point with the largest second difference of log pdf. */
  double worst_point;
  /** That largest second difference; <= kLogConcavityTolerance iff passes. */
  double worst_value;
  /** Central differences actually evaluated. */
  std::size_t evaluated_points;
  /** Grid points skipped for sub-threshold density. */
  std::size_t skipped_points;
};

/**
 * Checks log-concavity of d on a uniform grid over its support using
 * central second differences of log pdf. grid_points >= 3 required.
 * Throws DegenerateInputError when no central difference is evaluable.
 */
LogConcavityReport check_log_concavity(const Distribution& d,
                                       int grid_points = 257);

}  // namespace qprep::dist
