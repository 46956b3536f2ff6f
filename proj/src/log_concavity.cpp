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

#include "qprep/log_concavity.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace qprep::dist {

LogConcavityReport check_log_concavity(const Distribution& d,
                                       int grid_points) {
  if (grid_points < 3) {
    throw std::invalid_argument("log-concavity grid needs at least 3 points");
  }
  const double a = d.support_lo();
  const double b = d.support_hi();
  const int g = grid_points;
  const double h = (b - a) / static_cast<double>(g - 1);

  std::vector<double> logp(static_cast<std::size_t>(g));
  std::vector<char> usable(static_cast<std::size_t>(g), 0);
  std::size_t skipped = 0;
  for (int k = 0; k < g; ++k) {
    const double x = (k == g - 1) ? b : a + h * static_cast<double>(k);
    const double p = d.pdf(x);
    if (p >= kPdfPositivityThreshold) {
      logp[static_cast<std::size_t>(k)] = std::log(p);
      usable[static_cast<std::size_t>(k)] = 1;
    } else {
      ++skipped;
    }
  }

  std::size_t evaluated = 0;
  double worst = -std::numeric_limits<double>::infinity();
  double worst_x = std::numeric_limits<double>::quiet_NaN();
  for (int k = 1; k + 1 < g; ++k) {
    const auto i = static_cast<std::size_t>(k);
    if (!usable[i - 1] || !usable[i] || !usable[i + 1]) continue;
    const double second = (logp[i - 1] - 2.0 * logp[i] + logp[i + 1]) / (h * h);
    ++evaluated;
    if (second > worst) {
      worst = second;
      worst_x = a + h * static_cast<double>(k);
    }
  }
  if (evaluated == 0) {
    throw DegenerateInputError(
        "density is below the positivity threshold on too much of the grid "
        "to form any central difference");
  }
  return LogConcavityReport{worst <= kLogConcavityTolerance, worst_x, worst,
                            evaluated, skipped};
}

}  // namespace qprep::dist
