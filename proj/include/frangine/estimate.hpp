/*
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace frangine {

/// Two-sided 99% standard-normal quantile.
inline constexpr double kZ99 = 2.5758293035489004;

/// Monte-Carlo probability with its 99% normal-approximation half-width.
struct ProbabilityEstimate {
  double value = 0.0;
  double half_width = 0.0;
  std::size_t trials = 0;

  static ProbabilityEstimate from_counts(std::size_t successes, std::size_t trials) {
    if (trials == 0) return {};
    const double p = static_cast<double>(successes) / static_cast<double>(trials);
    return {p, kZ99 * std::sqrt(p * (1.0 - p) / static_cast<double>(trials)), trials};
  }
};

/// Sample mean with standard error and 99% half-width.
struct MeanEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  double half_width = 0.0;
  std::size_t samples = 0;

  static MeanEstimate from_samples(std::span<const double> xs) {
    MeanEstimate out;
    out.samples = xs.size();
    if (xs.empty()) return out;
    double sum = 0.0;
    for (double x : xs) sum += x;
    out.mean = sum / static_cast<double>(xs.size());
    if (xs.size() > 1) {
      double ss = 0.0;
      for (double x : xs) ss += (x - out.mean) * (x - out.mean);
      const double var = ss / static_cast<double>(xs.size() - 1);
      out.std_error = std::sqrt(var / static_cast<double>(xs.size()));
      out.half_width = kZ99 * out.std_error;
    }
    return out;
  }
};

}  // namespace frangine
