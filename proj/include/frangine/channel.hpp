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

#include <span>

#include "frangine/rng.hpp"

namespace frangine::channel {

enum class FadingKind { Rayleigh, RicianK };

/// Small-scale fading of the power gain. All models have unit mean.
struct FadingModel {
  FadingKind kind = FadingKind::Rayleigh;
  /// LOS-to-scattered power ratio in dB; used only for RicianK.
  double k_factor_db = 0.0;

  static FadingModel rayleigh() { return {FadingKind::Rayleigh, 0.0}; }
  static FadingModel rician(double k_db) { return {FadingKind::RicianK, k_db}; }

  double k_linear() const noexcept;
  friend bool operator==(const FadingModel&, const FadingModel&) = default;
};

struct LinkBudget {
  double path_loss_exponent = 4.0;
  double reference_gain_db = 0.0;
  double hpn_tx_power_dbm = 43.0;
  double fap_tx_power_dbm = 30.0;
  double fue_tx_power_dbm = 20.0;
  double noise_power_dbm = -100.0;
  double sinr_threshold_db = 0.0;

  /// Throws ValidationError("link_budget", ...) unless alpha > 2 and all
  /// quantities are finite.
  void validate() const;

  double noise_watts() const noexcept;
  double hpn_tx_watts() const noexcept;
  double fap_tx_watts() const noexcept;
  double fue_tx_watts() const noexcept;
  double sinr_threshold_linear() const noexcept;
  friend bool operator==(const LinkBudget&, const LinkBudget&) = default;
};

constexpr double kMinDistance = 1.0;

double db_to_linear(double db) noexcept;
double linear_to_db(double linear) noexcept;
double dbm_to_watts(double dbm) noexcept;

/// ref_gain * max(d, 1 m)^-alpha
double path_gain(double d, const LinkBudget& budget) noexcept;

/// One power-gain draw. Every model consumes exactly two standard normals, so
/// streams seeded alike stay aligned across fading models.
double fading_sample(const FadingModel& model, Rng& rng);

/// signal / (sum(interferers) + noise). Throws std::invalid_argument on
/// negative powers or non-positive noise.
double sinr(double signal, std::span<const double> interferers, double noise);

/// Shannon spectral efficiency log2(1 + sinr), bits/s/Hz.
double rate(double sinr);

}  // namespace frangine::channel
