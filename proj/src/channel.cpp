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

#include "frangine/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "frangine/errors.hpp"

namespace frangine::channel {

double FadingModel::k_linear() const noexcept {
  return kind == FadingKind::RicianK ? db_to_linear(k_factor_db) : 0.0;
}

void LinkBudget::validate() const {
  const double values[] = {path_loss_exponent, reference_gain_db, hpn_tx_power_dbm, fap_tx_power_dbm,
                           fue_tx_power_dbm,   noise_power_dbm,   sinr_threshold_db};
  for (double v : values)
    if (!std::isfinite(v)) throw ValidationError("link_budget", "all fields must be finite");
  if (!(path_loss_exponent > 2.0)) {
    throw ValidationError("link_budget", "path_loss_exponent must exceed 2");
  }
}

double LinkBudget::noise_watts() const noexcept { return dbm_to_watts(noise_power_dbm); }
double LinkBudget::hpn_tx_watts() const noexcept { return dbm_to_watts(hpn_tx_power_dbm); }
double LinkBudget::fap_tx_watts() const noexcept { return dbm_to_watts(fap_tx_power_dbm); }
double LinkBudget::fue_tx_watts() const noexcept { return dbm_to_watts(fue_tx_power_dbm); }
double LinkBudget::sinr_threshold_linear() const noexcept { return db_to_linear(sinr_threshold_db); }

double db_to_linear(double db) noexcept { return std::pow(10.0, db / 10.0); }
double linear_to_db(double linear) noexcept { return 10.0 * std::log10(linear); }
double dbm_to_watts(double dbm) noexcept { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double path_gain(double d, const LinkBudget& budget) noexcept {
  const double clamped = d > kMinDistance ? d : kMinDistance;
  return db_to_linear(budget.reference_gain_db) * std::pow(clamped, -budget.path_loss_exponent);
}

double fading_sample(const FadingModel& model, Rng& rng) {
  // Scattered part is CN(0, 1): each quadrature N(0, 1/2).
  std::normal_distribution<double> n(0.0, std::sqrt(0.5));
  const double re = n(rng);
  const double im = n(rng);
  if (model.kind == FadingKind::Rayleigh) return re * re + im * im;
  const double k = model.k_linear();
  const double los = std::sqrt(k / (k + 1.0));
  const double scatter = std::sqrt(1.0 / (k + 1.0));
  const double hr = los + scatter * re;
  const double hi = scatter * im;
  return hr * hr + hi * hi;
}

double sinr(double signal, std::span<const double> interferers, double noise) {
  if (!(noise > 0.0)) throw std::invalid_argument("sinr: noise power must be positive");
  if (!(signal >= 0.0)) throw std::invalid_argument("sinr: signal power must be non-negative");
  double total = noise;
  for (double p : interferers) {
    if (!(p >= 0.0)) throw std::invalid_argument("sinr: interferer power must be non-negative");
    total += p;
  }
  return signal / total;
}

double rate(double sinr) {
  if (!(sinr >= 0.0)) throw std::invalid_argument("rate: sinr must be non-negative");
  return std::log2(1.0 + sinr);
}

}  // namespace frangine::channel
