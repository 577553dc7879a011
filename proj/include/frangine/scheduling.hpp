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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "frangine/channel.hpp"
#include "frangine/estimate.hpp"
#include "frangine/geometry.hpp"

namespace frangine::coordination {

/// Geometry and radio parameters of the D2D underlay of a cellular uplink.
struct UnderlayParams {
  geometry::Region region{1000.0, 1000.0};
  double hpn_density = 4.0e-6;
  double d2d_density = 4.0e-4;
  std::size_t n_subchannels = 10;
  /// D2D receivers lie uniformly in a disk of this radius around their transmitter.
  double d2d_radius = 50.0;
  channel::FadingModel d2d_fading = channel::FadingModel::rician(2.0);
  channel::LinkBudget budget;

  void validate() const;
};

/// One placement of HPNs and D2D links with a block-fading snapshot of every
/// D2D-transmitter-to-HPN gain on every subchannel.
struct UnderlayDrop {
  std::vector<geometry::Point> hpns;
  std::vector<geometry::Point> d2d_tx;
  std::vector<geometry::Point> d2d_rx;
  /// Nearest HPN of each D2D transmitter; it is the victim COAC protects.
  std::vector<std::size_t> victim_hpn;
  std::size_t n_subchannels = 0;
  /// Row-major [link][hpn][subchannel], path gain times Rayleigh fading.
  std::vector<double> cross_gains;

  std::size_t link_count() const noexcept { return d2d_tx.size(); }
  double cross_gain(std::size_t link, std::size_t hpn, std::size_t subchannel) const {
    return cross_gains[(link * hpns.size() + hpn) * n_subchannels + subchannel];
  }
  /// [link][subchannel] gains toward each link's victim HPN.
  std::vector<std::vector<double>> victim_cross_gains() const;
};

/// HPNs and D2D transmitters are independent PPPs. An empty HPN draw is
/// replaced by one umbrella HPN at the region center.
UnderlayDrop sample_underlay_drop(const UnderlayParams& params, Rng& rng);

/// round(epsilon * n) with halves rounded away from zero.
std::size_t occupied_count(double epsilon, std::size_t n_subchannels);

struct SubchannelAssignment {
  std::size_t n_subchannels = 0;
  double epsilon = 0.0;
  /// Sorted subchannel indices per D2D link.
  std::vector<std::vector<std::size_t>> occupied;

  bool occupies(std::size_t link, std::size_t subchannel) const;
};

/// Centralized opportunistic access: every link takes the round(eps N)
/// subchannels with the smallest cross gain toward its victim receiver,
/// ties to the lower subchannel index.
SubchannelAssignment coac_assign(std::span<const std::vector<double>> cross_gains, std::size_t n_subchannels,
                                 double epsilon);

/// Distributed random access: every link takes a uniformly random
/// round(eps N)-subset. Each link consumes one full shuffle regardless of
/// epsilon, so a fixed stream yields nested subsets as epsilon grows.
SubchannelAssignment drac_assign(std::size_t n_links, std::size_t n_subchannels, double epsilon, Rng& rng);

/// Probability that a typical cellular uplink meets the SINR threshold.
///
/// Per trial: a cellular F-UE is placed uniformly in the region, served by
/// its nearest HPN on a uniformly chosen subchannel with Rayleigh fading.
/// Interference is the snapshot gain of every D2D transmitter occupying that
/// subchannel. Every trial consumes the same number of draws.
ProbabilityEstimate cellular_success_probability(const UnderlayDrop& drop, const SubchannelAssignment& assignment,
                                                 const geometry::Region& region, const channel::LinkBudget& budget,
                                                 double gamma_th_db, std::size_t mc_trials, Rng& rng);

/// Probability that a typical active D2D link meets the SINR threshold on one
/// of its occupied subchannels; co-channel D2D transmitters interfere through
/// Rayleigh links. Zero trials are reported when no link transmits.
ProbabilityEstimate d2d_success_probability(const UnderlayDrop& drop, const SubchannelAssignment& assignment,
                                            const channel::LinkBudget& budget, const channel::FadingModel& d2d_fading,
                                            double gamma_th_db, std::size_t mc_trials, Rng& rng);

enum class Scheduler { Coac, Drac };

const char* to_string(Scheduler scheduler) noexcept;

struct UnderlayResult {
  ProbabilityEstimate cellular;
  ProbabilityEstimate d2d;
};

/// Averages both success probabilities over independent drops. Drop k uses
/// substreams derived from (seed, k), shared by both schedulers and every
/// epsilon, so sweeps over either use common random numbers.
UnderlayResult evaluate_underlay(const UnderlayParams& params, Scheduler scheduler, double epsilon,
                                 double gamma_th_db, std::size_t drops, std::size_t trials_per_drop,
                                 std::uint64_t seed);

}  // namespace frangine::coordination
