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

#include "frangine/mode_select.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "frangine/errors.hpp"

namespace frangine::mode {

void ModeThresholds::validate() const {
  const bool finite = std::isfinite(d1) && std::isfinite(d2) && std::isfinite(d3) &&
                      std::isfinite(speed_threshold);
  if (!finite || !(d1 > 0.0) || !(d1 < d2) || !(d2 < d3)) {
    throw ValidationError("thresholds", "require 0 < d1 < d2 < d3");
  }
  if (!(speed_threshold > 0.0)) throw ValidationError("thresholds", "speed_threshold must be positive");
}

const char* to_string(Mode mode) noexcept {
  switch (mode) {
    case Mode::D2D: return "D2D";
    case Mode::FueRelay: return "FueRelay";
    case Mode::LocalCoordination: return "LocalCoordination";
    case Mode::GlobalCRAN: return "GlobalCRAN";
    case Mode::HPN: return "HPN";
  }
  return "?";
}

const char* to_string(Reason reason) noexcept {
  switch (reason) {
    case Reason::HighSpeed: return "high_speed";
    case Reason::RealTimeVoice: return "real_time_voice";
    case Reason::WithinD1: return "within_d1";
    case Reason::RelayAvailable: return "relay_available";
    case Reason::BeyondD2WithinD3: return "beyond_d2_within_d3";
    case Reason::EndpointNotD2dCapable: return "endpoint_not_d2d_capable";
    case Reason::NoRelayWithinD2: return "no_relay_within_d2";
    case Reason::BeyondD3: return "beyond_d3";
    case Reason::ContentInCloud: return "content_in_cloud";
    case Reason::LocalCoordinationInfeasible: return "local_coordination_infeasible";
    case Reason::NoServingFap: return "no_serving_fap";
    case Reason::ArchitectureGate: return "architecture_gate";
  }
  return "?";
}

bool slow_pair(const UeContext& a, const UeContext& b, double speed_threshold) noexcept {
  return a.speed <= speed_threshold && b.speed <= speed_threshold &&
         std::abs(a.speed - b.speed) <= speed_threshold;
}

namespace {

ModeDecision infrastructure(Mode mode, Reason reason, std::optional<std::size_t> serving_fap) {
  if (!serving_fap) return {Mode::HPN, std::nullopt, std::nullopt, Reason::NoServingFap};
  return {mode, std::nullopt, serving_fap, reason};
}

}  // namespace

ModeDecision select_mode(const UeContext& src, const UeContext& dst, const ModeThresholds& thresholds,
                         std::span<const UeContext> relay_candidates, bool content_available_locally,
                         bool local_coordination_feasible, std::optional<std::size_t> serving_fap) {
  thresholds.validate();
  const double v = thresholds.speed_threshold;

  if (src.speed > v || dst.speed > v) return {Mode::HPN, std::nullopt, std::nullopt, Reason::HighSpeed};
  if (src.qos == Qos::RealTimeVoice || dst.qos == Qos::RealTimeVoice) {
    return {Mode::HPN, std::nullopt, std::nullopt, Reason::RealTimeVoice};
  }

  const double d = geometry::distance(src.position, dst.position);
  const bool capable = src.d2d_capable && dst.d2d_capable;
  const bool slow = slow_pair(src, dst, v);

  if (d <= thresholds.d1 && capable && slow) {
    return {Mode::D2D, std::nullopt, std::nullopt, Reason::WithinD1};
  }

  if (d > thresholds.d1 && d <= thresholds.d2 && capable && slow) {
    const UeContext* best = nullptr;
    double best_hop = 0.0;
    for (const auto& r : relay_candidates) {
      if (r.id == src.id || r.id == dst.id || !r.relay_willing) continue;
      const double to_src = geometry::distance(r.position, src.position);
      const double to_dst = geometry::distance(r.position, dst.position);
      if (to_src > thresholds.d1 || to_dst > thresholds.d1) continue;
      const double hop = std::max(to_src, to_dst);
      if (best == nullptr || hop < best_hop || (hop == best_hop && r.id < best->id)) {
        best = &r;
        best_hop = hop;
      }
    }
    if (best != nullptr) return {Mode::FueRelay, best->id, std::nullopt, Reason::RelayAvailable};
  }

  if (d > thresholds.d3) return infrastructure(Mode::GlobalCRAN, Reason::BeyondD3, serving_fap);

  Reason local_reason = Reason::BeyondD2WithinD3;
  if (d <= thresholds.d2) local_reason = capable ? Reason::NoRelayWithinD2 : Reason::EndpointNotD2dCapable;

  const bool fetch = src.requested_content.has_value();
  if (fetch && !content_available_locally) {
    return infrastructure(Mode::GlobalCRAN, Reason::ContentInCloud, serving_fap);
  }
  if (!local_coordination_feasible) {
    return infrastructure(Mode::GlobalCRAN, Reason::LocalCoordinationInfeasible, serving_fap);
  }
  return infrastructure(Mode::LocalCoordination, local_reason, serving_fap);
}

UeContext infrastructure_endpoint(geometry::Point position) {
  UeContext ctx;
  ctx.id = UeId(-1);
  ctx.position = position;
  ctx.speed = 0.0;
  ctx.d2d_capable = false;
  ctx.relay_willing = false;
  ctx.qos = Qos::Packet;
  return ctx;
}

std::size_t associate_fap(const UeContext& ue, const geometry::NodeSet& faps,
                          const channel::LinkBudget& budget, double interference_limit_watts,
                          std::span<const int> free_resource_blocks) {
  const std::size_t n = faps.size();
  if (n == 0) throw AllFapsBlocked();
  if (free_resource_blocks.size() != n) {
    throw ValidationError("capacity", "one free-resource count per F-AP is required");
  }

  std::vector<double> uplink(n);
  double uplink_total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    uplink[i] = budget.fue_tx_watts() * channel::path_gain(geometry::distance(ue.position, faps.positions[i]), budget);
    uplink_total += uplink[i];
  }

  // Downlink mean power is monotone in the same path gain, so the strongest
  // F-AP is the nearest one.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return uplink[a] > uplink[b]; });

  for (auto i : order) {
    if (free_resource_blocks[i] <= 0) continue;
    const double interference = uplink_total - uplink[i];
    if (interference > interference_limit_watts) continue;
    return i;
  }
  throw AllFapsBlocked();
}

bool local_coordination_feasible(geometry::Point ue, std::size_t serving_fap,
                                 const geometry::NetworkTopology& topology,
                                 const channel::LinkBudget& budget) {
  const auto& faps = topology.faps.positions;
  const double p = budget.fap_tx_watts();
  const double signal = p * channel::path_gain(geometry::distance(ue, faps.at(serving_fap)), budget);
  double interference = 0.0;
  for (std::size_t j = 0; j < faps.size(); ++j) {
    if (j == serving_fap || topology.fap_adjacency.adjacent(serving_fap, j)) continue;
    interference += p * channel::path_gain(geometry::distance(ue, faps[j]), budget);
  }
  const double ratio = signal / (interference + budget.noise_watts());
  return ratio >= budget.sinr_threshold_linear();
}

}  // namespace frangine::mode
