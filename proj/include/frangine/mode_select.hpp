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
#include <optional>
#include <span>

#include "frangine/channel.hpp"
#include "frangine/geometry.hpp"

namespace frangine::mode {

using UeId = std::uint32_t;
using ContentId = std::uint32_t;

/// Distance bands and mobility limit for mode selection.
struct ModeThresholds {
  double d1 = 50.0;
  double d2 = 150.0;
  double d3 = 500.0;
  double speed_threshold = 10.0;

  /// Throws ValidationError("thresholds", ...) unless 0 < d1 < d2 < d3 and
  /// speed_threshold > 0.
  void validate() const;
  friend bool operator==(const ModeThresholds&, const ModeThresholds&) = default;
};

enum class Qos { RealTimeVoice, Packet };

struct UeContext {
  UeId id = 0;
  geometry::Point position;
  double speed = 0.0;
  bool d2d_capable = true;
  bool relay_willing = false;
  Qos qos = Qos::Packet;
  std::optional<ContentId> requested_content;
};

enum class Mode { D2D, FueRelay, LocalCoordination, GlobalCRAN, HPN };

inline constexpr std::size_t kModeCount = 5;

enum class Reason {
  HighSpeed,
  RealTimeVoice,
  WithinD1,
  RelayAvailable,
  BeyondD2WithinD3,
  EndpointNotD2dCapable,
  NoRelayWithinD2,
  BeyondD3,
  ContentInCloud,
  LocalCoordinationInfeasible,
  NoServingFap,
  ArchitectureGate,
};

const char* to_string(Mode mode) noexcept;
const char* to_string(Reason reason) noexcept;

struct ModeDecision {
  Mode mode = Mode::HPN;
  /// Present iff mode == FueRelay.
  std::optional<UeId> relay_id;
  /// Present iff mode is LocalCoordination or GlobalCRAN.
  std::optional<std::size_t> serving_fap;
  Reason reason = Reason::HighSpeed;
};

/// Both speeds within the limit and their difference within the limit.
bool slow_pair(const UeContext& a, const UeContext& b, double speed_threshold) noexcept;

/// Ordered rule set; the first matching rule decides.
///
///  1. Either endpoint faster than the speed limit, or carrying real-time
///     voice: HPN.
///  2. d <= D1, both D2D capable, slow pair: D2D.
///  3. D1 < d <= D2, both capable, and a willing relay within D1 of both
///     endpoints: FueRelay through the candidate with the smallest bottleneck
///     hop, ties to the lower id.
///  4. D2 < d <= D3, or d <= D2 with an endpoint lacking D2D support, or a
///     capable pair within D2 that found no relay: LocalCoordination when it
///     is feasible and, for a content request, the content is held locally.
///  5. Everything else: GlobalCRAN.
///
/// Modes 4 and 5 need a serving F-AP; without one the decision is HPN.
/// `src.requested_content` marks the request as a content fetch.
ModeDecision select_mode(const UeContext& src, const UeContext& dst, const ModeThresholds& thresholds,
                         std::span<const UeContext> relay_candidates, bool content_available_locally,
                         bool local_coordination_feasible, std::optional<std::size_t> serving_fap);

/// Context standing in for a content source that is not an F-UE (an F-AP
/// cache or the cloud behind the serving F-AP). It never supports D2D.
UeContext infrastructure_endpoint(geometry::Point position);

/// Strongest-first F-AP admission.
///
/// Candidates are visited by descending mean received power (ties to the lower
/// index). A candidate admits the F-UE when it has at least one free resource
/// block and the F-UE's mean uplink power summed over every other F-AP stays
/// within interference_limit_watts. Throws AllFapsBlocked when no candidate
/// admits.
std::size_t associate_fap(const UeContext& ue, const geometry::NodeSet& faps,
                          const channel::LinkBudget& budget, double interference_limit_watts,
                          std::span<const int> free_resource_blocks);

/// Mean-gain feasibility of local coordination: SINR at the F-UE from its
/// serving F-AP, with only F-APs outside the serving F-AP's coordination
/// neighborhood counted as interference, compared against the threshold.
bool local_coordination_feasible(geometry::Point ue, std::size_t serving_fap,
                                 const geometry::NetworkTopology& topology,
                                 const channel::LinkBudget& budget);

}  // namespace frangine::mode
