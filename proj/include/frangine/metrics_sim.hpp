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

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "frangine/caching.hpp"
#include "frangine/channel.hpp"
#include "frangine/clustering.hpp"
#include "frangine/estimate.hpp"
#include "frangine/geometry.hpp"
#include "frangine/mode_select.hpp"
#include "frangine/scheduling.hpp"

namespace frangine::sim {

enum class Architecture { CRAN, HCRAN, FRAN };

const char* to_string(Architecture architecture) noexcept;

/// Everything a scenario run depends on. Defaults are the documented
/// configuration defaults.
struct ScenarioConfig {
  std::uint64_t seed = 1;
  Architecture architecture = Architecture::FRAN;

  double region_width_m = 1000.0;
  double region_height_m = 1000.0;

  double hpn_density = 2.0e-6;
  double fap_density = 1.0e-5;
  double fue_density = 2.0e-4;
  /// D2D transmitter density of the underlay and spatial-rate experiments.
  double d2d_density = 2.0e-4;

  double d2d_capable_fraction = 0.6;
  double relay_willing_fraction = 0.5;
  double high_speed_fraction = 0.1;
  double voice_fraction = 0.1;
  double high_qos_fraction = 0.3;

  geometry::FapTopology fap_topology = geometry::FapTopology::Tree;

  channel::LinkBudget budget;
  channel::FadingModel d2d_fading = channel::FadingModel::rician(2.0);
  channel::FadingModel cellular_fading = channel::FadingModel::rayleigh();
  double d2d_radius_m = 50.0;

  mode::ModeThresholds thresholds;
  int fap_resource_blocks = 25;
  double interference_limit_dbm = -40.0;

  std::size_t catalog_items = 1000;
  double zipf_exponent = 0.8;
  std::uint64_t payload_bits = 8'000'000;
  std::size_t fap_cache_capacity = 50;
  std::size_t fue_cache_capacity = 10;
  caching::EvictionPolicy cache_policy = caching::EvictionPolicy::Lru;
  bool cooperative_caching = false;
  std::size_t warmup_requests_per_fue = 50;
  std::size_t requests_per_fue = 20;

  double tau = 1.0;
  double epsilon = 0.5;
  double eta = 0.5;
  std::size_t n_subchannels = 10;
  std::size_t n_resource_blocks = 50;
  coordination::Scheduler scheduler = coordination::Scheduler::Coac;
  double p_static_w = 10.0;
  double p_tx_w = 1.0;
  double p_coord_w = 0.5;
  double sleep_fraction = 0.1;
  double hpn_power_w = 130.0;
  std::size_t max_block_size = 12;

  std::size_t mc_trials = 2000;
  std::size_t cluster_mc_trials = 300;
  std::size_t underlay_drops = 20;

  double iq_expansion_factor = 16.0;

  /// Throws ValidationError naming the first violated invariant.
  void validate() const;

  geometry::Region region() const { return {region_width_m, region_height_m}; }
  caching::ContentCatalog catalog() const;
  coordination::ClusterUtilityParams cluster_params() const;
  coordination::UnderlayParams underlay_params() const;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

// ---------------------------------------------------------------------------
// Fronthaul / backhaul accounting

struct RequestRecord {
  std::uint64_t index = 0;
  std::uint32_t fue = 0;
  caching::ContentId item = 0;
  mode::Mode mode = mode::Mode::GlobalCRAN;
  caching::Tier tier = caching::Tier::CloudOnly;
};

struct TrafficConfig {
  std::uint64_t payload_bits = 8'000'000;
  /// Size of one catalog item fetched into an F-AP on a local miss.
  std::uint64_t item_bits = 8'000'000;
  double iq_expansion_factor = 16.0;
};

struct LedgerRow {
  std::uint64_t request_index = 0;
  std::uint32_t fue = 0;
  mode::Mode mode = mode::Mode::GlobalCRAN;
  caching::Tier tier = caching::Tier::CloudOnly;
  std::uint64_t payload_bits = 0;
  /// Bits on the fronthaul wire, I/Q-expanded in GlobalCRAN.
  std::uint64_t fronthaul_bits = 0;
  /// Payload delivered over the fronthaul path.
  std::uint64_t fronthaul_payload_bits = 0;
  std::uint64_t backhaul_bits = 0;
  std::uint64_t bbu_processed_bits = 0;
  std::uint64_t edge_processed_bits = 0;
  /// Payload delivered without touching fronthaul or backhaul.
  std::uint64_t edge_served_bits = 0;
};

struct LoadReport {
  std::uint64_t fronthaul_bits = 0;
  std::uint64_t fronthaul_payload_bits = 0;
  std::uint64_t backhaul_bits = 0;
  std::uint64_t bbu_processed_bits = 0;
  std::uint64_t edge_processed_bits = 0;
  std::uint64_t edge_served_bits = 0;
  std::uint64_t delivered_bits = 0;
  std::array<std::uint64_t, mode::kModeCount> mode_counts{};
  std::vector<LedgerRow> ledger;

  /// fronthaul payload + edge-served + backhaul = delivered, in total and
  /// on every ledger row.
  bool conserved() const noexcept;
};

/// Per-request load rule:
///   GlobalCRAN         payload x iq on fronthaul, BBU-processed
///   LocalCoordination  hit (F-UE or F-AP tier): edge-served
///                      miss: one item fetch on fronthaul, edge-processed
///   D2D, FueRelay      edge-served
///   HPN                backhaul only
LedgerRow account_request(const RequestRecord& request, const TrafficConfig& traffic);

LoadReport fronthaul_load(std::span<const RequestRecord> requests, const TrafficConfig& traffic);

// ---------------------------------------------------------------------------
// Energy efficiency

struct PowerBreakdown {
  double active_w = 0.0;
  double sleep_w = 0.0;
  double coordination_w = 0.0;
  double hpn_w = 0.0;
  double total() const noexcept { return active_w + sleep_w + coordination_w + hpn_w; }
};

/// rate_sum / total power. Throws ZeroPower when the total is not positive.
double energy_efficiency(double rate_sum, const PowerBreakdown& power);

// ---------------------------------------------------------------------------
// Spatial average rate

enum class LinkClass { D2D, Cellular };

struct SpatialRateParams {
  geometry::Region region{1000.0, 1000.0};
  double hpn_density = 2.0e-6;
  double d2d_density = 2.0e-4;
  /// Probability that a D2D transmitter is co-channel with the typical link.
  double epsilon = 1.0;
  double d2d_radius = 50.0;
  channel::FadingModel d2d_fading = channel::FadingModel::rician(2.0);
  channel::FadingModel cellular_fading = channel::FadingModel::rayleigh();
  channel::LinkBudget budget;
};

/// Per-trial log2(1 + SINR) of the typical link received at the region center.
///
/// D2D: transmitter uniform in a disk of d2d_radius, fading per d2d_fading.
/// Cellular: uplink F-UE uniform in a disk of radius 1/sqrt(pi lambda_M) with
/// cellular_fading. Interferers in both cases are a fresh PPP of D2D
/// transmitters thinned by epsilon plus one uplink F-UE per HPN (PPP of
/// intensity lambda_M), all through Rayleigh links. Trial t draws from the
/// substream (seed, t) and the intended link consumes its draws first, so
/// runs that differ only in fading model share geometry and interference.
std::vector<double> spatial_rate_samples(const SpatialRateParams& params, LinkClass link, std::size_t mc_trials,
                                         std::uint64_t seed);

MeanEstimate spatial_average_rate(const SpatialRateParams& params, LinkClass link, std::size_t mc_trials,
                                  std::uint64_t seed);

// ---------------------------------------------------------------------------
// Scenario runs

struct CacheTraceRow {
  std::uint64_t request_index = 0;
  caching::ContentId content_id = 0;
  caching::Tier tier_hit = caching::Tier::CloudOnly;
  std::optional<caching::ContentId> evicted_id;
};

struct MetricsReport {
  Architecture architecture = Architecture::FRAN;
  std::uint64_t seed = 0;
  std::size_t n_hpn = 0;
  std::size_t n_fap = 0;
  std::size_t n_fue = 0;
  std::size_t n_requests = 0;

  MeanEstimate spatial_average_rate;  // D2D link
  MeanEstimate cellular_average_rate;
  ProbabilityEstimate cellular_success_probability;
  ProbabilityEstimate d2d_success_probability;

  double hit_ratio_fue = 0.0;
  double hit_ratio_fap = 0.0;
  double hit_ratio_edge = 0.0;

  coordination::CoalitionPartition partition;
  double cluster_rate_sum = 0.0;
  PowerBreakdown power;
  double energy_efficiency = 0.0;

  bool sffr_isolated = true;
  std::size_t sffr_reserved_blocks = 0;

  LoadReport load;
  std::vector<CacheTraceRow> cache_trace;
  /// Assignment of the first underlay drop, for export.
  coordination::SubchannelAssignment assignment;
};

/// place -> pair D2D -> associate F-APs -> select modes (gated by
/// architecture) -> serve requests through caches -> coordination -> metrics.
/// CRAN sends all traffic through the BBU pool without edge caches; HCRAN
/// additionally allows HPN service; FRAN allows every mode.
MetricsReport run_scenario(const ScenarioConfig& config);

/// Recognized sweep parameter names.
const std::vector<std::string>& sweep_parameters();

/// Returns a copy of config with the named parameter set. Throws
/// UnknownParameter.
ScenarioConfig with_parameter(const ScenarioConfig& config, const std::string& name, double value);

struct SweepPoint {
  double value = 0.0;
  MetricsReport report;
};

/// One run per grid value. Every point uses the master seed, so the grid is
/// evaluated with common random numbers.
std::vector<SweepPoint> sweep(const ScenarioConfig& config, const std::string& parameter,
                              std::span<const double> grid);

}  // namespace frangine::sim
