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
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "frangine/channel.hpp"
#include "frangine/estimate.hpp"
#include "frangine/geometry.hpp"

namespace frangine::coordination {

/// Sorted F-AP indices.
using Cluster = std::vector<std::size_t>;

struct ClusterUtilityParams {
  /// Energy exponent: u = R / P^tau.
  double tau = 1.0;
  double gamma_th_db = 0.0;
  double p_static_w = 10.0;
  double p_tx_w = 1.0;
  /// Charged per ordered pair of cooperating F-APs.
  double p_coord_w = 0.5;
  std::size_t mc_trials = 500;
  /// Merges that would exceed this block size are not considered.
  std::size_t max_block_size = 12;

  void validate() const;
  friend bool operator==(const ClusterUtilityParams&, const ClusterUtilityParams&) = default;
};

struct CoalitionPartition {
  std::vector<Cluster> blocks;
  std::vector<double> utilities;

  double total_utility() const noexcept;
  double mean_block_size() const noexcept;
};

/// Disjoint, covering, nonempty blocks; with a tree adjacency every block must
/// also induce a connected subgraph.
bool is_valid_partition(const std::vector<Cluster>& blocks, std::size_t n_faps,
                        const geometry::Adjacency* tree_adjacency = nullptr);

/// Monte-Carlo probability that a served F-UE reaches the SINR threshold when
/// the cluster's F-APs transmit jointly (received powers add) and every F-AP
/// outside the cluster interferes. All F-AP links fade as Rayleigh. Trial t
/// serves served_fues[t mod count]. An empty served set yields 0.
ProbabilityEstimate successful_access_probability(const Cluster& cluster,
                                                  const geometry::NetworkTopology& topology,
                                                  const channel::LinkBudget& budget,
                                                  std::span<const geometry::Point> served_fues,
                                                  double gamma_th_db, std::size_t mc_trials, Rng& rng);

/// |C|(p_static + p_tx) + p_coord |C|(|C| - 1)
double cluster_power(std::size_t cluster_size, const ClusterUtilityParams& params) noexcept;

struct UtilityBreakdown {
  double success_probability = 0.0;
  /// p_success * log2(1 + gamma_th) * served count
  double rate = 0.0;
  double power = 0.0;
  double utility = 0.0;
  std::size_t served = 0;
};

/// R / P^tau for one cluster.
UtilityBreakdown cluster_utility(const Cluster& cluster, const ClusterUtilityParams& params,
                                 const geometry::NetworkTopology& topology, const channel::LinkBudget& budget,
                                 std::span<const geometry::Point> served_fues, Rng& rng);

/// Memoized cluster utilities.
///
/// Each cluster's estimate uses its own substream, derived from the seed and
/// the member set, so a cluster's utility does not depend on evaluation order.
class ClusterEvaluator {
 public:
  /// fue_serving_fap[i] is the F-AP serving F-UE i, if any.
  ClusterEvaluator(const geometry::NetworkTopology& topology, channel::LinkBudget budget,
                   std::vector<std::optional<std::size_t>> fue_serving_fap, ClusterUtilityParams params,
                   std::uint64_t seed);

  const UtilityBreakdown& evaluate(const Cluster& cluster);
  double utility(const Cluster& cluster) { return evaluate(cluster).utility; }

  std::size_t fap_count() const noexcept { return topology_->faps.size(); }
  const geometry::NetworkTopology& topology() const noexcept { return *topology_; }
  const ClusterUtilityParams& params() const noexcept { return params_; }
  std::size_t evaluations() const noexcept { return cache_.size(); }

 private:
  const geometry::NetworkTopology* topology_;
  channel::LinkBudget budget_;
  std::vector<std::optional<std::size_t>> serving_;
  ClusterUtilityParams params_;
  std::uint64_t seed_;
  std::map<Cluster, UtilityBreakdown> cache_;
};

/// Relative margin a candidate must clear to count as an improvement.
inline constexpr double kImprovementTolerance = 1e-12;

inline bool improves(double candidate, double incumbent) noexcept {
  return candidate > incumbent + kImprovementTolerance * (incumbent < 0 ? -incumbent : incumbent);
}

struct MergeSplitResult {
  CoalitionPartition partition;
  /// Total utility after initialization and after every applied step.
  std::vector<double> utility_history;
  std::size_t merges = 0;
  std::size_t splits = 0;
};

/// Merge-and-split coalition formation from singletons.
///
/// Merge pass: block pairs (i < j, blocks ordered by smallest member) are
/// scanned and the first pair whose union improves on the sum of the two
/// utilities is merged. Split pass, run only when no merge applies: each block
/// is scanned for the first two-part split that improves on the block's
/// utility. Stops when neither applies. In a tree F-AP topology only blocks
/// that induce connected subgraphs are formed.
MergeSplitResult merge_and_split(ClusterEvaluator& evaluator);

}  // namespace frangine::coordination
