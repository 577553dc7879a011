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

#include "frangine/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "frangine/errors.hpp"

namespace frangine::coordination {

void ClusterUtilityParams::validate() const {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ValidationError("tau", "must be positive");
  if (!std::isfinite(gamma_th_db)) throw ValidationError("gamma_th_db", "must be finite");
  if (!(p_static_w >= 0.0) || !(p_tx_w >= 0.0) || !(p_coord_w >= 0.0)) {
    throw ValidationError("cluster_power", "power terms must be non-negative");
  }
  if (!(p_static_w + p_tx_w > 0.0)) throw ValidationError("cluster_power", "per-F-AP power must be positive");
  if (mc_trials < 1) throw ValidationError("mc_trials", "must be at least 1");
  if (max_block_size < 1 || max_block_size > 24) {
    throw ValidationError("max_block_size", "must lie in [1, 24]");
  }
}

double CoalitionPartition::total_utility() const noexcept {
  double total = 0.0;
  for (double u : utilities) total += u;
  return total;
}

double CoalitionPartition::mean_block_size() const noexcept {
  if (blocks.empty()) return 0.0;
  std::size_t members = 0;
  for (const auto& b : blocks) members += b.size();
  return static_cast<double>(members) / static_cast<double>(blocks.size());
}

bool is_valid_partition(const std::vector<Cluster>& blocks, std::size_t n_faps,
                        const geometry::Adjacency* tree_adjacency) {
  std::vector<int> seen(n_faps, 0);
  for (const auto& b : blocks) {
    if (b.empty()) return false;
    for (auto v : b) {
      if (v >= n_faps || seen[v]++ != 0) return false;
    }
    if (tree_adjacency != nullptr && !tree_adjacency->induces_connected(b)) return false;
  }
  return std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; });
}

ProbabilityEstimate successful_access_probability(const Cluster& cluster,
                                                  const geometry::NetworkTopology& topology,
                                                  const channel::LinkBudget& budget,
                                                  std::span<const geometry::Point> served_fues,
                                                  double gamma_th_db, std::size_t mc_trials, Rng& rng) {
  if (cluster.empty()) throw ValidationError("cluster", "must be nonempty");
  if (mc_trials < 1) throw ValidationError("mc_trials", "must be at least 1");
  if (served_fues.empty()) return ProbabilityEstimate{0.0, 0.0, 0};

  const auto& faps = topology.faps.positions;
  std::vector<bool> in_cluster(faps.size(), false);
  for (auto c : cluster) in_cluster.at(c) = true;

  // Mean received power from every F-AP at every served F-UE.
  const double p = budget.fap_tx_watts();
  std::vector<double> mean_rx(served_fues.size() * faps.size());
  for (std::size_t u = 0; u < served_fues.size(); ++u)
    for (std::size_t j = 0; j < faps.size(); ++j)
      mean_rx[u * faps.size() + j] = p * channel::path_gain(geometry::distance(served_fues[u], faps[j]), budget);

  const auto rayleigh = channel::FadingModel::rayleigh();
  const double noise = budget.noise_watts();
  const double threshold = channel::db_to_linear(gamma_th_db);
  std::size_t successes = 0;
  for (std::size_t t = 0; t < mc_trials; ++t) {
    const std::size_t u = t % served_fues.size();
    double signal = 0.0;
    double interference = 0.0;
    for (std::size_t j = 0; j < faps.size(); ++j) {
      const double rx = mean_rx[u * faps.size() + j] * channel::fading_sample(rayleigh, rng);
      (in_cluster[j] ? signal : interference) += rx;
    }
    if (signal / (interference + noise) >= threshold) ++successes;
  }
  return ProbabilityEstimate::from_counts(successes, mc_trials);
}

double cluster_power(std::size_t cluster_size, const ClusterUtilityParams& params) noexcept {
  const double n = static_cast<double>(cluster_size);
  return n * (params.p_static_w + params.p_tx_w) + params.p_coord_w * n * (n - 1.0);
}

UtilityBreakdown cluster_utility(const Cluster& cluster, const ClusterUtilityParams& params,
                                 const geometry::NetworkTopology& topology, const channel::LinkBudget& budget,
                                 std::span<const geometry::Point> served_fues, Rng& rng) {
  params.validate();
  UtilityBreakdown out;
  out.served = served_fues.size();
  out.success_probability =
      successful_access_probability(cluster, topology, budget, served_fues, params.gamma_th_db, params.mc_trials, rng)
          .value;
  out.rate = out.success_probability * std::log2(1.0 + channel::db_to_linear(params.gamma_th_db)) *
             static_cast<double>(out.served);
  out.power = cluster_power(cluster.size(), params);
  out.utility = out.rate / std::pow(out.power, params.tau);
  return out;
}

ClusterEvaluator::ClusterEvaluator(const geometry::NetworkTopology& topology, channel::LinkBudget budget,
                                   std::vector<std::optional<std::size_t>> fue_serving_fap,
                                   ClusterUtilityParams params, std::uint64_t seed)
    : topology_(&topology), budget_(budget), serving_(std::move(fue_serving_fap)), params_(params), seed_(seed) {
  params_.validate();
  if (serving_.size() != topology.fues.size()) {
    throw ValidationError("fue_serving_fap", "one entry per F-UE is required");
  }
}

const UtilityBreakdown& ClusterEvaluator::evaluate(const Cluster& cluster) {
  if (auto it = cache_.find(cluster); it != cache_.end()) return it->second;
  if (!std::is_sorted(cluster.begin(), cluster.end())) throw std::invalid_argument("cluster must be sorted");

  std::uint64_t key = cluster.size();
  for (auto v : cluster) key = splitmix64(key ^ (v + 0x9e3779b97f4a7c15ULL));
  Rng rng = make_rng(seed_, "cluster-utility", key);

  std::vector<geometry::Point> served;
  for (std::size_t i = 0; i < serving_.size(); ++i) {
    if (serving_[i] && std::binary_search(cluster.begin(), cluster.end(), *serving_[i])) {
      served.push_back(topology_->fues.positions[i]);
    }
  }
  auto result = cluster_utility(cluster, params_, *topology_, budget_, served, rng);
  return cache_.emplace(cluster, result).first->second;
}

namespace {

Cluster merged(const Cluster& a, const Cluster& b) {
  Cluster out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

void sort_blocks(std::vector<Cluster>& blocks) {
  std::sort(blocks.begin(), blocks.end(), [](const Cluster& x, const Cluster& y) { return x.front() < y.front(); });
}

}  // namespace

MergeSplitResult merge_and_split(ClusterEvaluator& evaluator) {
  const std::size_t n = evaluator.fap_count();
  if (n == 0) throw ValidationError("faps", "clustering needs at least one F-AP");
  const auto& topology = evaluator.topology();
  const geometry::Adjacency* tree =
      topology.fap_link_topology == geometry::FapTopology::Tree ? &topology.fap_adjacency : nullptr;
  const std::size_t max_block = evaluator.params().max_block_size;

  std::vector<Cluster> blocks;
  for (std::size_t i = 0; i < n; ++i) blocks.push_back({i});

  auto total = [&] {
    double t = 0.0;
    for (const auto& b : blocks) t += evaluator.utility(b);
    return t;
  };

  MergeSplitResult result;
  result.utility_history.push_back(total());

  for (;;) {
    bool changed = false;

    for (std::size_t i = 0; i < blocks.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < blocks.size(); ++j) {
        if (blocks[i].size() + blocks[j].size() > max_block) continue;
        auto candidate = merged(blocks[i], blocks[j]);
        if (tree != nullptr && !tree->induces_connected(candidate)) continue;
        const double separate = evaluator.utility(blocks[i]) + evaluator.utility(blocks[j]);
        if (improves(evaluator.utility(candidate), separate)) {
          blocks[i] = std::move(candidate);
          blocks.erase(blocks.begin() + static_cast<std::ptrdiff_t>(j));
          ++result.merges;
          changed = true;
          break;
        }
      }
    }

    for (std::size_t b = 0; b < blocks.size() && !changed; ++b) {
      const Cluster& block = blocks[b];
      const std::size_t k = block.size();
      if (k < 2) continue;
      const double whole = evaluator.utility(block);
      // Bit i of mask moves block[i + 1] into the second part; block[0] stays
      // in the first, so every unordered split is visited once.
      const std::uint64_t masks = std::uint64_t{1} << (k - 1);
      for (std::uint64_t mask = 1; mask < masks; ++mask) {
        Cluster first{block[0]};
        Cluster second;
        for (std::size_t i = 1; i < k; ++i) ((mask >> (i - 1)) & 1 ? second : first).push_back(block[i]);
        if (tree != nullptr && (!tree->induces_connected(first) || !tree->induces_connected(second))) continue;
        if (improves(evaluator.utility(first) + evaluator.utility(second), whole)) {
          blocks[b] = std::move(first);
          blocks.push_back(std::move(second));
          ++result.splits;
          changed = true;
          break;
        }
      }
    }

    if (!changed) break;
    sort_blocks(blocks);
    result.utility_history.push_back(total());
  }

  result.partition.blocks = blocks;
  for (const auto& b : blocks) result.partition.utilities.push_back(evaluator.utility(b));
  return result;
}

}  // namespace frangine::coordination
