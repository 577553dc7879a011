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

namespace frangine::coordination {

enum class QosClass { High, Low };
enum class ServingTier { Fap, Hpn };

struct SffrUe {
  std::uint32_t id = 0;
  QosClass qos = QosClass::Low;
  ServingTier tier = ServingTier::Fap;
};

/// Soft fractional frequency reuse split of the resource blocks.
///
/// Blocks [0, round(eta n)) are reserved for high-QoS F-UEs served by F-APs;
/// the rest are shared by HPN UEs and low-QoS F-AP F-UEs. Within a pool each
/// block goes round-robin to one UE per tier.
struct SffrPlan {
  std::size_t n_resource_blocks = 0;
  double reserved_fraction = 0.0;
  std::vector<std::size_t> reserved;
  std::vector<std::size_t> shared;
  /// UE ids assigned to each block, at most one per serving tier.
  std::vector<std::vector<std::uint32_t>> block_users;
};

/// Throws ValidationError unless 0 <= eta <= 1. HPN UEs of either QoS class
/// use the shared pool; high-QoS F-AP F-UEs never leave the reserved pool, so
/// with eta = 0 they receive no blocks.
SffrPlan sffr_allocate(std::size_t n_resource_blocks, double eta, std::span<const SffrUe> ues);

/// No block carries both a high-QoS F-AP F-UE and an HPN UE.
bool sffr_isolated(const SffrPlan& plan, std::span<const SffrUe> ues);

}  // namespace frangine::coordination
