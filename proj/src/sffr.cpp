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

#include "frangine/sffr.hpp"

#include <cmath>
#include <map>

#include "frangine/errors.hpp"

namespace frangine::coordination {

SffrPlan sffr_allocate(std::size_t n_resource_blocks, double eta, std::span<const SffrUe> ues) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw ValidationError("eta", "must lie in [0, 1]");
  SffrPlan plan;
  plan.n_resource_blocks = n_resource_blocks;
  plan.reserved_fraction = eta;
  plan.block_users.resize(n_resource_blocks);

  const auto n_reserved = static_cast<std::size_t>(std::round(eta * static_cast<double>(n_resource_blocks)));
  for (std::size_t b = 0; b < n_resource_blocks; ++b) (b < n_reserved ? plan.reserved : plan.shared).push_back(b);

  std::vector<std::uint32_t> high_fap, low_fap, hpn;
  for (const auto& ue : ues) {
    if (ue.tier == ServingTier::Hpn) {
      hpn.push_back(ue.id);
    } else {
      (ue.qos == QosClass::High ? high_fap : low_fap).push_back(ue.id);
    }
  }

  if (!high_fap.empty())
    for (std::size_t k = 0; k < plan.reserved.size(); ++k)
      plan.block_users[plan.reserved[k]].push_back(high_fap[k % high_fap.size()]);

  for (std::size_t k = 0; k < plan.shared.size(); ++k) {
    auto& users = plan.block_users[plan.shared[k]];
    if (!hpn.empty()) users.push_back(hpn[k % hpn.size()]);
    if (!low_fap.empty()) users.push_back(low_fap[k % low_fap.size()]);
  }
  return plan;
}

bool sffr_isolated(const SffrPlan& plan, std::span<const SffrUe> ues) {
  std::map<std::uint32_t, SffrUe> by_id;
  for (const auto& ue : ues) by_id[ue.id] = ue;
  for (const auto& users : plan.block_users) {
    bool high_fap = false;
    bool hpn = false;
    for (auto id : users) {
      const auto it = by_id.find(id);
      if (it == by_id.end()) continue;
      if (it->second.tier == ServingTier::Hpn) hpn = true;
      else if (it->second.qos == QosClass::High) high_fap = true;
    }
    if (high_fap && hpn) return false;
  }
  return true;
}

}  // namespace frangine::coordination
