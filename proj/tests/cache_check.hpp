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

#include <vector>

#include "frangine/caching.hpp"
#include "oracles.hpp"

namespace cachecheck {

inline oracle::Policy to_oracle(frangine::caching::EvictionPolicy p) {
  using frangine::caching::EvictionPolicy;
  return p == EvictionPolicy::Fifo ? oracle::Policy::Fifo
         : p == EvictionPolicy::Lru ? oracle::Policy::Lru
                                    : oracle::Policy::Lfu;
}

/// Step-by-step agreement of hit flags, evictions and contents.
inline bool matches_reference(frangine::caching::EvictionPolicy policy, std::size_t capacity,
                              const std::vector<frangine::caching::ContentId>& requests) {
  frangine::caching::EdgeCache cache(0, capacity, policy);
  oracle::ReferenceCache ref(capacity, to_oracle(policy));
  for (auto item : requests) {
    const auto got = cache.request(item);
    const auto want = ref.request(item);
    if (got.hit != want.hit || got.evicted != want.evicted) return false;
    if (cache.contents() != ref.contents()) return false;
  }
  return true;
}

/// LRU with capacity c holds a subset of LRU with capacity c + 1 at every step.
inline bool lru_inclusion_holds(std::size_t capacity, const std::vector<frangine::caching::ContentId>& requests) {
  using namespace frangine::caching;
  EdgeCache small(0, capacity, EvictionPolicy::Lru);
  EdgeCache large(0, capacity + 1, EvictionPolicy::Lru);
  for (auto item : requests) {
    small.request(item);
    large.request(item);
    for (auto c : small.contents()) {
      if (!large.contains(c)) return false;
    }
  }
  return true;
}

}  // namespace cachecheck
