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
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "frangine/rng.hpp"

namespace frangine::caching {

using ContentId = std::uint32_t;

/// Items 0..n_items-1; item i has Zipf rank i+1 and popularity
/// proportional to (i+1)^-s.
struct ContentCatalog {
  std::size_t n_items = 1000;
  double zipf_exponent = 0.8;
  /// Uniform item size.
  double item_bits = 8.0e6;

  void validate() const;
  std::vector<double> popularity() const;
  friend bool operator==(const ContentCatalog&, const ContentCatalog&) = default;
};

enum class EvictionPolicy { Fifo, Lru, Lfu };

const char* to_string(EvictionPolicy policy) noexcept;

struct RequestOutcome {
  bool hit = false;
  std::optional<ContentId> evicted;
};

/// Bounded content store.
///
/// FIFO evicts in insertion order regardless of re-access. LRU evicts the
/// least recently requested item. LFU evicts the smallest in-cache request
/// count, ties to the least recently requested, then the lower id.
class EdgeCache {
 public:
  EdgeCache(std::uint64_t owner, std::size_t capacity, EvictionPolicy policy);

  /// Looks the item up, updates policy state, inserts on a miss.
  RequestOutcome request(ContentId item);
  bool contains(ContentId item) const { return entries_.contains(item); }

  std::uint64_t owner() const noexcept { return owner_; }
  std::size_t capacity() const noexcept { return capacity_; }
  EvictionPolicy policy() const noexcept { return policy_; }
  std::size_t size() const noexcept { return entries_.size(); }
  std::uint64_t hits() const noexcept { return hits_; }
  std::uint64_t misses() const noexcept { return misses_; }
  /// Stored ids in ascending order.
  std::vector<ContentId> contents() const;

 private:
  struct Entry {
    std::uint64_t inserted = 0;
    std::uint64_t last_used = 0;
    std::uint64_t frequency = 0;
  };
  using RankKey = std::tuple<std::uint64_t, std::uint64_t, ContentId>;

  RankKey rank(ContentId item, const Entry& e) const noexcept;

  std::uint64_t owner_;
  std::size_t capacity_;
  EvictionPolicy policy_;
  std::uint64_t clock_ = 0;
  std::uint64_t hits_ = 0;
  std::uint64_t misses_ = 0;
  std::map<ContentId, Entry> entries_;
  std::set<RankKey> order_;  // begin() is the next victim
};

struct TraceEntry {
  std::uint64_t index = 0;
  ContentId item = 0;
  bool hit = false;
  std::optional<ContentId> evicted;
  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

using CacheTrace = std::vector<TraceEntry>;

/// Feeds the requests through the cache and records each outcome.
CacheTrace replay(EdgeCache& cache, std::span<const ContentId> requests);

/// hits / total. Throws EmptyTrace.
double hit_ratio(const CacheTrace& trace);

/// i.i.d. Zipf draws.
std::vector<ContentId> zipf_stream(const ContentCatalog& catalog, std::size_t length, Rng& rng);

enum class Tier { AtFue, AtFap, CloudOnly };

const char* to_string(Tier tier) noexcept;

/// First tier holding the item: the F-UE cache, then the serving F-AP cache,
/// then (when given) the caches of F-APs adjacent to the serving one, and
/// finally the cloud, which holds everything. Null caches are skipped.
Tier content_available(ContentId item, const EdgeCache* fue_cache, const EdgeCache* fap_cache,
                       std::span<const EdgeCache* const> cooperating_fap_caches = {});

}  // namespace frangine::caching
