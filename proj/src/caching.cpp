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

#include "frangine/caching.hpp"

#include <cmath>

#include "frangine/errors.hpp"

namespace frangine::caching {

void ContentCatalog::validate() const {
  if (n_items < 1) throw ValidationError("catalog", "n_items must be at least 1");
  if (!(zipf_exponent >= 0.0) || !std::isfinite(zipf_exponent)) {
    throw ValidationError("catalog", "zipf_exponent must be finite and non-negative");
  }
  if (!(item_bits > 0.0) || !std::isfinite(item_bits)) {
    throw ValidationError("catalog", "item_bits must be positive");
  }
}

std::vector<double> ContentCatalog::popularity() const {
  validate();
  std::vector<double> p(n_items);
  double total = 0.0;
  for (std::size_t i = 0; i < n_items; ++i) {
    p[i] = std::pow(static_cast<double>(i + 1), -zipf_exponent);
    total += p[i];
  }
  for (auto& v : p) v /= total;
  return p;
}

const char* to_string(EvictionPolicy policy) noexcept {
  switch (policy) {
    case EvictionPolicy::Fifo: return "FIFO";
    case EvictionPolicy::Lru: return "LRU";
    case EvictionPolicy::Lfu: return "LFU";
  }
  return "?";
}

EdgeCache::EdgeCache(std::uint64_t owner, std::size_t capacity, EvictionPolicy policy)
    : owner_(owner), capacity_(capacity), policy_(policy) {}

EdgeCache::RankKey EdgeCache::rank(ContentId item, const Entry& e) const noexcept {
  switch (policy_) {
    case EvictionPolicy::Fifo: return {e.inserted, 0, item};
    case EvictionPolicy::Lru: return {e.last_used, 0, item};
    case EvictionPolicy::Lfu: return {e.frequency, e.last_used, item};
  }
  return {};
}

RequestOutcome EdgeCache::request(ContentId item) {
  const std::uint64_t now = ++clock_;
  if (auto it = entries_.find(item); it != entries_.end()) {
    ++hits_;
    order_.erase(rank(item, it->second));
    it->second.last_used = now;
    ++it->second.frequency;
    order_.insert(rank(item, it->second));
    return {true, std::nullopt};
  }

  ++misses_;
  RequestOutcome out;
  if (capacity_ == 0) return out;
  if (entries_.size() >= capacity_) {
    const auto victim = std::get<2>(*order_.begin());
    order_.erase(order_.begin());
    entries_.erase(victim);
    out.evicted = victim;
  }
  Entry e{now, now, 1};
  entries_.emplace(item, e);
  order_.insert(rank(item, e));
  return out;
}

std::vector<ContentId> EdgeCache::contents() const {
  std::vector<ContentId> out;
  out.reserve(entries_.size());
  for (const auto& [id, e] : entries_) out.push_back(id);
  return out;
}

CacheTrace replay(EdgeCache& cache, std::span<const ContentId> requests) {
  CacheTrace trace;
  trace.reserve(requests.size());
  for (std::size_t i = 0; i < requests.size(); ++i) {
    const auto outcome = cache.request(requests[i]);
    trace.push_back({i, requests[i], outcome.hit, outcome.evicted});
  }
  return trace;
}

double hit_ratio(const CacheTrace& trace) {
  if (trace.empty()) throw EmptyTrace();
  std::size_t hits = 0;
  for (const auto& e : trace) hits += e.hit ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(trace.size());
}

std::vector<ContentId> zipf_stream(const ContentCatalog& catalog, std::size_t length, Rng& rng) {
  const auto p = catalog.popularity();
  std::discrete_distribution<ContentId> draw(p.begin(), p.end());
  std::vector<ContentId> out(length);
  for (auto& v : out) v = draw(rng);
  return out;
}

const char* to_string(Tier tier) noexcept {
  switch (tier) {
    case Tier::AtFue: return "fue";
    case Tier::AtFap: return "fap";
    case Tier::CloudOnly: return "cloud";
  }
  return "?";
}

Tier content_available(ContentId item, const EdgeCache* fue_cache, const EdgeCache* fap_cache,
                       std::span<const EdgeCache* const> cooperating_fap_caches) {
  if (fue_cache != nullptr && fue_cache->contains(item)) return Tier::AtFue;
  if (fap_cache != nullptr && fap_cache->contains(item)) return Tier::AtFap;
  for (const auto* c : cooperating_fap_caches)
    if (c != nullptr && c->contains(item)) return Tier::AtFap;
  return Tier::CloudOnly;
}

}  // namespace frangine::caching
