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

// Independent reference implementations used as test oracles. They favor
// obviousness over speed and share no code with the library.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <list>
#include <optional>
#include <utility>
#include <vector>

namespace oracle {

// ---------------------------------------------------------------------------
// Caches: linear scans over a plain vector of slots.

enum class Policy { Fifo, Lru, Lfu };

struct Step {
  bool hit = false;
  std::optional<std::uint32_t> evicted;
};

class ReferenceCache {
 public:
  ReferenceCache(std::size_t capacity, Policy policy) : capacity_(capacity), policy_(policy) {}

  Step request(std::uint32_t item) {
    ++time_;
    for (auto& s : slots_) {
      if (s.item == item) {
        s.last = time_;
        s.count += 1;
        return {true, std::nullopt};
      }
    }
    Step step;
    if (capacity_ == 0) return step;
    if (slots_.size() == capacity_) {
      std::size_t victim = 0;
      for (std::size_t i = 1; i < slots_.size(); ++i) {
        if (worse(slots_[i], slots_[victim])) victim = i;
      }
      step.evicted = slots_[victim].item;
      slots_.erase(slots_.begin() + static_cast<std::ptrdiff_t>(victim));
    }
    slots_.push_back({item, time_, time_, 1});
    return step;
  }

  std::vector<std::uint32_t> contents() const {
    std::vector<std::uint32_t> out;
    for (const auto& s : slots_) out.push_back(s.item);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  struct Slot {
    std::uint32_t item;
    std::uint64_t inserted;
    std::uint64_t last;
    std::uint64_t count;
  };

  // True when a should be evicted before b.
  bool worse(const Slot& a, const Slot& b) const {
    switch (policy_) {
      case Policy::Fifo:
        return a.inserted < b.inserted;
      case Policy::Lru:
        return a.last < b.last;
      case Policy::Lfu:
        if (a.count != b.count) return a.count < b.count;
        if (a.last != b.last) return a.last < b.last;
        return a.item < b.item;
    }
    return false;
  }

  std::size_t capacity_;
  Policy policy_;
  std::uint64_t time_ = 0;
  std::vector<Slot> slots_;
};

// ---------------------------------------------------------------------------
// Mode selection as a lookup on discretized inputs.

enum class M { D2D, Relay, Local, Cloud, Hpn };

struct ModeCase {
  int band = 0;  // 0: d <= D1, 1: <= D2, 2: <= D3, 3: beyond
  bool fast = false;
  bool voice = false;
  bool src_capable = true;
  bool dst_capable = true;
  bool relay_in_reach = false;
  bool fetch = false;
  bool local_content = false;
  bool lc_feasible = false;
  bool has_fap = true;
};

inline M expected_mode(const ModeCase& c) {
  if (c.fast || c.voice) return M::Hpn;
  const bool both = c.src_capable && c.dst_capable;
  if (c.band == 0 && both) return M::D2D;
  if (c.band == 1 && both && c.relay_in_reach) return M::Relay;
  M infra = M::Cloud;
  if (c.band <= 2 && c.lc_feasible && (!c.fetch || c.local_content)) infra = M::Local;
  return c.has_fap ? infra : M::Hpn;
}

// ---------------------------------------------------------------------------
// Minimum spanning tree by enumeration of (n-1)-edge subsets.

struct Pt {
  double x;
  double y;
};

inline std::vector<std::pair<std::size_t, std::size_t>> brute_force_mst(const std::vector<Pt>& pts) {
  const std::size_t n = pts.size();
  std::vector<std::pair<std::size_t, std::size_t>> all;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) all.emplace_back(i, j);
  const auto len = [&](std::pair<std::size_t, std::size_t> e) {
    return std::hypot(pts[e.first].x - pts[e.second].x, pts[e.first].y - pts[e.second].y);
  };
  if (n < 2) return {};

  double best = std::numeric_limits<double>::infinity();
  std::vector<std::pair<std::size_t, std::size_t>> best_edges;
  const std::size_t m = all.size();
  std::vector<bool> pick(m, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(n - 1), true);
  do {
    std::vector<std::size_t> root(n);
    for (std::size_t i = 0; i < n; ++i) root[i] = i;
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
      return root[x] == x ? x : root[x] = find(root[x]);
    };
    bool acyclic = true;
    double total = 0.0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t k = 0; k < m && acyclic; ++k) {
      if (!pick[k]) continue;
      const auto a = find(all[k].first);
      const auto b = find(all[k].second);
      if (a == b) acyclic = false;
      root[a] = b;
      total += len(all[k]);
      edges.push_back(all[k]);
    }
    if (acyclic && total < best) {
      best = total;
      best_edges = edges;
    }
  } while (std::prev_permutation(pick.begin(), pick.end()));
  std::sort(best_edges.begin(), best_edges.end());
  return best_edges;
}

// ---------------------------------------------------------------------------
// Set partitions of {0..n-1} by restricted growth strings.

inline std::vector<std::vector<std::vector<std::size_t>>> all_partitions(std::size_t n) {
  std::vector<std::vector<std::vector<std::size_t>>> out;
  std::vector<std::size_t> label(n, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t used) {
    if (i == n) {
      std::vector<std::vector<std::size_t>> blocks(used);
      for (std::size_t k = 0; k < n; ++k) blocks[label[k]].push_back(k);
      out.push_back(blocks);
      return;
    }
    for (std::size_t b = 0; b <= used; ++b) {
      label[i] = b;
      rec(i + 1, std::max(used, b + 1));
    }
  };
  if (n == 0) return {{}};
  rec(0, 0);
  return out;
}

/// Standard normal CDF.
inline double phi(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

/// Two-sample Kolmogorov-Smirnov statistic.
inline double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
  }
  return d;
}

/// Asymptotic two-sample KS p-value.
inline double ks_p_value(double d, std::size_t n, std::size_t m) {
  const double ne = static_cast<double>(n) * m / (n + m);
  const double lambda = (std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * d;
  double p = 0.0;
  for (int k = 1; k <= 100; ++k) {
    p += 2.0 * ((k % 2) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lambda * lambda);
  }
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace oracle
