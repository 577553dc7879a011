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

#include "frangine/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <tuple>

#include "frangine/errors.hpp"

namespace frangine::geometry {

Region::Region(double width, double height) : width_(width), height_(height) {
  if (!(width > 0.0) || !(height > 0.0) || !std::isfinite(width) || !std::isfinite(height)) {
    throw ValidationError("region", "width and height must be positive and finite");
  }
}

const char* to_string(NodeKind kind) noexcept {
  switch (kind) {
    case NodeKind::Hpn: return "HPN";
    case NodeKind::Fap: return "FAP";
    case NodeKind::Fue: return "FUE";
  }
  return "?";
}

const char* to_string(FapTopology topology) noexcept {
  return topology == FapTopology::Mesh ? "mesh" : "tree";
}

double distance(Point a, Point b) noexcept { return std::hypot(a.x - b.x, a.y - b.y); }

NodeSet sample_ppp(NodeKind kind, double density, const Region& region, Rng& rng) {
  if (!(density >= 0.0) || !std::isfinite(density)) {
    throw ValidationError("density", "must be finite and non-negative");
  }
  NodeSet out{kind, {}, density};
  const double mean = density * region.area();
  if (mean <= 0.0) return out;
  std::poisson_distribution<std::size_t> count(mean);
  const std::size_t n = count(rng);
  out.positions.reserve(n);
  std::uniform_real_distribution<double> ux(0.0, region.width());
  std::uniform_real_distribution<double> uy(0.0, region.height());
  for (std::size_t i = 0; i < n; ++i) {
    const double x = ux(rng);
    const double y = uy(rng);
    out.positions.push_back({x, y});
  }
  return out;
}

Adjacency::Adjacency(std::size_t n_nodes, std::vector<Edge> edges)
    : edges_(std::move(edges)), neighbors_(n_nodes) {
  for (auto& e : edges_) {
    if (e.a > e.b) std::swap(e.a, e.b);
    if (e.a == e.b || e.b >= n_nodes) throw ValidationError("fap_adjacency", "invalid edge");
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  for (const auto& e : edges_) {
    neighbors_[e.a].push_back(e.b);
    neighbors_[e.b].push_back(e.a);
  }
  for (auto& n : neighbors_) std::sort(n.begin(), n.end());
}

bool Adjacency::adjacent(std::size_t i, std::size_t j) const {
  const auto& n = neighbors_.at(i);
  return std::binary_search(n.begin(), n.end(), j);
}

bool Adjacency::induces_connected(std::span<const std::size_t> members) const {
  if (members.empty()) return false;
  std::vector<std::size_t> sorted(members.begin(), members.end());
  std::sort(sorted.begin(), sorted.end());
  auto in_set = [&](std::size_t v) { return std::binary_search(sorted.begin(), sorted.end(), v); };
  std::vector<bool> seen(node_count(), false);
  std::vector<std::size_t> stack{sorted.front()};
  seen[sorted.front()] = true;
  std::size_t reached = 0;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    ++reached;
    for (auto w : neighbors_.at(v)) {
      if (!seen[w] && in_set(w)) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  return reached == sorted.size();
}

Adjacency build_fap_adjacency(const NodeSet& faps, FapTopology mode) {
  const std::size_t n = faps.size();
  if (n == 0) throw ValidationError("faps", "adjacency needs at least one F-AP");
  std::vector<Edge> edges;
  if (mode == FapTopology::Mesh) {
    edges.reserve(n * (n - 1) / 2);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) edges.push_back({a, b});
    return Adjacency(n, std::move(edges));
  }

  // Kruskal over all pairs; ordering on (length, a, b) fixes ties.
  std::vector<std::tuple<double, std::size_t, std::size_t>> candidates;
  candidates.reserve(n * (n - 1) / 2);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      candidates.emplace_back(distance(faps.positions[a], faps.positions[b]), a, b);
  std::sort(candidates.begin(), candidates.end());

  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& [len, a, b] : candidates) {
    const auto ra = find(a);
    const auto rb = find(b);
    if (ra == rb) continue;
    parent[ra] = rb;
    edges.push_back({a, b});
    if (edges.size() + 1 == n) break;
  }
  return Adjacency(n, std::move(edges));
}

std::vector<std::pair<std::size_t, std::size_t>> pair_d2d(std::span<const Point> positions,
                                                          const std::vector<bool>& capable) {
  if (positions.size() != capable.size()) {
    throw ValidationError("d2d_capable", "one flag per F-UE is required");
  }
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < positions.size(); ++i)
    if (capable[i]) eligible.push_back(i);

  std::vector<std::tuple<double, std::size_t, std::size_t>> candidates;
  candidates.reserve(eligible.size() * (eligible.size() - (eligible.empty() ? 0 : 1)) / 2);
  for (std::size_t u = 0; u < eligible.size(); ++u)
    for (std::size_t v = u + 1; v < eligible.size(); ++v) {
      const auto i = eligible[u];
      const auto j = eligible[v];
      candidates.emplace_back(distance(positions[i], positions[j]), i, j);
    }
  std::sort(candidates.begin(), candidates.end());

  std::vector<bool> taken(positions.size(), false);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& [d, i, j] : candidates) {
    if (taken[i] || taken[j]) continue;
    taken[i] = taken[j] = true;
    pairs.emplace_back(i, j);
  }
  return pairs;
}

std::size_t nearest(std::span<const Point> points, Point p) noexcept {
  std::size_t best = points.size();
  double best_d = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double d = distance(points[i], p);
    if (best == points.size() || d < best_d) {
      best = i;
      best_d = d;
    }
  }
  return best;
}

Point uniform_in_disk(Point c, double radius, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = radius * std::sqrt(u(rng));
  const double theta = 2.0 * std::numbers::pi * u(rng);
  return {c.x + r * std::cos(theta), c.y + r * std::sin(theta)};
}

Point uniform_in_region(const Region& region, Rng& rng) {
  std::uniform_real_distribution<double> ux(0.0, region.width());
  std::uniform_real_distribution<double> uy(0.0, region.height());
  const double x = ux(rng);
  const double y = uy(rng);
  return {x, y};
}

}  // namespace frangine::geometry
