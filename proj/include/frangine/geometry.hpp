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
#include <utility>
#include <vector>

#include "frangine/rng.hpp"

namespace frangine::geometry {

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

/// Axis-aligned rectangle [0, width] x [0, height], in meters. No wrap-around.
class Region {
 public:
  Region(double width, double height);

  double width() const noexcept { return width_; }
  double height() const noexcept { return height_; }
  double area() const noexcept { return width_ * height_; }
  Point center() const noexcept { return {width_ / 2.0, height_ / 2.0}; }
  bool contains(Point p) const noexcept {
    return p.x >= 0.0 && p.x <= width_ && p.y >= 0.0 && p.y <= height_;
  }

  friend bool operator==(const Region&, const Region&) = default;

 private:
  double width_;
  double height_;
};

enum class NodeKind { Hpn, Fap, Fue };

const char* to_string(NodeKind kind) noexcept;

struct NodeSet {
  NodeKind kind = NodeKind::Fue;
  std::vector<Point> positions;
  /// Intensity used to sample the set, nodes per square meter.
  double density = 0.0;

  std::size_t size() const noexcept { return positions.size(); }
  bool empty() const noexcept { return positions.empty(); }
  friend bool operator==(const NodeSet&, const NodeSet&) = default;
};

enum class FapTopology { Mesh, Tree };

const char* to_string(FapTopology topology) noexcept;

/// Undirected edge between F-AP indices, normalized so that a < b.
struct Edge {
  std::size_t a = 0;
  std::size_t b = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Symmetric, irreflexive relation over F-AP indices.
class Adjacency {
 public:
  Adjacency() = default;
  Adjacency(std::size_t n_nodes, std::vector<Edge> edges);

  std::size_t node_count() const noexcept { return neighbors_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  bool adjacent(std::size_t i, std::size_t j) const;
  const std::vector<std::size_t>& neighbors(std::size_t i) const { return neighbors_.at(i); }
  /// True when the members induce a connected subgraph. Empty sets are not connected.
  bool induces_connected(std::span<const std::size_t> members) const;

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> neighbors_;
};

struct NetworkTopology {
  Region region{1.0, 1.0};
  NodeSet hpns{NodeKind::Hpn, {}, 0.0};
  NodeSet faps{NodeKind::Fap, {}, 0.0};
  NodeSet fues{NodeKind::Fue, {}, 0.0};
  FapTopology fap_link_topology = FapTopology::Tree;
  Adjacency fap_adjacency;
};

double distance(Point a, Point b) noexcept;

/// Homogeneous Poisson point process on the region.
/// Throws ValidationError for a negative or non-finite density.
NodeSet sample_ppp(NodeKind kind, double density, const Region& region, Rng& rng);

/// Mesh yields the complete graph. Tree yields the Euclidean minimum spanning
/// tree; equal-length edges are taken in ascending (a, b) order.
/// Throws ValidationError when there are no F-APs.
Adjacency build_fap_adjacency(const NodeSet& faps, FapTopology mode);

/// Greedy D2D pairing. Candidate pairs among capable nodes are visited in
/// ascending (distance, i, j) order; a pair is kept when both ends are free.
std::vector<std::pair<std::size_t, std::size_t>> pair_d2d(std::span<const Point> positions,
                                                          const std::vector<bool>& capable);

/// Index of the point nearest to p, or npos-like size() for an empty set.
std::size_t nearest(std::span<const Point> points, Point p) noexcept;

/// Uniform point in a disk of the given radius around c.
Point uniform_in_disk(Point c, double radius, Rng& rng);

/// Uniform point in the region.
Point uniform_in_region(const Region& region, Rng& rng);

}  // namespace frangine::geometry
