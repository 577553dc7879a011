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

#include <doctest.h>

#include <cmath>
#include <numeric>
#include <set>

#include "frangine/errors.hpp"
#include "frangine/geometry.hpp"
#include "oracles.hpp"

using namespace frangine;
using namespace frangine::geometry;

namespace {

std::vector<std::pair<std::size_t, std::size_t>> as_pairs(const Adjacency& adj) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& e : adj.edges()) out.emplace_back(e.a, e.b);
  std::sort(out.begin(), out.end());
  return out;
}

bool connected(const Adjacency& adj) {
  std::vector<std::size_t> all(adj.node_count());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return adj.induces_connected(all);
}

NodeSet fap_set(std::vector<Point> pts) { return {NodeKind::Fap, std::move(pts), 0.0}; }

}  // namespace

TEST_CASE("region validates its extent") {
  CHECK_THROWS_AS(Region(0.0, 10.0), ValidationError);
  CHECK_THROWS_AS(Region(10.0, -1.0), ValidationError);
  const Region r(200.0, 100.0);
  CHECK(r.area() == 20000.0);
  CHECK(r.contains({0.0, 100.0}));
  CHECK_FALSE(r.contains({200.1, 0.0}));
}

TEST_CASE("distance") {
  CHECK(distance({0, 0}, {0, 0}) == 0.0);
  CHECK(distance({0, 0}, {3, 4}) == 5.0);
  Rng rng(3);
  std::uniform_real_distribution<double> u(-1e4, 1e4);
  for (int i = 0; i < 1000; ++i) {
    const Point a{u(rng), u(rng)};
    const Point b{u(rng), u(rng)};
    const long double dx = static_cast<long double>(a.x) - b.x;
    const long double dy = static_cast<long double>(a.y) - b.y;
    const double ref = static_cast<double>(std::sqrt(dx * dx + dy * dy));
    CHECK(distance(a, b) == doctest::Approx(ref).epsilon(1e-14));
    CHECK(distance(a, b) == distance(b, a));
  }
}

TEST_CASE("sample_ppp") {
  const Region region(1000.0, 1000.0);
  SUBCASE("zero density is empty") {
    Rng rng(1);
    CHECK(sample_ppp(NodeKind::Fap, 0.0, region, rng).empty());
  }
  SUBCASE("negative density rejected") {
    Rng rng(1);
    CHECK_THROWS_AS(sample_ppp(NodeKind::Fap, -1.0, region, rng), ValidationError);
  }
  SUBCASE("count has Poisson mean and variance") {
    const int seeds = 10000;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int s = 0; s < seeds; ++s) {
      auto rng = make_rng(42, "ppp-test", static_cast<std::uint64_t>(s));
      const auto set = sample_ppp(NodeKind::Fap, 1e-5, region, rng);
      for (const auto& p : set.positions) REQUIRE(region.contains(p));
      sum += static_cast<double>(set.size());
      sum_sq += static_cast<double>(set.size() * set.size());
    }
    const double mean = sum / seeds;
    const double var = sum_sq / seeds - mean * mean;
    CHECK(std::abs(mean - 10.0) < 3.0 * std::sqrt(10.0 / seeds));
    CHECK(var == doctest::Approx(10.0).epsilon(0.06));
  }
  SUBCASE("positions are uniform") {
    auto rng = make_rng(5, "ppp-uniform");
    const auto set = sample_ppp(NodeKind::Fue, 1e-2, region, rng);
    std::array<int, 4> quadrant{};
    for (const auto& p : set.positions) quadrant[(p.x > 500.0) + 2 * (p.y > 500.0)]++;
    const double expected = static_cast<double>(set.size()) / 4.0;
    for (int q : quadrant) CHECK(std::abs(q - expected) < 4.0 * std::sqrt(expected));
  }
}

TEST_CASE("fap adjacency") {
  CHECK_THROWS_AS(build_fap_adjacency(fap_set({}), FapTopology::Tree), ValidationError);
  CHECK(build_fap_adjacency(fap_set({{1, 1}}), FapTopology::Mesh).edges().empty());
  CHECK(build_fap_adjacency(fap_set({{1, 1}}), FapTopology::Tree).edges().empty());
  const auto mesh = build_fap_adjacency(fap_set({{0, 0}, {1, 0}, {0, 1}, {5, 5}}), FapTopology::Mesh);
  CHECK(mesh.edges().size() == 6);

  SUBCASE("tree on known coordinates equals the exhaustive MST") {
    const std::vector<Point> pts{{0, 0}, {10, 0}, {10, 12}, {30, 5}, {3, 20}};
    const auto tree = build_fap_adjacency(fap_set(pts), FapTopology::Tree);
    std::vector<oracle::Pt> op;
    for (const auto& p : pts) op.push_back({p.x, p.y});
    CHECK(as_pairs(tree) == oracle::brute_force_mst(op));
  }

  SUBCASE("random instances: tree is the MST, connected and acyclic; mesh complete") {
    Rng rng(11);
    std::uniform_real_distribution<double> u(0.0, 1000.0);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t n = 2 + static_cast<std::size_t>(trial % 5);
      std::vector<Point> pts;
      std::vector<oracle::Pt> op;
      for (std::size_t i = 0; i < n; ++i) {
        pts.push_back({u(rng), u(rng)});
        op.push_back({pts.back().x, pts.back().y});
      }
      const auto tree = build_fap_adjacency(fap_set(pts), FapTopology::Tree);
      REQUIRE(as_pairs(tree) == oracle::brute_force_mst(op));
    }
    for (std::size_t n = 1; n <= 50; n += 7) {
      std::vector<Point> pts;
      for (std::size_t i = 0; i < n; ++i) pts.push_back({u(rng), u(rng)});
      const auto tree = build_fap_adjacency(fap_set(pts), FapTopology::Tree);
      const auto mesh = build_fap_adjacency(fap_set(pts), FapTopology::Mesh);
      CHECK(tree.edges().size() == n - 1);
      CHECK(connected(tree));
      CHECK(mesh.edges().size() == n * (n - 1) / 2);
      for (std::size_t i = 0; i < n; ++i) {
        CHECK_FALSE(tree.adjacent(i, i));
        for (std::size_t j = 0; j < n; ++j) {
          CHECK(tree.adjacent(i, j) == tree.adjacent(j, i));
          if (i != j) CHECK(mesh.adjacent(i, j));
        }
      }
    }
  }

  SUBCASE("equal lengths tie-break by lower index pair") {
    const auto tree = build_fap_adjacency(fap_set({{0, 0}, {1, 0}, {1, 1}, {0, 1}}), FapTopology::Tree);
    CHECK(as_pairs(tree) == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {0, 3}, {1, 2}});
  }
}

TEST_CASE("induces_connected") {
  const Adjacency path(4, {{0, 1}, {1, 2}, {2, 3}});
  const std::vector<std::size_t> a{0, 1, 2};
  const std::vector<std::size_t> b{0, 2};
  const std::vector<std::size_t> none;
  CHECK(path.induces_connected(a));
  CHECK_FALSE(path.induces_connected(b));
  CHECK_FALSE(path.induces_connected(none));
}

TEST_CASE("pair_d2d") {
  const std::vector<Point> pts{{0, 0}, {1, 0}, {10, 0}, {12, 0}, {50, 50}};
  SUBCASE("greedy nearest pairs among capable nodes") {
    const auto pairs = pair_d2d(pts, {true, true, true, true, true});
    CHECK(pairs == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {2, 3}});
  }
  SUBCASE("incapable nodes are skipped") {
    const auto pairs = pair_d2d(pts, {true, false, true, true, true});
    CHECK(pairs == std::vector<std::pair<std::size_t, std::size_t>>{{2, 3}, {0, 4}});
  }
  SUBCASE("every node in at most one pair") {
    Rng rng(9);
    const auto set = sample_ppp(NodeKind::Fue, 1e-4, Region(500, 500), rng);
    const auto pairs = pair_d2d(set.positions, std::vector<bool>(set.size(), true));
    std::set<std::size_t> seen;
    for (const auto& [a, b] : pairs) {
      CHECK(seen.insert(a).second);
      CHECK(seen.insert(b).second);
    }
    CHECK(seen.size() + set.size() % 2 == set.size());
  }
}

TEST_CASE("disk and region sampling") {
  Rng rng(2);
  double r2 = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const auto p = uniform_in_disk({5, 5}, 10.0, rng);
    const double d = distance(p, {5, 5});
    REQUIRE(d <= 10.0);
    r2 += d * d;
  }
  // E[r^2] = R^2 / 2 for a uniform disk.
  CHECK(r2 / n == doctest::Approx(50.0).epsilon(0.01));
  CHECK(nearest(std::vector<Point>{{0, 0}, {5, 0}, {9, 0}}, {6, 0}) == 1);
}
