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

#include "frangine/clustering.hpp"
#include "frangine/errors.hpp"
#include "frangine/scheduling.hpp"
#include "frangine/sffr.hpp"
#include "oracles.hpp"
#include "stability_check.hpp"

using namespace frangine;
using namespace frangine::coordination;
using geometry::NodeKind;
using geometry::Point;

namespace {

geometry::NetworkTopology make_topology(std::vector<Point> faps, std::vector<Point> fues,
                                        geometry::FapTopology mode = geometry::FapTopology::Mesh) {
  geometry::NetworkTopology t;
  t.region = geometry::Region(1000, 1000);
  t.faps = {NodeKind::Fap, std::move(faps), 0.0};
  t.fues = {NodeKind::Fue, std::move(fues), 0.0};
  t.fap_link_topology = mode;
  t.fap_adjacency = geometry::build_fap_adjacency(t.faps, mode);
  return t;
}

std::vector<std::optional<std::size_t>> nearest_serving(const geometry::NetworkTopology& t) {
  std::vector<std::optional<std::size_t>> out;
  for (const auto& p : t.fues.positions) out.emplace_back(geometry::nearest(t.faps.positions, p));
  return out;
}

geometry::NetworkTopology random_topology(std::size_t n_faps, std::size_t n_fues, geometry::FapTopology mode,
                                          Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 400.0);
  std::vector<Point> faps, fues;
  for (std::size_t i = 0; i < n_faps; ++i) faps.push_back({u(rng), u(rng)});
  for (std::size_t i = 0; i < n_fues; ++i) fues.push_back({u(rng), u(rng)});
  return make_topology(faps, fues, mode);
}

}  // namespace

TEST_CASE("successful access probability") {
  const channel::LinkBudget budget;
  SUBCASE("threshold extremes") {
    const auto t = make_topology({{0, 0}, {100, 0}}, {{30, 0}});
    Rng rng(1);
    CHECK(successful_access_probability({0}, t, budget, t.fues.positions, -300.0, 2000, rng).value == 1.0);
    CHECK(successful_access_probability({0}, t, budget, t.fues.positions, 300.0, 2000, rng).value == 0.0);
    CHECK(successful_access_probability({0}, t, budget, {}, 0.0, 2000, rng).trials == 0);
  }
  SUBCASE("one interferer at equal distance: P(X > Y) = 1/2") {
    auto b = budget;
    b.noise_power_dbm = -250.0;
    const auto t = make_topology({{0, 0}, {100, 0}}, {{50, 0}});
    Rng rng(2);
    const auto p = successful_access_probability({0}, t, b, t.fues.positions, 0.0, 100'000, rng);
    CHECK(std::abs(p.value - 0.5) < 0.02);
  }
  SUBCASE("joint transmission beats interference") {
    const auto t = make_topology({{0, 0}, {100, 0}}, {{50, 0}});
    Rng r1(3), r2(3);
    const double alone = successful_access_probability({0}, t, budget, t.fues.positions, 3.0, 20'000, r1).value;
    const double joint = successful_access_probability({0, 1}, t, budget, t.fues.positions, 3.0, 20'000, r2).value;
    CHECK(joint > alone);
  }
}

TEST_CASE("cluster utility") {
  ClusterUtilityParams params;
  CHECK(cluster_power(1, params) == doctest::Approx(11.0));
  CHECK(cluster_power(3, params) == doctest::Approx(3 * 11.0 + 0.5 * 6));

  const auto t = make_topology({{0, 0}, {60, 0}, {200, 0}}, {{10, 0}, {50, 0}, {190, 5}});
  const channel::LinkBudget budget;

  SUBCASE("unit power gives u = R") {
    params.p_static_w = 1.0;
    params.p_tx_w = 0.0;
    params.p_coord_w = 0.0;
    Rng rng(4);
    const auto u = cluster_utility({0}, params, t, budget, t.fues.positions, rng);
    CHECK(u.power == 1.0);
    CHECK(u.utility == doctest::Approx(u.rate));
  }
  SUBCASE("utility strictly decreases in tau when P > 1") {
    double last = std::numeric_limits<double>::infinity();
    for (double tau : {0.1, 0.5, 1.0, 2.0, 10.0}) {
      params.tau = tau;
      Rng rng(5);
      const auto u = cluster_utility({0, 1}, params, t, budget, t.fues.positions, rng);
      REQUIRE(u.rate > 0.0);
      CHECK(u.utility < last);
      last = u.utility;
    }
  }
  SUBCASE("three F-APs: recomputation from logged parts") {
    params.gamma_th_db = 3.0;
    params.tau = 0.7;
    Rng rng(6);
    const auto u = cluster_utility({0, 1, 2}, params, t, budget, t.fues.positions, rng);
    const double r = u.success_probability * std::log2(1.0 + std::pow(10.0, 0.3)) * 3.0;
    const double p = 3 * (params.p_static_w + params.p_tx_w) + params.p_coord_w * 3 * 2;
    CHECK(u.rate == doctest::Approx(r));
    CHECK(u.power == doctest::Approx(p));
    CHECK(u.utility == doctest::Approx(r / std::pow(p, 0.7)));
  }
}

TEST_CASE("partition validity") {
  const geometry::Adjacency path(4, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(is_valid_partition({{0, 1}, {2, 3}}, 4));
  CHECK_FALSE(is_valid_partition({{0, 1}, {1, 2, 3}}, 4));
  CHECK_FALSE(is_valid_partition({{0, 1}, {3}}, 4));
  CHECK_FALSE(is_valid_partition({{0, 1}, {2, 3}, {}}, 4));
  CHECK(is_valid_partition({{0, 1}, {2, 3}}, 4, &path));
  CHECK_FALSE(is_valid_partition({{0, 2}, {1, 3}}, 4, &path));
}

TEST_CASE("Bell enumeration size") {
  CHECK(oracle::all_partitions(1).size() == 1);
  CHECK(oracle::all_partitions(4).size() == 15);
  CHECK(oracle::all_partitions(6).size() == 203);
}

TEST_CASE("merge and split") {
  const channel::LinkBudget budget;
  ClusterUtilityParams params;
  params.mc_trials = 400;

  SUBCASE("one F-AP stays a singleton") {
    const auto t = make_topology({{5, 5}}, {{6, 6}});
    ClusterEvaluator ev(t, budget, nearest_serving(t), params, 1);
    const auto r = merge_and_split(ev);
    CHECK(r.partition.blocks == std::vector<Cluster>{{0}});
  }

  SUBCASE("two F-APs merge iff the union is worth more") {
    // Close F-APs with UEs in between: each alone is interference-limited.
    const auto close = make_topology({{0, 0}, {40, 0}}, {{18, 0}, {22, 0}, {20, 3}, {19, -2}});
    // Far F-APs: no mutual interference, cooperation only costs power.
    const auto far = make_topology({{0, 0}, {900, 0}}, {{5, 0}, {895, 0}});
    for (const auto* t : {&close, &far}) {
      for (double tau : {0.05, 1.0}) {
        params.tau = tau;
        params.gamma_th_db = 5.0;
        ClusterEvaluator ev(*t, budget, nearest_serving(*t), params, 7);
        const bool worth = ev.utility({0, 1}) > ev.utility({0}) + ev.utility({1});
        const auto r = merge_and_split(ev);
        CHECK((r.partition.blocks.size() == 1) == worth);
      }
    }
    params.tau = 0.05;
    ClusterEvaluator merge_side(close, budget, nearest_serving(close), params, 7);
    CHECK(merge_and_split(merge_side).partition.blocks.size() == 1);
    params.tau = 1.0;
    ClusterEvaluator apart_side(far, budget, nearest_serving(far), params, 7);
    CHECK(merge_and_split(apart_side).partition.blocks.size() == 2);
  }

  SUBCASE("stable against every one-step neighbor on small instances") {
    Rng rng(31);
    for (int inst = 0; inst < 20; ++inst) {
      const std::size_t n = 2 + static_cast<std::size_t>(inst % 5);
      const auto mode = inst % 2 ? geometry::FapTopology::Tree : geometry::FapTopology::Mesh;
      const auto t = random_topology(n, 3 * n, mode, rng);
      params.tau = inst % 3 == 0 ? 0.1 : 1.0;
      ClusterEvaluator ev(t, budget, nearest_serving(t), params, static_cast<std::uint64_t>(inst));
      const auto r = merge_and_split(ev);
      const auto* tree = mode == geometry::FapTopology::Tree ? &t.fap_adjacency : nullptr;
      REQUIRE(is_valid_partition(r.partition.blocks, n, tree));
      CHECK(stability::is_stable(ev, r.partition.blocks));
      for (std::size_t k = 1; k < r.utility_history.size(); ++k) {
        CHECK(r.utility_history[k] > r.utility_history[k - 1]);
      }
    }
  }

  SUBCASE("evaluation order does not change cluster utilities") {
    Rng rng(8);
    const auto t = random_topology(5, 15, geometry::FapTopology::Mesh, rng);
    ClusterEvaluator a(t, budget, nearest_serving(t), params, 3);
    ClusterEvaluator b(t, budget, nearest_serving(t), params, 3);
    const double first = a.utility({1, 3});
    b.utility({0});
    b.utility({2, 4});
    CHECK(b.utility({1, 3}) == first);
  }

  SUBCASE("block size cap") {
    params.tau = 0.01;
    params.max_block_size = 2;
    const auto t = make_topology({{0, 0}, {30, 0}, {60, 0}, {90, 0}}, {{15, 0}, {45, 0}, {75, 0}});
    ClusterEvaluator ev(t, budget, nearest_serving(t), params, 2);
    for (const auto& b : merge_and_split(ev).partition.blocks) CHECK(b.size() <= 2);
  }
}

TEST_CASE("occupied_count rounds half away from zero") {
  CHECK(occupied_count(0.0, 10) == 0);
  CHECK(occupied_count(0.25, 10) == 3);
  CHECK(occupied_count(0.5, 10) == 5);
  CHECK(occupied_count(1.0, 10) == 10);
  CHECK(occupied_count(0.125, 4) == 1);
  CHECK_THROWS(occupied_count(1.5, 10));
}

TEST_CASE("COAC") {
  const std::vector<std::vector<double>> gains{{0.4, 0.1, 0.9, 0.2}, {0.3, 0.3, 0.1, 0.5}};
  const auto half = coac_assign(gains, 4, 0.5);
  CHECK(half.occupied[0] == std::vector<std::size_t>{1, 3});
  CHECK(half.occupied[1] == std::vector<std::size_t>{0, 2});  // tie 0.3/0.3 goes to index 0
  CHECK(coac_assign(gains, 4, 0.0).occupied[0].empty());
  CHECK(coac_assign(gains, 4, 1.0).occupied[1] == std::vector<std::size_t>{0, 1, 2, 3});

  Rng rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    std::vector<std::vector<double>> g(1, std::vector<double>(8));
    for (auto& x : g[0]) x = u(rng);
    const double eps = (t % 9) / 8.0;
    const auto a = coac_assign(g, 8, eps);
    std::vector<std::size_t> idx(8);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&](auto i, auto j) { return g[0][i] < g[0][j]; });
    idx.resize(occupied_count(eps, 8));
    std::sort(idx.begin(), idx.end());
    CHECK(a.occupied[0] == idx);
  }
}

TEST_CASE("DRAC") {
  Rng rng(5);
  CHECK(drac_assign(3, 10, 0.0, rng).occupied[2].empty());
  CHECK(drac_assign(3, 10, 1.0, rng).occupied[1].size() == 10);

  std::vector<int> counts(10);
  const int draws = 100'000;
  const auto a = drac_assign(draws, 10, 0.5, rng);
  for (const auto& occ : a.occupied) {
    REQUIRE(occ.size() == 5);
    for (auto s : occ) counts[s]++;
  }
  for (int c : counts) CHECK(std::abs(static_cast<double>(c) / draws - 0.5) < 0.01);

  SUBCASE("nested subsets across epsilon on a fixed stream") {
    Rng r1(9), r2(9);
    const auto small = drac_assign(50, 10, 0.3, r1);
    const auto big = drac_assign(50, 10, 0.7, r2);
    for (std::size_t l = 0; l < 50; ++l) {
      CHECK(std::includes(big.occupied[l].begin(), big.occupied[l].end(), small.occupied[l].begin(),
                          small.occupied[l].end()));
    }
  }
  SUBCASE("full occupation equals COAC at epsilon 1") {
    Rng r(1);
    UnderlayParams p;
    auto drop = sample_underlay_drop(p, r);
    const auto g = drop.victim_cross_gains();
    CHECK(coac_assign(g, p.n_subchannels, 1.0).occupied ==
          drac_assign(drop.link_count(), p.n_subchannels, 1.0, r).occupied);
  }
}

TEST_CASE("underlay success probabilities") {
  UnderlayParams p;
  p.hpn_density = 4e-6;
  p.d2d_density = 4e-4;
  const channel::LinkBudget budget;

  SUBCASE("epsilon 0 equals the D2D-free baseline") {
    Rng r(2);
    const auto drop = sample_underlay_drop(p, r);
    auto empty = drop;
    empty.d2d_tx.clear();
    empty.d2d_rx.clear();
    empty.victim_hpn.clear();
    empty.cross_gains.clear();
    const auto none = coac_assign(drop.victim_cross_gains(), p.n_subchannels, 0.0);
    SubchannelAssignment no_links{p.n_subchannels, 0.0, {}};
    Rng a(7), b(7);
    const auto with = cellular_success_probability(drop, none, p.region, budget, 0.0, 5000, a);
    const auto without = cellular_success_probability(empty, no_links, p.region, budget, 0.0, 5000, b);
    CHECK(with.value == without.value);
  }

  SUBCASE("no active D2D link reports zero trials") {
    Rng r(3);
    const auto drop = sample_underlay_drop(p, r);
    const auto none = coac_assign(drop.victim_cross_gains(), p.n_subchannels, 0.0);
    CHECK(d2d_success_probability(drop, none, budget, p.d2d_fading, 0.0, 100, r).trials == 0);
  }

  SUBCASE("decreasing in epsilon, COAC at least DRAC") {
    double last_coac = 2.0;
    double last_drac = 2.0;
    for (double eps : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      const auto coac = evaluate_underlay(p, Scheduler::Coac, eps, 0.0, 4, 1000, 11).cellular;
      const auto drac = evaluate_underlay(p, Scheduler::Drac, eps, 0.0, 4, 1000, 11).cellular;
      CHECK(coac.value >= 0.0);
      CHECK(coac.value <= 1.0);
      CHECK(coac.value <= last_coac + coac.half_width);
      CHECK(drac.value <= last_drac + drac.half_width);
      if (eps > 0.0 && eps < 1.0) CHECK(coac.value >= drac.value);
      last_coac = coac.value;
      last_drac = drac.value;
    }
  }
}

TEST_CASE("S-FFR") {
  using QC = QosClass;
  using ST = ServingTier;
  const std::vector<SffrUe> ues{{1, QC::High, ST::Fap}, {2, QC::High, ST::Fap}, {3, QC::Low, ST::Fap},
                                {4, QC::Low, ST::Fap},  {5, QC::Low, ST::Fap}};

  SUBCASE("10 blocks, eta 0.4: hand enumeration") {
    const auto plan = sffr_allocate(10, 0.4, ues);
    CHECK(plan.reserved == std::vector<std::size_t>{0, 1, 2, 3});
    CHECK(plan.shared == std::vector<std::size_t>{4, 5, 6, 7, 8, 9});
    const std::vector<std::vector<std::uint32_t>> expected{{1}, {2}, {1}, {2}, {3}, {4}, {5}, {3}, {4}, {5}};
    CHECK(plan.block_users == expected);
  }

  const std::vector<SffrUe> mixed{{1, QC::High, ST::Fap}, {2, QC::Low, ST::Fap}, {3, QC::Low, ST::Hpn},
                                  {4, QC::High, ST::Hpn}};
  SUBCASE("eta 1: HPN UEs receive no blocks") {
    const auto plan = sffr_allocate(8, 1.0, mixed);
    CHECK(plan.shared.empty());
    for (const auto& users : plan.block_users) {
      for (auto id : users) CHECK((id == 1));
    }
  }
  SUBCASE("eta 0: every block shared") {
    const auto plan = sffr_allocate(8, 0.0, mixed);
    CHECK(plan.reserved.empty());
    CHECK(plan.shared.size() == 8);
    for (const auto& users : plan.block_users) {
      CHECK(std::find(users.begin(), users.end(), 1u) == users.end());
    }
  }
  SUBCASE("invalid eta") {
    CHECK_THROWS_AS(sffr_allocate(8, -0.1, mixed), ValidationError);
    CHECK_THROWS_AS(sffr_allocate(8, 1.1, mixed), ValidationError);
  }
  SUBCASE("isolation detector") {
    SffrPlan bad;
    bad.block_users = {{1, 3}};
    CHECK_FALSE(sffr_isolated(bad, mixed));
    bad.block_users = {{2, 3}};
    CHECK(sffr_isolated(bad, mixed));
  }
  SUBCASE("random scenarios stay isolated") {
    Rng rng(12);
    for (int s = 0; s < 100; ++s) {
      std::vector<SffrUe> pop;
      const auto n = std::uniform_int_distribution<int>(0, 30)(rng);
      for (int i = 0; i < n; ++i) {
        pop.push_back({static_cast<std::uint32_t>(i), rng() % 2 ? QC::High : QC::Low,
                       rng() % 3 ? ST::Fap : ST::Hpn});
      }
      const double eta = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
      const auto plan = sffr_allocate(1 + rng() % 60, eta, pop);
      CHECK(sffr_isolated(plan, pop));
    }
  }
}
