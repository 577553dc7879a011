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

#include "frangine/scheduling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "frangine/errors.hpp"
#include "frangine/parallel.hpp"

namespace frangine::coordination {

void UnderlayParams::validate() const {
  if (!(hpn_density >= 0.0) || !(d2d_density >= 0.0)) throw ValidationError("density", "must be non-negative");
  if (n_subchannels < 1) throw ValidationError("n_subchannels", "must be at least 1");
  if (!(d2d_radius > 0.0)) throw ValidationError("d2d_radius", "must be positive");
  budget.validate();
}

std::vector<std::vector<double>> UnderlayDrop::victim_cross_gains() const {
  std::vector<std::vector<double>> out(link_count(), std::vector<double>(n_subchannels));
  for (std::size_t l = 0; l < link_count(); ++l)
    for (std::size_t n = 0; n < n_subchannels; ++n) out[l][n] = cross_gain(l, victim_hpn[l], n);
  return out;
}

UnderlayDrop sample_underlay_drop(const UnderlayParams& params, Rng& rng) {
  params.validate();
  UnderlayDrop drop;
  drop.n_subchannels = params.n_subchannels;
  drop.hpns = geometry::sample_ppp(geometry::NodeKind::Hpn, params.hpn_density, params.region, rng).positions;
  if (drop.hpns.empty()) drop.hpns.push_back(params.region.center());
  drop.d2d_tx = geometry::sample_ppp(geometry::NodeKind::Fue, params.d2d_density, params.region, rng).positions;
  drop.d2d_rx.reserve(drop.d2d_tx.size());
  for (const auto& tx : drop.d2d_tx) drop.d2d_rx.push_back(geometry::uniform_in_disk(tx, params.d2d_radius, rng));
  for (const auto& tx : drop.d2d_tx) drop.victim_hpn.push_back(geometry::nearest(drop.hpns, tx));

  const auto rayleigh = channel::FadingModel::rayleigh();
  const std::size_t m = drop.hpns.size();
  drop.cross_gains.resize(drop.d2d_tx.size() * m * params.n_subchannels);
  for (std::size_t l = 0; l < drop.d2d_tx.size(); ++l)
    for (std::size_t h = 0; h < m; ++h) {
      const double g = channel::path_gain(geometry::distance(drop.d2d_tx[l], drop.hpns[h]), params.budget);
      for (std::size_t n = 0; n < params.n_subchannels; ++n)
        drop.cross_gains[(l * m + h) * params.n_subchannels + n] = g * channel::fading_sample(rayleigh, rng);
    }
  return drop;
}

std::size_t occupied_count(double epsilon, std::size_t n_subchannels) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw ValidationError("epsilon", "must lie in [0, 1]");
  return static_cast<std::size_t>(std::round(epsilon * static_cast<double>(n_subchannels)));
}

bool SubchannelAssignment::occupies(std::size_t link, std::size_t subchannel) const {
  const auto& o = occupied.at(link);
  return std::binary_search(o.begin(), o.end(), subchannel);
}

SubchannelAssignment coac_assign(std::span<const std::vector<double>> cross_gains, std::size_t n_subchannels,
                                 double epsilon) {
  const std::size_t k = occupied_count(epsilon, n_subchannels);
  SubchannelAssignment out{n_subchannels, epsilon, {}};
  out.occupied.reserve(cross_gains.size());
  std::vector<std::size_t> order(n_subchannels);
  for (const auto& gains : cross_gains) {
    if (gains.size() != n_subchannels) throw ValidationError("cross_gains", "one gain per subchannel is required");
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return gains[a] < gains[b]; });
    std::vector<std::size_t> chosen(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
    std::sort(chosen.begin(), chosen.end());
    out.occupied.push_back(std::move(chosen));
  }
  return out;
}

SubchannelAssignment drac_assign(std::size_t n_links, std::size_t n_subchannels, double epsilon, Rng& rng) {
  const std::size_t k = occupied_count(epsilon, n_subchannels);
  SubchannelAssignment out{n_subchannels, epsilon, {}};
  out.occupied.reserve(n_links);
  std::vector<std::size_t> perm(n_subchannels);
  for (std::size_t l = 0; l < n_links; ++l) {
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t i = n_subchannels; i > 1; --i) {
      std::uniform_int_distribution<std::size_t> pick(0, i - 1);
      std::swap(perm[i - 1], perm[pick(rng)]);
    }
    std::vector<std::size_t> chosen(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(k));
    std::sort(chosen.begin(), chosen.end());
    out.occupied.push_back(std::move(chosen));
  }
  return out;
}

ProbabilityEstimate cellular_success_probability(const UnderlayDrop& drop, const SubchannelAssignment& assignment,
                                                 const geometry::Region& region, const channel::LinkBudget& budget,
                                                 double gamma_th_db, std::size_t mc_trials, Rng& rng) {
  if (assignment.occupied.size() != drop.link_count() || assignment.n_subchannels != drop.n_subchannels) {
    throw ValidationError("assignment", "does not match the drop");
  }
  const std::size_t m = drop.hpns.size();
  const std::size_t n_sub = drop.n_subchannels;
  const double p_fue = budget.fue_tx_watts();

  std::vector<double> interference(m * n_sub, 0.0);
  for (std::size_t l = 0; l < drop.link_count(); ++l)
    for (auto n : assignment.occupied[l])
      for (std::size_t h = 0; h < m; ++h) interference[h * n_sub + n] += p_fue * drop.cross_gain(l, h, n);

  const auto rayleigh = channel::FadingModel::rayleigh();
  const double noise = budget.noise_watts();
  const double threshold = channel::db_to_linear(gamma_th_db);
  std::uniform_int_distribution<std::size_t> pick_sub(0, n_sub - 1);
  std::size_t successes = 0;
  for (std::size_t t = 0; t < mc_trials; ++t) {
    const auto ue = geometry::uniform_in_region(region, rng);
    const auto n = pick_sub(rng);
    const auto h = geometry::nearest(drop.hpns, ue);
    const double signal =
        p_fue * channel::path_gain(geometry::distance(ue, drop.hpns[h]), budget) * channel::fading_sample(rayleigh, rng);
    if (signal / (interference[h * n_sub + n] + noise) >= threshold) ++successes;
  }
  return ProbabilityEstimate::from_counts(successes, mc_trials);
}

ProbabilityEstimate d2d_success_probability(const UnderlayDrop& drop, const SubchannelAssignment& assignment,
                                            const channel::LinkBudget& budget, const channel::FadingModel& d2d_fading,
                                            double gamma_th_db, std::size_t mc_trials, Rng& rng) {
  if (assignment.occupied.size() != drop.link_count()) throw ValidationError("assignment", "does not match the drop");
  std::vector<std::size_t> active;
  for (std::size_t l = 0; l < drop.link_count(); ++l)
    if (!assignment.occupied[l].empty()) active.push_back(l);
  if (active.empty()) return {};

  // Co-channel transmitters per subchannel.
  std::vector<std::vector<std::size_t>> on_subchannel(drop.n_subchannels);
  for (auto l : active)
    for (auto n : assignment.occupied[l]) on_subchannel[n].push_back(l);

  const auto rayleigh = channel::FadingModel::rayleigh();
  const double p_fue = budget.fue_tx_watts();
  const double noise = budget.noise_watts();
  const double threshold = channel::db_to_linear(gamma_th_db);
  std::uniform_int_distribution<std::size_t> pick_link(0, active.size() - 1);
  std::size_t successes = 0;
  for (std::size_t t = 0; t < mc_trials; ++t) {
    const auto l = active[pick_link(rng)];
    const auto& occ = assignment.occupied[l];
    std::uniform_int_distribution<std::size_t> pick_sub(0, occ.size() - 1);
    const auto n = occ[pick_sub(rng)];
    const double signal = p_fue * channel::path_gain(geometry::distance(drop.d2d_tx[l], drop.d2d_rx[l]), budget) *
                          channel::fading_sample(d2d_fading, rng);
    double interference = 0.0;
    for (auto other : on_subchannel[n]) {
      if (other == l) continue;
      interference += p_fue * channel::path_gain(geometry::distance(drop.d2d_tx[other], drop.d2d_rx[l]), budget) *
                      channel::fading_sample(rayleigh, rng);
    }
    if (signal / (interference + noise) >= threshold) ++successes;
  }
  return ProbabilityEstimate::from_counts(successes, mc_trials);
}

const char* to_string(Scheduler scheduler) noexcept { return scheduler == Scheduler::Coac ? "COAC" : "DRAC"; }

UnderlayResult evaluate_underlay(const UnderlayParams& params, Scheduler scheduler, double epsilon,
                                 double gamma_th_db, std::size_t drops, std::size_t trials_per_drop,
                                 std::uint64_t seed) {
  params.validate();
  occupied_count(epsilon, params.n_subchannels);
  struct Counts {
    std::size_t cellular_ok = 0, cellular_n = 0, d2d_ok = 0, d2d_n = 0;
  };
  const auto per_drop = parallel_map<Counts>(drops, [&](std::size_t k) {
    Rng geometry_rng = make_rng(seed, "underlay-drop", k);
    const auto drop = sample_underlay_drop(params, geometry_rng);
    SubchannelAssignment assignment;
    if (scheduler == Scheduler::Coac) {
      assignment = coac_assign(drop.victim_cross_gains(), params.n_subchannels, epsilon);
    } else {
      Rng access_rng = make_rng(seed, "drac-access", k);
      assignment = drac_assign(drop.link_count(), params.n_subchannels, epsilon, access_rng);
    }
    Rng cellular_rng = make_rng(seed, "cellular-eval", k);
    Rng d2d_rng = make_rng(seed, "d2d-eval", k);
    const auto c = cellular_success_probability(drop, assignment, params.region, params.budget, gamma_th_db,
                                                trials_per_drop, cellular_rng);
    const auto d = d2d_success_probability(drop, assignment, params.budget, params.d2d_fading, gamma_th_db,
                                           trials_per_drop, d2d_rng);
    Counts out;
    out.cellular_n = c.trials;
    out.cellular_ok = static_cast<std::size_t>(std::llround(c.value * static_cast<double>(c.trials)));
    out.d2d_n = d.trials;
    out.d2d_ok = static_cast<std::size_t>(std::llround(d.value * static_cast<double>(d.trials)));
    return out;
  });

  Counts total;
  for (const auto& c : per_drop) {
    total.cellular_ok += c.cellular_ok;
    total.cellular_n += c.cellular_n;
    total.d2d_ok += c.d2d_ok;
    total.d2d_n += c.d2d_n;
  }
  return {ProbabilityEstimate::from_counts(total.cellular_ok, total.cellular_n),
          ProbabilityEstimate::from_counts(total.d2d_ok, total.d2d_n)};
}

}  // namespace frangine::coordination
