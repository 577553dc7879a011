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

#include "frangine/metrics_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "frangine/errors.hpp"
#include "frangine/parallel.hpp"
#include "frangine/sffr.hpp"

namespace frangine::sim {

const char* to_string(Architecture architecture) noexcept {
  switch (architecture) {
    case Architecture::CRAN: return "CRAN";
    case Architecture::HCRAN: return "HCRAN";
    case Architecture::FRAN: return "FRAN";
  }
  return "?";
}

namespace {

void require_fraction(double v, const char* field) {
  if (!(v >= 0.0 && v <= 1.0)) throw ValidationError(field, "must lie in [0, 1]");
}

void require_non_negative(double v, const char* field) {
  if (!(v >= 0.0) || !std::isfinite(v)) throw ValidationError(field, "must be finite and non-negative");
}

void require_positive(double v, const char* field) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError(field, "must be finite and positive");
}

}  // namespace

void ScenarioConfig::validate() const {
  (void)region();
  require_non_negative(hpn_density, "hpn_density");
  require_non_negative(fap_density, "fap_density");
  require_non_negative(fue_density, "fue_density");
  require_non_negative(d2d_density, "d2d_density");
  require_fraction(d2d_capable_fraction, "d2d_capable_fraction");
  require_fraction(relay_willing_fraction, "relay_willing_fraction");
  require_fraction(high_speed_fraction, "high_speed_fraction");
  require_fraction(voice_fraction, "voice_fraction");
  require_fraction(high_qos_fraction, "high_qos_fraction");
  budget.validate();
  if (!std::isfinite(d2d_fading.k_factor_db)) throw ValidationError("k_factor_db", "must be finite");
  require_positive(d2d_radius_m, "d2d_radius_m");
  thresholds.validate();
  if (fap_resource_blocks < 0) throw ValidationError("fap_resource_blocks", "must be non-negative");
  if (!std::isfinite(interference_limit_dbm)) throw ValidationError("interference_limit_dbm", "must be finite");
  catalog().validate();
  if (payload_bits == 0) throw ValidationError("payload_bits", "must be positive");
  require_positive(tau, "tau");
  require_fraction(epsilon, "epsilon");
  require_fraction(eta, "eta");
  if (n_subchannels < 1) throw ValidationError("n_subchannels", "must be at least 1");
  require_non_negative(p_static_w, "p_static_w");
  require_non_negative(p_tx_w, "p_tx_w");
  require_non_negative(p_coord_w, "p_coord_w");
  require_fraction(sleep_fraction, "sleep_fraction");
  require_non_negative(hpn_power_w, "hpn_power_w");
  cluster_params().validate();
  if (mc_trials < 1) throw ValidationError("mc_trials", "must be at least 1");
  if (cluster_mc_trials < 1) throw ValidationError("cluster_mc_trials", "must be at least 1");
  if (underlay_drops < 1) throw ValidationError("underlay_drops", "must be at least 1");
  if (!(iq_expansion_factor >= 1.0) || !std::isfinite(iq_expansion_factor)) {
    throw ValidationError("iq_expansion_factor", "must be at least 1");
  }
}

caching::ContentCatalog ScenarioConfig::catalog() const {
  return {catalog_items, zipf_exponent, static_cast<double>(payload_bits)};
}

coordination::ClusterUtilityParams ScenarioConfig::cluster_params() const {
  coordination::ClusterUtilityParams p;
  p.tau = tau;
  p.gamma_th_db = budget.sinr_threshold_db;
  p.p_static_w = p_static_w;
  p.p_tx_w = p_tx_w;
  p.p_coord_w = p_coord_w;
  p.mc_trials = cluster_mc_trials;
  p.max_block_size = max_block_size;
  return p;
}

coordination::UnderlayParams ScenarioConfig::underlay_params() const {
  coordination::UnderlayParams p;
  p.region = region();
  p.hpn_density = hpn_density;
  p.d2d_density = d2d_density;
  p.n_subchannels = n_subchannels;
  p.d2d_radius = d2d_radius_m;
  p.d2d_fading = d2d_fading;
  p.budget = budget;
  return p;
}

// ---------------------------------------------------------------------------

bool LoadReport::conserved() const noexcept {
  std::uint64_t f = 0, e = 0, b = 0, d = 0;
  for (const auto& row : ledger) {
    if (row.fronthaul_payload_bits + row.edge_served_bits + row.backhaul_bits != row.payload_bits) return false;
    f += row.fronthaul_payload_bits;
    e += row.edge_served_bits;
    b += row.backhaul_bits;
    d += row.payload_bits;
  }
  return f == fronthaul_payload_bits && e == edge_served_bits && b == backhaul_bits && d == delivered_bits &&
         fronthaul_payload_bits + edge_served_bits + backhaul_bits == delivered_bits;
}

LedgerRow account_request(const RequestRecord& request, const TrafficConfig& traffic) {
  LedgerRow row;
  row.request_index = request.index;
  row.fue = request.fue;
  row.mode = request.mode;
  row.tier = request.tier;
  const std::uint64_t payload = traffic.payload_bits;
  row.payload_bits = payload;
  switch (request.mode) {
    case mode::Mode::GlobalCRAN:
      row.fronthaul_bits =
          static_cast<std::uint64_t>(std::llround(static_cast<double>(payload) * traffic.iq_expansion_factor));
      row.fronthaul_payload_bits = payload;
      row.bbu_processed_bits = payload;
      break;
    case mode::Mode::LocalCoordination:
      if (request.tier == caching::Tier::CloudOnly) {
        row.fronthaul_bits = traffic.item_bits;
        row.fronthaul_payload_bits = payload;
      } else {
        row.edge_served_bits = payload;
      }
      row.edge_processed_bits = payload;
      break;
    case mode::Mode::D2D:
    case mode::Mode::FueRelay:
      row.edge_served_bits = payload;
      row.edge_processed_bits = payload;
      break;
    case mode::Mode::HPN:
      row.backhaul_bits = payload;
      break;
  }
  return row;
}

LoadReport fronthaul_load(std::span<const RequestRecord> requests, const TrafficConfig& traffic) {
  LoadReport report;
  report.ledger.reserve(requests.size());
  for (const auto& r : requests) {
    const auto row = account_request(r, traffic);
    report.fronthaul_bits += row.fronthaul_bits;
    report.fronthaul_payload_bits += row.fronthaul_payload_bits;
    report.backhaul_bits += row.backhaul_bits;
    report.bbu_processed_bits += row.bbu_processed_bits;
    report.edge_processed_bits += row.edge_processed_bits;
    report.edge_served_bits += row.edge_served_bits;
    report.delivered_bits += row.payload_bits;
    ++report.mode_counts[static_cast<std::size_t>(r.mode)];
    report.ledger.push_back(row);
  }
  return report;
}

double energy_efficiency(double rate_sum, const PowerBreakdown& power) {
  const double total = power.total();
  if (!(total > 0.0)) throw ZeroPower();
  return rate_sum / total;
}

// ---------------------------------------------------------------------------

std::vector<double> spatial_rate_samples(const SpatialRateParams& params, LinkClass link, std::size_t mc_trials,
                                         std::uint64_t seed) {
  params.budget.validate();
  require_fraction(params.epsilon, "epsilon");
  require_positive(params.d2d_radius, "d2d_radius");
  const auto center = params.region.center();
  const double half_side = 0.5 * std::min(params.region.width(), params.region.height());
  const double cell_radius =
      params.hpn_density > 0.0 ? std::min(half_side, 1.0 / std::sqrt(std::numbers::pi * params.hpn_density)) : half_side;
  const double p_fue = params.budget.fue_tx_watts();
  const double noise = params.budget.noise_watts();
  const auto rayleigh = channel::FadingModel::rayleigh();

  return parallel_map<double>(mc_trials, [&](std::size_t t) {
    Rng rng = make_rng(seed, "spatial-rate", t);
    double signal = 0.0;
    if (link == LinkClass::D2D) {
      const auto tx = geometry::uniform_in_disk(center, params.d2d_radius, rng);
      signal = p_fue * channel::path_gain(geometry::distance(tx, center), params.budget) *
               channel::fading_sample(params.d2d_fading, rng);
    } else {
      const auto ue = geometry::uniform_in_disk(center, cell_radius, rng);
      signal = p_fue * channel::path_gain(geometry::distance(ue, center), params.budget) *
               channel::fading_sample(params.cellular_fading, rng);
    }

    double interference = 0.0;
    std::bernoulli_distribution active(params.epsilon);
    const auto d2d = geometry::sample_ppp(geometry::NodeKind::Fue, params.d2d_density, params.region, rng);
    for (const auto& p : d2d.positions) {
      const bool on = active(rng);
      const double h = channel::fading_sample(rayleigh, rng);
      if (on) interference += p_fue * channel::path_gain(geometry::distance(p, center), params.budget) * h;
    }
    const auto uplinks = geometry::sample_ppp(geometry::NodeKind::Fue, params.hpn_density, params.region, rng);
    for (const auto& p : uplinks.positions) {
      interference += p_fue * channel::path_gain(geometry::distance(p, center), params.budget) *
                      channel::fading_sample(rayleigh, rng);
    }
    return channel::rate(signal / (interference + noise));
  });
}

MeanEstimate spatial_average_rate(const SpatialRateParams& params, LinkClass link, std::size_t mc_trials,
                                  std::uint64_t seed) {
  if (mc_trials < 1) throw ValidationError("mc_trials", "must be at least 1");
  const auto samples = spatial_rate_samples(params, link, mc_trials, seed);
  return MeanEstimate::from_samples(samples);
}

// ---------------------------------------------------------------------------

namespace {

struct Population {
  std::vector<mode::UeContext> contexts;
  std::vector<bool> high_qos;
};

Population draw_population(const ScenarioConfig& cfg, const geometry::NodeSet& fues) {
  Rng rng = make_rng(cfg.seed, "fue-attributes");
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double v = cfg.thresholds.speed_threshold;
  Population pop;
  for (std::size_t i = 0; i < fues.size(); ++i) {
    const double draws[6] = {u(rng), u(rng), u(rng), u(rng), u(rng), u(rng)};
    mode::UeContext ctx;
    ctx.id = static_cast<mode::UeId>(i);
    ctx.position = fues.positions[i];
    const bool fast = draws[0] < cfg.high_speed_fraction;
    ctx.speed = fast ? v * (1.5 + draws[1]) : 0.5 * v * draws[1];
    ctx.d2d_capable = draws[2] < cfg.d2d_capable_fraction;
    ctx.relay_willing = ctx.d2d_capable && draws[3] < cfg.relay_willing_fraction;
    ctx.qos = draws[4] < cfg.voice_fraction ? mode::Qos::RealTimeVoice : mode::Qos::Packet;
    pop.contexts.push_back(ctx);
    pop.high_qos.push_back(draws[5] < cfg.high_qos_fraction);
  }
  return pop;
}

/// Restricts an F-RAN decision to the modes an architecture offers.
mode::ModeDecision gate(Architecture arch, const mode::ModeDecision& fran, std::optional<std::size_t> serving) {
  if (arch == Architecture::FRAN) return fran;
  if (arch == Architecture::HCRAN && fran.mode == mode::Mode::HPN) return fran;
  if (!serving) return {mode::Mode::HPN, std::nullopt, std::nullopt, mode::Reason::NoServingFap};
  return {mode::Mode::GlobalCRAN, std::nullopt, serving, mode::Reason::ArchitectureGate};
}

}  // namespace

MetricsReport run_scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  const auto region = cfg.region();
  MetricsReport report;
  report.architecture = cfg.architecture;
  report.seed = cfg.seed;

  // Placement. An empty HPN draw is replaced by one umbrella HPN.
  geometry::NetworkTopology topo;
  topo.region = region;
  topo.fap_link_topology = cfg.fap_topology;
  {
    Rng rng = make_rng(cfg.seed, "hpn");
    topo.hpns = geometry::sample_ppp(geometry::NodeKind::Hpn, cfg.hpn_density, region, rng);
    if (topo.hpns.empty()) topo.hpns.positions.push_back(region.center());
  }
  {
    Rng rng = make_rng(cfg.seed, "fap");
    topo.faps = geometry::sample_ppp(geometry::NodeKind::Fap, cfg.fap_density, region, rng);
  }
  {
    Rng rng = make_rng(cfg.seed, "fue");
    topo.fues = geometry::sample_ppp(geometry::NodeKind::Fue, cfg.fue_density, region, rng);
  }
  if (!topo.faps.empty()) topo.fap_adjacency = geometry::build_fap_adjacency(topo.faps, cfg.fap_topology);

  report.n_hpn = topo.hpns.size();
  report.n_fap = topo.faps.size();
  report.n_fue = topo.fues.size();
  if (topo.fues.empty()) return report;

  const std::size_t n_fue = topo.fues.size();
  const std::size_t n_fap = topo.faps.size();
  auto pop = draw_population(cfg, topo.fues);
  auto& ctx = pop.contexts;

  // D2D pairing.
  std::vector<std::optional<std::size_t>> partner(n_fue);
  {
    std::vector<bool> capable(n_fue);
    for (std::size_t i = 0; i < n_fue; ++i) capable[i] = ctx[i].d2d_capable;
    for (const auto& [a, b] : geometry::pair_d2d(topo.fues.positions, capable)) {
      partner[a] = b;
      partner[b] = a;
    }
  }

  // F-AP association. C-RAN centralizes admission, so every F-UE simply
  // attaches to its nearest RRH.
  std::vector<std::optional<std::size_t>> serving(n_fue);
  if (n_fap > 0) {
    std::vector<int> free_blocks(n_fap, cfg.fap_resource_blocks);
    const double limit = channel::dbm_to_watts(cfg.interference_limit_dbm);
    for (std::size_t i = 0; i < n_fue; ++i) {
      if (cfg.architecture == Architecture::CRAN) {
        serving[i] = geometry::nearest(topo.faps.positions, ctx[i].position);
        continue;
      }
      try {
        const auto f = mode::associate_fap(ctx[i], topo.faps, cfg.budget, limit, free_blocks);
        serving[i] = f;
        --free_blocks[f];
      } catch (const AllFapsBlocked&) {
      }
    }
  }
  std::vector<bool> lc_feasible(n_fue, false);
  for (std::size_t i = 0; i < n_fue; ++i)
    if (serving[i]) lc_feasible[i] = mode::local_coordination_feasible(ctx[i].position, *serving[i], topo, cfg.budget);

  // Caches exist only at the edge of an F-RAN.
  const bool edge_caching = cfg.architecture == Architecture::FRAN;
  std::vector<caching::EdgeCache> fap_caches;
  std::vector<caching::EdgeCache> fue_caches;
  for (std::size_t f = 0; f < n_fap; ++f) fap_caches.emplace_back(f, cfg.fap_cache_capacity, cfg.cache_policy);
  for (std::size_t i = 0; i < n_fue; ++i) fue_caches.emplace_back(i, cfg.fue_cache_capacity, cfg.cache_policy);

  const auto catalog = cfg.catalog();
  const std::size_t per_fue = cfg.warmup_requests_per_fue + cfg.requests_per_fue;
  std::vector<std::vector<caching::ContentId>> streams(n_fue);
  for (std::size_t i = 0; i < n_fue; ++i) {
    Rng rng = make_rng(cfg.seed, "requests", i);
    streams[i] = caching::zipf_stream(catalog, per_fue, rng);
  }

  std::vector<RequestRecord> records;
  records.reserve(n_fue * cfg.requests_per_fue);
  std::size_t at_fue = 0, at_fap = 0, reached_fap_tier = 0;
  std::uint64_t request_index = 0;

  for (std::size_t round = 0; round < per_fue; ++round) {
    const bool measured = round >= cfg.warmup_requests_per_fue;
    for (std::size_t i = 0; i < n_fue; ++i) {
      const auto item = streams[i][round];
      caching::Tier tier = caching::Tier::CloudOnly;
      if (edge_caching) {
        const caching::EdgeCache* fue_cache = partner[i] ? &fue_caches[*partner[i]] : nullptr;
        const caching::EdgeCache* fap_cache = serving[i] ? &fap_caches[*serving[i]] : nullptr;
        std::vector<const caching::EdgeCache*> cooperating;
        if (cfg.cooperative_caching && serving[i])
          for (auto nb : topo.fap_adjacency.neighbors(*serving[i])) cooperating.push_back(&fap_caches[nb]);
        tier = caching::content_available(item, fue_cache, fap_cache, cooperating);
      }

      mode::UeContext src = ctx[i];
      src.requested_content = item;
      const mode::UeContext dst =
          tier == caching::Tier::AtFue
              ? ctx[*partner[i]]
              : mode::infrastructure_endpoint(serving[i] ? topo.faps.positions[*serving[i]] : src.position);
      const auto fran = mode::select_mode(src, dst, cfg.thresholds, ctx, tier != caching::Tier::CloudOnly,
                                          lc_feasible[i], serving[i]);
      const auto decision = gate(cfg.architecture, fran, serving[i]);

      std::optional<caching::ContentId> evicted;
      if (edge_caching) {
        const bool via_fap =
            decision.mode == mode::Mode::LocalCoordination || decision.mode == mode::Mode::GlobalCRAN;
        if (via_fap && decision.serving_fap) evicted = fap_caches[*decision.serving_fap].request(item).evicted;
        fue_caches[i].request(item);
      }

      if (!measured) continue;
      if (tier == caching::Tier::AtFue) ++at_fue;
      else {
        ++reached_fap_tier;
        if (tier == caching::Tier::AtFap) ++at_fap;
      }
      records.push_back({request_index, static_cast<std::uint32_t>(i), item, decision.mode, tier});
      report.cache_trace.push_back({request_index, item, tier, evicted});
      ++request_index;
    }
  }

  report.n_requests = records.size();
  report.load = fronthaul_load(records, {cfg.payload_bits, cfg.payload_bits, cfg.iq_expansion_factor});
  if (!records.empty()) {
    const double total = static_cast<double>(records.size());
    report.hit_ratio_fue = static_cast<double>(at_fue) / total;
    report.hit_ratio_fap = reached_fap_tier > 0 ? static_cast<double>(at_fap) / static_cast<double>(reached_fap_tier) : 0.0;
    report.hit_ratio_edge = static_cast<double>(at_fue + at_fap) / total;
  }

  // Coalitional F-AP clustering and the network power budget.
  if (n_fap > 0) {
    coordination::ClusterEvaluator evaluator(topo, cfg.budget, serving, cfg.cluster_params(),
                                             derive_seed(cfg.seed, "clustering"));
    auto result = coordination::merge_and_split(evaluator);
    report.partition = std::move(result.partition);
    std::vector<bool> active(n_fap, false);
    for (const auto& s : serving)
      if (s) active[*s] = true;
    for (std::size_t b = 0; b < report.partition.blocks.size(); ++b) {
      const auto& block = report.partition.blocks[b];
      report.cluster_rate_sum += evaluator.evaluate(block).rate;
      const double k = static_cast<double>(block.size());
      report.power.coordination_w += cfg.p_coord_w * k * (k - 1.0);
    }
    for (std::size_t f = 0; f < n_fap; ++f) {
      if (active[f]) report.power.active_w += cfg.p_static_w + cfg.p_tx_w;
      else report.power.sleep_w += cfg.sleep_fraction * cfg.p_static_w;
    }
  }
  report.power.hpn_w = cfg.hpn_power_w * static_cast<double>(topo.hpns.size());
  report.energy_efficiency =
      report.power.total() > 0.0 ? energy_efficiency(report.cluster_rate_sum, report.power) : 0.0;

  // D2D underlay of the cellular uplink.
  const auto underlay = cfg.underlay_params();
  const auto underlay_seed = derive_seed(cfg.seed, "underlay");
  const auto u = coordination::evaluate_underlay(underlay, cfg.scheduler, cfg.epsilon, cfg.budget.sinr_threshold_db,
                                                 cfg.underlay_drops, cfg.mc_trials, underlay_seed);
  report.cellular_success_probability = u.cellular;
  report.d2d_success_probability = u.d2d;
  {
    Rng rng = make_rng(underlay_seed, "underlay-drop", 0);
    const auto drop = coordination::sample_underlay_drop(underlay, rng);
    if (cfg.scheduler == coordination::Scheduler::Coac) {
      report.assignment = coordination::coac_assign(drop.victim_cross_gains(), cfg.n_subchannels, cfg.epsilon);
    } else {
      Rng access = make_rng(underlay_seed, "drac-access", 0);
      report.assignment = coordination::drac_assign(drop.link_count(), cfg.n_subchannels, cfg.epsilon, access);
    }
  }

  // Spatial average rates.
  SpatialRateParams rate_params;
  rate_params.region = region;
  rate_params.hpn_density = cfg.hpn_density;
  rate_params.d2d_density = cfg.d2d_density;
  rate_params.epsilon = cfg.epsilon;
  rate_params.d2d_radius = cfg.d2d_radius_m;
  rate_params.d2d_fading = cfg.d2d_fading;
  rate_params.cellular_fading = cfg.cellular_fading;
  rate_params.budget = cfg.budget;
  const auto rate_seed = derive_seed(cfg.seed, "spatial-rate");
  report.spatial_average_rate = spatial_average_rate(rate_params, LinkClass::D2D, cfg.mc_trials, rate_seed);
  report.cellular_average_rate = spatial_average_rate(rate_params, LinkClass::Cellular, cfg.mc_trials, rate_seed);

  // S-FFR split between F-AP and HPN tiers.
  std::vector<coordination::SffrUe> sffr_ues;
  for (std::size_t i = 0; i < n_fue; ++i) {
    const bool hpn_tier = !serving[i] || ctx[i].speed > cfg.thresholds.speed_threshold ||
                          ctx[i].qos == mode::Qos::RealTimeVoice;
    sffr_ues.push_back({static_cast<std::uint32_t>(i),
                        pop.high_qos[i] ? coordination::QosClass::High : coordination::QosClass::Low,
                        hpn_tier ? coordination::ServingTier::Hpn : coordination::ServingTier::Fap});
  }
  const auto plan = coordination::sffr_allocate(cfg.n_resource_blocks, cfg.eta, sffr_ues);
  report.sffr_isolated = coordination::sffr_isolated(plan, sffr_ues);
  report.sffr_reserved_blocks = plan.reserved.size();

  return report;
}

// ---------------------------------------------------------------------------

const std::vector<std::string>& sweep_parameters() {
  static const std::vector<std::string> names{"epsilon", "k_factor_db", "lambda_d", "tau", "gamma_th", "cache_capacity"};
  return names;
}

ScenarioConfig with_parameter(const ScenarioConfig& config, const std::string& name, double value) {
  ScenarioConfig out = config;
  if (name == "epsilon") {
    out.epsilon = value;
  } else if (name == "k_factor_db") {
    out.d2d_fading = channel::FadingModel::rician(value);
  } else if (name == "lambda_d") {
    out.d2d_density = value;
  } else if (name == "tau") {
    out.tau = value;
  } else if (name == "gamma_th") {
    out.budget.sinr_threshold_db = value;
  } else if (name == "cache_capacity") {
    if (!(value >= 0.0) || value != std::floor(value)) {
      throw ValidationError("cache_capacity", "must be a non-negative integer");
    }
    out.fap_cache_capacity = static_cast<std::size_t>(value);
  } else {
    throw UnknownParameter(name);
  }
  return out;
}

std::vector<SweepPoint> sweep(const ScenarioConfig& config, const std::string& parameter,
                              std::span<const double> grid) {
  if (grid.empty()) throw ValidationError("grid", "must be nonempty");
  std::vector<ScenarioConfig> configs;
  for (double v : grid) configs.push_back(with_parameter(config, parameter, v));
  for (const auto& c : configs) c.validate();
  std::vector<SweepPoint> out;
  out.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) out.push_back({grid[i], run_scenario(configs[i])});
  return out;
}

}  // namespace frangine::sim
