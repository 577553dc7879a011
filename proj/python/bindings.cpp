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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "frangine/caching.hpp"
#include "frangine/channel.hpp"
#include "frangine/cli.hpp"
#include "frangine/config.hpp"
#include "frangine/csv.hpp"
#include "frangine/errors.hpp"
#include "frangine/geometry.hpp"
#include "frangine/metrics_sim.hpp"
#include "frangine/mode_select.hpp"
#include "frangine/scheduling.hpp"
#include "frangine/sffr.hpp"

namespace py = pybind11;
using namespace frangine;

namespace {

py::dict estimate(const ProbabilityEstimate& e) {
  py::dict d;
  d["value"] = e.value;
  d["half_width"] = e.half_width;
  d["trials"] = e.trials;
  return d;
}

py::dict estimate(const MeanEstimate& e) {
  py::dict d;
  d["mean"] = e.mean;
  d["std_error"] = e.std_error;
  d["half_width"] = e.half_width;
  d["samples"] = e.samples;
  return d;
}

py::dict load_dict(const sim::LoadReport& l) {
  py::dict d;
  d["fronthaul_bits"] = l.fronthaul_bits;
  d["fronthaul_payload_bits"] = l.fronthaul_payload_bits;
  d["backhaul_bits"] = l.backhaul_bits;
  d["bbu_processed_bits"] = l.bbu_processed_bits;
  d["edge_processed_bits"] = l.edge_processed_bits;
  d["edge_served_bits"] = l.edge_served_bits;
  d["delivered_bits"] = l.delivered_bits;
  d["conserved"] = l.conserved();
  py::dict modes;
  for (std::size_t m = 0; m < mode::kModeCount; ++m) modes[mode::to_string(static_cast<mode::Mode>(m))] = l.mode_counts[m];
  d["mode_counts"] = modes;
  return d;
}

py::dict report_dict(const sim::MetricsReport& r) {
  py::dict d;
  d["architecture"] = sim::to_string(r.architecture);
  d["seed"] = r.seed;
  d["n_hpn"] = r.n_hpn;
  d["n_fap"] = r.n_fap;
  d["n_fue"] = r.n_fue;
  d["n_requests"] = r.n_requests;
  d["spatial_average_rate"] = estimate(r.spatial_average_rate);
  d["cellular_average_rate"] = estimate(r.cellular_average_rate);
  d["cellular_success_probability"] = estimate(r.cellular_success_probability);
  d["d2d_success_probability"] = estimate(r.d2d_success_probability);
  d["hit_ratio_fue"] = r.hit_ratio_fue;
  d["hit_ratio_fap"] = r.hit_ratio_fap;
  d["hit_ratio_edge"] = r.hit_ratio_edge;
  d["clusters"] = r.partition.blocks;
  d["cluster_rate_sum"] = r.cluster_rate_sum;
  d["total_power_w"] = r.power.total();
  d["energy_efficiency"] = r.energy_efficiency;
  d["sffr_isolated"] = r.sffr_isolated;
  d["load"] = load_dict(r.load);
  d["metrics_csv"] = csv::metrics_csv(std::span(&r, 1));
  d["ledger_csv"] = csv::ledger_csv(r.load);
  d["cache_trace_csv"] = csv::cache_trace_csv(r.cache_trace);
  return d;
}

template <typename E>
E parse_enum(const std::string& text, std::initializer_list<std::pair<const char*, E>> names) {
  for (const auto& [n, v] : names)
    if (text == n) return v;
  throw ValidationError("name", "unrecognized value '" + text + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Fog radio access network simulator";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<UnknownParameter>(m, "UnknownParameter", PyExc_KeyError);
  py::register_exception<AllFapsBlocked>(m, "AllFapsBlocked", PyExc_RuntimeError);
  py::register_exception<EmptyTrace>(m, "EmptyTrace", PyExc_ValueError);
  py::register_exception<ZeroPower>(m, "ZeroPower", PyExc_ZeroDivisionError);

  // Configuration --------------------------------------------------------
  py::class_<sim::ScenarioConfig>(m, "ScenarioConfig")
      .def(py::init<>())
      .def_static("from_text", &config::parse_config_text, py::arg("text"))
      .def_static("from_file", [](const std::string& path) { return config::parse_config(path); }, py::arg("path"))
      .def("to_text", &config::emit_config)
      .def("validate", &sim::ScenarioConfig::validate)
      .def("with_parameter", &sim::with_parameter, py::arg("name"), py::arg("value"))
      .def_readwrite("seed", &sim::ScenarioConfig::seed)
      .def_property(
          "architecture", [](const sim::ScenarioConfig& c) { return std::string(sim::to_string(c.architecture)); },
          [](sim::ScenarioConfig& c, const std::string& v) {
            c.architecture = parse_enum<sim::Architecture>(
                v, {{"CRAN", sim::Architecture::CRAN}, {"HCRAN", sim::Architecture::HCRAN}, {"FRAN", sim::Architecture::FRAN}});
          })
      .def_readwrite("region_width_m", &sim::ScenarioConfig::region_width_m)
      .def_readwrite("region_height_m", &sim::ScenarioConfig::region_height_m)
      .def_readwrite("hpn_density", &sim::ScenarioConfig::hpn_density)
      .def_readwrite("fap_density", &sim::ScenarioConfig::fap_density)
      .def_readwrite("fue_density", &sim::ScenarioConfig::fue_density)
      .def_readwrite("d2d_density", &sim::ScenarioConfig::d2d_density)
      .def_readwrite("epsilon", &sim::ScenarioConfig::epsilon)
      .def_readwrite("eta", &sim::ScenarioConfig::eta)
      .def_readwrite("tau", &sim::ScenarioConfig::tau)
      .def_readwrite("fap_cache_capacity", &sim::ScenarioConfig::fap_cache_capacity)
      .def_readwrite("warmup_requests_per_fue", &sim::ScenarioConfig::warmup_requests_per_fue)
      .def_readwrite("requests_per_fue", &sim::ScenarioConfig::requests_per_fue)
      .def_readwrite("mc_trials", &sim::ScenarioConfig::mc_trials)
      .def_readwrite("cluster_mc_trials", &sim::ScenarioConfig::cluster_mc_trials)
      .def_readwrite("underlay_drops", &sim::ScenarioConfig::underlay_drops)
      .def("__eq__", [](const sim::ScenarioConfig& a, const sim::ScenarioConfig& b) { return a == b; });

  m.def("sweep_parameters", &sim::sweep_parameters);

  // Scenario runs --------------------------------------------------------
  m.def(
      "run_scenario",
      [](const sim::ScenarioConfig& c) {
        sim::MetricsReport r;
        {
          py::gil_scoped_release release;
          r = sim::run_scenario(c);
        }
        return report_dict(r);
      },
      py::arg("config"));
  m.def(
      "sweep",
      [](const sim::ScenarioConfig& c, const std::string& parameter, const std::vector<double>& grid) {
        std::vector<sim::SweepPoint> pts;
        {
          py::gil_scoped_release release;
          pts = sim::sweep(c, parameter, grid);
        }
        py::list points;
        for (const auto& p : pts) {
          auto d = report_dict(p.report);
          d["value"] = p.value;
          points.append(d);
        }
        py::dict out;
        out["points"] = points;
        out["sweep_csv"] = csv::sweep_csv(parameter, pts);
        return out;
      },
      py::arg("config"), py::arg("parameter"), py::arg("grid"));
  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = 0;
        {
          py::gil_scoped_release release;
          code = cli::run_command(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));

  // Geometry and channel -------------------------------------------------
  m.def(
      "sample_ppp",
      [](double density, double width, double height, std::uint64_t seed) {
        Rng rng = make_rng(seed, "python-ppp");
        std::vector<std::pair<double, double>> out;
        for (const auto& p : geometry::sample_ppp(geometry::NodeKind::Fue, density, {width, height}, rng).positions)
          out.emplace_back(p.x, p.y);
        return out;
      },
      py::arg("density"), py::arg("width"), py::arg("height"), py::arg("seed"));
  m.def(
      "fap_adjacency",
      [](const std::vector<std::pair<double, double>>& points, const std::string& topology) {
        geometry::NodeSet faps{geometry::NodeKind::Fap, {}, 0.0};
        for (const auto& [x, y] : points) faps.positions.push_back({x, y});
        const auto mode = parse_enum<geometry::FapTopology>(
            topology, {{"mesh", geometry::FapTopology::Mesh}, {"tree", geometry::FapTopology::Tree}});
        std::vector<std::pair<std::size_t, std::size_t>> edges;
        const auto adjacency = geometry::build_fap_adjacency(faps, mode);
        for (const auto& e : adjacency.edges()) edges.emplace_back(e.a, e.b);
        return edges;
      },
      py::arg("points"), py::arg("topology"));
  m.def(
      "path_gain",
      [](double d, double alpha, double reference_gain_db) {
        channel::LinkBudget b;
        b.path_loss_exponent = alpha;
        b.reference_gain_db = reference_gain_db;
        return channel::path_gain(d, b);
      },
      py::arg("distance"), py::arg("alpha") = 4.0, py::arg("reference_gain_db") = 0.0);
  m.def(
      "fading_samples",
      [](const std::string& kind, double k_factor_db, std::size_t n, std::uint64_t seed) {
        const auto model = kind == "rayleigh" ? channel::FadingModel::rayleigh()
                           : kind == "rician"  ? channel::FadingModel::rician(k_factor_db)
                                               : throw ValidationError("kind", "expected rayleigh or rician");
        Rng rng = make_rng(seed, "python-fading");
        std::vector<double> out(n);
        for (auto& x : out) x = channel::fading_sample(model, rng);
        return out;
      },
      py::arg("kind"), py::arg("k_factor_db") = 0.0, py::arg("n"), py::arg("seed"));
  m.def(
      "sinr",
      [](double s, const std::vector<double>& interferers, double noise) { return channel::sinr(s, interferers, noise); },
      py::arg("signal"), py::arg("interferers"), py::arg("noise"));
  m.def("rate", &channel::rate, py::arg("sinr"));

  // Mode selection -------------------------------------------------------
  py::class_<mode::UeContext>(m, "UeContext")
      .def(py::init([](mode::UeId id, double x, double y, double speed, bool d2d_capable, bool relay_willing,
                       bool voice, std::optional<mode::ContentId> content) {
             mode::UeContext u;
             u.id = id;
             u.position = {x, y};
             u.speed = speed;
             u.d2d_capable = d2d_capable;
             u.relay_willing = relay_willing;
             u.qos = voice ? mode::Qos::RealTimeVoice : mode::Qos::Packet;
             u.requested_content = content;
             return u;
           }),
           py::arg("id"), py::arg("x"), py::arg("y"), py::arg("speed") = 0.0, py::arg("d2d_capable") = true,
           py::arg("relay_willing") = false, py::arg("voice") = false, py::arg("requested_content") = py::none());
  m.def(
      "select_mode",
      [](const mode::UeContext& src, const mode::UeContext& dst, const std::vector<mode::UeContext>& relays,
         bool content_local, bool lc_feasible, std::optional<std::size_t> serving_fap, double d1, double d2, double d3,
         double speed_threshold) {
        const mode::ModeThresholds th{d1, d2, d3, speed_threshold};
        const auto r = mode::select_mode(src, dst, th, relays, content_local, lc_feasible, serving_fap);
        py::dict d;
        d["mode"] = mode::to_string(r.mode);
        d["reason"] = mode::to_string(r.reason);
        d["relay_id"] = r.relay_id;
        d["serving_fap"] = r.serving_fap;
        return d;
      },
      py::arg("src"), py::arg("dst"), py::arg("relays") = std::vector<mode::UeContext>{},
      py::arg("content_available_locally") = false, py::arg("local_coordination_feasible") = false,
      py::arg("serving_fap") = py::none(), py::arg("d1") = 50.0, py::arg("d2") = 150.0, py::arg("d3") = 500.0,
      py::arg("speed_threshold") = 10.0);

  // Caching --------------------------------------------------------------
  py::class_<caching::EdgeCache>(m, "EdgeCache")
      .def(py::init([](std::size_t capacity, const std::string& policy) {
             const auto p = parse_enum<caching::EvictionPolicy>(
                 policy, {{"fifo", caching::EvictionPolicy::Fifo}, {"lru", caching::EvictionPolicy::Lru},
                          {"lfu", caching::EvictionPolicy::Lfu}});
             return caching::EdgeCache(0, capacity, p);
           }),
           py::arg("capacity"), py::arg("policy"))
      .def(
          "request",
          [](caching::EdgeCache& c, caching::ContentId item) {
            const auto r = c.request(item);
            return py::make_tuple(r.hit, r.evicted);
          },
          py::arg("item"))
      .def("contents", &caching::EdgeCache::contents)
      .def("__contains__", &caching::EdgeCache::contains)
      .def("__len__", &caching::EdgeCache::size)
      .def_property_readonly("hits", &caching::EdgeCache::hits)
      .def_property_readonly("misses", &caching::EdgeCache::misses);
  m.def(
      "zipf_stream",
      [](std::size_t n_items, double exponent, std::size_t length, std::uint64_t seed) {
        Rng rng = make_rng(seed, "python-zipf");
        return caching::zipf_stream({n_items, exponent, 1.0}, length, rng);
      },
      py::arg("n_items"), py::arg("exponent"), py::arg("length"), py::arg("seed"));

  // Coordination ---------------------------------------------------------
  m.def(
      "coac_assign",
      [](const std::vector<std::vector<double>>& gains, std::size_t n, double eps) {
        return coordination::coac_assign(gains, n, eps).occupied;
      },
      py::arg("cross_gains"), py::arg("n_subchannels"), py::arg("epsilon"));
  m.def(
      "drac_assign",
      [](std::size_t links, std::size_t n, double eps, std::uint64_t seed) {
        Rng rng = make_rng(seed, "python-drac");
        return coordination::drac_assign(links, n, eps, rng).occupied;
      },
      py::arg("n_links"), py::arg("n_subchannels"), py::arg("epsilon"), py::arg("seed"));
  m.def(
      "sffr_allocate",
      [](std::size_t n_blocks, double eta, const std::vector<std::tuple<std::uint32_t, bool, bool>>& ues) {
        std::vector<coordination::SffrUe> list;
        for (const auto& [id, high, hpn] : ues) {
          list.push_back({id, high ? coordination::QosClass::High : coordination::QosClass::Low,
                          hpn ? coordination::ServingTier::Hpn : coordination::ServingTier::Fap});
        }
        const auto plan = coordination::sffr_allocate(n_blocks, eta, list);
        py::dict d;
        d["reserved"] = plan.reserved;
        d["shared"] = plan.shared;
        d["block_users"] = plan.block_users;
        d["isolated"] = coordination::sffr_isolated(plan, list);
        return d;
      },
      py::arg("n_blocks"), py::arg("eta"), py::arg("ues"));
  m.def(
      "evaluate_underlay",
      [](const std::string& scheduler, double epsilon, double lambda_ratio, double gamma_db, std::size_t drops,
         std::size_t trials, std::uint64_t seed) {
        coordination::UnderlayParams p;
        p.d2d_density = lambda_ratio * p.hpn_density;
        const auto s = parse_enum<coordination::Scheduler>(
            scheduler, {{"coac", coordination::Scheduler::Coac}, {"drac", coordination::Scheduler::Drac}});
        coordination::UnderlayResult r;
        {
          py::gil_scoped_release release;
          r = coordination::evaluate_underlay(p, s, epsilon, gamma_db, drops, trials, seed);
        }
        py::dict d;
        d["cellular"] = estimate(r.cellular);
        d["d2d"] = estimate(r.d2d);
        return d;
      },
      py::arg("scheduler"), py::arg("epsilon"), py::arg("lambda_ratio") = 100.0, py::arg("gamma_db") = 0.0,
      py::arg("drops") = 4, py::arg("trials") = 1000, py::arg("seed") = 1);

  // Load accounting ------------------------------------------------------
  m.def(
      "fronthaul_load",
      [](const std::vector<std::pair<std::string, std::string>>& requests, std::uint64_t payload_bits,
         std::uint64_t item_bits, double iq_expansion_factor) {
        std::vector<sim::RequestRecord> records;
        std::uint64_t index = 0;
        for (const auto& [mode_name, tier_name] : requests) {
          const auto md = parse_enum<mode::Mode>(mode_name, {{"D2D", mode::Mode::D2D},
                                                             {"FueRelay", mode::Mode::FueRelay},
                                                             {"LocalCoordination", mode::Mode::LocalCoordination},
                                                             {"GlobalCRAN", mode::Mode::GlobalCRAN},
                                                             {"HPN", mode::Mode::HPN}});
          const auto tier = parse_enum<caching::Tier>(
              tier_name, {{"fue", caching::Tier::AtFue}, {"fap", caching::Tier::AtFap}, {"cloud", caching::Tier::CloudOnly}});
          records.push_back({index++, 0, 0, md, tier});
        }
        return load_dict(sim::fronthaul_load(records, {payload_bits, item_bits, iq_expansion_factor}));
      },
      py::arg("requests"), py::arg("payload_bits") = 8'000'000, py::arg("item_bits") = 8'000'000,
      py::arg("iq_expansion_factor") = 16.0);
}
