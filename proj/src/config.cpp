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

#include "frangine/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "frangine/csv.hpp"
#include "frangine/errors.hpp"

namespace frangine::config {

namespace {

using sim::ScenarioConfig;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

double to_double(const std::string& field, const std::string& text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ParseError(field, 0, "expected a number, got '" + text + "'");
  return v;
}

std::uint64_t to_uint(const std::string& field, const std::string& text) {
  std::uint64_t v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(field, 0, "expected a non-negative integer, got '" + text + "'");
  }
  return v;
}

int to_int(const std::string& field, const std::string& text) {
  int v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ParseError(field, 0, "expected an integer, got '" + text + "'");
  return v;
}

bool to_bool(const std::string& field, const std::string& text) {
  const auto t = lower(text);
  if (t == "true" || t == "yes" || t == "on" || t == "1") return true;
  if (t == "false" || t == "no" || t == "off" || t == "0") return false;
  throw ParseError(field, 0, "expected true or false, got '" + text + "'");
}

template <typename E>
E to_enum(const std::string& field, const std::string& text, const std::map<std::string, E>& names) {
  if (auto it = names.find(lower(text)); it != names.end()) return it->second;
  std::string options;
  for (const auto& [k, v] : names) options += (options.empty() ? "" : ", ") + k;
  throw ParseError(field, 0, "expected one of {" + options + "}, got '" + text + "'");
}

const std::map<std::string, sim::Architecture> kArchitectures{
    {"cran", sim::Architecture::CRAN}, {"hcran", sim::Architecture::HCRAN}, {"fran", sim::Architecture::FRAN}};
const std::map<std::string, geometry::FapTopology> kTopologies{{"mesh", geometry::FapTopology::Mesh},
                                                               {"tree", geometry::FapTopology::Tree}};
const std::map<std::string, channel::FadingKind> kFading{{"rayleigh", channel::FadingKind::Rayleigh},
                                                         {"rician", channel::FadingKind::RicianK}};
const std::map<std::string, caching::EvictionPolicy> kPolicies{{"fifo", caching::EvictionPolicy::Fifo},
                                                               {"lru", caching::EvictionPolicy::Lru},
                                                               {"lfu", caching::EvictionPolicy::Lfu}};
const std::map<std::string, coordination::Scheduler> kSchedulers{{"coac", coordination::Scheduler::Coac},
                                                                 {"drac", coordination::Scheduler::Drac}};

struct Field {
  std::string section;
  std::string key;
  std::string description;
  std::function<std::string(const ScenarioConfig&)> get;
  std::function<void(ScenarioConfig&, const std::string& field, const std::string& text)> set;
};

#define FRANGINE_DOUBLE(SEC, KEY, MEMBER, DESC)                                              \
  Field{SEC, KEY, DESC, [](const ScenarioConfig& c) { return csv::format_number(c.MEMBER); }, \
        [](ScenarioConfig& c, const std::string& f, const std::string& t) { c.MEMBER = to_double(f, t); }}
#define FRANGINE_UINT(SEC, KEY, MEMBER, DESC)                                                              \
  Field{SEC, KEY, DESC, [](const ScenarioConfig& c) { return std::to_string(c.MEMBER); },                   \
        [](ScenarioConfig& c, const std::string& f, const std::string& t) {                                 \
          c.MEMBER = static_cast<decltype(c.MEMBER)>(to_uint(f, t));                                        \
        }}

const std::vector<Field>& fields() {
  static const std::vector<Field> table{
      FRANGINE_UINT("scenario", "seed", seed, "master seed; every random stream derives from it"),
      Field{"scenario", "architecture", "cran | hcran | fran",
            [](const ScenarioConfig& c) { return lower(sim::to_string(c.architecture)); },
            [](ScenarioConfig& c, const std::string& f, const std::string& t) {
              c.architecture = to_enum(f, t, kArchitectures);
            }},

      FRANGINE_DOUBLE("region", "width_m", region_width_m, "region width, meters"),
      FRANGINE_DOUBLE("region", "height_m", region_height_m, "region height, meters"),

      FRANGINE_DOUBLE("density", "hpn_per_m2", hpn_density, "HPN intensity lambda_M"),
      FRANGINE_DOUBLE("density", "fap_per_m2", fap_density, "F-AP intensity lambda"),
      FRANGINE_DOUBLE("density", "fue_per_m2", fue_density, "F-UE intensity of the scenario population"),
      FRANGINE_DOUBLE("density", "d2d_per_m2", d2d_density, "D2D transmitter intensity lambda_D"),

      FRANGINE_DOUBLE("population", "d2d_capable_fraction", d2d_capable_fraction, "share of D2D-capable F-UEs"),
      FRANGINE_DOUBLE("population", "relay_willing_fraction", relay_willing_fraction,
                      "share of capable F-UEs willing to relay"),
      FRANGINE_DOUBLE("population", "high_speed_fraction", high_speed_fraction,
                      "share of F-UEs above the speed threshold"),
      FRANGINE_DOUBLE("population", "voice_fraction", voice_fraction, "share of real-time voice F-UEs"),
      FRANGINE_DOUBLE("population", "high_qos_fraction", high_qos_fraction, "share of high-QoS F-UEs (S-FFR)"),

      Field{"topology", "fap_links", "mesh | tree",
            [](const ScenarioConfig& c) { return std::string(geometry::to_string(c.fap_topology)); },
            [](ScenarioConfig& c, const std::string& f, const std::string& t) {
              c.fap_topology = to_enum(f, t, kTopologies);
            }},

      FRANGINE_DOUBLE("channel", "path_loss_exponent", budget.path_loss_exponent, "alpha, > 2"),
      FRANGINE_DOUBLE("channel", "reference_gain_db", budget.reference_gain_db, "path gain at 1 m"),
      FRANGINE_DOUBLE("channel", "hpn_tx_power_dbm", budget.hpn_tx_power_dbm, "HPN transmit power"),
      FRANGINE_DOUBLE("channel", "fap_tx_power_dbm", budget.fap_tx_power_dbm, "F-AP transmit power"),
      FRANGINE_DOUBLE("channel", "fue_tx_power_dbm", budget.fue_tx_power_dbm, "F-UE transmit power"),
      FRANGINE_DOUBLE("channel", "noise_power_dbm", budget.noise_power_dbm, "receiver noise power"),
      FRANGINE_DOUBLE("channel", "sinr_threshold_db", budget.sinr_threshold_db, "gamma_th"),
      Field{"channel", "d2d_fading", "rayleigh | rician",
            [](const ScenarioConfig& c) {
              return std::string(c.d2d_fading.kind == channel::FadingKind::RicianK ? "rician" : "rayleigh");
            },
            [](ScenarioConfig& c, const std::string& f, const std::string& t) {
              c.d2d_fading.kind = to_enum(f, t, kFading);
            }},
      FRANGINE_DOUBLE("channel", "k_factor_db", d2d_fading.k_factor_db, "Rician K of D2D links, dB"),
      Field{"channel", "cellular_fading", "rayleigh | rician",
            [](const ScenarioConfig& c) {
              return std::string(c.cellular_fading.kind == channel::FadingKind::RicianK ? "rician" : "rayleigh");
            },
            [](ScenarioConfig& c, const std::string& f, const std::string& t) {
              c.cellular_fading.kind = to_enum(f, t, kFading);
            }},
      FRANGINE_DOUBLE("channel", "cellular_k_factor_db", cellular_fading.k_factor_db,
                      "Rician K of cellular links when rician, dB"),
      FRANGINE_DOUBLE("channel", "d2d_radius_m", d2d_radius_m, "D2D receivers lie within this radius"),

      FRANGINE_DOUBLE("mode", "d1_m", thresholds.d1, "D2D distance threshold D1"),
      FRANGINE_DOUBLE("mode", "d2_m", thresholds.d2, "relay distance threshold D2"),
      FRANGINE_DOUBLE("mode", "d3_m", thresholds.d3, "local coordination threshold D3"),
      FRANGINE_DOUBLE("mode", "speed_threshold_mps", thresholds.speed_threshold, "HPN speed threshold"),
      Field{"mode", "fap_resource_blocks", "free resource blocks per F-AP for admission",
            [](const ScenarioConfig& c) { return std::to_string(c.fap_resource_blocks); },
            [](ScenarioConfig& c, const std::string& f, const std::string& t) { c.fap_resource_blocks = to_int(f, t); }},
      FRANGINE_DOUBLE("mode", "interference_limit_dbm", interference_limit_dbm,
                      "admission limit on uplink power at other F-APs"),

      FRANGINE_UINT("cache", "catalog_items", catalog_items, "catalog size"),
      FRANGINE_DOUBLE("cache", "zipf_exponent", zipf_exponent, "Zipf popularity exponent s"),
      FRANGINE_UINT("cache", "payload_bits", payload_bits, "bits per request and per catalog item"),
      FRANGINE_UINT("cache", "fap_capacity", fap_cache_capacity, "items per F-AP cache"),
      FRANGINE_UINT("cache", "fue_capacity", fue_cache_capacity, "items per F-UE cache"),
      Field{"cache", "policy", "fifo | lru | lfu",
            [](const ScenarioConfig& c) { return lower(caching::to_string(c.cache_policy)); },
            [](ScenarioConfig& c, const std::string& f, const std::string& t) {
              c.cache_policy = to_enum(f, t, kPolicies);
            }},
      Field{"cache", "cooperative", "look up adjacent F-AP caches before the cloud",
            [](const ScenarioConfig& c) { return std::string(c.cooperative_caching ? "true" : "false"); },
            [](ScenarioConfig& c, const std::string& f, const std::string& t) { c.cooperative_caching = to_bool(f, t); }},
      FRANGINE_UINT("cache", "warmup_requests_per_fue", warmup_requests_per_fue, "unmeasured requests that warm caches"),
      FRANGINE_UINT("cache", "requests_per_fue", requests_per_fue, "measured requests per F-UE"),

      FRANGINE_DOUBLE("coordination", "tau", tau, "energy exponent of the cluster utility"),
      FRANGINE_DOUBLE("coordination", "epsilon", epsilon, "D2D spectrum occupation ratio"),
      FRANGINE_DOUBLE("coordination", "eta", eta, "S-FFR reserved fraction"),
      FRANGINE_UINT("coordination", "n_subchannels", n_subchannels, "underlay subchannels"),
      FRANGINE_UINT("coordination", "n_resource_blocks", n_resource_blocks, "S-FFR resource blocks"),
      Field{"coordination", "scheduler", "coac | drac",
            [](const ScenarioConfig& c) { return lower(coordination::to_string(c.scheduler)); },
            [](ScenarioConfig& c, const std::string& f, const std::string& t) {
              c.scheduler = to_enum(f, t, kSchedulers);
            }},
      FRANGINE_DOUBLE("coordination", "p_static_w", p_static_w, "static power per F-AP"),
      FRANGINE_DOUBLE("coordination", "p_tx_w", p_tx_w, "transmit power per F-AP"),
      FRANGINE_DOUBLE("coordination", "p_coord_w", p_coord_w, "power per ordered cooperating F-AP pair"),
      FRANGINE_DOUBLE("coordination", "sleep_fraction", sleep_fraction, "sleep power as a share of static power"),
      FRANGINE_DOUBLE("coordination", "hpn_power_w", hpn_power_w, "power per HPN"),
      FRANGINE_UINT("coordination", "max_block_size", max_block_size, "largest F-AP cluster considered"),

      FRANGINE_UINT("monte_carlo", "trials", mc_trials, "trials per estimator (per drop for the underlay)"),
      FRANGINE_UINT("monte_carlo", "cluster_trials", cluster_mc_trials, "trials per cluster utility"),
      FRANGINE_UINT("monte_carlo", "underlay_drops", underlay_drops, "independent underlay placements"),

      FRANGINE_DOUBLE("fronthaul", "iq_expansion_factor", iq_expansion_factor,
                      "fronthaul bits per payload bit in global C-RAN mode"),
  };
  return table;
}

#undef FRANGINE_DOUBLE
#undef FRANGINE_UINT

/// Line of the first "key =" inside [section], 0 when not found.
std::size_t find_line(std::string_view text, const std::string& section, const std::string& key) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::string current;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    const auto t = trim(line);
    if (t.empty() || t[0] == ';' || t[0] == '#') continue;
    if (t.front() == '[' && t.back() == ']') {
      current = trim(std::string_view(t).substr(1, t.size() - 2));
      continue;
    }
    const auto eq = t.find('=');
    if (eq != std::string::npos && current == section && trim(std::string_view(t).substr(0, eq)) == key) return n;
  }
  return 0;
}

}  // namespace

std::vector<KeyDoc> documented_keys() {
  const ScenarioConfig defaults;
  std::vector<KeyDoc> out;
  for (const auto& f : fields()) out.push_back({f.section, f.key, f.get(defaults), f.description});
  return out;
}

sim::ScenarioConfig parse_config_text(std::string_view text) {
  // The INI reader only understands ';' comments.
  std::string normalized;
  {
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
      const auto t = trim(line);
      normalized += (!t.empty() && t[0] == '#') ? std::string() : line;
      normalized += '\n';
    }
  }

  boost::property_tree::ptree tree;
  try {
    std::istringstream in(normalized);
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ParseError("", e.line(), e.message());
  }

  std::map<std::pair<std::string, std::string>, const Field*> index;
  std::set<std::string> sections;
  for (const auto& f : fields()) {
    index[{f.section, f.key}] = &f;
    sections.insert(f.section);
  }

  ScenarioConfig config;
  for (const auto& [section, body] : tree) {
    if (body.empty()) {
      throw ParseError(section, find_line(text, "", section), "keys must appear inside a [section]");
    }
    if (!sections.contains(section)) {
      throw ParseError(section, 0, "unknown section [" + section + "]");
    }
    for (const auto& [key, value] : body) {
      const std::string name = section + "." + key;
      const auto it = index.find({section, key});
      if (it == index.end()) throw ParseError(name, find_line(text, section, key), "unknown key");
      try {
        it->second->set(config, name, trim(value.data()));
      } catch (const ParseError& e) {
        throw ParseError(name, find_line(text, section, key), e.what() + name.size() + 2);
      }
    }
  }
  config.validate();
  return config;
}

sim::ScenarioConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("config", 0, "cannot read '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

std::string emit_config(const sim::ScenarioConfig& config) {
  std::string out;
  std::string section;
  for (const auto& f : fields()) {
    if (f.section != section) {
      if (!section.empty()) out += '\n';
      section = f.section;
      out += "[" + section + "]\n";
    }
    out += f.key + " = " + f.get(config) + "\n";
  }
  return out;
}

}  // namespace frangine::config
