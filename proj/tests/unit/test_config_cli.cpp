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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "frangine/cli.hpp"
#include "frangine/config.hpp"
#include "frangine/csv.hpp"
#include "frangine/errors.hpp"

using namespace frangine;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("frangine-test-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_file(const fs::path& dir, const std::string& name, const std::string& text) {
  std::ofstream(dir / name) << text;
  return dir / name;
}

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run_command(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string kFast =
    "[region]\nwidth_m = 500\nheight_m = 500\n"
    "[monte_carlo]\ntrials = 200\ncluster_trials = 60\nunderlay_drops = 2\n"
    "[cache]\nwarmup_requests_per_fue = 10\nrequests_per_fue = 4\n";

}  // namespace

TEST_CASE("parse_config") {
  SUBCASE("minimal config fills every default") {
    const auto c = config::parse_config_text("[scenario]\nseed = 9\n[density]\nfap_per_m2 = 2e-5\n");
    sim::ScenarioConfig expected;
    expected.seed = 9;
    expected.fap_density = 2e-5;
    CHECK(c == expected);
  }
  SUBCASE("d1 beyond d2 names thresholds") {
    try {
      config::parse_config_text("[mode]\nd1_m = 200\nd2_m = 100\n");
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      CHECK(e.field() == "thresholds");
    }
  }
  SUBCASE("unknown key reports field and line") {
    try {
      config::parse_config_text("# header\n[scenario]\nseed = 1\nsede = 2\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.field() == "scenario.sede");
      CHECK(e.line() == 4);
    }
  }
  SUBCASE("other parse errors") {
    CHECK_THROWS_AS(config::parse_config_text("[nowhere]\nx = 1\n"), ParseError);
    CHECK_THROWS_AS(config::parse_config_text("seed = 1\n"), ParseError);
    CHECK_THROWS_AS(config::parse_config_text("[scenario]\nseed = -4\n"), ParseError);
    CHECK_THROWS_AS(config::parse_config_text("[scenario]\narchitecture = vran\n"), ParseError);
    CHECK_THROWS_AS(config::parse_config_text("[cache]\ncooperative = maybe\n"), ParseError);
    CHECK_THROWS_AS(config::parse_config_text("[scenario]\nseed = 1\nseed = 2\n"), ParseError);
    CHECK_THROWS_AS(config::parse_config_text("[scenario\nseed = 1\n"), ParseError);
    try {
      config::parse_config_text("[channel]\nk_factor_db = six\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.field() == "channel.k_factor_db");
      CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(config::parse_config("/nonexistent/frangine.ini"), ParseError);
  }
  SUBCASE("emit then parse round-trips") {
    sim::ScenarioConfig c;
    c.seed = 123456789012345ULL;
    c.architecture = sim::Architecture::HCRAN;
    c.fap_topology = geometry::FapTopology::Mesh;
    c.d2d_fading = channel::FadingModel::rayleigh();
    c.cache_policy = caching::EvictionPolicy::Lfu;
    c.scheduler = coordination::Scheduler::Drac;
    c.cooperative_caching = true;
    c.epsilon = 0.1 + 0.2;
    c.fap_density = 1.0 / 3.0 * 1e-4;
    c.budget.noise_power_dbm = -174.0 + 10.0 * std::log10(180e3);
    const auto text = config::emit_config(c);
    CHECK(config::parse_config_text(text) == c);
    CHECK(config::emit_config(config::parse_config_text(text)) == text);
    CHECK(config::parse_config_text(config::emit_config(sim::ScenarioConfig{})) == sim::ScenarioConfig{});
  }
  SUBCASE("every documented key appears in the canonical text") {
    const auto text = config::emit_config(sim::ScenarioConfig{});
    for (const auto& k : config::documented_keys()) {
      CHECK(text.find(k.key + " = " + k.default_value) != std::string::npos);
    }
  }
}

TEST_CASE("csv formatting") {
  CHECK(csv::format_number(0.1) == "0.1");
  CHECK(csv::format_number(1e-5) == "1e-05");
  CHECK(std::stod(csv::format_number(1.0 / 3.0)) == 1.0 / 3.0);
  const auto dir = scratch("atomic");
  csv::write_atomic(dir / "a.csv", "x\n1\n");
  CHECK(slurp(dir / "a.csv") == "x\n1\n");
  CHECK_FALSE(fs::exists(dir / "a.csv.tmp"));
  CHECK_THROWS(csv::write_atomic(dir / "missing" / "a.csv", "x"));
}

TEST_CASE("cli") {
  const auto dir = scratch("cli");
  const auto cfg = write_file(dir, "fast.ini", kFast);

  SUBCASE("validate the shipped config writes nothing") {
    const auto out = scratch("cli-validate");
    const auto r = invoke({"validate", "--config", FRANGINE_SOURCE_DIR "/configs/default.ini"});
    CHECK(r.code == 0);
    CHECK(fs::is_empty(out));
    CHECK(config::parse_config(FRANGINE_SOURCE_DIR "/configs/default.ini") == sim::ScenarioConfig{});
  }
  SUBCASE("show-defaults prints every key") {
    const auto r = invoke({"validate", "--show-defaults"});
    CHECK(r.code == 0);
    CHECK(r.out == config::emit_config(sim::ScenarioConfig{}));
  }
  SUBCASE("run twice gives byte-identical CSVs") {
    const auto a = dir / "a";
    const auto b = dir / "b";
    REQUIRE(invoke({"run", "--config", cfg.string(), "--out", a.string()}).code == 0);
    REQUIRE(invoke({"run", "--config", cfg.string(), "--out", b.string()}).code == 0);
    for (const auto* name : {"metrics.csv", "ledger.csv", "cache_trace.csv", "clusters.csv", "subchannels.csv"}) {
      CHECK(fs::exists(a / name));
      CHECK(slurp(a / name) == slurp(b / name));
    }
    const auto c = dir / "c";
    REQUIRE(invoke({"run", "--config", cfg.string(), "--out", c.string(), "--seed", "77"}).code == 0);
    CHECK(slurp(a / "metrics.csv") != slurp(c / "metrics.csv"));
  }
  SUBCASE("sweep writes sweep.csv") {
    const auto out = dir / "sweep";
    const auto r = invoke({"sweep", "--config", cfg.string(), "--out", out.string(), "--param", "epsilon", "--grid",
                           "0,0.5,1"});
    CHECK(r.code == 0);
    const auto text = slurp(out / "sweep.csv");
    CHECK(std::count(text.begin(), text.end(), '\n') == 4);
  }
  SUBCASE("compare-arch prints the fronthaul ordering") {
    const auto r = invoke({"compare-arch", "--config", cfg.string(), "--out", (dir / "cmp").string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("fronthaul ordering:") != std::string::npos);
  }
  SUBCASE("error exit codes name the problem") {
    const auto bad = write_file(dir, "bad.ini", "[mode]\nd1_m = 300\n");
    auto r = invoke({"run", "--config", bad.string(), "--out", (dir / "x").string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("thresholds") != std::string::npos);
    CHECK_FALSE(fs::exists(dir / "x" / "metrics.csv"));

    const auto typo = write_file(dir, "typo.ini", "[scenario]\nseeds = 3\n");
    r = invoke({"validate", "--config", typo.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("scenario.seeds") != std::string::npos);

    CHECK(invoke({"validate", "--config", (dir / "absent.ini").string()}).code == 2);
    CHECK(invoke({"sweep", "--config", cfg.string(), "--param", "bogus", "--grid", "1"}).code == 2);
    CHECK(invoke({"sweep", "--config", cfg.string(), "--param", "epsilon", "--grid", "0,x"}).code == 2);
    CHECK(invoke({"sweep", "--config", cfg.string(), "--param", "epsilon"}).code == 2);
    CHECK(invoke({"sweep", "--config", cfg.string(), "--param", "epsilon", "--grid", "0,3",
                  "--out", (dir / "y").string()}).code == 2);
    CHECK(invoke({"launch"}).code == 2);
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"run", "--config", cfg.string(), "--trials", "0", "--out", (dir / "z").string()}).code == 2);
  }
  SUBCASE("help exits cleanly") {
    CHECK(invoke({"--help"}).code == 0);
  }
}
