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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "frangine/metrics_sim.hpp"

namespace frangine::config {

/// One documented configuration key.
struct KeyDoc {
  std::string section;
  std::string key;
  std::string default_value;
  std::string description;
};

/// Every accepted key, in canonical order, with its default.
std::vector<KeyDoc> documented_keys();

/// Parses sectioned key-value text:
///
///   [section]
///   key = value      ; comments start with ';' or '#'
///
/// Keys left out keep their defaults. Unknown sections or keys, duplicate
/// keys and malformed values raise ParseError; the assembled config is then
/// validated, raising ValidationError.
sim::ScenarioConfig parse_config_text(std::string_view text);

/// Reads and parses a file. Throws ParseError when unreadable.
sim::ScenarioConfig parse_config(const std::filesystem::path& path);

/// Canonical text listing every key. parse_config_text(emit_config(c)) == c.
std::string emit_config(const sim::ScenarioConfig& config);

}  // namespace frangine::config
