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

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>

#include "frangine/metrics_sim.hpp"

namespace frangine::csv {

/// Shortest text that parses back to the same double.
std::string format_number(double value);

std::string metrics_header();
std::string metrics_row(const sim::MetricsReport& report);
std::string metrics_csv(std::span<const sim::MetricsReport> reports);

std::string ledger_csv(const sim::LoadReport& load);
std::string cache_trace_csv(std::span<const sim::CacheTraceRow> rows);
std::string clusters_csv(const coordination::CoalitionPartition& partition);
std::string subchannels_csv(const coordination::SubchannelAssignment& assignment);
std::string sweep_csv(const std::string& parameter, std::span<const sim::SweepPoint> points);

/// Writes to a sibling temporary file and renames it into place.
void write_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace frangine::csv
