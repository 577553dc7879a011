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

#include "frangine/csv.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <stdexcept>

namespace frangine::csv {

std::string format_number(double value) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return {buf.data(), ptr};
}

namespace {

std::string num(double v) { return format_number(v); }
std::string num(std::uint64_t v) { return std::to_string(v); }

template <typename... Ts>
std::string join(const Ts&... parts) {
  std::string out;
  ((out += (out.empty() ? "" : ","), out += parts), ...);
  return out;
}

}  // namespace

std::string metrics_header() {
  std::string h =
      "architecture,seed,n_hpn,n_fap,n_fue,n_requests,"
      "spatial_average_rate,spatial_average_rate_hw,cellular_average_rate,cellular_average_rate_hw,"
      "cellular_success,cellular_success_hw,d2d_success,d2d_success_hw,"
      "hit_ratio_fue,hit_ratio_fap,hit_ratio_edge,"
      "n_clusters,mean_cluster_size,cluster_rate_sum,total_power_w,energy_efficiency,"
      "fronthaul_bits,fronthaul_payload_bits,backhaul_bits,bbu_processed_bits,edge_processed_bits,"
      "edge_served_bits,delivered_bits";
  for (std::size_t m = 0; m < mode::kModeCount; ++m) {
    h += ",mode_";
    h += mode::to_string(static_cast<mode::Mode>(m));
  }
  return h + ",sffr_isolated";
}

std::string metrics_row(const sim::MetricsReport& r) {
  const auto& l = r.load;
  std::string row = join(std::string(sim::to_string(r.architecture)), num(r.seed), num(std::uint64_t{r.n_hpn}),
                         num(std::uint64_t{r.n_fap}), num(std::uint64_t{r.n_fue}), num(std::uint64_t{r.n_requests}),
                         num(r.spatial_average_rate.mean), num(r.spatial_average_rate.half_width),
                         num(r.cellular_average_rate.mean), num(r.cellular_average_rate.half_width),
                         num(r.cellular_success_probability.value), num(r.cellular_success_probability.half_width),
                         num(r.d2d_success_probability.value), num(r.d2d_success_probability.half_width),
                         num(r.hit_ratio_fue), num(r.hit_ratio_fap), num(r.hit_ratio_edge),
                         num(std::uint64_t{r.partition.blocks.size()}), num(r.partition.mean_block_size()),
                         num(r.cluster_rate_sum), num(r.power.total()), num(r.energy_efficiency));
  row += "," + join(num(l.fronthaul_bits), num(l.fronthaul_payload_bits), num(l.backhaul_bits),
                    num(l.bbu_processed_bits), num(l.edge_processed_bits), num(l.edge_served_bits),
                    num(l.delivered_bits));
  for (const auto c : l.mode_counts) row += "," + num(c);
  return row + "," + (r.sffr_isolated ? "true" : "false");
}

std::string metrics_csv(std::span<const sim::MetricsReport> reports) {
  std::string out = metrics_header() + "\n";
  for (const auto& r : reports) out += metrics_row(r) + "\n";
  return out;
}

std::string ledger_csv(const sim::LoadReport& load) {
  std::string out =
      "request_index,fue,mode,tier,payload_bits,fronthaul_bits,fronthaul_payload_bits,backhaul_bits,"
      "bbu_processed_bits,edge_processed_bits,edge_served_bits\n";
  for (const auto& row : load.ledger) {
    out += join(num(row.request_index), num(std::uint64_t{row.fue}), std::string(mode::to_string(row.mode)),
                std::string(caching::to_string(row.tier)), num(row.payload_bits), num(row.fronthaul_bits),
                num(row.fronthaul_payload_bits), num(row.backhaul_bits), num(row.bbu_processed_bits),
                num(row.edge_processed_bits), num(row.edge_served_bits)) +
           "\n";
  }
  return out;
}

std::string cache_trace_csv(std::span<const sim::CacheTraceRow> rows) {
  std::string out = "request_index,content_id,tier_hit,evicted_id\n";
  for (const auto& row : rows) {
    out += join(num(row.request_index), num(std::uint64_t{row.content_id}),
                std::string(caching::to_string(row.tier_hit)),
                row.evicted_id ? num(std::uint64_t{*row.evicted_id}) : std::string()) +
           "\n";
  }
  return out;
}

std::string clusters_csv(const coordination::CoalitionPartition& partition) {
  std::string out = "block_id,fap_id\n";
  for (std::size_t b = 0; b < partition.blocks.size(); ++b) {
    for (const auto fap : partition.blocks[b]) out += join(num(std::uint64_t{b}), num(std::uint64_t{fap})) + "\n";
  }
  return out;
}

std::string subchannels_csv(const coordination::SubchannelAssignment& assignment) {
  std::string out = "link_id,subchannel_id\n";
  for (std::size_t link = 0; link < assignment.occupied.size(); ++link) {
    for (const auto s : assignment.occupied[link]) {
      out += join(num(std::uint64_t{link}), num(std::uint64_t{s})) + "\n";
    }
  }
  return out;
}

std::string sweep_csv(const std::string& parameter, std::span<const sim::SweepPoint> points) {
  std::string out = "parameter,value," + metrics_header() + "\n";
  for (const auto& p : points) out += parameter + "," + num(p.value) + "," + metrics_row(p.report) + "\n";
  return out;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) {
      std::filesystem::remove(tmp);
      throw std::runtime_error("write failed for '" + tmp.string() + "'");
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace frangine::csv
