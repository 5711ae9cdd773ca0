#include "gwp/rf.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "gwp/error.hpp"

namespace gwp {

void RadioConfig::validate() const {
  if (!(carrier_frequency_hz > 0.0)) throw DomainError("carrier_frequency must be > 0");
  if (!(max_tx_power_dbm >= 0.0)) throw DomainError("max_tx_power must be >= 0 dBm");
  if (!(speed_of_light_mps > 0.0)) throw DomainError("speed_of_light must be > 0");
  if (!(max_channel_capacity_bps > 0.0)) throw DomainError("max_channel_capacity must be > 0");
  if (!std::isfinite(noise_floor_dbm)) throw DomainError("noise_floor must be finite");
}

McsTable::McsTable(std::vector<McsEntry> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw ConfigError("MCS table is empty");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (e.index < 0) throw ConfigError("MCS index must be >= 0");
    if (!(e.data_rate_bps > 0.0) || !std::isfinite(e.data_rate_bps)) {
      throw ConfigError("MCS " + std::to_string(e.index) + ": data rate must be > 0");
    }
    if (!std::isfinite(e.min_snr_db)) {
      throw ConfigError("MCS " + std::to_string(e.index) + ": min SNR must be finite");
    }
    if (i == 0) continue;
    const auto& prev = entries_[i - 1];
    if (e.index <= prev.index || e.data_rate_bps <= prev.data_rate_bps ||
        e.min_snr_db <= prev.min_snr_db) {
      throw ConfigError("MCS table not strictly increasing at index " + std::to_string(e.index));
    }
  }
}

McsTable McsTable::vht160_single_stream() {
  return McsTable({
      {0, 58.5e6, 12.0},
      {1, 117.0e6, 15.0},
      {2, 175.5e6, 17.0},
      {3, 234.0e6, 20.0},
      {4, 351.0e6, 24.0},
      {5, 468.0e6, 28.0},
      {6, 526.5e6, 29.0},
      {7, 585.0e6, 30.0},
      {8, 702.0e6, 35.0},
      {9, 780.0e6, 37.0},
  });
}

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_number(const std::string& field, const std::string& source, std::size_t line) {
  const std::string t = trim(field);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(t, &used);
  } catch (const std::exception&) {
    throw ParseError(source, line, "not a number: '" + t + "'");
  }
  if (used != t.size()) throw ParseError(source, line, "not a number: '" + t + "'");
  return value;
}

}  // namespace

McsTable McsTable::parse(std::istream& in, const std::string& source_name) {
  std::vector<McsEntry> rows;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (rows.empty() && line.rfind("index", 0) == 0) continue;  // header

    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
    if (fields.size() != 3) {
      throw ParseError(source_name, line_no, "expected 3 columns, got " + std::to_string(fields.size()));
    }
    const double index = parse_number(fields[0], source_name, line_no);
    if (index != std::floor(index)) throw ParseError(source_name, line_no, "MCS index must be an integer");
    rows.push_back({static_cast<int>(index), parse_number(fields[1], source_name, line_no),
                    parse_number(fields[2], source_name, line_no)});
  }
  try {
    return McsTable(std::move(rows));
  } catch (const ConfigError& e) {
    throw ConfigError(source_name + ": " + e.what());
  }
}

McsTable McsTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open MCS table " + path.string());
  return parse(in, path.string());
}

void McsTable::write(std::ostream& out) const {
  out << "index,data_rate_bps,min_snr_db\n";
  for (const auto& e : entries_) {
    out << e.index << ',' << static_cast<long long>(std::llround(e.data_rate_bps)) << ',' << e.min_snr_db
        << '\n';
  }
}

double link_constant_db(const RadioConfig& config) {
  return -20.0 * std::log10(config.carrier_frequency_hz) -
         20.0 * std::log10(4.0 * std::numbers::pi / config.speed_of_light_mps) - config.noise_floor_dbm;
}

double fspl_db(double distance_m, const RadioConfig& config) {
  if (!(distance_m > 0.0)) throw DomainError("path loss needs a positive distance");
  return 20.0 * std::log10(distance_m) + 20.0 * std::log10(config.carrier_frequency_hz) +
         20.0 * std::log10(4.0 * std::numbers::pi / config.speed_of_light_mps);
}

double snr_db(double tx_power_dbm, double distance_m, const RadioConfig& config) {
  return tx_power_dbm - fspl_db(distance_m, config) - config.noise_floor_dbm;
}

double max_distance(double tx_power_dbm, double min_snr_db, const RadioConfig& config) {
  return std::pow(10.0, (link_constant_db(config) + tx_power_dbm - min_snr_db) / 20.0);
}

const McsEntry& min_mcs_for_demand(const McsTable& table, double demand_bps) {
  if (!(demand_bps > 0.0)) throw DomainError("demand must be > 0 bit/s");
  const auto& rows = table.entries();
  const auto it = std::find_if(rows.begin(), rows.end(),
                               [&](const McsEntry& e) { return e.data_rate_bps >= demand_bps; });
  if (it == rows.end()) throw DemandUnsatisfiable(demand_bps, table.highest().data_rate_bps);
  return *it;
}

std::optional<McsEntry> rate_for_snr(const McsTable& table, double snr) {
  const auto& rows = table.entries();
  // Thresholds are strictly increasing: the first row above snr bounds the answer.
  const auto above =
      std::upper_bound(rows.begin(), rows.end(), snr, [](double s, const McsEntry& e) { return s < e.min_snr_db; });
  if (above == rows.begin()) return std::nullopt;
  return *std::prev(above);
}

}  // namespace gwp
