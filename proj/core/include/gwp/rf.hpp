#pragma once

// Link-budget arithmetic for a free-space channel and the MCS table that maps
// SNR thresholds to PHY data rates.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace gwp {

struct RadioConfig {
  double carrier_frequency_hz = 5250e6;
  double noise_floor_dbm = -85.0;
  double max_tx_power_dbm = 30.0;
  double speed_of_light_mps = 3e8;
  double max_channel_capacity_bps = 780e6;

  // Throws DomainError when a field violates its invariant.
  void validate() const;
};

struct McsEntry {
  int index = 0;
  double data_rate_bps = 0.0;
  double min_snr_db = 0.0;

  friend bool operator==(const McsEntry&, const McsEntry&) = default;
};

// Non-empty list of MCS entries, strictly increasing in index, data rate and
// minimum SNR. Construction rejects anything else.
class McsTable {
 public:
  explicit McsTable(std::vector<McsEntry> entries);

  // Built-in 802.11ac 160 MHz / 1 SS / 800 ns GI table (MCS 0-9).
  static McsTable vht160_single_stream();

  // CSV with columns index,data_rate_bps,min_snr_db. '#' starts a comment;
  // a header line naming the columns is accepted. Throws ParseError or
  // ConfigError.
  static McsTable parse(std::istream& in, const std::string& source_name = "<mcs-table>");
  static McsTable load(const std::filesystem::path& path);

  void write(std::ostream& out) const;

  const std::vector<McsEntry>& entries() const noexcept { return entries_; }
  const McsEntry& lowest() const noexcept { return entries_.front(); }
  const McsEntry& highest() const noexcept { return entries_.back(); }
  std::size_t size() const noexcept { return entries_.size(); }

  friend bool operator==(const McsTable&, const McsTable&) = default;

 private:
  std::vector<McsEntry> entries_;
};

// Constant K of the link budget: snr = tx_power + K - 20 log10(d).
double link_constant_db(const RadioConfig& config);

// Free-space path loss in dB. Throws DomainError for distance <= 0.
double fspl_db(double distance_m, const RadioConfig& config);

double snr_db(double tx_power_dbm, double distance_m, const RadioConfig& config);

// Largest distance at which tx_power_dbm still yields min_snr_db; the exact
// inverse of snr_db.
double max_distance(double tx_power_dbm, double min_snr_db, const RadioConfig& config);

// Lowest MCS whose data rate carries demand_bps. Throws DomainError for
// demand <= 0 and DemandUnsatisfiable above the top rate.
const McsEntry& min_mcs_for_demand(const McsTable& table, double demand_bps);

// Highest MCS whose threshold is met; nullopt means no link.
std::optional<McsEntry> rate_for_snr(const McsTable& table, double snr_db);

}  // namespace gwp
