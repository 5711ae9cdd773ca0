#pragma once

// Discrete-event model of a single-collision-domain star network: Poisson UDP
// sources on the FAPs, one CoDel queue per FAP, and one shared medium that
// sends a frame at a time to the gateway. When the medium frees up it picks a
// backlogged FAP uniformly at random, which gives every station an equal
// long-run share of transmission opportunities (no collisions, no backoff
// timing). Link rates follow the SNR of the current geometry and are refreshed
// on a fixed grid.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gwp/codel.hpp"
#include "gwp/scenario.hpp"
#include "gwp/trajectory.hpp"

namespace gwp {

struct SimConfig {
  std::uint32_t packet_size_bits = 1400 * 8;
  double warmup_s = 30.0;
  double duration_s = 130.0;
  CodelConfig codel;
  std::uint64_t seed = 1;
  // Fixed per-frame cost added to the payload airtime.
  double frame_overhead_s = 0.0;
  // (time, dBm) steps of the common transmission power; empty means the
  // scenario's maximum transmission power.
  std::vector<std::pair<double, double>> tx_power_schedule;
  double rate_update_period_s = 1.0;
  // Distances below this are evaluated at this value.
  double min_link_distance_m = 0.01;
  bool record_delays = true;

  void validate() const;
  double tx_power_at(double t, double fallback_dbm) const;
};

struct FlowResult {
  int fap_id = 0;
  double offered_bps = 0.0;
  std::uint64_t generated = 0;
  std::uint64_t delivered = 0;
  std::uint64_t codel_drops = 0;
  std::uint64_t tail_drops = 0;
  // Queued or on the air when the run ended.
  std::uint64_t in_queue_at_end = 0;
  // Bits delivered inside the measurement window [warmup, duration).
  std::uint64_t measured_bits = 0;
  double received_bps = 0.0;

  friend bool operator==(const FlowResult&, const FlowResult&) = default;
};

struct SimResult {
  double warmup_s = 0.0;
  double duration_s = 0.0;
  // Bits received per second at the gateway, one entry per 1 s bin from warmup.
  std::vector<double> throughput_bps;
  // End-to-end delay of every packet generated after warmup and delivered
  // before the end of the run.
  std::vector<double> delays_s;
  std::vector<FlowResult> flows;
  double medium_busy_s = 0.0;
  std::uint64_t frames_sent = 0;

  double mean_throughput_bps() const;
  // NaN when no delay samples exist.
  double mean_delay_s() const;

  friend bool operator==(const SimResult&, const SimResult&) = default;
};

// Throws ConfigError when gw_track or a FAP trajectory leaves [0, duration]
// uncovered.
SimResult run_sim(const Scenario& scenario, const Trajectory& gw_track, const SimConfig& config);

struct SingleLinkPrediction {
  double throughput_bps = 0.0;
  // nullopt when offered >= link rate (queue-limited, unbounded in theory).
  std::optional<double> mean_delay_s;
};

// M/D/1 prediction for one Poisson flow over a dedicated link.
SingleLinkPrediction analytic_single_link_oracle(double link_rate_bps, double offered_bps, double packet_size_bits);

void write_throughput_csv(std::ostream& out, const SimResult& result);
void write_delays_csv(std::ostream& out, const SimResult& result);
// Per-flow R_i, drop counts and throughput/delay percentiles.
std::string sim_summary_json(const SimResult& result);

}  // namespace gwp
