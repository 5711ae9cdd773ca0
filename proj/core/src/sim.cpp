#include "gwp/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <random>

#include "gwp/error.hpp"

namespace gwp {

void SimConfig::validate() const {
  if (packet_size_bits == 0) throw ConfigError("packet size must be > 0");
  if (!(warmup_s >= 0.0) || !(warmup_s < duration_s)) throw ConfigError("need 0 <= warmup < duration");
  if (!(frame_overhead_s >= 0.0)) throw ConfigError("frame overhead must be >= 0");
  if (!(rate_update_period_s > 0.0)) throw ConfigError("rate update period must be > 0");
  if (!(min_link_distance_m > 0.0)) throw ConfigError("minimum link distance must be > 0");
  for (std::size_t i = 1; i < tx_power_schedule.size(); ++i) {
    if (!(tx_power_schedule[i].first > tx_power_schedule[i - 1].first)) {
      throw ConfigError("transmission power schedule times must increase");
    }
  }
  codel.validate();
}

double SimConfig::tx_power_at(double t, double fallback_dbm) const {
  if (tx_power_schedule.empty()) return fallback_dbm;
  auto it = std::upper_bound(tx_power_schedule.begin(), tx_power_schedule.end(), t,
                             [](double v, const std::pair<double, double>& s) { return v < s.first; });
  if (it == tx_power_schedule.begin()) return tx_power_schedule.front().second;
  return std::prev(it)->second;
}

double SimResult::mean_throughput_bps() const {
  if (throughput_bps.empty()) return 0.0;
  return std::accumulate(throughput_bps.begin(), throughput_bps.end(), 0.0) /
         static_cast<double>(throughput_bps.size());
}

double SimResult::mean_delay_s() const {
  if (delays_s.empty()) return std::numeric_limits<double>::quiet_NaN();
  return std::accumulate(delays_s.begin(), delays_s.end(), 0.0) / static_cast<double>(delays_s.size());
}

namespace {

enum class EventKind : std::uint8_t { RateUpdate, Arrival, TxEnd };

struct Event {
  double time;
  std::uint64_t seq;
  EventKind kind;
  std::size_t flow;

  bool operator>(const Event& o) const { return time != o.time ? time > o.time : seq > o.seq; }
};

// Independent stream per (seed, stream id).
std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32), 0x67775053u};
  return std::mt19937_64(seq);
}

constexpr std::uint64_t kMediumStream = 0xFFFFFFFFull;

struct Station {
  const FapTrack* fap = nullptr;
  CodelQueue queue;
  std::mt19937_64 rng;
  std::exponential_distribution<double> interarrival;
  std::optional<double> rate_bps;
  FlowResult stats;
};

class Simulation {
 public:
  Simulation(const Scenario& scenario, const Trajectory& gw_track, const SimConfig& config)
      : scenario_(scenario), gw_track_(gw_track), config_(config), medium_rng_(make_stream(config.seed, kMediumStream)) {
    config_.validate();
    if (!gw_track_.covers(0.0, config_.duration_s)) {
      throw ConfigError("gateway track does not cover the simulated interval [0, duration]");
    }
    for (const auto& fap : scenario_.faps) {
      if (!fap.trajectory.covers(0.0, config_.duration_s)) {
        throw ConfigError("trajectory of FAP " + std::to_string(fap.id()) + " does not cover [0, duration]");
      }
    }
    stations_.reserve(scenario_.faps.size());
    for (const auto& fap : scenario_.faps) {
      Station st{&fap, CodelQueue(config_.codel), make_stream(config_.seed, static_cast<std::uint64_t>(fap.id())),
                 std::exponential_distribution<double>(
                     fap.offered_bps > 0.0 ? fap.offered_bps / config_.packet_size_bits : 1.0),
                 std::nullopt, FlowResult{}};
      st.stats.fap_id = fap.id();
      st.stats.offered_bps = fap.offered_bps;
      stations_.push_back(std::move(st));
    }
    const double window = config_.duration_s - config_.warmup_s;
    result_.warmup_s = config_.warmup_s;
    result_.duration_s = config_.duration_s;
    result_.throughput_bps.assign(static_cast<std::size_t>(std::ceil(window - 1e-9)), 0.0);
  }

  SimResult run() {
    for (double t = 0.0; t < config_.duration_s; t += config_.rate_update_period_s) {
      push(t, EventKind::RateUpdate, 0);
    }
    for (std::size_t i = 0; i < stations_.size(); ++i) {
      if (stations_[i].fap->offered_bps > 0.0) schedule_arrival(i, 0.0);
    }

    while (!events_.empty()) {
      const Event ev = events_.top();
      if (ev.time > config_.duration_s) break;
      events_.pop();
      now_ = ev.time;
      switch (ev.kind) {
        case EventKind::RateUpdate:
          update_rates();
          break;
        case EventKind::Arrival:
          on_arrival(ev.flow);
          break;
        case EventKind::TxEnd:
          on_tx_end();
          break;
      }
      try_start();
    }
    finish();
    return std::move(result_);
  }

 private:
  void push(double t, EventKind kind, std::size_t flow) { events_.push({t, next_seq_++, kind, flow}); }

  void schedule_arrival(std::size_t i, double from) {
    Station& st = stations_[i];
    push(from + st.interarrival(st.rng), EventKind::Arrival, i);
  }

  void update_rates() {
    const double tx = config_.tx_power_at(now_, scenario_.radio.max_tx_power_dbm);
    const Point3 gw = gw_track_.position_at(now_);
    for (auto& st : stations_) {
      const double d = std::max(distance(st.fap->trajectory.position_at(now_), gw), config_.min_link_distance_m);
      const auto mcs = rate_for_snr(scenario_.mcs_table, snr_db(tx, d, scenario_.radio));
      st.rate_bps = mcs ? std::optional<double>(mcs->data_rate_bps) : std::nullopt;
    }
  }

  void on_arrival(std::size_t i) {
    Station& st = stations_[i];
    ++st.stats.generated;
    st.queue.enqueue({now_, now_, config_.packet_size_bits}, now_);
    schedule_arrival(i, now_);
  }

  void on_tx_end() {
    Station& st = stations_[current_flow_];
    ++st.stats.delivered;
    if (now_ >= config_.warmup_s && now_ < config_.duration_s) {
      const auto bin = static_cast<std::size_t>(now_ - config_.warmup_s);
      if (bin < result_.throughput_bps.size()) result_.throughput_bps[bin] += current_packet_.size_bits;
      st.stats.measured_bits += current_packet_.size_bits;
    }
    if (config_.record_delays && current_packet_.generation_time_s >= config_.warmup_s) {
      result_.delays_s.push_back(now_ - current_packet_.generation_time_s);
    }
    busy_ = false;
  }

  // Work conserving: never leaves the medium idle while a linked station has
  // a packet to send.
  void try_start() {
    if (busy_) return;
    while (true) {
      ready_.clear();
      for (std::size_t i = 0; i < stations_.size(); ++i) {
        if (stations_[i].rate_bps && !stations_[i].queue.empty()) ready_.push_back(i);
      }
      if (ready_.empty()) return;
      const std::size_t pick =
          ready_.size() == 1 ? ready_.front()
                             : ready_[std::uniform_int_distribution<std::size_t>(0, ready_.size() - 1)(medium_rng_)];
      Station& st = stations_[pick];
      const std::optional<QueuedPacket> packet = st.queue.dequeue(now_);
      if (!packet) continue;
      const double airtime = config_.frame_overhead_s + packet->size_bits / *st.rate_bps;
      busy_ = true;
      current_flow_ = pick;
      current_packet_ = *packet;
      ++result_.frames_sent;
      const double end = now_ + airtime;
      result_.medium_busy_s += std::min(end, config_.duration_s) - now_;
      push(end, EventKind::TxEnd, pick);
      return;
    }
  }

  void finish() {
    const double window = config_.duration_s - config_.warmup_s;
    for (std::size_t i = 0; i < stations_.size(); ++i) {
      Station& st = stations_[i];
      st.stats.codel_drops = st.queue.codel_drops();
      st.stats.tail_drops = st.queue.tail_drops();
      st.stats.in_queue_at_end = st.queue.size() + ((busy_ && current_flow_ == i) ? 1 : 0);
      st.stats.received_bps = static_cast<double>(st.stats.measured_bits) / window;
      result_.flows.push_back(st.stats);
    }
    // The last bin may be shorter than a second.
    if (!result_.throughput_bps.empty()) {
      const double last_len = window - static_cast<double>(result_.throughput_bps.size() - 1);
      if (last_len > 0.0 && last_len < 1.0) result_.throughput_bps.back() /= last_len;
    }
  }

  const Scenario& scenario_;
  const Trajectory& gw_track_;
  SimConfig config_;
  std::mt19937_64 medium_rng_;
  std::vector<Station> stations_;
  std::priority_queue<Event, std::vector<Event>, std::greater<>> events_;
  std::uint64_t next_seq_ = 0;
  double now_ = 0.0;
  bool busy_ = false;
  std::size_t current_flow_ = 0;
  QueuedPacket current_packet_;
  std::vector<std::size_t> ready_;
  SimResult result_;
};

}  // namespace

SimResult run_sim(const Scenario& scenario, const Trajectory& gw_track, const SimConfig& config) {
  return Simulation(scenario, gw_track, config).run();
}

SingleLinkPrediction analytic_single_link_oracle(double link_rate_bps, double offered_bps, double packet_size_bits) {
  if (!(link_rate_bps > 0.0)) throw DomainError("link rate must be > 0");
  if (!(packet_size_bits > 0.0)) throw DomainError("packet size must be > 0");
  if (offered_bps >= link_rate_bps) return {link_rate_bps, std::nullopt};
  const double service = packet_size_bits / link_rate_bps;
  const double rho = std::max(0.0, offered_bps) / link_rate_bps;
  return {std::max(0.0, offered_bps), service + rho * service / (2.0 * (1.0 - rho))};
}

}  // namespace gwp
