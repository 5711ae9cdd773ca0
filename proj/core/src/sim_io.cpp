#include <iomanip>
#include <ostream>

#include <json.hpp>

#include "gwp/analysis.hpp"
#include "gwp/sim.hpp"

namespace gwp {

void write_throughput_csv(std::ostream& out, const SimResult& result) {
  const auto precision = out.precision();
  out << "t_s,R_bps\n" << std::setprecision(12);
  for (std::size_t k = 0; k < result.throughput_bps.size(); ++k) {
    out << result.warmup_s + static_cast<double>(k) << ',' << result.throughput_bps[k] << '\n';
  }
  out.precision(precision);
}

void write_delays_csv(std::ostream& out, const SimResult& result) {
  const auto precision = out.precision();
  out << "delay_s\n" << std::setprecision(12);
  for (const double d : result.delays_s) out << d << '\n';
  out.precision(precision);
}

std::string sim_summary_json(const SimResult& result) {
  using nlohmann::json;
  json j;
  j["warmup_s"] = result.warmup_s;
  j["duration_s"] = result.duration_s;
  j["mean_throughput_bps"] = result.mean_throughput_bps();
  j["frames_sent"] = result.frames_sent;
  j["medium_busy_s"] = result.medium_busy_s;
  if (!result.delays_s.empty()) {
    j["mean_delay_s"] = result.mean_delay_s();
    j["delay_p50_s"] = percentile(result.delays_s, 0.5);
    j["delay_p90_s"] = percentile(result.delays_s, 0.9);
  }
  if (!result.throughput_bps.empty()) {
    j["throughput_p50_bps"] = percentile(result.throughput_bps, 0.5);
    j["throughput_p90_bps"] = percentile(result.throughput_bps, 0.9);
  }
  json flows = json::array();
  for (const auto& f : result.flows) {
    flows.push_back({{"fap_id", f.fap_id},
                     {"offered_bps", f.offered_bps},
                     {"received_bps", f.received_bps},
                     {"generated", f.generated},
                     {"delivered", f.delivered},
                     {"codel_drops", f.codel_drops},
                     {"tail_drops", f.tail_drops},
                     {"in_queue_at_end", f.in_queue_at_end}});
  }
  j["flows"] = flows;
  return j.dump(2) + "\n";
}

}  // namespace gwp
