#include "gwp/error.hpp"

#include <sstream>

namespace gwp {

namespace {

std::string unsatisfiable_message(double demand_bps, double max_rate_bps) {
  std::ostringstream os;
  os << "demand unsatisfiable: " << demand_bps << " bit/s exceeds the top MCS rate of "
     << max_rate_bps << " bit/s";
  return os.str();
}

std::string parse_message(const std::string& source, std::size_t line, const std::string& what) {
  std::ostringstream os;
  os << source;
  if (line > 0) os << ":" << line;
  os << ": " << what;
  return os.str();
}

}  // namespace

DemandUnsatisfiable::DemandUnsatisfiable(double demand_bps, double max_rate_bps)
    : std::runtime_error(unsatisfiable_message(demand_bps, max_rate_bps)),
      demand_bps_(demand_bps),
      max_rate_bps_(max_rate_bps) {}

ParseError::ParseError(const std::string& source, std::size_t line, const std::string& what)
    : std::runtime_error(parse_message(source, line, what)), line_(line) {}

}  // namespace gwp

namespace gwp {

namespace {

std::string infeasible_message(double time_s, double max_tx_power_dbm, double best_excess_m) {
  std::ostringstream os;
  os << "no gateway position at t = " << time_s << " s up to " << max_tx_power_dbm
     << " dBm (smallest sphere violation " << best_excess_m << " m)";
  return os.str();
}

}  // namespace

InfeasiblePlacement::InfeasiblePlacement(double time_s, double max_tx_power_dbm, double best_excess_m)
    : std::runtime_error(infeasible_message(time_s, max_tx_power_dbm, best_excess_m)),
      time_s_(time_s),
      best_excess_m_(best_excess_m) {}

}  // namespace gwp
