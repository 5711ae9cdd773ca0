#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gwp {

// Argument outside an operation's domain (non-positive distance, empty input,
// p outside (0,1), ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A FAP demand exceeds the highest data rate of the active MCS table.
class DemandUnsatisfiable : public std::runtime_error {
 public:
  DemandUnsatisfiable(double demand_bps, double max_rate_bps);

  double demand_bps() const noexcept { return demand_bps_; }
  double max_rate_bps() const noexcept { return max_rate_bps_; }

 private:
  double demand_bps_;
  double max_rate_bps_;
};

// Malformed text input. line() is 1-based; 0 when the position is unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what);

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A file could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Well-formed input that violates a semantic rule (ordering, coverage, ...).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Gateway placement found no feasible point at an update instant.
class InfeasiblePlacement : public std::runtime_error {
 public:
  InfeasiblePlacement(double time_s, double max_tx_power_dbm, double best_excess_m);

  double time_s() const noexcept { return time_s_; }
  double best_excess_m() const noexcept { return best_excess_m_; }

 private:
  double time_s_;
  double best_excess_m_;
};

}  // namespace gwp
