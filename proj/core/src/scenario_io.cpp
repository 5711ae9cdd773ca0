#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "gwp/error.hpp"
#include "gwp/scenario.hpp"

namespace gwp {

std::vector<Trajectory> parse_waypoints(std::istream& in, const std::string& source_name, int first_id) {
  std::vector<Trajectory> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    std::vector<double> values;
    std::string token;
    while (fields >> token) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(token, &used);
      } catch (const std::exception&) {
        throw ParseError(source_name, line_no, "not a number: '" + token + "'");
      }
      if (used != token.size() || !std::isfinite(v)) {
        throw ParseError(source_name, line_no, "not a number: '" + token + "'");
      }
      values.push_back(v);
    }
    if (values.size() % 4 != 0) {
      throw ParseError(source_name, line_no, "expected (t x y z) quadruples, got " + std::to_string(values.size()) +
                                                 " values");
    }
    std::vector<TrajectorySample> samples;
    for (std::size_t i = 0; i < values.size(); i += 4) {
      samples.push_back({values[i], {values[i + 1], values[i + 2], values[i + 3]}});
    }
    const int id = first_id + static_cast<int>(out.size());
    try {
      out.emplace_back(id, std::move(samples));
    } catch (const ConfigError& e) {
      throw ConfigError(source_name + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::vector<Trajectory> load_waypoints(const std::filesystem::path& path, int first_id) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open waypoint file " + path.string());
  return parse_waypoints(in, path.string(), first_id);
}

void write_waypoints(std::ostream& out, const std::vector<Trajectory>& trajectories) {
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::fixed << std::setprecision(6);
  for (const auto& traj : trajectories) {
    bool first = true;
    for (const auto& s : traj.samples()) {
      if (!first) out << ' ';
      first = false;
      out << s.time_s << ' ' << s.position.x << ' ' << s.position.y << ' ' << s.position.z;
    }
    out << '\n';
  }
  out.flags(flags);
  out.precision(precision);
}

void save_waypoints(const std::vector<Trajectory>& trajectories, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write waypoint file " + path.string());
  write_waypoints(out, trajectories);
}

namespace {

using nlohmann::json;

json point_json(const Point3& p) { return json::array({p.x, p.y, p.z}); }

Point3 point_from(const json& j) {
  if (!j.is_array() || j.size() != 3) throw ConfigError("point must be a 3-element array");
  return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()};
}

}  // namespace

std::string scenario_to_json(const Scenario& s) {
  json j;
  j["format_version"] = kScenarioFormatVersion;
  j["name"] = s.name;
  j["bounds"] = {{"min", point_json(s.bounds.min())}, {"max", point_json(s.bounds.max())}};
  j["duration_s"] = s.duration_s;
  j["update_period_s"] = s.update_period_s;
  j["sample_period_s"] = s.sample_period_s;
  j["radio"] = {{"carrier_frequency_hz", s.radio.carrier_frequency_hz},
                {"noise_floor_dbm", s.radio.noise_floor_dbm},
                {"max_tx_power_dbm", s.radio.max_tx_power_dbm},
                {"speed_of_light_mps", s.radio.speed_of_light_mps},
                {"max_channel_capacity_bps", s.radio.max_channel_capacity_bps}};
  json table = json::array();
  for (const auto& e : s.mcs_table.entries()) {
    table.push_back({{"index", e.index}, {"data_rate_bps", e.data_rate_bps}, {"min_snr_db", e.min_snr_db}});
  }
  j["mcs_table"] = table;
  json faps = json::array();
  for (const auto& f : s.faps) {
    json samples = json::array();
    for (const auto& x : f.trajectory.samples()) {
      samples.push_back({x.time_s, x.position.x, x.position.y, x.position.z});
    }
    faps.push_back({{"id", f.id()},
                    {"offered_bps", f.offered_bps},
                    {"link_demand_bps", f.link_demand_bps},
                    {"zone", f.zone},
                    {"samples", samples}});
  }
  j["faps"] = faps;
  json candidates = json::array();
  for (const auto& c : s.candidates) candidates.push_back({{"name", c.name}, {"position", point_json(c.position)}});
  j["candidates"] = candidates;
  return j.dump(2) + "\n";
}

Scenario scenario_from_json(const std::string& text, const std::string& source_name) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(source_name, 0, e.what());
  }
  try {
    const int version = j.at("format_version").get<int>();
    if (version != kScenarioFormatVersion) {
      throw ConfigError("unsupported scenario format_version " + std::to_string(version));
    }
    Scenario s;
    s.name = j.value("name", std::string{});
    s.bounds = Cuboid(point_from(j.at("bounds").at("min")), point_from(j.at("bounds").at("max")));
    s.duration_s = j.at("duration_s").get<double>();
    s.update_period_s = j.value("update_period_s", s.duration_s);
    s.sample_period_s = j.value("sample_period_s", 1.0);
    if (j.contains("radio")) {
      const json& r = j.at("radio");
      s.radio.carrier_frequency_hz = r.value("carrier_frequency_hz", s.radio.carrier_frequency_hz);
      s.radio.noise_floor_dbm = r.value("noise_floor_dbm", s.radio.noise_floor_dbm);
      s.radio.max_tx_power_dbm = r.value("max_tx_power_dbm", s.radio.max_tx_power_dbm);
      s.radio.speed_of_light_mps = r.value("speed_of_light_mps", s.radio.speed_of_light_mps);
      s.radio.max_channel_capacity_bps = r.value("max_channel_capacity_bps", s.radio.max_channel_capacity_bps);
    }
    if (j.contains("mcs_table")) {
      std::vector<McsEntry> rows;
      for (const json& e : j.at("mcs_table")) {
        rows.push_back({e.at("index").get<int>(), e.at("data_rate_bps").get<double>(), e.at("min_snr_db").get<double>()});
      }
      s.mcs_table = McsTable(std::move(rows));
    }
    for (const json& f : j.at("faps")) {
      std::vector<TrajectorySample> samples;
      for (const json& x : f.at("samples")) {
        if (!x.is_array() || x.size() != 4) throw ConfigError("FAP sample must be [t, x, y, z]");
        samples.push_back({x.at(0).get<double>(), {x.at(1).get<double>(), x.at(2).get<double>(), x.at(3).get<double>()}});
      }
      FapTrack track{Trajectory(f.at("id").get<int>(), std::move(samples)), f.at("offered_bps").get<double>(), 0.0,
                     f.value("zone", 0)};
      track.link_demand_bps = f.value("link_demand_bps", track.offered_bps);
      s.faps.push_back(std::move(track));
    }
    if (j.contains("candidates")) {
      for (const json& c : j.at("candidates")) {
        s.candidates.push_back({c.at("name").get<std::string>(), point_from(c.at("position"))});
      }
    }
    s.validate();
    return s;
  } catch (const json::exception& e) {
    throw ParseError(source_name, 0, e.what());
  } catch (const ConfigError& e) {
    throw ConfigError(source_name + ": " + e.what());
  } catch (const DomainError& e) {
    throw ConfigError(source_name + ": " + e.what());
  }
}

void save_scenario(const Scenario& scenario, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write scenario file " + path.string());
  out << scenario_to_json(scenario);
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return scenario_from_json(buf.str(), path.string());
}

}  // namespace gwp
