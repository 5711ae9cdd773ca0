#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace gwp::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kInfeasible = 3,
  kIo = 4,
};

// "1-20", "3", "1,4,9-12". Throws std::invalid_argument on malformed input.
std::vector<std::uint64_t> parse_seed_list(const std::string& text);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gwp::cli
