#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace eigenrand::verify {

struct CheckResult {
  std::string name;
  bool pass = true;
  std::vector<std::string> details;  // "key=value" measurement lines
};

struct Config {
  std::uint64_t seed = 42;
  int threads = 0;          // 0 = hardware default
  std::string suite = "all";  // all | one of the criterion tags | coverage
};

struct Report {
  std::vector<CheckResult> results;
  std::vector<std::pair<std::string, bool>> coverage;  // op -> exercised
  bool all_pass = true;
};

// Runs the acceptance criteria (and the op-coverage extras when suite is
// "all" or "coverage"). Every stochastic quantity inside is chunk-plan
// deterministic, so reports are bit-identical for any thread count.
Report run(const Config& cfg);

// criterion tags accepted by Config::suite
std::vector<std::string> suite_names();

}  // namespace eigenrand::verify
