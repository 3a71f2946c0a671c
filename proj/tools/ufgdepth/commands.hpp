#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace ufgdepth {

enum ExitCode { kOk = 0, kSelfcheckFailed = 1, kDataError = 2, kTimeout = 3 };

struct RunConfig {
  std::filesystem::path input;
  std::filesystem::path input_b;  // compare: second sample file
  std::filesystem::path orientations;
  std::vector<std::string> measures;
  std::vector<std::string> measures_b;  // compare: second measure subset
  std::optional<std::string> epsilon;   // dominance tolerance, decimal
  int enum_limit = 6;
  std::optional<int> cap;
  std::optional<double> timeout_secs;
  int k = 5;
  std::string direction = "max";
  std::vector<std::string> alpha{"0.25", "0.5", "0.75"};
  std::filesystem::path out_dir = "ufg-out";
  std::filesystem::path lp_out;
  std::uint64_t seed = 1;
  int threads = 1;
  int rounds = 40;  // selfcheck samples per suite
  bool inject_fault = false;
  bool no_cache = false;
};

int cmd_ingest(const RunConfig& config);
int cmd_analyze(const RunConfig& config);
int cmd_compare(const RunConfig& config);
int cmd_davidson(const RunConfig& config);
int cmd_enumerate(const RunConfig& config);
int cmd_extremal(const RunConfig& config);
int cmd_selfcheck(const RunConfig& config);

}  // namespace ufgdepth
