#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "brownq/arrival.hpp"

namespace brownq::cli {

enum class Experiment { burke, tandem, couple, heavy, selftest };

std::string_view to_string(Experiment e) noexcept;

struct RunConfig {
  Experiment experiment = Experiment::selftest;
  double c = 1.0;
  double dt = 1e-3;
  double horizon = 1.0;
  std::size_t stations = 100;
  std::size_t replicates = 1000;
  ArrivalSpec arrival = arrival::Zero{};
  std::uint64_t scaling_n = 10000;
  std::uint64_t seed = 1;
  std::filesystem::path out_dir = "out";
  double alpha = 0.01;
  double x = 0.0;               // burke: level of both inputs at t = 0
  std::size_t threads = 0;      // 0 = one per hardware thread
  std::size_t keep_paths = 10;  // replicates written to paths_*.csv
  std::size_t pilot = 50;       // couple: pilot replicates for the fraction floor
};

/// Bad command line or config file; maps to exit status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// --help / --version; `text` goes to stdout and the process exits 0.
struct HelpRequested {
  std::string text;
};

/// Parses `brownq <experiment> [flags]` (args exclude the program name).
/// Flags override `--config` file values. Throws UsageError or HelpRequested.
RunConfig parse_config(std::span<const std::string> args);

/// Checks the per-experiment preconditions; throws UsageError.
void validate(const RunConfig& config);

}  // namespace brownq::cli
