#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "brownq/cli/config.hpp"
#include "brownq/cli/output.hpp"
#include "brownq/stats.hpp"

namespace brownq::cli {

/// Exit statuses of `brownq`.
enum ExitStatus : int {
  kExitPass = 0,
  kExitStatisticalFailure = 1,
  kExitUsage = 2,
  kExitRuntime = 3,
};

struct ExperimentOutput {
  Experiment experiment;
  std::vector<TestReport> reports;
  std::vector<OutputFile> files;  // CSVs, written next to report.json

  bool all_passed() const;
};

ExperimentOutput run_burke_experiment(const RunConfig& config);
ExperimentOutput run_tandem_experiment(const RunConfig& config);
ExperimentOutput run_couple_experiment(const RunConfig& config);
ExperimentOutput run_heavy_experiment(const RunConfig& config);
/// Deterministic reflection identities on generated path pairs.
ExperimentOutput run_selftest(const RunConfig& config);

ExperimentOutput execute(const RunConfig& config);

nlohmann::ordered_json config_json(const RunConfig& config);
/// report.json: experiment, config echo, TestReports, overall verdict.
std::string report_text(const RunConfig& config, const ExperimentOutput& output);

/// Validates, runs, writes out_dir/{report.json, *.csv} and maps the outcome
/// to an ExitStatus. Diagnostics go to `err`.
int run_experiment(const RunConfig& config, std::ostream& err);

}  // namespace brownq::cli
