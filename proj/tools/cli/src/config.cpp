#include "brownq/cli/config.hpp"

#include <cmath>
#include <map>

#include "CLI11.hpp"
#include "brownq/error.hpp"
#include "brownq/grid.hpp"
#include "brownq/heavytraffic.hpp"

namespace brownq::cli {

namespace {

const std::map<std::string, Experiment>& experiment_names() {
  static const std::map<std::string, Experiment> names{
      {"burke", Experiment::burke},   {"tandem", Experiment::tandem},
      {"couple", Experiment::couple}, {"heavy", Experiment::heavy},
      {"selftest", Experiment::selftest},
  };
  return names;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

}  // namespace

std::string_view to_string(Experiment e) noexcept {
  switch (e) {
    case Experiment::burke: return "burke";
    case Experiment::tandem: return "tandem";
    case Experiment::couple: return "couple";
    case Experiment::heavy: return "heavy";
    case Experiment::selftest: return "selftest";
  }
  return "?";
}

RunConfig parse_config(std::span<const std::string> args) {
  RunConfig cfg;
  std::string experiment;
  std::string arrival = "zero";
  std::string out_dir = cfg.out_dir.string();

  CLI::App app{"Skorokhod reflection experiments for Brownian and M/M/1 tandem queues", "brownq"};
  app.add_option("experiment", experiment, "burke | tandem | couple | heavy | selftest")
      ->required()
      ->check(CLI::IsMember(experiment_names()));
  app.add_option("--c", cfg.c, "service drift c > 0")->capture_default_str();
  app.add_option("--dt", cfg.dt, "grid step")->capture_default_str();
  app.add_option("--horizon", cfg.horizon, "time horizon T")->capture_default_str();
  app.add_option("--stations", cfg.stations, "tandem length")->capture_default_str();
  app.add_option("--replicates", cfg.replicates, "independent replicates")->capture_default_str();
  app.add_option("--arrival", arrival,
                 "zero | bm | drifted:<mu>:<sigma> | ou:<theta>:<sigma> | sine:<amp>:<period> | file:<csv>")
      ->capture_default_str();
  app.add_option("--scaling-n", cfg.scaling_n, "heavy-traffic index n")->capture_default_str();
  app.add_option("--seed", cfg.seed, "master seed")->capture_default_str();
  app.add_option("--out", out_dir, "output directory")->capture_default_str();
  app.add_option("--alpha", cfg.alpha, "significance level of distributional tests")->capture_default_str();
  app.add_option("--x", cfg.x, "burke: starting level x")->capture_default_str();
  app.add_option("--threads", cfg.threads, "worker threads, 0 = hardware concurrency")->capture_default_str();
  app.add_option("--keep-paths", cfg.keep_paths, "replicates written to paths_*.csv")->capture_default_str();
  app.add_option("--pilot", cfg.pilot, "couple: pilot replicates for the coupling-fraction floor")
      ->capture_default_str();
  app.set_config("--config", "", "flat `key = value` file; command-line flags take precedence");
  app.allow_config_extras(CLI::config_extras_mode::error);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested{app.help("", CLI::AppFormatMode::All)};
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  cfg.experiment = experiment_names().at(experiment);
  cfg.out_dir = out_dir;
  try {
    cfg.arrival = parse_arrival(arrival);
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  validate(cfg);
  return cfg;
}

void validate(const RunConfig& cfg) {
  require(cfg.c > 0.0 && std::isfinite(cfg.c), "--c must be positive");
  require(cfg.dt > 0.0 && std::isfinite(cfg.dt), "--dt must be positive");
  require(cfg.horizon > 0.0 && std::isfinite(cfg.horizon), "--horizon must be positive");
  require(cfg.alpha > 0.0 && cfg.alpha < 1.0, "--alpha must lie in (0, 1)");
  require(std::isfinite(cfg.x), "--x must be finite");
  require(cfg.stations >= 1, "--stations must be >= 1");
  require(cfg.replicates >= 1, "--replicates must be >= 1");
  try {
    const TimeGrid grid = make_grid(cfg.dt, cfg.horizon);
    brownq::validate(cfg.arrival);
    if (cfg.experiment == Experiment::burke || cfg.experiment == Experiment::tandem)
      require(grid.n_steps() >= 2, "--horizon must span at least two grid steps");
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }

  switch (cfg.experiment) {
    case Experiment::burke:
    case Experiment::tandem:
      require(cfg.replicates >= 30, "--replicates must be >= 30 for the distributional checks");
      break;
    case Experiment::couple:
      require(cfg.pilot >= 1, "--pilot must be >= 1");
      break;
    case Experiment::heavy: {
      require(cfg.scaling_n >= 1, "--scaling-n must be >= 1");
      require(cfg.replicates >= 30, "--replicates must be >= 30 for the distributional checks");
      HeavyTrafficConfig h{.c = cfg.c, .n = cfg.scaling_n, .horizon = cfg.horizon,
                           .seed = Seed{cfg.seed}, .replicates = cfg.replicates, .macro_dt = cfg.dt};
      try {
        h.validate();
      } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
      }
      break;
    }
    case Experiment::selftest:
      break;
  }
}

}  // namespace brownq::cli
