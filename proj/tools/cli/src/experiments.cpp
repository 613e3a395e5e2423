#include "brownq/cli/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <ostream>

#include "brownq/error.hpp"
#include "brownq/heavytraffic.hpp"
#include "brownq/parallel.hpp"
#include "brownq/reflection.hpp"
#include "brownq/samplers.hpp"
#include "brownq/tandem.hpp"

namespace brownq::cli {

namespace {

TestReport renamed(TestReport r, std::string name) {
  r.name = std::move(name);
  return r;
}

TestReport failed(std::string name, std::string notes, std::size_t n = 0) {
  TestReport r;
  r.name = std::move(name);
  r.sample_size = n;
  r.pass = false;
  r.notes = std::move(notes);
  return r;
}

TestReport bounded(std::string name, double statistic, double threshold, std::size_t n,
                   std::string notes) {
  TestReport r;
  r.name = std::move(name);
  r.statistic = statistic;
  r.threshold = threshold;
  r.sample_size = n;
  r.pass = statistic <= threshold;
  r.notes = std::move(notes) + "; pass iff statistic <= threshold";
  return r;
}

TestReport checked_independence(std::string name, std::span<const double> x, std::span<const double> y) {
  if (x.size() < 30) return failed(name, "fewer than 30 samples; independence not assessable", x.size());
  try {
    return renamed(independence_check(x, y), std::move(name));
  } catch (const DegenerateInput& e) {
    return failed(std::move(name), e.what(), x.size());
  }
}

TestReport checked_normality(std::string name, std::span<const double> incs, double length, double alpha) {
  if (incs.size() < 8) return failed(name, "fewer than 8 samples; KS not applicable", incs.size());
  return renamed(increment_normality(incs, length, 0.0, 1.0, alpha), std::move(name));
}

std::string interval(double a, double b) { return "[" + format_real(a) + ", " + format_real(b) + "]"; }

TandemConfig tandem_config(const RunConfig& cfg) {
  return TandemConfig{.c = cfg.c,
                      .n_stations = cfg.stations,
                      .grid = make_grid(cfg.dt, cfg.horizon),
                      .arrival = cfg.arrival,
                      .seed = Seed{cfg.seed},
                      .replicates = cfg.replicates};
}

HeavyTrafficConfig heavy_config(const RunConfig& cfg) {
  return HeavyTrafficConfig{.c = cfg.c,
                            .n = cfg.scaling_n,
                            .horizon = cfg.horizon,
                            .seed = Seed{cfg.seed},
                            .replicates = cfg.replicates,
                            .macro_dt = cfg.dt};
}

}  // namespace

bool ExperimentOutput::all_passed() const {
  return std::all_of(reports.begin(), reports.end(), [](const TestReport& r) { return r.pass; });
}

ExperimentOutput run_burke_experiment(const RunConfig& cfg) {
  const TimeGrid grid = make_grid(cfg.dt, cfg.horizon);
  const std::size_t mid = grid.n_steps() / 2;
  const double t_mid = grid.time(mid);
  const double t_end = grid.horizon();
  const Seed master{cfg.seed};

  struct Summary {
    double first, second, queue_end;
    std::optional<Path> departure, queue;
  };
  const auto rows = parallel_map(
      cfg.replicates,
      [&](std::size_t r) {
        BurkeResult b = run_burke(cfg.x, cfg.c, grid, master.child(r));
        const Path& d = b.recentered_departure;
        Summary s{d[mid] - d[0], d.back() - d[mid], b.queue_length.back(), std::nullopt, std::nullopt};
        if (r < cfg.keep_paths) {
          s.departure = std::move(b.departure);
          s.queue = std::move(b.queue_length);
        }
        return s;
      },
      cfg.threads);

  std::vector<double> first, second, queue_end;
  CsvBuilder dep_csv{"replicate", "t", "value"}, queue_csv{"replicate", "t", "value"};
  for (std::size_t r = 0; r < rows.size(); ++r) {
    first.push_back(rows[r].first);
    second.push_back(rows[r].second);
    queue_end.push_back(rows[r].queue_end);
    if (rows[r].departure) {
      dep_csv.path_rows(r, *rows[r].departure);
      queue_csv.path_rows(r, *rows[r].queue);
    }
  }

  ExperimentOutput out{Experiment::burke, {}, {}};
  const std::string i1 = interval(0.0, t_mid), i2 = interval(t_mid, t_end);
  out.reports.push_back(checked_normality("departure increment normality " + i1, first, t_mid, cfg.alpha));
  out.reports.push_back(checked_normality("departure increment normality " + i2, second, t_end - t_mid, cfg.alpha));
  out.reports.push_back(renamed(moment_check(first, 0.0, t_mid), "departure increment moments " + i1));
  out.reports.push_back(renamed(moment_check(second, 0.0, t_end - t_mid), "departure increment moments " + i2));
  out.reports.push_back(checked_independence("queue length at T vs departure increment " + i1, queue_end, first));
  out.files.push_back({"paths_departure.csv", dep_csv.str()});
  out.files.push_back({"paths_queue_length.csv", queue_csv.str()});
  return out;
}

ExperimentOutput run_tandem_experiment(const RunConfig& cfg) {
  const TandemConfig tc = tandem_config(cfg);
  const std::size_t mid = tc.grid.n_steps() / 2;
  const double t_mid = tc.grid.time(mid);
  const double t_end = tc.grid.horizon();

  struct Summary {
    double first, second;
    std::optional<Path> terminal;
  };
  const auto rows = parallel_map(
      cfg.replicates,
      [&](std::size_t r) {
        std::vector<Path> chain = run_tandem(tc, r);
        Path terminal = recenter(chain.back());
        Summary s{terminal[mid], terminal.back() - terminal[mid], std::nullopt};
        if (r < cfg.keep_paths) s.terminal = std::move(terminal);
        return s;
      },
      cfg.threads);

  std::vector<double> first, second, whole;
  CsvBuilder csv{"replicate", "t", "value"};
  for (std::size_t r = 0; r < rows.size(); ++r) {
    first.push_back(rows[r].first);
    second.push_back(rows[r].second);
    whole.push_back(rows[r].first + rows[r].second);
    if (rows[r].terminal) csv.path_rows(r, *rows[r].terminal);
  }

  ExperimentOutput out{Experiment::tandem, {}, {}};
  const std::string i1 = interval(0.0, t_mid), i2 = interval(t_mid, t_end);
  out.reports.push_back(checked_normality("terminal increment normality " + i1, first, t_mid, cfg.alpha));
  out.reports.push_back(checked_normality("terminal increment normality " + i2, second, t_end - t_mid, cfg.alpha));
  out.reports.push_back(renamed(moment_check(whole, 0.0, t_end), "terminal increment moments " + interval(0.0, t_end)));
  out.reports.push_back(checked_independence("terminal disjoint increments " + i1 + " vs " + i2, first, second));
  out.files.push_back({"paths_terminal.csv", csv.str()});
  return out;
}

namespace {

struct CouplingSummary {
  std::vector<double> deltas;
  std::optional<std::size_t> coupled_at;
  bool absorption_held;
  bool event_forced_equality;
  double first, second;
  std::optional<Path> terminal;
};

std::vector<CouplingSummary> coupling_batch(const TandemConfig& tc, std::size_t keep, std::size_t threads) {
  const std::size_t mid = tc.grid.n_steps() / 2;
  return parallel_map(
      tc.replicates,
      [&](std::size_t r) {
        CouplingTrace t = trace_coupling(tc, r);
        Path terminal = recenter(t.terminal_a);
        CouplingSummary s{std::move(t.record.deltas), t.record.coupled_at, t.absorption_held,
                          t.event_forced_equality, terminal[mid], terminal.back() - terminal[mid],
                          std::nullopt};
        if (r < keep) s.terminal = std::move(terminal);
        return s;
      },
      threads);
}

double coupled_fraction(const std::vector<CouplingSummary>& rows, std::size_t station) {
  std::size_t k = 0;
  for (const auto& s : rows)
    if (s.coupled_at && *s.coupled_at <= station) ++k;
  return static_cast<double>(k) / static_cast<double>(rows.size());
}

}  // namespace

ExperimentOutput run_couple_experiment(const RunConfig& cfg) {
  const TandemConfig tc = tandem_config(cfg);
  const std::size_t stations = tc.n_stations;
  const std::size_t mid = tc.grid.n_steps() / 2;
  const double t_mid = tc.grid.time(mid);
  const double t_end = tc.grid.horizon();

  TandemConfig pilot_cfg = tc;
  pilot_cfg.seed = tc.seed.child(Purpose::Pilot);
  pilot_cfg.replicates = cfg.pilot;
  const auto pilot = coupling_batch(pilot_cfg, 0, cfg.threads);
  const auto rows = coupling_batch(tc, cfg.keep_paths, cfg.threads);

  double worst_increase = 0.0;
  std::size_t absorption_failures = 0;
  std::vector<double> first, second;
  CsvBuilder deltas{"replicate", "station", "delta", "coupled"};
  CsvBuilder terminal_csv{"replicate", "t", "value"};
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& s = rows[r];
    for (std::size_t n = 0; n < s.deltas.size(); ++n) {
      if (n > 0) worst_increase = std::max(worst_increase, s.deltas[n] - s.deltas[n - 1]);
      const bool coupled = s.coupled_at && *s.coupled_at <= n;
      deltas.row({std::to_string(r), std::to_string(n), format_real(s.deltas[n]), coupled ? "1" : "0"});
    }
    if (!s.absorption_held || !s.event_forced_equality) ++absorption_failures;
    if (s.coupled_at) {
      first.push_back(s.first);
      second.push_back(s.second);
    }
    if (s.terminal) terminal_csv.path_rows(r, *s.terminal);
  }

  CsvBuilder fraction_csv{"station", "fraction"};
  double worst_drop = 0.0;
  double previous = 0.0;
  for (std::size_t n = 0; n <= stations; ++n) {
    const double f = coupled_fraction(rows, n);
    if (n > 0) worst_drop = std::max(worst_drop, previous - f);
    previous = f;
    fraction_csv.row({std::to_string(n), format_real(f)});
  }

  const double pilot_fraction = coupled_fraction(pilot, stations);
  const double pilot_se =
      std::sqrt(pilot_fraction * (1.0 - pilot_fraction) / static_cast<double>(pilot.size()));
  const double floor = pilot_fraction - 3.0 * pilot_se;
  const double terminal = coupled_fraction(rows, stations);

  ExperimentOutput out{Experiment::couple, {}, {}};
  out.reports.push_back(bounded("delta monotonicity", worst_increase, kFpTolerance, rows.size(),
                                "statistic = max_n (delta_n - delta_{n-1}) over replicates"));
  out.reports.push_back(bounded("coupling absorption", static_cast<double>(absorption_failures), 0.0,
                                rows.size(),
                                "statistic = replicates where A^m != B^m after coupling or where O_n "
                                "held without both departures equal to the service path"));
  out.reports.push_back(bounded("coupling fraction monotone in station", worst_drop, 0.0, rows.size(),
                                "statistic = largest drop of the coupled fraction between stations"));
  out.reports.push_back(bounded("terminal coupling fraction vs pilot floor", floor - terminal, 0.0,
                                rows.size(),
                                "terminal fraction " + format_real(terminal) + " at station " +
                                    std::to_string(stations) + "; floor = pilot fraction " +
                                    format_real(pilot_fraction) + " - 3 binomial SE over " +
                                    std::to_string(pilot.size()) + " pilot replicates = " +
                                    format_real(floor) + "; statistic = floor - terminal"));

  std::vector<double> whole(first.size());
  for (std::size_t i = 0; i < whole.size(); ++i) whole[i] = first[i] + second[i];
  out.reports.push_back(checked_normality("coupled terminal increment normality " + interval(0.0, t_end),
                                          whole, t_end, cfg.alpha));
  out.reports.push_back(checked_independence(
      "coupled terminal disjoint increments " + interval(0.0, t_mid) + " vs " + interval(t_mid, t_end),
      first, second));
  out.files.push_back({"deltas.csv", deltas.str()});
  out.files.push_back({"coupling_fraction.csv", fraction_csv.str()});
  out.files.push_back({"paths_terminal.csv", terminal_csv.str()});
  return out;
}

ExperimentOutput run_heavy_experiment(const RunConfig& cfg) {
  const HeavyTrafficConfig hc = heavy_config(cfg);
  hc.validate();
  const double lambda = hc.lambda();
  const double micro_horizon = hc.micro_grid().horizon();
  const std::size_t micro_mid = hc.micro_grid().n_steps() / 2;
  const double t_end = hc.macro_grid().horizon();

  struct Summary {
    double commutation_error;
    double departures, first_half, second_half;
    double scaled_increment;
    std::size_t ambiguous_cells;
    std::size_t route_mismatch;  // grid departure count != event-list count at T
    std::vector<double> gaps;
    std::optional<Path> scaled;
  };
  const auto rows = parallel_map(
      cfg.replicates,
      [&](std::size_t r) {
        Mm1Stage stage = run_mm1_tandem_stage(hc, r);
        const Path& d = stage.departure;
        Summary s{};
        s.departures = d.back() - d.front();
        s.first_half = d[micro_mid] - d.front();
        s.second_half = d.back() - d[micro_mid];
        s.ambiguous_cells = stage.ambiguous_cells;

        const auto epochs = mm1_departure_epochs(stage.arrival_events, stage.service_events, stage.workload);
        s.route_mismatch = static_cast<double>(epochs.size()) == s.departures ? 0 : 1;
        if (r == 0) {
          s.gaps.reserve(epochs.size());
          double previous = 0.0;
          for (double e : epochs) {
            s.gaps.push_back(e - previous);
            previous = e;
          }
        }

        ScaledDeparture sd = scale_stage(stage, hc);
        s.commutation_error = sd.commutation_error;
        s.scaled_increment = sd.departure.back() - sd.departure.front();
        if (r < cfg.keep_paths) s.scaled = std::move(sd.departure);
        return s;
      },
      cfg.threads);

  double worst_commutation = 0.0, total = 0.0;
  std::size_t ambiguous = 0, mismatches = 0;
  std::vector<double> first, second, scaled;
  CsvBuilder csv{"replicate", "t", "value"};
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& s = rows[r];
    worst_commutation = std::max(worst_commutation, s.commutation_error);
    total += s.departures;
    ambiguous += s.ambiguous_cells;
    mismatches += s.route_mismatch;
    first.push_back(s.first_half);
    second.push_back(s.second_half);
    scaled.push_back(s.scaled_increment);
    if (s.scaled) csv.path_rows(r, *s.scaled);
  }

  const double exposure = static_cast<double>(rows.size()) * micro_horizon;
  const double rate = total / exposure;
  const double se = std::sqrt(lambda / exposure);

  ExperimentOutput out{Experiment::heavy, {}, {}};
  out.reports.push_back(bounded("commutation scale(Q) = Q(scale)", worst_commutation, kCommutationTolerance,
                                rows.size(), "statistic = max sup-norm discrepancy over replicates"));
  out.reports.push_back(bounded("departure rate", std::abs(rate - lambda) / se, 4.0, rows.size(),
                                "rate " + format_real(rate) + " vs lambda_n " + format_real(lambda) +
                                    "; statistic = |rate - lambda_n| / SE; diagnostics: " +
                                    std::to_string(ambiguous) +
                                    " ambiguous micro cells (arrival and service in one cell), " +
                                    std::to_string(mismatches) +
                                    " replicates whose grid count at T differs from the event-list count"));
  out.reports.push_back(checked_independence("departure counts on disjoint halves", first, second));
  out.reports.push_back(checked_normality("scaled departure increment normality " + interval(0.0, t_end),
                                          scaled, t_end, cfg.alpha));
  if (rows.front().gaps.size() >= 8) {
    TestReport gaps = ks_test(rows.front().gaps, cdf::Exponential{lambda}, cfg.alpha);
    gaps.name = "inter-departure gaps exponential (replicate 0, event-list route)";
    out.reports.push_back(std::move(gaps));
  }
  out.files.push_back({"paths_scaled_departure.csv", csv.str()});
  return out;
}

ExperimentOutput execute(const RunConfig& cfg) {
  switch (cfg.experiment) {
    case Experiment::burke: return run_burke_experiment(cfg);
    case Experiment::tandem: return run_tandem_experiment(cfg);
    case Experiment::couple: return run_couple_experiment(cfg);
    case Experiment::heavy: return run_heavy_experiment(cfg);
    case Experiment::selftest: return run_selftest(cfg);
  }
  throw UsageError("unknown experiment");
}

nlohmann::ordered_json config_json(const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["experiment"] = std::string(to_string(cfg.experiment));
  j["c"] = cfg.c;
  j["dt"] = cfg.dt;
  j["horizon"] = cfg.horizon;
  j["stations"] = cfg.stations;
  j["replicates"] = cfg.replicates;
  j["arrival"] = brownq::to_string(cfg.arrival);
  j["scaling_n"] = cfg.scaling_n;
  j["seed"] = cfg.seed;
  j["alpha"] = cfg.alpha;
  j["x"] = cfg.x;
  j["keep_paths"] = cfg.keep_paths;
  j["pilot"] = cfg.pilot;
  return j;
}

std::string report_text(const RunConfig& cfg, const ExperimentOutput& output) {
  nlohmann::ordered_json j;
  j["experiment"] = std::string(to_string(output.experiment));
  j["config"] = config_json(cfg);
  j["reports"] = nlohmann::ordered_json::array();
  for (const auto& r : output.reports) j["reports"].push_back(to_json(r));
  j["passed"] = output.all_passed();
  return j.dump(2) + "\n";
}

int run_experiment(const RunConfig& cfg, std::ostream& err) {
  try {
    validate(cfg);
  } catch (const UsageError& e) {
    err << "brownq: " << e.what() << '\n';
    return kExitUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    const ExperimentOutput output = execute(cfg);
    std::filesystem::create_directories(cfg.out_dir);
    write_file(cfg.out_dir / "report.json", report_text(cfg, output));
    for (const auto& f : output.files) write_file(cfg.out_dir / f.name, f.content);

    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    for (const auto& r : output.reports)
      err << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << ": statistic " << format_real(r.statistic)
          << ", threshold " << format_real(r.threshold) << '\n';
    err << "brownq " << to_string(cfg.experiment) << ": " << elapsed.count() << " s wall-clock, output in "
        << cfg.out_dir.string() << '\n';
    return output.all_passed() ? kExitPass : kExitStatisticalFailure;
  } catch (const UsageError& e) {
    err << "brownq: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "brownq: error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace brownq::cli
