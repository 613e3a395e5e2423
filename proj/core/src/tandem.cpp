#include "brownq/tandem.hpp"

#include <cmath>
#include <string>

#include "brownq/error.hpp"
#include "brownq/parallel.hpp"
#include "brownq/reflection.hpp"
#include "brownq/samplers.hpp"

namespace brownq {

namespace {

void require_rate(double c, const char* context) {
  if (!(c > 0.0) || !std::isfinite(c))
    throw InvalidArgument(std::string(context) + ": c must be positive");
}

Path standard_brownian(const TimeGrid& grid, Seed seed) {
  return sample_brownian(grid, 0.0, 1.0, 0.0, seed);
}

}  // namespace

ServiceRealization make_service(std::size_t station, double c, const TimeGrid& grid,
                                double cumulative_before, Seed replicate_seed) {
  require_rate(c, "make_service");
  if (station < 1) throw InvalidArgument("make_service: stations are numbered from 1");
  Path w = standard_brownian(grid, replicate_seed.child(station, Purpose::ServiceNoise));
  const double workload = sample_exponential(c, replicate_seed.child(station, Purpose::Workload));
  const double cumulative = cumulative_before + workload;
  Path service = add_drift(w, c) - cumulative;
  return {station, std::move(w), c, workload, cumulative, std::move(service)};
}

void TandemConfig::validate() const {
  require_rate(c, "TandemConfig");
  if (n_stations < 1) throw InvalidArgument("TandemConfig: n_stations must be >= 1");
  if (replicates < 1) throw InvalidArgument("TandemConfig: replicates must be >= 1");
  brownq::validate(arrival);
}

BurkeResult run_burke(double x, double c, const TimeGrid& grid, Seed seed) {
  require_rate(c, "run_burke");
  if (!std::isfinite(x)) throw InvalidArgument("run_burke: x must be finite");
  const Path b1 = standard_brownian(grid, seed.child(Purpose::BurkeArrival));
  const Path b2 = standard_brownian(grid, seed.child(Purpose::BurkeService));
  const double workload = sample_exponential(c, seed.child(Purpose::BurkeWorkload));

  const Path arrival = b1 + x;
  const Path service = (add_drift(b2, c) + x) - workload;
  QueueDecomposition q = queue_op(arrival, service);
  Path recentered = (q.departure + workload) - x;
  return {std::move(q.departure), std::move(q.queue_length), std::move(recentered), x, workload};
}

std::vector<Path> run_tandem(const TandemConfig& config, std::size_t replicate) {
  config.validate();
  const Seed rs = config.replicate_seed(replicate);
  std::vector<Path> out;
  out.reserve(config.n_stations + 1);
  out.push_back(sample_arrival(config.arrival, config.grid, rs.child(Purpose::Arrival)));

  double cumulative = 0.0;
  for (std::size_t n = 1; n <= config.n_stations; ++n) {
    ServiceRealization s = make_service(n, config.c, config.grid, cumulative, rs);
    cumulative = s.cumulative_workload;
    out.push_back(reflect_under(out.back(), s.service_path));
  }
  return out;
}

bool detect_coupling_event(const Path& arrival_a, const Path& arrival_b, const Path& service) {
  require_same_grid(arrival_a.grid(), service.grid(), "detect_coupling_event");
  require_same_grid(arrival_b.grid(), service.grid(), "detect_coupling_event");
  for (std::size_t i = 0; i < service.size(); ++i)
    if (service[i] > arrival_a[i] || service[i] > arrival_b[i]) return false;
  return true;
}

double sup_distance(const Path& p1, const Path& p2) {
  require_same_grid(p1.grid(), p2.grid(), "sup_distance");
  double d = 0.0;
  for (std::size_t i = 0; i < p1.size(); ++i) d = std::max(d, std::abs(p1[i] - p2[i]));
  return d;
}

CouplingTrace trace_coupling(const Path& a0, const Path& b0, double c, std::size_t n_stations,
                             Seed replicate_seed) {
  require_rate(c, "trace_coupling");
  require_same_grid(a0.grid(), b0.grid(), "trace_coupling");
  const TimeGrid& grid = a0.grid();

  CouplingTrace trace{.record = {}, .event = {}, .terminal_a = a0, .terminal_b = b0};
  CouplingRecord& rec = trace.record;
  rec.deltas.reserve(n_stations + 1);
  trace.event.assign(n_stations + 1, false);

  rec.deltas.push_back(sup_distance(a0, b0));
  if (bitwise_equal(a0, b0)) rec.coupled_at = 0;

  Path& a = trace.terminal_a;
  Path& b = trace.terminal_b;
  double cumulative = 0.0;
  for (std::size_t n = 1; n <= n_stations; ++n) {
    const ServiceRealization s = make_service(n, c, grid, cumulative, replicate_seed);
    cumulative = s.cumulative_workload;
    const bool event = detect_coupling_event(a, b, s.service_path);
    a = reflect_under(a, s.service_path);
    b = reflect_under(b, s.service_path);
    trace.event[n] = event;
    if (event && !(bitwise_equal(a, s.service_path) && bitwise_equal(b, s.service_path)))
      trace.event_forced_equality = false;

    rec.deltas.push_back(sup_distance(a, b));
    const bool equal = bitwise_equal(a, b);
    if (rec.coupled_at && !equal) trace.absorption_held = false;
    if (!rec.coupled_at && equal) rec.coupled_at = n;
  }
  rec.coupled = rec.coupled_at.has_value();
  trace.cumulative_workload = cumulative;
  return trace;
}

CouplingTrace trace_coupling(const TandemConfig& config, std::size_t replicate) {
  config.validate();
  const Seed rs = config.replicate_seed(replicate);
  const Path a0 = sample_arrival(config.arrival, config.grid, rs.child(Purpose::Arrival));
  const Path b0 = standard_brownian(config.grid, rs.child(Purpose::Comparison));
  return trace_coupling(a0, b0, config.c, config.n_stations, rs);
}

CouplingRecord run_coupling(const TandemConfig& config, std::size_t replicate) {
  return trace_coupling(config, replicate).record;
}

double estimate_coupling_prob(double k, double c, const TimeGrid& grid, std::size_t replicates,
                              Seed seed) {
  require_rate(c, "estimate_coupling_prob");
  if (!(k >= 0.0) || !std::isfinite(k)) throw InvalidArgument("estimate_coupling_prob: k must be >= 0");
  if (replicates < 1) throw InvalidArgument("estimate_coupling_prob: replicates must be >= 1");

  const auto hits = parallel_map(replicates, [&](std::size_t r) -> int {
    const Seed rs = seed.child(r);
    const Path w = standard_brownian(grid, rs.child(Purpose::CouplingNoiseW));
    const Path b = standard_brownian(grid, rs.child(Purpose::CouplingNoiseB));
    const double workload = sample_exponential(c, rs.child(Purpose::CouplingWorkload));
    for (std::size_t i = 0; i < grid.size(); ++i)
      if (w[i] + c * grid.time(i) - workload > b[i] - k) return 0;
    return 1;
  });
  std::size_t count = 0;
  for (int h : hits) count += static_cast<std::size_t>(h);
  return static_cast<double>(count) / static_cast<double>(replicates);
}

}  // namespace brownq
