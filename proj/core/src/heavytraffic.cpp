#include "brownq/heavytraffic.hpp"

#include <cmath>
#include <string>

#include "brownq/error.hpp"
#include "brownq/reflection.hpp"
#include "brownq/samplers.hpp"
#include "brownq/tandem.hpp"

namespace brownq {

double lambda_n(double c, std::uint64_t n) {
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidArgument("lambda_n: c must be positive");
  if (n < 1) throw InvalidArgument("lambda_n: n must be >= 1");
  const double ratio = c / std::sqrt(static_cast<double>(n));
  if (!(ratio < 1.0))
    throw InvalidArgument("lambda_n: c / sqrt(n) must be < 1 (got " + std::to_string(ratio) + ")");
  return 1.0 - ratio;
}

Path diffusive_scale(const Path& counting, std::uint64_t n, double centering_rate) {
  if (n < 1) throw InvalidArgument("diffusive_scale: n must be >= 1");
  const TimeGrid& in = counting.grid();
  const double root_n = std::sqrt(static_cast<double>(n));
  std::vector<double> v(counting.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = (counting[i] - centering_rate * in.time(i)) / root_n;
  return Path{TimeGrid{in.dt() / static_cast<double>(n), in.n_steps()}, std::move(v)};
}

Path diffusive_scale(const Path& counting, std::uint64_t n, double centering_rate,
                     const TimeGrid& target) {
  if (n < 1) throw InvalidArgument("diffusive_scale: n must be >= 1");
  const TimeGrid& in = counting.grid();
  const double root_n = std::sqrt(static_cast<double>(n));
  std::vector<double> v(target.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    const std::size_t j = in.index_of(static_cast<double>(n) * target.time(k));
    v[k] = (counting[j] - centering_rate * in.time(j)) / root_n;
  }
  return Path{target, std::move(v)};
}

void HeavyTrafficConfig::validate() const {
  (void)lambda_n(c, n);
  if (!(horizon > 0.0) || !std::isfinite(horizon))
    throw InvalidArgument("HeavyTrafficConfig: horizon must be positive");
  if (replicates < 1) throw InvalidArgument("HeavyTrafficConfig: replicates must be >= 1");
  if (!(macro_dt > 0.0)) throw InvalidArgument("HeavyTrafficConfig: macro_dt must be positive");
  const double cells = macro_dt * static_cast<double>(n) * static_cast<double>(kMicroCellsPerUnit);
  if (cells < 1.0 - 1e-9 || std::abs(cells - std::round(cells)) > 1e-9 * cells)
    throw InvalidArgument("HeavyTrafficConfig: macro_dt * n * " + std::to_string(kMicroCellsPerUnit) +
                          " must be a positive integer so the macro grid lies on the micro grid");
  (void)macro_grid();
}

TimeGrid HeavyTrafficConfig::micro_grid() const {
  const double steps = std::round(horizon * static_cast<double>(n) * static_cast<double>(kMicroCellsPerUnit));
  return TimeGrid{1.0 / static_cast<double>(kMicroCellsPerUnit), static_cast<std::size_t>(steps)};
}

TimeGrid HeavyTrafficConfig::macro_grid() const { return make_grid(macro_dt, horizon); }

std::vector<double> mm1_departure_epochs(std::span<const double> arrivals,
                                         std::span<const double> services,
                                         std::uint64_t initial_queue) {
  std::vector<double> out;
  out.reserve(services.size());
  std::uint64_t queue = initial_queue;
  std::size_t a = 0;
  for (double s : services) {
    while (a < arrivals.size() && arrivals[a] <= s) {
      ++queue;
      ++a;
    }
    if (queue > 0) {
      --queue;
      out.push_back(s);
    }
  }
  return out;
}

Mm1Stage run_mm1_tandem_stage(const HeavyTrafficConfig& config, std::size_t replicate) {
  config.validate();
  const double lambda = config.lambda();
  const TimeGrid grid = config.micro_grid();
  const Seed rs = config.replicate_seed(replicate);

  auto arrival_events = sample_poisson_events(lambda, grid.horizon(), rs.child(Purpose::PoissonArrival));
  auto service_events = sample_poisson_events(1.0, grid.horizon(), rs.child(Purpose::PoissonService));
  const std::uint64_t workload = sample_geometric(lambda, rs.child(Purpose::GeometricWorkload));

  Path arrival = counting_path(arrival_events, grid);
  Path service = counting_path(service_events, grid);
  Path departure = reflect_under(arrival, service - static_cast<double>(workload));

  std::size_t ambiguous = 0;
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (arrival[i] > arrival[i - 1] && service[i] > service[i - 1]) ++ambiguous;

  return {std::move(arrival),        std::move(service),        workload, std::move(departure),
          std::move(arrival_events), std::move(service_events), ambiguous};
}

ScaledDeparture scaled_departure(const HeavyTrafficConfig& config, std::size_t replicate) {
  return scale_stage(run_mm1_tandem_stage(config, replicate), config);
}

ScaledDeparture scale_stage(const Mm1Stage& stage, const HeavyTrafficConfig& config) {
  const double lambda = config.lambda();
  const double workload_scaled =
      static_cast<double>(stage.workload) / std::sqrt(static_cast<double>(config.n));

  Path arrival_scaled = diffusive_scale(stage.arrival, config.n, lambda);
  Path service_scaled = diffusive_scale(stage.service, config.n, lambda);
  const Path queued_after_scaling = reflect_under(arrival_scaled, service_scaled - workload_scaled);
  const Path scaled_after_queueing = diffusive_scale(stage.departure, config.n, lambda);

  const double error = sup_distance(queued_after_scaling, scaled_after_queueing);
  return {subsample(scaled_after_queueing, config.macro_grid()),
          {std::move(arrival_scaled), std::move(service_scaled), workload_scaled},
          error,
          error <= kCommutationTolerance,
          stage.ambiguous_cells};
}

}  // namespace brownq
