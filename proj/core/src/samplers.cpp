#include "brownq/samplers.hpp"

#include <cmath>
#include <random>

#include "brownq/error.hpp"

namespace brownq {

Path sample_brownian(const TimeGrid& grid, double drift, double sigma, double start, Seed seed) {
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw InvalidArgument("sample_brownian: sigma must be positive");
  Engine engine = make_engine(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double mean_step = drift * grid.dt();
  const double sd_step = sigma * std::sqrt(grid.dt());

  std::vector<double> v(grid.size());
  v[0] = start;
  for (std::size_t i = 1; i < v.size(); ++i) v[i] = v[i - 1] + (mean_step + sd_step * normal(engine));
  return Path{grid, std::move(v)};
}

double sample_exponential(double rate, Engine& engine) {
  if (!(rate > 0.0) || !std::isfinite(rate))
    throw InvalidArgument("sample_exponential: rate must be positive");
  std::exponential_distribution<double> dist(rate);
  double x = dist(engine);
  while (!(x > 0.0)) x = dist(engine);
  return x;
}

double sample_exponential(double rate, Seed seed) {
  Engine engine = make_engine(seed);
  return sample_exponential(rate, engine);
}

std::uint64_t sample_geometric(double p, Engine& engine) {
  if (!(p > 0.0 && p < 1.0)) throw InvalidArgument("sample_geometric: p must lie in (0, 1)");
  // std::geometric_distribution(q) counts failures before the first success
  // with success probability q: P(k) = q (1 - q)^k. With q = 1 - p this is
  // (1 - p) p^k.
  std::geometric_distribution<std::uint64_t> dist(1.0 - p);
  return dist(engine);
}

std::uint64_t sample_geometric(double p, Seed seed) {
  Engine engine = make_engine(seed);
  return sample_geometric(p, engine);
}

std::vector<double> sample_poisson_events(double rate, double horizon, Seed seed) {
  if (!(rate > 0.0) || !std::isfinite(rate))
    throw InvalidArgument("sample_poisson_events: rate must be positive");
  if (!(horizon >= 0.0)) throw InvalidArgument("sample_poisson_events: negative horizon");
  Engine engine = make_engine(seed);
  std::exponential_distribution<double> gap(rate);
  std::vector<double> events;
  events.reserve(static_cast<std::size_t>(rate * horizon + 4.0 * std::sqrt(rate * horizon) + 16.0));
  for (double t = gap(engine); t <= horizon; t += gap(engine)) events.push_back(t);
  return events;
}

Path counting_path(std::span<const double> events, const TimeGrid& grid) {
  std::vector<double> v(grid.size());
  std::size_t seen = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double t = grid.time(i);
    while (seen < events.size() && events[seen] <= t) ++seen;
    v[i] = static_cast<double>(seen);
  }
  return Path{grid, std::move(v)};
}

Path sample_poisson_path(double rate, const TimeGrid& grid, Seed seed) {
  const auto events = sample_poisson_events(rate, grid.horizon(), seed);
  return counting_path(events, grid);
}

}  // namespace brownq
