#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "brownq/arrival.hpp"
#include "brownq/grid.hpp"
#include "brownq/path.hpp"
#include "brownq/seed.hpp"

namespace brownq {

/// Service input of station n: W^n + c t - sum_{i <= n} E^i.
struct ServiceRealization {
  std::size_t station;
  Path w_path;
  double drift_c;
  double workload;             // E^n
  double cumulative_workload;  // sum_{i <= n} E^i
  Path service_path;
};

/// Draws W^n and E^n for `station` from the replicate's substreams
/// (station, ServiceNoise) and (station, Workload).
ServiceRealization make_service(std::size_t station, double c, const TimeGrid& grid,
                                double cumulative_before, Seed replicate_seed);

struct TandemConfig {
  double c = 1.0;
  std::size_t n_stations = 100;
  TimeGrid grid = make_grid(1e-3, 1.0);
  ArrivalSpec arrival = arrival::Zero{};
  Seed seed{1};
  std::size_t replicates = 1000;

  void validate() const;
  Seed replicate_seed(std::size_t replicate) const { return seed.child(replicate); }
};

struct BurkeResult {
  Path departure;             // D = Q(B^1 + x, B^2 + c t + x - E)
  Path queue_length;          // Q_t
  Path recentered_departure;  // D + E - x
  double x;
  double workload;            // E
};

/// Stationary Brownian queue: B^1, B^2 standard Brownian and E ~ Exp(c),
/// drawn independently from seed.
BurkeResult run_burke(double x, double c, const TimeGrid& grid, Seed seed);

/// [A^0, A^1, ..., A^{n_stations}] for one replicate, with
/// A^n = Q(A^{n-1}, W^n + c t - sum_{i <= n} E^i).
std::vector<Path> run_tandem(const TandemConfig& config, std::size_t replicate = 0);

struct CouplingRecord {
  std::vector<double> deltas;            // deltas[n] = sup_[0,T] |A^n - B^n|
  std::optional<std::size_t> coupled_at; // first n with A^n == B^n bitwise
  bool coupled = false;
};

/// Everything run_coupling observes along one replicate.
struct CouplingTrace {
  CouplingRecord record;
  std::vector<bool> event;        // event[n]: O_n held at station n (event[0] = false)
  bool absorption_held = true;    // A^m == B^m for every m >= coupled_at
  bool event_forced_equality = true;  // whenever O_n held, A^n == B^n == service
  Path terminal_a;                // A^{n_stations}
  Path terminal_b;                // B^{n_stations}
  double cumulative_workload = 0.0;
};

/// Drives a0 and b0 through the same service sequence drawn from
/// replicate_seed.
CouplingTrace trace_coupling(const Path& a0, const Path& b0, double c, std::size_t n_stations,
                             Seed replicate_seed);

/// A^0 from config.arrival, B^0 an independent standard Brownian motion.
CouplingTrace trace_coupling(const TandemConfig& config, std::size_t replicate);
CouplingRecord run_coupling(const TandemConfig& config, std::size_t replicate = 0);

/// O_n: service <= both arrivals at every grid point.
bool detect_coupling_event(const Path& arrival_a, const Path& arrival_b, const Path& service);

/// max_i |p1[i] - p2[i]|.
double sup_distance(const Path& p1, const Path& p2);

/// Fraction of replicates with W_t + c t - E <= B_t - k on the whole grid,
/// W and B independent standard Brownian, E ~ Exp(c). Replicate r uses the
/// substreams of seed.child(r) for every k, so estimates for different k
/// share random numbers.
double estimate_coupling_prob(double k, double c, const TimeGrid& grid, std::size_t replicates,
                              Seed seed);

}  // namespace brownq
