#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "brownq/grid.hpp"
#include "brownq/path.hpp"
#include "brownq/seed.hpp"

namespace brownq {

/// Micro-grid cells per unit of unscaled (M/M/1) time.
inline constexpr std::uint64_t kMicroCellsPerUnit = 20;
/// Macroscopic output resolution of scaled paths.
inline constexpr double kMacroDt = 1e-3;
inline constexpr double kCommutationTolerance = 1e-9;

/// 1 - c / sqrt(n); throws InvalidArgument unless 0 < result < 1.
double lambda_n(double c, std::uint64_t n);

/// out(t_i) = (counting(n t_i) - rate * n t_i) / sqrt(n) where the output
/// grid is the input grid with time divided by n.
Path diffusive_scale(const Path& counting, std::uint64_t n, double centering_rate);
/// As above, evaluated on `target`; every n * t_k must be an input grid point.
Path diffusive_scale(const Path& counting, std::uint64_t n, double centering_rate,
                     const TimeGrid& target);

struct HeavyTrafficConfig {
  double c = 1.0;
  std::uint64_t n = 10000;
  double horizon = 1.0;  // macroscopic T
  Seed seed{1};
  std::size_t replicates = 1000;
  double macro_dt = kMacroDt;

  void validate() const;
  double lambda() const { return lambda_n(c, n); }
  /// [0, n T] with kMicroCellsPerUnit cells per unit time.
  TimeGrid micro_grid() const;
  /// [0, T] at macro_dt.
  TimeGrid macro_grid() const;
  Seed replicate_seed(std::size_t replicate) const { return seed.child(replicate); }
};

struct Mm1Stage {
  Path arrival;      // A: Poisson(lambda_n) counting path
  Path service;      // S: Poisson(1) counting path
  std::uint64_t workload;  // G ~ Geometric(lambda_n)
  Path departure;    // D = Q(A, S - G); starts at -G
  std::vector<double> arrival_events;
  std::vector<double> service_events;
  /// Micro cells holding both an arrival and a service event; only there can
  /// the grid reflection miss an idle service.
  std::size_t ambiguous_cells = 0;
};

Mm1Stage run_mm1_tandem_stage(const HeavyTrafficConfig& config, std::size_t replicate = 0);

/// Departure epochs of a FIFO single-server queue fed by the given arrival
/// and potential-service epochs, starting with `initial_queue` customers.
std::vector<double> mm1_departure_epochs(std::span<const double> arrivals,
                                         std::span<const double> services,
                                         std::uint64_t initial_queue);

struct ScaledTriple {
  Path arrival_scaled;     // A~(t) = (A(nt) - n t lambda_n) / sqrt(n)
  Path service_scaled;     // S~(t) = (S(nt) - n t lambda_n) / sqrt(n)
  double workload_scaled;  // G~ = G / sqrt(n)
};

struct ScaledDeparture {
  Path departure;  // D~ on the macro grid
  ScaledTriple triple;  // on the micro grid in macroscopic time
  /// sup |Q(A~, S~ - G~) - scale(Q(A, S - G))| on the micro grid.
  double commutation_error;
  bool commutation_ok;
  std::size_t ambiguous_cells;
};

/// Rescales a stage and checks scale(Q(A, S - G)) == Q(A~, S~ - G~).
ScaledDeparture scale_stage(const Mm1Stage& stage, const HeavyTrafficConfig& config);
ScaledDeparture scaled_departure(const HeavyTrafficConfig& config, std::size_t replicate = 0);

}  // namespace brownq
