#include "brownq/grid.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "brownq/error.hpp"

namespace brownq {

TimeGrid::TimeGrid(double dt, std::size_t n_steps) : dt_(dt), n_steps_(n_steps) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("TimeGrid: dt must be positive");
  if (n_steps < 1) throw InvalidArgument("TimeGrid: n_steps must be >= 1");
}

std::size_t TimeGrid::index_of(double t) const {
  const double pos = t / dt_;
  const double rounded = std::round(pos);
  if (!std::isfinite(pos) || std::abs(pos - rounded) > 1e-9 * std::max(1.0, std::abs(pos)))
    throw InvalidArgument("time " + std::to_string(t) + " is not a grid point");
  if (rounded < 0.0 || rounded > static_cast<double>(n_steps_))
    throw InvalidArgument("time " + std::to_string(t) + " outside [0, horizon]");
  return static_cast<std::size_t>(rounded);
}

TimeGrid make_grid(double dt, double horizon) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("make_grid: dt must be positive");
  if (!(horizon > 0.0) || !std::isfinite(horizon))
    throw InvalidArgument("make_grid: horizon must be positive");
  const double steps = std::round(horizon / dt);
  if (steps < 1.0) throw InvalidArgument("make_grid: horizon must be at least dt");
  if (steps > static_cast<double>(std::numeric_limits<std::size_t>::max() / 2))
    throw InvalidArgument("make_grid: horizon / dt out of range");
  return TimeGrid{dt, static_cast<std::size_t>(steps)};
}

void require_same_grid(const TimeGrid& a, const TimeGrid& b, const char* context) {
  if (!(a == b)) throw InvalidArgument(std::string(context) + ": paths live on different grids");
}

}  // namespace brownq
