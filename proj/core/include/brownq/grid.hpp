#pragma once

#include <cstddef>

namespace brownq {

/// Uniform discretization t_i = i * dt, i = 0..n_steps, of [0, n_steps * dt].
class TimeGrid {
 public:
  /// Throws InvalidArgument unless dt > 0 (finite) and n_steps >= 1.
  TimeGrid(double dt, std::size_t n_steps);

  double dt() const noexcept { return dt_; }
  std::size_t n_steps() const noexcept { return n_steps_; }
  std::size_t size() const noexcept { return n_steps_ + 1; }
  double horizon() const noexcept { return dt_ * static_cast<double>(n_steps_); }
  double time(std::size_t i) const noexcept { return dt_ * static_cast<double>(i); }

  /// Index of an on-grid time; throws InvalidArgument for off-grid or
  /// out-of-range t.
  std::size_t index_of(double t) const;

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

 private:
  double dt_;
  std::size_t n_steps_;
};

/// n_steps = round(horizon / dt).
TimeGrid make_grid(double dt, double horizon);

void require_same_grid(const TimeGrid& a, const TimeGrid& b, const char* context);

}  // namespace brownq
