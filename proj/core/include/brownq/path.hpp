#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "brownq/grid.hpp"

namespace brownq {

/// A real-valued path sampled on a TimeGrid. Values are always finite.
class Path {
 public:
  /// Throws InvalidArgument if values.size() != grid.size() or any value is
  /// NaN/inf.
  Path(TimeGrid grid, std::vector<double> values);

  static Path constant(const TimeGrid& grid, double value);
  /// value(t_i) = rate * t_i.
  static Path linear(const TimeGrid& grid, double rate);

  const TimeGrid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  double front() const noexcept { return values_.front(); }
  double back() const noexcept { return values_.back(); }

  /// Value at an on-grid time.
  double at(double t) const { return values_[grid_.index_of(t)]; }

  double min() const noexcept;
  double max() const noexcept;

 private:
  TimeGrid grid_;
  std::vector<double> values_;
};

/// Same grid and identical bit patterns in every entry.
bool bitwise_equal(const Path& a, const Path& b) noexcept;

Path operator+(const Path& a, const Path& b);
Path operator-(const Path& a, const Path& b);
Path operator+(const Path& p, double shift);
Path operator-(const Path& p, double shift);

/// p(t_i) + rate * t_i.
Path add_drift(const Path& p, double rate);

/// p - p[0]; the path re-started at zero.
Path recenter(const Path& p);

/// Restriction of a fine path to a coarser grid whose points all lie on the
/// fine grid.
Path subsample(const Path& fine, const TimeGrid& coarse);

}  // namespace brownq
