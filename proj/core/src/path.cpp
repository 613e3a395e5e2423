#include "brownq/path.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include "brownq/error.hpp"

namespace brownq {

Path::Path(TimeGrid grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw InvalidArgument("Path: expected " + std::to_string(grid_.size()) + " values, got " +
                          std::to_string(values_.size()));
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (!std::isfinite(values_[i]))
      throw InvalidArgument("Path: non-finite value at index " + std::to_string(i));
}

Path Path::constant(const TimeGrid& grid, double value) {
  return Path{grid, std::vector<double>(grid.size(), value)};
}

Path Path::linear(const TimeGrid& grid, double rate) {
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = rate * grid.time(i);
  return Path{grid, std::move(v)};
}

double Path::min() const noexcept { return *std::min_element(values_.begin(), values_.end()); }
double Path::max() const noexcept { return *std::max_element(values_.begin(), values_.end()); }

bool bitwise_equal(const Path& a, const Path& b) noexcept {
  if (!(a.grid() == b.grid())) return false;
  return std::memcmp(a.values().data(), b.values().data(), a.size() * sizeof(double)) == 0;
}

namespace {

template <class Op>
Path zip(const Path& a, const Path& b, Op op, const char* context) {
  require_same_grid(a.grid(), b.grid(), context);
  std::vector<double> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = op(a[i], b[i]);
  return Path{a.grid(), std::move(v)};
}

template <class Op>
Path map(const Path& p, Op op) {
  std::vector<double> v(p.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = op(i, p[i]);
  return Path{p.grid(), std::move(v)};
}

}  // namespace

Path operator+(const Path& a, const Path& b) {
  return zip(a, b, [](double x, double y) { return x + y; }, "path addition");
}

Path operator-(const Path& a, const Path& b) {
  return zip(a, b, [](double x, double y) { return x - y; }, "path subtraction");
}

Path operator+(const Path& p, double shift) {
  return map(p, [shift](std::size_t, double x) { return x + shift; });
}

Path operator-(const Path& p, double shift) {
  return map(p, [shift](std::size_t, double x) { return x - shift; });
}

Path add_drift(const Path& p, double rate) {
  const TimeGrid& g = p.grid();
  return map(p, [&](std::size_t i, double x) { return x + rate * g.time(i); });
}

Path recenter(const Path& p) { return p - p.front(); }

Path subsample(const Path& fine, const TimeGrid& coarse) {
  const TimeGrid& f = fine.grid();
  if (coarse.horizon() > f.horizon() * (1.0 + 1e-12))
    throw InvalidArgument("subsample: coarse grid extends past the fine horizon");
  std::vector<double> v(coarse.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = fine[f.index_of(coarse.time(k))];
  return Path{coarse, std::move(v)};
}

}  // namespace brownq
