#include "brownq/reflection.hpp"

#include <algorithm>
#include <string>

#include "brownq/error.hpp"

namespace brownq {

namespace {

void check_pair(const Path& barrier, const Path& driver, const char* context) {
  require_same_grid(barrier.grid(), driver.grid(), context);
  if (barrier.front() < driver.front())
    throw PreconditionViolation(std::string(context) + ": requires f(0) >= g(0)");
}

}  // namespace

Path skorokhod_reflect(const Path& f) {
  std::vector<double> out(f.size());
  double running = 0.0;  // min_{j <= i} min(f_j, 0)
  for (std::size_t i = 0; i < out.size(); ++i) {
    running = std::min(running, f[i]);
    out[i] = f[i] - running;
  }
  return Path{f.grid(), std::move(out)};
}

Path reflect_under(const Path& barrier, const Path& driver) {
  check_pair(barrier, driver, "reflect_under");
  std::vector<double> out(driver.size());
  double running = 0.0;  // min_{j <= i} min(f_j - g_j, 0)
  for (std::size_t i = 0; i < out.size(); ++i) {
    running = std::min(running, barrier[i] - driver[i]);
    out[i] = driver[i] + running;
  }
  return Path{driver.grid(), std::move(out)};
}

QueueDecomposition queue_op(const Path& arrival, const Path& service) {
  Path departure = reflect_under(arrival, service);
  Path free = arrival - service;
  // R(f - g) equals f - Q(f, g) up to rounding and is never negative.
  Path queue_length = skorokhod_reflect(free);
  return {std::move(departure), std::move(queue_length), std::move(free)};
}

Path brute_force_reflect(const Path& barrier, const Path& driver) {
  check_pair(barrier, driver, "brute_force_reflect");
  std::vector<double> out(driver.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    double running = 0.0;
    for (std::size_t j = 0; j <= i; ++j) running = std::min(running, barrier[j] - driver[j]);
    out[i] = driver[i] + running;
  }
  return Path{driver.grid(), std::move(out)};
}

}  // namespace brownq
