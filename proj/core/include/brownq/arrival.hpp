#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "brownq/grid.hpp"
#include "brownq/path.hpp"
#include "brownq/seed.hpp"

namespace brownq {

namespace arrival {
struct Zero {};
struct StandardBM {};
struct DriftedBM {
  double drift;
  double sigma;
};
/// dX = -theta X dt + sigma dW, X_0 = 0.
struct OrnsteinUhlenbeck {
  double theta;
  double sigma;
};
/// amplitude * sin(2 pi t / period).
struct Sinusoid {
  double amplitude;
  double period;
};
/// Two-column `t,value` CSV, linearly interpolated onto the grid.
struct FromFile {
  std::filesystem::path file;
};
}  // namespace arrival

/// Initial arrival process A^0 of a tandem. Every variant starts at 0.
using ArrivalSpec = std::variant<arrival::Zero, arrival::StandardBM, arrival::DriftedBM,
                                 arrival::OrnsteinUhlenbeck, arrival::Sinusoid, arrival::FromFile>;

/// Throws InvalidArgument on non-positive sigma/theta/period.
void validate(const ArrivalSpec& spec);

/// Parses `zero`, `bm`, `drifted:<drift>:<sigma>`, `ou:<theta>:<sigma>`,
/// `sine:<amplitude>:<period>` and `file:<path>`.
ArrivalSpec parse_arrival(std::string_view text);
std::string to_string(const ArrivalSpec& spec);

Path sample_arrival(const ArrivalSpec& spec, const TimeGrid& grid, Seed seed);

/// Piecewise-linear function given by knots.
struct SampledFunction {
  std::vector<double> t;
  std::vector<double> value;
};

/// Reads and validates a `t,value` CSV: header row, strictly increasing t
/// starting at 0.0, finite values, value 0 at t = 0. Throws InputDataError.
SampledFunction read_arrival_csv(std::istream& in);
SampledFunction load_arrival_csv(const std::filesystem::path& file);

/// Linear interpolation onto the grid; throws InputDataError when the knots do
/// not cover [0, horizon].
Path interpolate_onto(const SampledFunction& fn, const TimeGrid& grid);

}  // namespace brownq
