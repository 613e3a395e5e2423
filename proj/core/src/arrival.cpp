#include "brownq/arrival.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <system_error>

#include "brownq/error.hpp"
#include "brownq/samplers.hpp"

namespace brownq {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw InvalidArgument(std::string(what) + " must be positive");
}

std::optional<double> parse_double(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return out;
}

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return parts;
}

Path sample_ou(const arrival::OrnsteinUhlenbeck& ou, const TimeGrid& grid, Seed seed) {
  Engine engine = make_engine(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double decay = std::exp(-ou.theta * grid.dt());
  const double sd = ou.sigma * std::sqrt(-std::expm1(-2.0 * ou.theta * grid.dt()) / (2.0 * ou.theta));
  std::vector<double> v(grid.size());
  v[0] = 0.0;
  for (std::size_t i = 1; i < v.size(); ++i) v[i] = decay * v[i - 1] + sd * normal(engine);
  return Path{grid, std::move(v)};
}

Path sample_sinusoid(const arrival::Sinusoid& s, const TimeGrid& grid) {
  std::vector<double> v(grid.size());
  const double omega = 2.0 * std::numbers::pi / s.period;
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = s.amplitude * std::sin(omega * grid.time(i));
  return Path{grid, std::move(v)};
}

}  // namespace

void validate(const ArrivalSpec& spec) {
  std::visit(Overloaded{
                 [](const arrival::Zero&) {},
                 [](const arrival::StandardBM&) {},
                 [](const arrival::DriftedBM& d) {
                   if (!std::isfinite(d.drift)) throw InvalidArgument("drifted arrival: drift must be finite");
                   require_positive(d.sigma, "drifted arrival: sigma");
                 },
                 [](const arrival::OrnsteinUhlenbeck& ou) {
                   require_positive(ou.theta, "OU arrival: theta");
                   require_positive(ou.sigma, "OU arrival: sigma");
                 },
                 [](const arrival::Sinusoid& s) {
                   if (!std::isfinite(s.amplitude))
                     throw InvalidArgument("sinusoid arrival: amplitude must be finite");
                   require_positive(s.period, "sinusoid arrival: period");
                 },
                 [](const arrival::FromFile& f) {
                   if (f.file.empty()) throw InvalidArgument("file arrival: empty path");
                 },
             },
             spec);
}

ArrivalSpec parse_arrival(std::string_view text) {
  constexpr std::string_view file_prefix = "file:";
  if (text.substr(0, file_prefix.size()) == file_prefix)
    return arrival::FromFile{std::filesystem::path(std::string(text.substr(file_prefix.size())))};

  const auto parts = split(text, ':');
  const auto& kind = parts.front();
  auto number = [&](std::size_t i) {
    auto v = parse_double(parts[i]);
    if (!v) throw InvalidArgument("arrival spec '" + std::string(text) + "': bad number");
    return *v;
  };
  auto expect = [&](std::size_t n) {
    if (parts.size() != n + 1)
      throw InvalidArgument("arrival spec '" + std::string(text) + "': expected " +
                            std::to_string(n) + " parameters");
  };

  ArrivalSpec spec;
  if (kind == "zero") {
    expect(0);
    spec = arrival::Zero{};
  } else if (kind == "bm") {
    expect(0);
    spec = arrival::StandardBM{};
  } else if (kind == "drifted") {
    expect(2);
    spec = arrival::DriftedBM{number(1), number(2)};
  } else if (kind == "ou") {
    expect(2);
    spec = arrival::OrnsteinUhlenbeck{number(1), number(2)};
  } else if (kind == "sine") {
    expect(2);
    spec = arrival::Sinusoid{number(1), number(2)};
  } else {
    throw InvalidArgument("unknown arrival kind '" + std::string(kind) + "'");
  }
  validate(spec);
  return spec;
}

std::string to_string(const ArrivalSpec& spec) {
  return std::visit(
      Overloaded{
          [](const arrival::Zero&) -> std::string { return "zero"; },
          [](const arrival::StandardBM&) -> std::string { return "bm"; },
          [](const arrival::DriftedBM& d) { return "drifted:" + fmt_double(d.drift) + ":" + fmt_double(d.sigma); },
          [](const arrival::OrnsteinUhlenbeck& ou) {
            return "ou:" + fmt_double(ou.theta) + ":" + fmt_double(ou.sigma);
          },
          [](const arrival::Sinusoid& s) {
            return "sine:" + fmt_double(s.amplitude) + ":" + fmt_double(s.period);
          },
          [](const arrival::FromFile& f) { return "file:" + f.file.string(); },
      },
      spec);
}

Path sample_arrival(const ArrivalSpec& spec, const TimeGrid& grid, Seed seed) {
  validate(spec);
  return std::visit(
      Overloaded{
          [&](const arrival::Zero&) { return Path::constant(grid, 0.0); },
          [&](const arrival::StandardBM&) { return sample_brownian(grid, 0.0, 1.0, 0.0, seed); },
          [&](const arrival::DriftedBM& d) { return sample_brownian(grid, d.drift, d.sigma, 0.0, seed); },
          [&](const arrival::OrnsteinUhlenbeck& ou) { return sample_ou(ou, grid, seed); },
          [&](const arrival::Sinusoid& s) { return sample_sinusoid(s, grid); },
          [&](const arrival::FromFile& f) { return interpolate_onto(load_arrival_csv(f.file), grid); },
      },
      spec);
}

SampledFunction read_arrival_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InputDataError("arrival CSV: empty input");
  {
    const auto header = split(line, ',');
    if (header.size() != 2) throw InputDataError("arrival CSV: header must have two columns");
    if (parse_double(header[0]) && parse_double(header[1]))
      throw InputDataError("arrival CSV: header row missing");
  }

  SampledFunction fn;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto cols = split(line, ',');
    const std::string where = "arrival CSV line " + std::to_string(line_no);
    if (cols.size() != 2) throw InputDataError(where + ": expected two columns");
    const auto t = parse_double(cols[0]);
    const auto v = parse_double(cols[1]);
    if (!t || !v) throw InputDataError(where + ": unparsable number");
    if (!std::isfinite(*t) || !std::isfinite(*v)) throw InputDataError(where + ": non-finite entry");
    if (!fn.t.empty() && !(*t > fn.t.back())) throw InputDataError(where + ": t not strictly increasing");
    fn.t.push_back(*t);
    fn.value.push_back(*v);
  }
  if (fn.t.empty()) throw InputDataError("arrival CSV: no data rows");
  if (fn.t.front() != 0.0) throw InputDataError("arrival CSV: t must start at 0.0");
  if (fn.value.front() != 0.0) throw InputDataError("arrival CSV: value at t = 0 must be 0");
  return fn;
}

SampledFunction load_arrival_csv(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw InputDataError("cannot open arrival CSV '" + file.string() + "'");
  return read_arrival_csv(in);
}

Path interpolate_onto(const SampledFunction& fn, const TimeGrid& grid) {
  if (fn.t.empty() || fn.t.size() != fn.value.size())
    throw InputDataError("interpolate_onto: malformed knots");
  const double horizon = grid.horizon();
  if (fn.t.back() < horizon * (1.0 - 1e-12))
    throw InputDataError("arrival data ends at t = " + fmt_double(fn.t.back()) +
                         " before the horizon " + fmt_double(horizon));

  std::vector<double> v(grid.size());
  std::size_t j = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double t = std::min(grid.time(i), fn.t.back());
    while (j + 1 < fn.t.size() && fn.t[j + 1] < t) ++j;
    if (t == fn.t[j] || j + 1 == fn.t.size()) {
      v[i] = fn.value[j];
    } else if (t == fn.t[j + 1]) {
      v[i] = fn.value[j + 1];
    } else {
      const double w = (t - fn.t[j]) / (fn.t[j + 1] - fn.t[j]);
      v[i] = fn.value[j] + w * (fn.value[j + 1] - fn.value[j]);
    }
  }
  return Path{grid, std::move(v)};
}

}  // namespace brownq
