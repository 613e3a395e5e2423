#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "brownq/arrival.hpp"
#include "brownq/error.hpp"
#include "brownq/grid.hpp"
#include "brownq/path.hpp"
#include "brownq/samplers.hpp"
#include "brownq/seed.hpp"
#include "doctest.h"

using namespace brownq;

namespace {

double mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double variance(const std::vector<double>& v) {
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

std::vector<double> increments_of(const Path& p) {
  std::vector<double> out;
  for (std::size_t i = 1; i < p.size(); ++i) out.push_back(p[i] - p[i - 1]);
  return out;
}

}  // namespace

TEST_CASE("make_grid") {
  const TimeGrid a = make_grid(0.5, 1.0);
  CHECK(a.n_steps() == 2);
  CHECK(a.time(0) == 0.0);
  CHECK(a.time(1) == 0.5);
  CHECK(a.time(2) == 1.0);
  CHECK(make_grid(1.0, 1.0).n_steps() == 1);
  CHECK(make_grid(1e-3, 10.0).n_steps() == 10000);

  const TimeGrid odd = make_grid(0.3, 1.0);
  CHECK(std::abs(odd.horizon() - 1.0) <= 0.15);

  CHECK_THROWS_AS(make_grid(0.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(make_grid(-1.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(make_grid(0.1, 0.0), InvalidArgument);
  CHECK_THROWS_AS(make_grid(1.0, 0.2), InvalidArgument);
  CHECK_THROWS_AS(TimeGrid(0.1, 0), InvalidArgument);
}

TEST_CASE("grid index lookup") {
  const TimeGrid g = make_grid(1e-3, 2.0);
  CHECK(g.index_of(1.0) == 1000);
  CHECK(g.index_of(2.0) == 2000);
  CHECK_THROWS_AS(g.index_of(0.0005), InvalidArgument);
  CHECK_THROWS_AS(g.index_of(2.5), InvalidArgument);
}

TEST_CASE("Path rejects non-finite values and wrong lengths") {
  const TimeGrid g{1.0, 2};
  CHECK_THROWS_AS(Path(g, {0.0, 1.0}), InvalidArgument);
  CHECK_THROWS_AS(Path(g, {0.0, NAN, 1.0}), InvalidArgument);
  CHECK_THROWS_AS(Path(g, {0.0, INFINITY, 1.0}), InvalidArgument);
  const Path p{g, {0.0, 1.0, 2.0}};
  CHECK(p.back() == 2.0);
  CHECK_THROWS_AS(p + Path::constant(TimeGrid{0.5, 2}, 0.0), InvalidArgument);
}

TEST_CASE("subsample and recenter") {
  const TimeGrid fine{0.25, 8};
  const Path p = Path::linear(fine, 2.0) + 1.0;
  const Path coarse = subsample(p, TimeGrid{0.5, 4});
  CHECK(coarse[1] == doctest::Approx(2.0));
  CHECK(coarse[4] == doctest::Approx(5.0));
  CHECK(recenter(p).front() == 0.0);
  CHECK_THROWS_AS(subsample(p, TimeGrid{0.3, 3}), InvalidArgument);
}

TEST_CASE("seed derivation") {
  const Seed s{42};
  CHECK(s.child(1, 2) == s.child(1).child(2));
  CHECK(s.child(1, Purpose::Workload) == s.child(1, Purpose::Workload));
  CHECK_FALSE(s.child(1) == s.child(2));
  CHECK_FALSE(s.child(1, 2) == s.child(2, 1));
  CHECK_FALSE(Seed{1}.child(0) == Seed{2}.child(0));
}

TEST_CASE("substreams for distinct labels are uncorrelated") {
  constexpr std::size_t n = 1'000'000;
  Engine a = make_engine(Seed{7}.child(1, Purpose::ServiceNoise));
  Engine b = make_engine(Seed{7}.child(2, Purpose::ServiceNoise));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double sxy = 0, sx = 0, sy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = u(a), y = u(b);
    sx += x;
    sy += y;
    sxy += x * y;
    sxx += x * x;
    syy += y * y;
  }
  const double nn = static_cast<double>(n);
  const double cov = sxy / nn - (sx / nn) * (sy / nn);
  const double rho = cov / std::sqrt((sxx / nn - (sx / nn) * (sx / nn)) * (syy / nn - (sy / nn) * (sy / nn)));
  CHECK(std::abs(rho) < 4.0 / std::sqrt(nn));
}

TEST_CASE("sample_brownian") {
  const TimeGrid grid = make_grid(1e-3, 1000.0);  // 10^6 increments
  SUBCASE("increment moments") {
    const double drift = 0.7, sigma = 1.3;
    const auto inc = increments_of(sample_brownian(grid, drift, sigma, 0.0, Seed{11}));
    REQUIRE(inc.size() == 1'000'000);
    const double n = static_cast<double>(inc.size());
    const double dt = grid.dt();
    CHECK(std::abs(mean(inc) - drift * dt) <= 4.0 * sigma * std::sqrt(dt / n));
    // Variance standard error sigma^2 dt sqrt(2 / n); band of 5.
    CHECK(std::abs(variance(inc) - sigma * sigma * dt) <= 5.0 * sigma * sigma * dt * std::sqrt(2.0 / n));
  }
  SUBCASE("start value and determinism") {
    const TimeGrid small = make_grid(0.01, 1.0);
    const Path p = sample_brownian(small, 0.0, 1.0, 5.0, Seed{3});
    CHECK(p[0] == 5.0);
    CHECK(bitwise_equal(p, sample_brownian(small, 0.0, 1.0, 5.0, Seed{3})));
    CHECK_FALSE(bitwise_equal(p, sample_brownian(small, 0.0, 1.0, 5.0, Seed{4})));
  }
  CHECK_THROWS_AS(sample_brownian(grid, 0.0, 0.0, 0.0, Seed{1}), InvalidArgument);
  CHECK_THROWS_AS(sample_brownian(grid, 0.0, -1.0, 0.0, Seed{1}), InvalidArgument);
}

TEST_CASE("sample_exponential") {
  constexpr std::size_t n = 1'000'000;
  Engine engine = make_engine(Seed{5});
  std::vector<double> draws(n);
  for (auto& d : draws) d = sample_exponential(2.0, engine);
  CHECK(std::abs(mean(draws) - 0.5) <= 4.0 * 0.5 / 1000.0);
  CHECK(*std::min_element(draws.begin(), draws.end()) > 0.0);

  Engine unit = make_engine(Seed{6});
  std::size_t above = 0;
  for (std::size_t i = 0; i < n; ++i) above += sample_exponential(1.0, unit) > 1.0;
  CHECK(std::abs(static_cast<double>(above) / n - std::exp(-1.0)) <= 0.002);

  // Seed form: each draw from its own substream.
  std::vector<double> seeded(20000);
  for (std::size_t i = 0; i < seeded.size(); ++i) seeded[i] = sample_exponential(2.0, Seed{9}.child(i));
  CHECK(std::abs(mean(seeded) - 0.5) <= 4.0 * 0.5 / std::sqrt(20000.0));
  CHECK(sample_exponential(2.0, Seed{9}.child(3)) == seeded[3]);

  CHECK_THROWS_AS(sample_exponential(0.0, Seed{1}), InvalidArgument);
  CHECK_THROWS_AS(sample_exponential(-2.0, Seed{1}), InvalidArgument);
}

TEST_CASE("sample_geometric") {
  constexpr std::size_t n = 1'000'000;
  Engine engine = make_engine(Seed{8});
  double sum = 0.0;
  std::size_t zeros = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto g = sample_geometric(0.5, engine);
    sum += static_cast<double>(g);
    zeros += g == 0;
  }
  CHECK(std::abs(sum / n - 1.0) <= 0.01);
  // P(G = 0) = 1 - p: the support starts at zero.
  CHECK(std::abs(static_cast<double>(zeros) / n - 0.5) <= 4.0 * std::sqrt(0.25 / n));

  // p = lambda_n with c = 1, n = 10^4: mean of G / sqrt(n) is lambda_n / c = 0.99.
  const double p = 1.0 - 1.0 / 100.0;
  Engine heavy = make_engine(Seed{10});
  double scaled = 0.0;
  for (std::size_t i = 0; i < 100'000; ++i) scaled += static_cast<double>(sample_geometric(p, heavy)) / 100.0;
  CHECK(std::abs(scaled / 100'000.0 - 0.99) <= 0.02);

  CHECK_THROWS_AS(sample_geometric(0.0, Seed{1}), InvalidArgument);
  CHECK_THROWS_AS(sample_geometric(1.0, Seed{1}), InvalidArgument);
  CHECK_THROWS_AS(sample_geometric(1.5, Seed{1}), InvalidArgument);
}

TEST_CASE("sample_poisson_path") {
  const TimeGrid grid = make_grid(1.0, 10000.0);
  const Path p = sample_poisson_path(1.0, grid, Seed{12});
  CHECK(p[0] == 0.0);
  for (std::size_t i = 1; i < p.size(); ++i) REQUIRE(p[i] >= p[i - 1]);
  for (std::size_t i = 0; i < p.size(); ++i) REQUIRE(p[i] == std::floor(p[i]));
  CHECK(std::abs(p.back() / 10000.0 - 1.0) <= 0.04);

  CHECK(sample_poisson_events(3.0, 50.0, Seed{2}) == sample_poisson_events(3.0, 50.0, Seed{2}));
  CHECK_THROWS_AS(sample_poisson_path(0.0, grid, Seed{1}), InvalidArgument);
}

TEST_CASE("counting_path") {
  const std::vector<double> events{0.2, 0.5, 0.5, 1.7};
  const Path p = counting_path(events, TimeGrid{0.5, 4});
  CHECK(std::vector<double>(p.values().begin(), p.values().end()) == std::vector<double>{0, 3, 3, 3, 4});
}

TEST_CASE("sample_arrival variants") {
  const TimeGrid grid = make_grid(0.25, 1.0);
  const Path zero = sample_arrival(arrival::Zero{}, grid, Seed{1});
  for (double v : zero.values()) CHECK(v == 0.0);

  const Path sine = sample_arrival(arrival::Sinusoid{1.0, 1.0}, grid, Seed{1});
  const double expected[] = {0.0, 1.0, 0.0, -1.0, 0.0};
  for (std::size_t i = 0; i < 5; ++i) CHECK(std::abs(sine[i] - expected[i]) <= 1e-15);
  CHECK(std::abs(sine[2]) < 1e-15);

  const TimeGrid fine = make_grid(1e-3, 1.0);
  CHECK(bitwise_equal(sample_arrival(arrival::StandardBM{}, fine, Seed{4}),
                      sample_brownian(fine, 0.0, 1.0, 0.0, Seed{4})));
  CHECK(sample_arrival(arrival::DriftedBM{0.3, 2.0}, fine, Seed{4})[0] == 0.0);

  CHECK_THROWS_AS(sample_arrival(arrival::DriftedBM{0.0, 0.0}, fine, Seed{4}), InvalidArgument);
  CHECK_THROWS_AS(sample_arrival(arrival::Sinusoid{1.0, 0.0}, fine, Seed{4}), InvalidArgument);
  CHECK_THROWS_AS(sample_arrival(arrival::OrnsteinUhlenbeck{-1.0, 1.0}, fine, Seed{4}), InvalidArgument);
}

TEST_CASE("OU arrival uses the exact Gaussian transition") {
  // Stationary variance sigma^2 / (2 theta) is reached at the end of a long
  // horizon; the lag-one autocorrelation of the chain is exp(-theta dt).
  const double theta = 2.0, sigma = 1.5;
  const TimeGrid grid{0.5, 200000};
  const Path p = sample_arrival(arrival::OrnsteinUhlenbeck{theta, sigma}, grid, Seed{13});
  CHECK(p[0] == 0.0);
  std::vector<double> v(p.values().begin() + 100, p.values().end());
  const double stationary = sigma * sigma / (2.0 * theta);
  CHECK(std::abs(variance(v) / stationary - 1.0) < 0.03);

  double num = 0.0, den = 0.0;
  const double m = mean(v);
  for (std::size_t i = 1; i < v.size(); ++i) num += (v[i] - m) * (v[i - 1] - m);
  for (double x : v) den += (x - m) * (x - m);
  CHECK(std::abs(num / den - std::exp(-theta * grid.dt())) < 0.01);
}

TEST_CASE("arrival spec text form") {
  CHECK(std::holds_alternative<arrival::Zero>(parse_arrival("zero")));
  CHECK(std::holds_alternative<arrival::StandardBM>(parse_arrival("bm")));
  const auto s = parse_arrival("sine:2:0.5");
  REQUIRE(std::holds_alternative<arrival::Sinusoid>(s));
  CHECK(std::get<arrival::Sinusoid>(s).amplitude == 2.0);
  CHECK(to_string(s) == "sine:2:0.5");
  CHECK(to_string(parse_arrival("ou:1.5:0.25")) == "ou:1.5:0.25");
  CHECK(to_string(parse_arrival("file:/tmp/a:b.csv")) == "file:/tmp/a:b.csv");
  CHECK_THROWS_AS(parse_arrival("sine:2"), InvalidArgument);
  CHECK_THROWS_AS(parse_arrival("sine:2:x"), InvalidArgument);
  CHECK_THROWS_AS(parse_arrival("levy"), InvalidArgument);
  CHECK_THROWS_AS(parse_arrival("drifted:0:-1"), InvalidArgument);
}

TEST_CASE("arrival CSV") {
  const TimeGrid grid{0.25, 4};
  SUBCASE("interpolation") {
    std::istringstream in("t,value\n0.0,0\n0.5,1\n1.0,-1\n");
    const Path p = interpolate_onto(read_arrival_csv(in), grid);
    CHECK(p[0] == 0.0);
    CHECK(p[1] == doctest::Approx(0.5));
    CHECK(p[2] == 1.0);
    CHECK(p[3] == doctest::Approx(0.0));
    CHECK(p[4] == -1.0);
  }
  SUBCASE("validation") {
    auto bad = [](const char* text) {
      std::istringstream in(text);
      return read_arrival_csv(in);
    };
    CHECK_THROWS_AS(bad(""), InputDataError);
    CHECK_THROWS_AS(bad("0,0\n1,1\n"), InputDataError);              // no header
    CHECK_THROWS_AS(bad("t,value\n0,1\n1,1\n"), InputDataError);     // non-zero start
    CHECK_THROWS_AS(bad("t,value\n0.1,0\n1,1\n"), InputDataError);   // t does not start at 0
    CHECK_THROWS_AS(bad("t,value\n0,0\n1,1\n1,2\n"), InputDataError);  // not increasing
    CHECK_THROWS_AS(bad("t,value\n0,0\n1,nan\n"), InputDataError);
    CHECK_THROWS_AS(bad("t,value\n0,0\n1,inf\n"), InputDataError);
    CHECK_THROWS_AS(bad("t,value\n0,0\n1\n"), InputDataError);
    std::istringstream short_in("t,value\n0,0\n0.5,1\n");
    CHECK_THROWS_AS(interpolate_onto(read_arrival_csv(short_in), grid), InputDataError);
  }
  SUBCASE("file-backed spec") {
    const auto file = std::filesystem::temp_directory_path() / "brownq_test_arrival.csv";
    {
      std::ofstream out(file);
      out << "t,value\n0,0\n2,4\n";
    }
    const Path p = sample_arrival(arrival::FromFile{file}, grid, Seed{1});
    CHECK(p[4] == doctest::Approx(2.0));
    std::filesystem::remove(file);
    CHECK_THROWS_AS(sample_arrival(arrival::FromFile{file}, grid, Seed{1}), InputDataError);
  }
}
