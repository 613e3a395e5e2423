#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "brownq/path.hpp"

namespace brownq {

/// Outcome of one statistical check. Decision rule is stated in `notes`.
struct TestReport {
  std::string name;
  double statistic = 0.0;
  double threshold = 0.0;
  std::optional<double> p_value;
  std::size_t sample_size = 0;
  bool pass = false;
  std::string notes;
};

namespace cdf {
struct Normal {
  double mean;
  double variance;
};
struct Exponential {
  double rate;
};
struct Uniform01 {};
}  // namespace cdf

using CdfDescriptor = std::variant<cdf::Normal, cdf::Exponential, cdf::Uniform01>;

double evaluate_cdf(const CdfDescriptor& dist, double x);

/// P(K > lambda) for the limiting Kolmogorov distribution.
double kolmogorov_survival(double lambda);

/// sup_x |F_N(x) - F(x)|.
double ks_statistic(std::span<const double> samples, const CdfDescriptor& dist);

/// One-sample KS with asymptotic p-value; pass iff p >= alpha. Needs >= 8
/// samples.
TestReport ks_test(std::span<const double> samples, const CdfDescriptor& dist,
                   double alpha = 0.01);

/// p(t_b) - p(t_a) for every path.
std::vector<double> increments(std::span<const Path> paths, double t_a, double t_b);

/// KS of the increments over [t_a, t_b] against
/// Normal(mu (t_b - t_a), var (t_b - t_a)).
TestReport increment_normality(std::span<const Path> paths, double t_a, double t_b, double mu,
                               double var, double alpha = 0.01);
TestReport increment_normality(std::span<const double> increments, double length, double mu,
                               double var, double alpha = 0.01);

double pearson_correlation(std::span<const double> x, std::span<const double> y);

/// Pass iff |rho| <= 4 / sqrt(N). Throws DegenerateInput on zero variance.
TestReport independence_check(std::span<const double> x, std::span<const double> y);

/// Pass iff |mean - m| <= 4 sqrt(v / N) and |var / v - 1| <= 4 sqrt(2 / N).
TestReport moment_check(std::span<const double> samples, double target_mean, double target_var);

}  // namespace brownq
