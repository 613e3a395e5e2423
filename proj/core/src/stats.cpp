#include "brownq/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "brownq/error.hpp"

namespace brownq {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string describe(const CdfDescriptor& dist) {
  if (const auto* n = std::get_if<cdf::Normal>(&dist))
    return "Normal(" + fmt(n->mean) + ", " + fmt(n->variance) + ")";
  if (const auto* e = std::get_if<cdf::Exponential>(&dist)) return "Exponential(" + fmt(e->rate) + ")";
  return "Uniform(0,1)";
}

void require_size(std::size_t n, std::size_t min, const char* context) {
  if (n < min)
    throw InvalidArgument(std::string(context) + ": needs at least " + std::to_string(min) +
                          " samples, got " + std::to_string(n));
}

double mean_of(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

// Critical value of sqrt(N) D_N at level alpha under the limiting law.
double kolmogorov_critical(double alpha) {
  double lo = 1e-3, hi = 10.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (kolmogorov_survival(mid) > alpha) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double evaluate_cdf(const CdfDescriptor& dist, double x) {
  if (const auto* n = std::get_if<cdf::Normal>(&dist)) {
    if (!(n->variance > 0.0)) throw InvalidArgument("Normal cdf: variance must be positive");
    return 0.5 * std::erfc(-(x - n->mean) / std::sqrt(2.0 * n->variance));
  }
  if (const auto* e = std::get_if<cdf::Exponential>(&dist)) {
    if (!(e->rate > 0.0)) throw InvalidArgument("Exponential cdf: rate must be positive");
    return x <= 0.0 ? 0.0 : -std::expm1(-e->rate * x);
  }
  return std::clamp(x, 0.0, 1.0);
}

double kolmogorov_survival(double lambda) {
  constexpr double kTruncate = 1e-10;
  if (!(lambda > 0.0)) return 1.0;
  if (lambda < 1.0) {
    // P(K <= l) = sqrt(2 pi) / l * sum_k exp(-(2k - 1)^2 pi^2 / (8 l^2))
    const double a = std::numbers::pi * std::numbers::pi / (8.0 * lambda * lambda);
    double sum = 0.0;
    for (int k = 1; k < 1000; ++k) {
      const double m = 2.0 * k - 1.0;
      const double term = std::exp(-m * m * a);
      sum += term;
      if (term < kTruncate) break;
    }
    return std::clamp(1.0 - std::sqrt(2.0 * std::numbers::pi) / lambda * sum, 0.0, 1.0);
  }
  // P(K > l) = 2 sum_k (-1)^(k-1) exp(-2 k^2 l^2)
  double sum = 0.0;
  for (int k = 1; k < 1000; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1) ? term : -term;
    if (term < kTruncate) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

double ks_statistic(std::span<const double> samples, const CdfDescriptor& dist) {
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = evaluate_cdf(dist, sorted[i]);
    const double above = static_cast<double>(i + 1) / n - f;
    const double below = f - static_cast<double>(i) / n;
    d = std::max({d, above, below});
  }
  return d;
}

TestReport ks_test(std::span<const double> samples, const CdfDescriptor& dist, double alpha) {
  require_size(samples.size(), 8, "ks_test");
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("ks_test: alpha must lie in (0, 1)");
  const double root_n = std::sqrt(static_cast<double>(samples.size()));
  const double d = ks_statistic(samples, dist);
  const double p = kolmogorov_survival(root_n * d);

  TestReport r;
  r.name = "ks vs " + describe(dist);
  r.statistic = d;
  r.threshold = kolmogorov_critical(alpha) / root_n;
  r.p_value = p;
  r.sample_size = samples.size();
  r.pass = p >= alpha;
  r.notes = "one-sample KS, asymptotic Kolmogorov p-value; pass iff p >= alpha = " + fmt(alpha);
  return r;
}

std::vector<double> increments(std::span<const Path> paths, double t_a, double t_b) {
  std::vector<double> out;
  out.reserve(paths.size());
  for (const Path& p : paths) {
    const std::size_t a = p.grid().index_of(t_a);
    const std::size_t b = p.grid().index_of(t_b);
    out.push_back(p[b] - p[a]);
  }
  return out;
}

TestReport increment_normality(std::span<const double> incs, double length, double mu, double var,
                               double alpha) {
  if (!(var > 0.0)) throw InvalidArgument("increment_normality: var must be positive");
  if (!(length > 0.0)) throw InvalidArgument("increment_normality: interval must have positive length");
  TestReport r = ks_test(incs, cdf::Normal{mu * length, var * length}, alpha);
  r.name = "increment normality (length " + fmt(length) + ")";
  return r;
}

TestReport increment_normality(std::span<const Path> paths, double t_a, double t_b, double mu,
                               double var, double alpha) {
  if (!(t_a < t_b)) throw InvalidArgument("increment_normality: requires t_a < t_b");
  require_size(paths.size(), 8, "increment_normality");
  const auto incs = increments(paths, t_a, t_b);
  TestReport r = increment_normality(incs, t_b - t_a, mu, var, alpha);
  r.name = "increment normality [" + fmt(t_a) + ", " + fmt(t_b) + "]";
  return r;
}

double pearson_correlation(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InvalidArgument("pearson_correlation: length mismatch");
  require_size(x.size(), 2, "pearson_correlation");
  const double mx = mean_of(x);
  const double my = mean_of(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (!(sxx > 0.0) || !(syy > 0.0)) throw DegenerateInput("pearson_correlation: zero variance");
  return sxy / std::sqrt(sxx * syy);
}

TestReport independence_check(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InvalidArgument("independence_check: length mismatch");
  require_size(x.size(), 30, "independence_check");
  const double rho = pearson_correlation(x, y);
  const double n = static_cast<double>(x.size());

  const double mx = mean_of(x);
  const double my = mean_of(y);
  std::size_t concordant = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    if ((x[i] - mx) * (y[i] - my) > 0.0) ++concordant;

  TestReport r;
  r.name = "independence (Pearson correlation)";
  r.statistic = std::abs(rho);
  r.threshold = 4.0 / std::sqrt(n);
  r.sample_size = x.size();
  r.pass = r.statistic <= r.threshold;
  r.notes = "rho = " + fmt(rho) + "; pass iff |rho| <= 4/sqrt(N); same-sign quadrant fraction " +
            fmt(static_cast<double>(concordant) / n) +
            "; zero correlation is necessary, not sufficient, for independence";
  return r;
}

TestReport moment_check(std::span<const double> samples, double target_mean, double target_var) {
  require_size(samples.size(), 30, "moment_check");
  if (!(target_var > 0.0)) throw InvalidArgument("moment_check: target_var must be positive");
  const double n = static_cast<double>(samples.size());
  const double m = mean_of(samples);
  double ss = 0.0;
  for (double v : samples) ss += (v - m) * (v - m);
  const double var = ss / (n - 1.0);

  const double mean_z = std::abs(m - target_mean) / std::sqrt(target_var / n);
  const double var_z = std::abs(var / target_var - 1.0) / std::sqrt(2.0 / n);

  TestReport r;
  r.name = "moment check";
  r.statistic = std::max(mean_z, var_z);
  r.threshold = 4.0;
  r.sample_size = samples.size();
  r.pass = mean_z <= 4.0 && var_z <= 4.0;
  r.notes = "mean " + fmt(m) + " (target " + fmt(target_mean) + "), variance " + fmt(var) +
            " (target " + fmt(target_var) + "); statistic = max standardized deviation, pass iff <= 4";
  return r;
}

}  // namespace brownq
