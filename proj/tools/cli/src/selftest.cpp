#include <algorithm>
#include <cmath>
#include <random>

#include "brownq/cli/experiments.hpp"
#include "brownq/reflection.hpp"
#include "brownq/samplers.hpp"
#include "brownq/tandem.hpp"

namespace brownq::cli {

namespace {

constexpr std::size_t kPairs = 1000;
constexpr std::size_t kMaxSteps = 512;

struct Triple {
  Path f1, f2, g;
};

// Brownian-with-drift barriers and a driver started at or below both.
Triple random_triple(Seed seed) {
  Engine engine = make_engine(seed.child(0));
  std::uniform_int_distribution<std::size_t> steps(1, kMaxSteps);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const TimeGrid grid{0.001 + unit(engine), steps(engine)};
  auto draw = [&](std::uint64_t label, double start) {
    const double drift = 4.0 * unit(engine) - 2.0;
    const double sigma = 0.1 + 3.0 * unit(engine);
    return sample_brownian(grid, drift, sigma, start, seed.child(label));
  };
  const double s1 = 10.0 * unit(engine) - 5.0;
  const double s2 = 10.0 * unit(engine) - 5.0;
  // One in four drivers starts exactly at the lower barrier.
  const double gap = unit(engine) < 0.25 ? 0.0 : 2.0 * unit(engine);
  Path f1 = draw(1, s1);
  Path f2 = draw(2, s2);
  Path g = draw(3, std::min(s1, s2) - gap);
  return {std::move(f1), std::move(f2), std::move(g)};
}

}  // namespace

ExperimentOutput run_selftest(const RunConfig& cfg) {
  const Seed base = Seed{cfg.seed}.child(Purpose::Selftest);
  std::size_t oracle_mismatches = 0;
  double dual_error = 0.0;
  double lipschitz_excess = -1e300;
  double balance_error = 0.0;
  double negativity = 0.0;

  for (std::size_t k = 0; k < kPairs; ++k) {
    const Triple t = random_triple(base.child(k));
    const Path fast = reflect_under(t.f1, t.g);
    if (!bitwise_equal(fast, brute_force_reflect(t.f1, t.g))) ++oracle_mismatches;

    dual_error = std::max(dual_error, sup_distance(fast, t.f1 - skorokhod_reflect(t.f1 - t.g)));

    const Path other = reflect_under(t.f2, t.g);
    lipschitz_excess = std::max(lipschitz_excess, sup_distance(fast, other) - sup_distance(t.f1, t.f2));

    const QueueDecomposition q = queue_op(t.f1, t.g);
    balance_error = std::max(balance_error, sup_distance(q.departure + q.queue_length, t.f1));
    negativity = std::max(negativity, -q.queue_length.min());
  }

  ExperimentOutput out{Experiment::selftest, {}, {}};
  auto add = [&](std::string name, double statistic, double threshold, std::string notes) {
    TestReport r;
    r.name = std::move(name);
    r.statistic = statistic;
    r.threshold = threshold;
    r.sample_size = kPairs;
    r.pass = statistic <= threshold;
    r.notes = std::move(notes) + "; pass iff statistic <= threshold";
    out.reports.push_back(std::move(r));
  };
  add("reflection oracle equivalence", static_cast<double>(oracle_mismatches), 0.0,
      "statistic = pairs where the O(n) kernel and the O(n^2) oracle differ bitwise");
  add("dual form L_f(g) = f - R(f - g)", dual_error, kFpTolerance, "statistic = max sup-norm error");
  add("Lipschitz sup|L_f1(g) - L_f2(g)| <= sup|f1 - f2|", lipschitz_excess, kFpTolerance,
      "statistic = max (lhs - rhs)");
  add("mass balance departure + queue length = arrival", balance_error, kFpTolerance,
      "statistic = max sup-norm error");
  add("queue length non-negative", negativity, kFpTolerance, "statistic = max negative excursion");
  return out;
}

}  // namespace brownq::cli
