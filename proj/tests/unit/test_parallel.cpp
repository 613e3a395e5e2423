#include <stdexcept>

#include "brownq/parallel.hpp"
#include "brownq/samplers.hpp"
#include "brownq/tandem.hpp"
#include "doctest.h"

using namespace brownq;

TEST_CASE("parallel_map keeps results in index order") {
  auto square = [](std::size_t i) { return i * i; };
  for (std::size_t threads : {1u, 2u, 3u, 8u}) {
    const auto out = parallel_map(100, square, threads);
    REQUIRE(out.size() == 100);
    for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == i * i);
  }
  CHECK(parallel_map(0, square, 4).empty());
}

TEST_CASE("parallel_map output does not depend on the worker count") {
  const TimeGrid grid = make_grid(1e-2, 1.0);
  auto draw = [&](std::size_t r) { return sample_brownian(grid, 0.0, 1.0, 0.0, Seed{9}.child(r)).back(); };
  const auto serial = parallel_map(64, draw, 1);
  const auto wide = parallel_map(64, draw, 7);
  CHECK(serial == wide);

  CHECK(estimate_coupling_prob(0.2, 1.0, grid, 300, Seed{4}) ==
        estimate_coupling_prob(0.2, 1.0, grid, 300, Seed{4}));
}

TEST_CASE("parallel_map rethrows the lowest failing index") {
  auto fn = [](std::size_t i) -> int {
    if (i == 13 || i == 40) throw std::runtime_error("index " + std::to_string(i));
    return static_cast<int>(i);
  };
  for (std::size_t threads : {1u, 4u}) {
    try {
      parallel_map(64, fn, threads);
      FAIL("expected an exception");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()) == "index 13");
    }
  }
}

TEST_CASE("resolve_threads") {
  CHECK(resolve_threads(3) == 3);
  CHECK(resolve_threads(0) >= 1);
}
