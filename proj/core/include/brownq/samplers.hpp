#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "brownq/grid.hpp"
#include "brownq/path.hpp"
#include "brownq/seed.hpp"

namespace brownq {

/// start + drift * t + sigma * B_t on the grid, built from exact Gaussian
/// increments N(drift * dt, sigma^2 * dt).
Path sample_brownian(const TimeGrid& grid, double drift, double sigma, double start, Seed seed);

/// Draw from the density rate * exp(-rate * x), x > 0 (mean 1 / rate).
double sample_exponential(double rate, Seed seed);
double sample_exponential(double rate, Engine& engine);

/// Draw with P(G = k) = (1 - p) p^k on k = 0, 1, 2, ...; mean p / (1 - p).
///
/// This is the stationary M/M/1 queue length at load p. With
/// p = 1 - c / sqrt(n), G / sqrt(n) converges to Exponential(c).
std::uint64_t sample_geometric(double p, Seed seed);
std::uint64_t sample_geometric(double p, Engine& engine);

/// Event times of a homogeneous Poisson process on [0, horizon], generated
/// from exponential inter-arrival gaps. Sorted ascending.
std::vector<double> sample_poisson_events(double rate, double horizon, Seed seed);

/// values[i] = #{events <= t_i}. Events must be sorted.
Path counting_path(std::span<const double> events, const TimeGrid& grid);

Path sample_poisson_path(double rate, const TimeGrid& grid, Seed seed);

}  // namespace brownq
