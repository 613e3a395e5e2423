#pragma once

#include <concepts>
#include <cstdint>
#include <random>
#include <type_traits>

namespace brownq {

/// Purpose tags used as labels when deriving substreams.
enum class Purpose : std::uint64_t {
  Arrival = 1,
  Comparison,
  ServiceNoise,
  Workload,
  BurkeArrival,
  BurkeService,
  BurkeWorkload,
  PoissonArrival,
  PoissonService,
  GeometricWorkload,
  CouplingNoiseW,
  CouplingNoiseB,
  CouplingWorkload,
  Pilot,
  Batch,
  Selftest,
};

/// 64-bit finalizer of splitmix64; a bijection on uint64.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

template <class T>
concept SeedLabel = std::integral<T> || std::is_enum_v<T>;

/// Splittable seed. child(a, b) == child(a).child(b), and derivation depends
/// only on (master, labels), never on call order, so replicates can be
/// dispatched in any order or in parallel.
class Seed {
 public:
  constexpr explicit Seed(std::uint64_t master) noexcept : value_(master) {}

  constexpr std::uint64_t value() const noexcept { return value_; }

  template <SeedLabel... Labels>
  constexpr Seed child(Labels... labels) const noexcept {
    std::uint64_t h = value_;
    ((h = mix64(h ^ mix64(static_cast<std::uint64_t>(labels) + 0x632be59bd9b4e019ULL))), ...);
    return Seed{h};
  }

  friend constexpr bool operator==(Seed, Seed) = default;

 private:
  std::uint64_t value_;
};

using Engine = std::mt19937_64;

inline Engine make_engine(Seed seed) { return Engine{seed.value()}; }

}  // namespace brownq
