#pragma once

#include <cstdint>
#include <random>

#include "structcat/concrete.hpp"

namespace structcat {

std::uint64_t splitmix64(std::uint64_t& state);

// Sub-seed for trial `index` of a run seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// Uniform in [0, bound), bound > 0. Platform-stable, unlike the standard
// distributions.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

struct RandomCategoryConfig {
  std::size_t max_objects = 4;
  std::size_t max_morphisms = 40;
  int max_carrier = 2;  // at most 3
};

// A random concrete category over Set_fin(max_carrier): objects carry
// random carriers, hom-sets are random sets of functions closed under
// composition. Table form, validated on construction. Deterministic in seed.
ConcreteCategory random_concrete_category(std::uint64_t seed, const RandomCategoryConfig& config);

}  // namespace structcat
