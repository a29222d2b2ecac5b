#pragma once

#include <cstdint>
#include <random>

#include "zenosta/types.hpp"

namespace zenosta {

/// splitmix64 mixing; used to derive independent stream seeds.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent stream for trajectory/instance `idx` under a scenario seed.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t idx = 0) {
  return std::mt19937_64(mix64(mix64(seed) ^ mix64(idx + 1)));
}

Mat random_hermitian(int dim, std::mt19937_64& gen);
Mat random_anti_hermitian(int dim, std::mt19937_64& gen);
Mat random_unitary(int dim, std::mt19937_64& gen);
Vec random_pure_state(int dim, std::mt19937_64& gen);
Mat random_density_matrix(int dim, std::mt19937_64& gen);

}  // namespace zenosta
