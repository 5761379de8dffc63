#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace qlie::detail {

// mt19937_64 output is fully specified by the standard; the transforms below
// avoid std::*_distribution, whose sequences vary across standard libraries,
// so seeded fixtures and searches are reproducible bit-for-bit everywhere.

inline double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

inline double uniform_in(std::mt19937_64& gen, double lo, double hi) {
  return lo + (hi - lo) * uniform01(gen);
}

inline std::uint64_t uniform_index(std::mt19937_64& gen, std::uint64_t count) {
  return gen() % count;
}

inline double standard_normal(std::mt19937_64& gen) {
  // Box-Muller; first uniform shifted into (0, 1].
  const double u1 = (static_cast<double>(gen() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = uniform01(gen);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.141592653589793238462643 * u2);
}

}  // namespace qlie::detail
