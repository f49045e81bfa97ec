#include "pmopi/random.hpp"

#include <cmath>
#include <numbers>

namespace pmopi {

std::uint64_t mix_seed(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng derive_stream(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
  std::uint64_t state = mix_seed(master);
  for (std::uint64_t step : path) state = mix_seed(state ^ mix_seed(step + 0x632be59bd9b4e019ULL));
  return Rng(state);
}

Rng split(Rng& parent) { return Rng(mix_seed(parent())); }

Complex complex_gaussian(Rng& rng, double variance) {
  std::normal_distribution<double> normal(0.0, std::sqrt(variance / 2.0));
  const double re = normal(rng);
  const double im = normal(rng);
  return {re, im};
}

ComplexMatrix gaussian_matrix(Rng& rng, std::size_t rows, std::size_t cols, double variance) {
  ComplexMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = complex_gaussian(rng, variance);
  }
  return m;
}

double uniform_phase(Rng& rng) {
  std::uniform_real_distribution<double> uniform(0.0, 2.0 * std::numbers::pi);
  return uniform(rng);
}

}  // namespace pmopi
