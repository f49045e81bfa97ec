#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

#include "pmopi/complex_matrix.hpp"

namespace pmopi {

/// Seeded random stream used throughout the simulator.
using Rng = std::mt19937_64;

/// SplitMix64 finalizer; used to decorrelate derived seeds.
std::uint64_t mix_seed(std::uint64_t x) noexcept;

/// Independent stream for (master, path...). The same path always yields the
/// same stream, so Monte-Carlo trials do not depend on execution order.
Rng derive_stream(std::uint64_t master, std::initializer_list<std::uint64_t> path);

/// Seed for a child stream drawn from a parent stream.
Rng split(Rng& parent);

/// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
Complex complex_gaussian(Rng& rng, double variance = 1.0);

/// rows x cols matrix of iid CN(0, variance) entries.
ComplexMatrix gaussian_matrix(Rng& rng, std::size_t rows, std::size_t cols, double variance = 1.0);

/// Uniform on [0, 2*pi).
double uniform_phase(Rng& rng);

}  // namespace pmopi
