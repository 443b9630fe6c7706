#pragma once

#include "cfdim/numerics/rational.hpp"

#include <cstdint>
#include <random>

namespace cfdim {

// All randomness goes through std::mt19937_64, whose output sequence is fixed
// by the standard, plus the helpers below; distributions from <random> are
// avoided because their output is implementation-defined.
using Engine = std::mt19937_64;

// Stream seed for item `index` of a run seeded with `seed` (splitmix64 mix).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// Uniform integer with exactly `bits` random bits, i.e. in [0, 2^bits).
BigInt random_bits(Engine& engine, std::size_t bits);

// Uniform integer in [lo, hi] (inclusive), by rejection.
BigInt uniform_integer(Engine& engine, const BigInt& lo, const BigInt& hi);

} // namespace cfdim
