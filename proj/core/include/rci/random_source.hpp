#pragma once

#include <cstdint>
#include <random>
#include <span>

#include "rci/rational.hpp"

namespace rci {

/// A deterministic stream of raw 64-bit draws. Virtual so tests can feed
/// scripted draws.
class RandomSource {
public:
    virtual ~RandomSource() = default;
    virtual std::uint64_t next_u64() = 0;
};

class Mt19937Source final : public RandomSource {
public:
    explicit Mt19937Source(std::uint64_t seed) : engine_(seed) {}
    std::uint64_t next_u64() override { return engine_(); }

private:
    std::mt19937_64 engine_;
};

/// Counter-splitting for parallel episodes: independent streams derived
/// from one master seed (splitmix64 of master xor golden-ratio * counter).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t counter);

/// Draws index i with probability weights[i] / sum(weights), exactly.
/// Weights are brought to a common denominator and a uniform integer below
/// the total is drawn by refining 64-bit chunks until the cumulative bucket
/// is decided; no draw is ever discarded and no floating point is involved.
/// Requires at least one positive weight; zero-weight indices are never
/// returned.
std::size_t sample_weighted(std::span<const Rational> weights, RandomSource& source);

} // namespace rci
