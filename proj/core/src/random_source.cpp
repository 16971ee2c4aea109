#include "rci/random_source.hpp"

#include <vector>

#include "rci/errors.hpp"

namespace rci {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

} // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t counter) {
    return splitmix64(splitmix64(master) ^ counter * 0x9E3779B97F4A7C15ULL);
}

std::size_t sample_weighted(std::span<const Rational> weights, RandomSource& source) {
    if (weights.empty()) throw ContractError("sample_weighted: no weights");

    // Integer weights over the common denominator.
    BigInt common_den = 1;
    for (const Rational& w : weights) {
        if (w < 0) throw ContractError("sample_weighted: negative weight");
        common_den = lcm(common_den, denominator(w));
    }
    std::vector<BigInt> cumulative(weights.size() + 1);
    cumulative[0] = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        cumulative[i + 1] =
            cumulative[i] + numerator(weights[i]) * (common_den / denominator(weights[i]));
    }
    const BigInt& total = cumulative.back();
    if (total <= 0) throw ContractError("sample_weighted: total weight is zero");

    // Uniform X over [0, total): refine the dyadic interval
    // [r/m, (r+1)/m) until [r*total/m, (r+1)*total/m) sits in one bucket.
    BigInt r = 0;
    BigInt m = 1;
    for (;;) {
        r = (r << 64) | BigInt(source.next_u64());
        m <<= 64;
        const BigInt low = (r * total) / m;
        std::size_t bucket = 0;
        while (cumulative[bucket + 1] <= low) ++bucket;
        if ((r + 1) * total <= cumulative[bucket + 1] * m) {
            return bucket;
        }
    }
}

} // namespace rci
