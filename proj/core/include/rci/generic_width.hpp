#pragma once

#include <cstdint>
#include <functional>

#include "rci/alphabet.hpp"
#include "rci/rational.hpp"
#include "rci/spec.hpp"

namespace rci {

/// A black-box specification: all the width machinery needs is a
/// deterministic membership test for words of length `horizon`.
struct MembershipOracle {
    AlphabetPtr alphabet;
    int horizon = 0;
    std::function<bool(const Word&)> test;
};

MembershipOracle membership_oracle(SpecPtr spec, int horizon);

/// Intersection of black-box specs is conjunction of membership tests.
MembershipOracle conjunction_oracle(SpecPtr a, SpecPtr b, int horizon);

struct GenericWidthOptions {
    /// On adversary turns, stop recursing once a child returns 0. Sound
    /// (min of non-negatives) and preserves the space bound.
    bool min_short_circuit = true;
    /// Optional bounded history->width cache for harness runs; 0 disables
    /// it. Off by default: this evaluator's point is the space contract,
    /// and a cache would silently grow beyond it.
    std::size_t cache_capacity = 0;
};

struct GenericWidthStats {
    std::uint64_t membership_calls = 0;
    /// Deepest recursion relative to the starting history; never exceeds
    /// horizon - |h|.
    int max_depth = 0;
};

/// width(X | h) computed recursively from the membership test alone:
/// the indicator at full length, sum over symbols on our turns, min over
/// symbols on adversary turns. Memory grows with the recursion depth
/// (horizon - |h|), never with the number of extensions. Without the
/// min short-circuit the membership-call count is exactly
/// |alphabet|^(horizon - |h|).
BigInt generic_width(const MembershipOracle& oracle, const Word& history,
                     GenericWidthStats* stats = nullptr,
                     const GenericWidthOptions& options = {});

} // namespace rci
