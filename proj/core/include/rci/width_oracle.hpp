#pragma once

#include <functional>
#include <memory>

#include "rci/alphabet.hpp"
#include "rci/rational.hpp"
#include "rci/spec.hpp"

namespace rci {

using WidthFn = std::function<BigInt(const Word&)>;

/// Width oracles for the improvisation sets: width_i measures
/// I = L(hard) cap Sigma^n, width_a measures A = I cap L(soft).
/// Invariant consumers rely on: width_a(h) <= width_i(h) for every h.
struct WidthOraclePair {
    WidthFn width_i;
    WidthFn width_a;
};

enum class WidthBackend {
    Auto,     ///< DFA dynamic program where the specs are DFAs, else recursive.
    DfaTable, ///< Force the dynamic-program table; rejects non-DFA specs.
    Generic,  ///< Force the recursive membership-only evaluator.
};

/// Builds width oracles for an instance. Tables (when used) are built once
/// here; lookups are lazy per visited history either way, so the improviser
/// runs unchanged on tables and on membership recursion.
WidthOraclePair make_width_oracles(const RciInstance& instance,
                                   WidthBackend backend = WidthBackend::Auto);

} // namespace rci
