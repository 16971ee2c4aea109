#include "rci/generic_width.hpp"

#include <map>

#include "rci/errors.hpp"

namespace rci {

MembershipOracle membership_oracle(SpecPtr spec, int horizon) {
    if (!spec) throw ContractError("membership_oracle requires a spec");
    return MembershipOracle{spec->alphabet_ptr(), horizon,
                            [spec](const Word& w) { return spec->accepts(w); }};
}

MembershipOracle conjunction_oracle(SpecPtr a, SpecPtr b, int horizon) {
    if (!a || !b) throw ContractError("conjunction_oracle requires two specs");
    if (!(a->alphabet() == b->alphabet())) {
        throw InputError("conjunction requires both specs to share one alphabet");
    }
    return MembershipOracle{a->alphabet_ptr(), horizon,
                            [a, b](const Word& w) { return a->accepts(w) && b->accepts(w); }};
}

namespace {

struct Evaluator {
    const MembershipOracle& oracle;
    GenericWidthStats* stats;
    const GenericWidthOptions& options;
    std::map<Word, BigInt> cache;

    BigInt eval(Word& scratch, int depth) {
        if (stats && depth > stats->max_depth) stats->max_depth = depth;
        const int pos = static_cast<int>(scratch.size());
        if (pos == oracle.horizon) {
            if (stats) ++stats->membership_calls;
            return oracle.test(scratch) ? 1 : 0;
        }

        if (options.cache_capacity > 0) {
            auto it = cache.find(scratch);
            if (it != cache.end()) return it->second;
        }

        const std::size_t nsym = oracle.alphabet->size();
        const bool adversary_turn = (pos % 2 == 1);
        BigInt result;
        bool first = true;
        for (SymbolId u = 0; u < nsym; ++u) {
            scratch.push_back(u);
            BigInt child = eval(scratch, depth + 1);
            scratch.pop_back();
            if (adversary_turn) {
                if (first || child < result) result = std::move(child);
                if (options.min_short_circuit && result == 0) {
                    first = false;
                    break;
                }
            } else {
                if (first) result = std::move(child);
                else result += child;
            }
            first = false;
        }

        if (options.cache_capacity > 0 && cache.size() < options.cache_capacity) {
            cache.emplace(scratch, result);
        }
        return result;
    }
};

} // namespace

BigInt generic_width(const MembershipOracle& oracle, const Word& history,
                     GenericWidthStats* stats, const GenericWidthOptions& options) {
    if (!oracle.test) throw ContractError("membership oracle has no test function");
    if (oracle.horizon < 0) throw ContractError("membership oracle horizon must be non-negative");
    if (history.size() > static_cast<std::size_t>(oracle.horizon)) {
        throw ContractError("history longer than the oracle horizon");
    }
    Evaluator ev{oracle, stats, options, {}};
    Word scratch = history;
    return ev.eval(scratch, 0);
}

} // namespace rci
