#include "rci/width_oracle.hpp"

#include "rci/dfa.hpp"
#include "rci/errors.hpp"
#include "rci/generic_width.hpp"

namespace rci {

namespace {

WidthFn table_fn(std::shared_ptr<const WidthTable> table) {
    return [table](const Word& h) { return table->width_given(h); };
}

WidthFn generic_fn(MembershipOracle oracle) {
    return [oracle = std::move(oracle)](const Word& h) { return generic_width(oracle, h); };
}

} // namespace

WidthOraclePair make_width_oracles(const RciInstance& instance, WidthBackend backend) {
    if (!instance.hard || !instance.soft) {
        throw ContractError("make_width_oracles requires hard and soft specs");
    }
    auto hard_dfa = std::dynamic_pointer_cast<const Dfa>(instance.hard);
    auto soft_dfa = std::dynamic_pointer_cast<const Dfa>(instance.soft);
    const bool soft_universal =
        std::dynamic_pointer_cast<const UniversalSpec>(instance.soft) != nullptr;

    const bool table_for_hard =
        backend != WidthBackend::Generic && hard_dfa != nullptr;
    const bool table_for_soft =
        backend != WidthBackend::Generic && hard_dfa != nullptr && (soft_dfa || soft_universal);

    if (backend == WidthBackend::DfaTable && (!table_for_hard || !table_for_soft)) {
        throw InputError("backend 'dfa' requires DFA specifications; use 'generic' or 'auto'");
    }

    WidthOraclePair pair;
    if (table_for_hard) {
        auto table_i = std::make_shared<WidthTable>(hard_dfa, instance.horizon);
        pair.width_i = table_fn(table_i);
        if (table_for_soft) {
            if (soft_universal) {
                pair.width_a = table_fn(table_i); // A = I when S accepts everything
            } else {
                auto table_a =
                    std::make_shared<WidthTable>(product(*hard_dfa, *soft_dfa), instance.horizon);
                pair.width_a = table_fn(table_a);
            }
            return pair;
        }
    } else {
        pair.width_i = generic_fn(membership_oracle(instance.hard, instance.horizon));
    }
    pair.width_a = generic_fn(conjunction_oracle(instance.hard, instance.soft, instance.horizon));
    return pair;
}

} // namespace rci
