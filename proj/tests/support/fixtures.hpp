#pragma once

// Shared fixtures: the counter game that runs through all the examples,
// and filesystem access to the instance corpus.

#include <cstdlib>
#include <filesystem>
#include <string>

#include "rci/dfa.hpp"
#include "rci/random_source.hpp"
#include "rci/rational.hpp"
#include "rci/spec.hpp"

namespace rci::testing {

inline std::filesystem::path instances_dir() {
    if (const char* env = std::getenv("RCI_INSTANCES")) return env;
    return "instances";
}

/// The counter game: each move increments (+), holds (=) or decrements (-)
/// a counter starting at zero. Hard: stay within [-2, 2]; soft: end
/// non-negative. Alphabet declared in the order [+, =, -].
inline AlphabetPtr counter_alphabet() {
    return make_alphabet({"+", "=", "-"});
}

inline std::shared_ptr<const Dfa> counter_dfa(bool nonnegative_end) {
    AlphabetPtr alphabet = counter_alphabet();
    std::vector<std::string> names = {"-3", "-2", "-1", "+0", "+1", "+2", "+3"};
    auto index = [](int c) { return static_cast<StateId>(c + 3); };
    std::vector<bool> accepting(7, false);
    for (int c = -2; c <= 2; ++c) {
        accepting[index(c)] = nonnegative_end ? c >= 0 : true;
    }
    std::vector<StateId> delta(7 * 3);
    for (int c = -3; c <= 3; ++c) {
        const bool sink = c == -3 || c == 3;
        delta[index(c) * 3 + 0] = sink ? index(c) : index(c + 1); // +
        delta[index(c) * 3 + 1] = index(c);                       // =
        delta[index(c) * 3 + 2] = sink ? index(c) : index(c - 1); // -
    }
    return std::make_shared<const Dfa>(alphabet, std::move(names), index(0),
                                       std::move(accepting), std::move(delta));
}

inline RciInstance counter_instance(const Rational& epsilon, const Rational& rho) {
    RciInstance inst;
    inst.alphabet = counter_alphabet();
    inst.hard = counter_dfa(false);
    inst.soft = counter_dfa(true);
    inst.horizon = 4;
    inst.epsilon = epsilon;
    inst.rho = rho;
    return inst;
}

/// Deterministic 64-bit stream for forcing sampling outcomes in tests.
class FakeSource final : public RandomSource {
public:
    explicit FakeSource(std::vector<std::uint64_t> values) : values_(std::move(values)) {}
    std::uint64_t next_u64() override {
        if (next_ >= values_.size()) return 0;
        return values_[next_++];
    }

private:
    std::vector<std::uint64_t> values_;
    std::size_t next_ = 0;
};

} // namespace rci::testing
