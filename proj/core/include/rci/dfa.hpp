#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rci/alphabet.hpp"
#include "rci/rational.hpp"
#include "rci/spec.hpp"

namespace rci {

using StateId = std::uint32_t;

/// An explicit deterministic finite automaton with a total transition map.
/// Immutable after construction.
class Dfa final : public Spec {
public:
    /// `transitions` is state-major: transitions[v * |alphabet| + symbol].
    /// Validates totality, the initial state and the accepting set.
    Dfa(AlphabetPtr alphabet, std::vector<std::string> state_names, StateId initial,
        std::vector<bool> accepting, std::vector<StateId> transitions);

    /// Single accepting state with self-loops on every symbol.
    static std::shared_ptr<const Dfa> universal(AlphabetPtr alphabet);

    std::size_t state_count() const { return state_names_.size(); }
    const std::string& state_name(StateId v) const { return state_names_.at(v); }
    const std::vector<std::string>& state_names() const { return state_names_; }
    std::optional<StateId> find_state(std::string_view name) const;

    StateId initial() const { return initial_; }
    bool is_accepting(StateId v) const { return accepting_[v]; }
    StateId next(StateId v, SymbolId u) const { return delta_[v * symbol_count_ + u]; }

    /// delta*(initial, w).
    StateId run(const Word& w) const;
    StateId run_from(StateId v, std::span<const SymbolId> suffix) const;

    const Alphabet& alphabet() const override { return *alphabet_; }
    AlphabetPtr alphabet_ptr() const override { return alphabet_; }
    bool accepts(const Word& w) const override { return accepting_[run(w)]; }

private:
    AlphabetPtr alphabet_;
    std::size_t symbol_count_ = 0;
    std::vector<std::string> state_names_;
    StateId initial_ = 0;
    std::vector<bool> accepting_;
    std::vector<StateId> delta_;
};

/// Standard product construction restricted to pairs reachable from the
/// initial pair: L(result) = L(a) intersect L(b). When `pair_map` is given it
/// receives, per product state, the (a, b) state pair it represents.
std::shared_ptr<const Dfa> product(const Dfa& a, const Dfa& b,
                                   std::vector<std::pair<StateId, StateId>>* pair_map = nullptr);

/// The per-state, per-level play counts realizing widths over a DFA:
///   count(v, n) = 1 if v accepting else 0
///   count(v, i) = min over symbols of count(delta(v,u), i+1)   (i odd)
///   count(v, i) = sum over symbols of count(delta(v,u), i+1)   (i even)
/// Entries are arbitrary-precision: they can reach |alphabet|^(n-i).
class WidthTable {
public:
    WidthTable(std::shared_ptr<const Dfa> dfa, int horizon);

    const Dfa& dfa() const { return *dfa_; }
    std::shared_ptr<const Dfa> dfa_ptr() const { return dfa_; }
    int horizon() const { return horizon_; }

    const BigInt& at(StateId v, int level) const;

    /// width(L(dfa) cap Sigma^n | h) = count(run(h), |h|).
    BigInt width_given(const Word& h) const;

private:
    std::shared_ptr<const Dfa> dfa_;
    int horizon_ = 0;
    std::vector<BigInt> counts_; // (horizon + 1) levels, state-major per level
};

} // namespace rci
