#pragma once

// Test-only oracles, kept independent of the production width/strategy
// code: widths by literal recursion over explicit histories with raw
// membership tests, and a from-scratch re-implementation of the
// improvising strategy's choice tree for cross-checking distributions.

#include <cstdint>
#include <functional>
#include <map>
#include <random>

#include "rci/dfa.hpp"
#include "rci/games.hpp"
#include "rci/rational.hpp"
#include "rci/spec.hpp"

namespace rci::testing {

/// width(X | h) straight from the recursion over histories: indicator at
/// full length, sum on our turns, min on adversary turns. Membership is
/// whatever the spec says; no per-state table is involved.
BigInt naive_width(const Spec& spec, int horizon, const Word& h);

/// Same, for the intersection of two specs.
BigInt naive_width_both(const Spec& a, const Spec& b, int horizon, const Word& h);

/// Uniformly random total DFA over the alphabet: 1..max_states states,
/// each state accepting with probability 1/2.
std::shared_ptr<const Dfa> random_dfa(AlphabetPtr alphabet, std::mt19937_64& rng,
                                      int max_states);

/// Exact output distribution of the improvising strategy against a
/// deterministic adversary, re-derived from scratch on top of naive
/// widths (own parameter formulas and greedy budget split).
std::map<Word, Rational> enumerate_strategy(const RciInstance& instance,
                                            const std::function<SymbolId(const Word&)>& adversary);

/// Worst cases over ALL deterministic adversaries of the strategy's
/// behavior, by best-response dynamic programming on the choice tree:
/// the least mass on I and on A any adversary can hold it to, and the
/// largest single-play probability any adversary can force.
struct StrategyWorstCase {
    Rational min_mass_i;
    Rational min_mass_a;
    Rational max_play_probability;
};
StrategyWorstCase strategy_worst_case(const RciInstance& instance);

/// Number of distinct plays in X possible against a fixed deterministic
/// adversary when our strategy has full support.
BigInt count_plays_against(const Spec& spec, int horizon,
                           const std::function<SymbolId(const Word&)>& adversary,
                           const Word& h);

/// Verdict of a word over the grid rules, interpreted directly (first
/// decisive event wins), independent of the compiled automata.
struct PlayVerdict {
    bool hard = false;
    bool soft = false;
};
PlayVerdict simulate_grid_play(const GridPatrolInstance& grid,
                               const Alphabet& alphabet, const Word& word);

/// Same for a reachability/safety game compiled at `horizon` (expects the
/// '#'-extended alphabet when the game has terminal nodes).
PlayVerdict simulate_game_play(const Rsg& game, int horizon, const Alphabet& alphabet,
                               const Word& word);

/// Patroller-only path counting for grids whose adversary is fully fenced:
/// counts in-bounds move sequences that visit every waypoint and never
/// step onto the frozen adversary.
BigInt count_single_player_paths(const GridPatrolInstance& grid);

} // namespace rci::testing
