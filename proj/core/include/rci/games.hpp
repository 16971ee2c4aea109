#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "rci/alphabet.hpp"
#include "rci/dfa.hpp"

namespace rci {

/// A reachability/safety game: players alternately pick edge labels,
/// we move first. Nodes without out-edges end the play early; such plays
/// are padded to the horizon with '#'.
struct Rsg {
    enum class Kind { Reach, Safe, ReachAvoid };

    struct Node {
        std::string name;
        bool ours = true;
        /// Edge per symbol; at most one per (node, symbol). Missing symbols
        /// are illegal moves.
        std::vector<std::pair<SymbolId, int>> edges;
    };

    AlphabetPtr alphabet;
    std::vector<Node> nodes;
    int start = 0;
    std::vector<bool> target;      // reach / reach-avoid objective
    std::vector<bool> avoid;       // safe / reach-avoid objective
    std::vector<bool> soft_target; // optional soft objective (empty = none)
    bool has_soft = false;
    Kind kind = Kind::Reach;
};

struct CompiledGame {
    std::shared_ptr<const Dfa> hard;
    std::shared_ptr<const Dfa> soft; // universal accept when the game has no soft objective
    AlphabetPtr alphabet;            // game alphabet, extended with '#' when padding is needed
};

/// Compiles the game into a hard DFA over length-`horizon` words (plus the
/// soft DFA when a soft target set is declared). Our illegal moves route to
/// a rejecting sink; adversary illegal moves route to an accepting sink in
/// BOTH automata (an environment-assumption violation counts for us).
/// Node ownership must alternate with position parity along every reachable
/// path; violations are rejected with a repair hint.
CompiledGame compile_rsg(const Rsg& game, int horizon);

/// A two-drone patrol problem on a rectangular grid. The patroller moves at
/// even positions, the adversary at odd ones; both use the same move
/// alphabet. The hard spec asks for in-bounds, collision-free plays that
/// visit every waypoint, assuming the adversary stays out of its forbidden
/// cells; the soft spec asks that no waypoint is visited twice.
struct GridPatrolInstance {
    int width = 0;
    int height = 0;
    std::pair<int, int> patroller;
    std::pair<int, int> adversary;
    std::vector<std::pair<int, int>> waypoints;
    std::vector<std::pair<int, int>> forbidden; // adversary may not move into these
    int horizon = 0;
    bool allow_stay = true;
    bool soft_no_revisit = true;
    std::size_t state_budget = 2'000'000;
};

CompiledGame compile_grid(const GridPatrolInstance& grid);

/// Length-range relaxation: the result, over the alphabet extended with
/// '#', accepts w . '#'^(n - |w|) exactly when `dfa` accepts w and
/// min_length <= |w| <= target_length. '#' is only legal as a trailing
/// block. Throws InputError if '#' is already a symbol.
std::shared_ptr<const Dfa> pad_spec(const Dfa& dfa, int min_length, int target_length);

} // namespace rci
