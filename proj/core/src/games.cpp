#include "rci/games.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "rci/errors.hpp"

namespace rci {

namespace {

constexpr const char* kPadSymbol = "#";

/// Incremental DFA assembly around absorbing sinks.
struct DfaBuilder {
    std::size_t nsym;
    std::vector<std::string> names;
    std::vector<bool> accepting;
    std::vector<StateId> delta;

    StateId add_state(std::string name, bool accept) {
        names.push_back(std::move(name));
        accepting.push_back(accept);
        delta.resize(names.size() * nsym, 0);
        return static_cast<StateId>(names.size() - 1);
    }

    void set_edge(StateId from, SymbolId u, StateId to) { delta[from * nsym + u] = to; }

    void make_absorbing(StateId v) {
        for (SymbolId u = 0; u < nsym; ++u) set_edge(v, u, v);
    }

    std::shared_ptr<const Dfa> finish(AlphabetPtr alphabet, StateId initial,
                                      const std::vector<bool>* accept_override = nullptr) {
        return std::make_shared<const Dfa>(std::move(alphabet), names, initial,
                                           accept_override ? *accept_override : accepting, delta);
    }
};

} // namespace

CompiledGame compile_rsg(const Rsg& game, int horizon) {
    if (horizon < 0) throw ContractError("compile_rsg requires a non-negative horizon");
    if (!game.alphabet) throw ContractError("game has no alphabet");
    const std::size_t nnodes = game.nodes.size();
    if (game.start < 0 || static_cast<std::size_t>(game.start) >= nnodes) {
        throw InputError("game start node out of range");
    }
    auto flag = [nnodes](const std::vector<bool>& set, int node) {
        return !set.empty() && set.size() == nnodes && set[node];
    };

    std::vector<bool> terminal(nnodes);
    bool any_terminal = false;
    for (std::size_t i = 0; i < nnodes; ++i) {
        terminal[i] = game.nodes[i].edges.empty();
        any_terminal = any_terminal || terminal[i];
        std::vector<bool> seen(game.alphabet->size(), false);
        for (const auto& [sym, to] : game.nodes[i].edges) {
            if (sym >= game.alphabet->size()) throw InputError("edge label outside the alphabet");
            if (to < 0 || static_cast<std::size_t>(to) >= nnodes) {
                throw InputError("edge target out of range at node '" + game.nodes[i].name + "'");
            }
            if (seen[sym]) {
                throw InputError("node '" + game.nodes[i].name + "' has two edges labeled '" +
                                 game.alphabet->name(sym) + "'");
            }
            seen[sym] = true;
        }
    }

    AlphabetPtr alphabet = game.alphabet;
    std::optional<SymbolId> pad;
    if (any_terminal) {
        if (alphabet->find(kPadSymbol)) {
            throw InputError("the game needs the padding symbol '#' but it is already a move name");
        }
        auto names = alphabet->names();
        names.emplace_back(kPadSymbol);
        alphabet = make_alphabet(std::move(names));
        pad = static_cast<SymbolId>(alphabet->size() - 1);
    }
    const std::size_t nsym = alphabet->size();

    // Compiled state: (node, visited-target, hit-avoid, visited-soft, parity).
    struct Key {
        int node;
        bool vt, va, vs;
        int parity;
        auto operator<=>(const Key&) const = default;
    };

    DfaBuilder b{nsym, {}, {}, {}};
    const StateId rej = b.add_state("dead", false);
    const StateId adv = b.add_state("env-viol", true);
    b.make_absorbing(rej);
    b.make_absorbing(adv);
    std::vector<bool> soft_accepting = {false, true};

    std::map<Key, StateId> index;
    std::deque<Key> queue;
    std::vector<std::string> parity_violations;

    auto soft_flag = [&](int node) { return game.has_soft && flag(game.soft_target, node); };
    auto hard_accepts = [&](const Key& k) {
        switch (game.kind) {
        case Rsg::Kind::Reach: return k.vt;
        case Rsg::Kind::Safe: return !k.va;
        case Rsg::Kind::ReachAvoid: return k.vt && !k.va;
        }
        return false;
    };

    auto intern = [&](const Key& k) {
        auto it = index.find(k);
        if (it != index.end()) return it->second;
        std::string name = game.nodes[k.node].name + "~" + (k.vt ? "1" : "0") +
                           (k.va ? "1" : "0") + (k.vs ? "1" : "0") + std::to_string(k.parity);
        StateId id = b.add_state(std::move(name), hard_accepts(k));
        soft_accepting.push_back(k.vs);
        index.emplace(k, id);
        queue.push_back(k);

        const auto& node = game.nodes[k.node];
        if (!terminal[k.node] && node.ours != (k.parity == 0)) {
            parity_violations.push_back("node '" + node.name + "' is owned by " +
                                        (node.ours ? "us" : "the adversary") +
                                        " but reachable at an " +
                                        (k.parity == 0 ? "even" : "odd") + " position");
        }
        return id;
    };

    const Key start_key{game.start, flag(game.target, game.start), flag(game.avoid, game.start),
                        soft_flag(game.start), 0};
    const StateId start_id = intern(start_key);

    while (!queue.empty()) {
        const Key k = queue.front();
        queue.pop_front();
        const StateId id = index.at(k);
        const auto& node = game.nodes[k.node];
        const StateId illegal = (k.parity == 0) ? rej : adv;

        for (SymbolId u = 0; u < nsym; ++u) {
            if (terminal[k.node] && pad && u == *pad) {
                Key next{k.node, k.vt, k.va, k.vs, 1 - k.parity};
                b.set_edge(id, u, intern(next));
                continue;
            }
            auto edge = std::find_if(node.edges.begin(), node.edges.end(),
                                     [u](const auto& e) { return e.first == u; });
            if (edge == node.edges.end()) {
                b.set_edge(id, u, illegal);
                continue;
            }
            const int to = edge->second;
            Key next{to, k.vt || flag(game.target, to), k.va || flag(game.avoid, to),
                     k.vs || soft_flag(to), 1 - k.parity};
            b.set_edge(id, u, intern(next));
        }
    }

    if (!parity_violations.empty()) {
        std::string msg = "game violates turn alternation (we move at even positions):";
        for (const auto& v : parity_violations) msg += "\n  - " + v;
        msg += "\nhint: insert single-successor relay nodes to restore alternation";
        throw InputError(msg);
    }

    CompiledGame out;
    out.alphabet = alphabet;
    out.hard = b.finish(alphabet, start_id);
    out.soft = game.has_soft ? b.finish(alphabet, start_id, &soft_accepting)
                             : Dfa::universal(alphabet);
    return out;
}

namespace {

struct GridCell {
    int x, y;
};

struct GridCompiler {
    const GridPatrolInstance& g;
    std::vector<std::pair<int, int>> moves; // deltas in symbol order
    AlphabetPtr alphabet;
    SymbolId stay_symbol = 0;
    std::vector<bool> forbidden_mask;
    std::vector<int> waypoint_index; // per cell, -1 or waypoint bit

    explicit GridCompiler(const GridPatrolInstance& grid) : g(grid) {
        if (g.width <= 0 || g.height <= 0) throw InputError("grid dimensions must be positive");
        if (g.horizon < 0) throw InputError("grid horizon must be non-negative");
        check_cell(g.patroller, "patroller start");
        check_cell(g.adversary, "adversary start");
        if (g.patroller == g.adversary) throw InputError("patroller and adversary starts must be distinct");
        if (g.waypoints.size() > 20) throw InputError("too many waypoints (limit 20)");

        std::vector<std::string> names = {"N", "S", "E", "W"};
        moves = {{0, 1}, {0, -1}, {1, 0}, {-1, 0}};
        if (g.allow_stay) {
            names.emplace_back("stay");
            moves.emplace_back(0, 0);
            stay_symbol = 4;
        }
        alphabet = make_alphabet(std::move(names));

        forbidden_mask.assign(static_cast<std::size_t>(g.width) * g.height, false);
        for (const auto& c : g.forbidden) {
            check_cell(c, "forbidden cell");
            forbidden_mask[cell_id(c)] = true;
        }
        waypoint_index.assign(static_cast<std::size_t>(g.width) * g.height, -1);
        for (std::size_t i = 0; i < g.waypoints.size(); ++i) {
            check_cell(g.waypoints[i], "waypoint");
            waypoint_index[cell_id(g.waypoints[i])] = static_cast<int>(i);
        }
    }

    void check_cell(const std::pair<int, int>& c, const char* what) const {
        if (c.first < 0 || c.first >= g.width || c.second < 0 || c.second >= g.height) {
            throw InputError(std::string(what) + " (" + std::to_string(c.first) + "," +
                             std::to_string(c.second) + ") is outside the grid");
        }
    }

    int cell_id(const std::pair<int, int>& c) const { return c.second * g.width + c.first; }
    bool in_bounds(int x, int y) const { return x >= 0 && x < g.width && y >= 0 && y < g.height; }

    /// soft_mode: ignore collisions, reject waypoint re-entry instead.
    std::shared_ptr<const Dfa> build(bool soft_mode) const {
        struct Key {
            int p, a;
            unsigned mask;
            int parity;
            auto operator<=>(const Key&) const = default;
        };
        const unsigned full_mask = (1u << g.waypoints.size()) - 1;
        const std::size_t nsym = alphabet->size();

        DfaBuilder b{nsym, {}, {}, {}};
        const StateId rej = b.add_state("dead", false);
        const StateId adv = b.add_state("env-viol", true);
        b.make_absorbing(rej);
        b.make_absorbing(adv);

        std::map<Key, StateId> index;
        std::deque<Key> queue;
        auto intern = [&](const Key& k) {
            auto it = index.find(k);
            if (it != index.end()) return it->second;
            if (b.names.size() >= g.state_budget) {
                throw InputError("grid state budget exceeded: already " +
                                 std::to_string(b.names.size()) + " states with budget " +
                                 std::to_string(g.state_budget));
            }
            std::string name = "p" + std::to_string(k.p % g.width) + "," +
                               std::to_string(k.p / g.width) + ";a" +
                               std::to_string(k.a % g.width) + "," + std::to_string(k.a / g.width) +
                               ";m" + std::to_string(k.mask) + ";" + std::to_string(k.parity);
            const bool accept = soft_mode ? true : (k.mask == full_mask);
            StateId id = b.add_state(std::move(name), accept);
            index.emplace(k, id);
            queue.push_back(k);
            return id;
        };

        unsigned mask0 = 0;
        if (int w = waypoint_index[cell_id(g.patroller)]; w >= 0) mask0 |= 1u << w;
        const StateId start = intern(Key{cell_id(g.patroller), cell_id(g.adversary), mask0, 0});

        while (!queue.empty()) {
            const Key k = queue.front();
            queue.pop_front();
            const StateId id = index.at(k);
            for (SymbolId u = 0; u < nsym; ++u) {
                const auto [dx, dy] = moves[u];
                if (k.parity == 0) {
                    const int x = k.p % g.width + dx, y = k.p / g.width + dy;
                    if (!in_bounds(x, y)) {
                        b.set_edge(id, u, rej);
                        continue;
                    }
                    const int p2 = y * g.width + x;
                    if (!soft_mode && p2 == k.a) {
                        b.set_edge(id, u, rej); // collision: we stepped onto the adversary
                        continue;
                    }
                    unsigned mask2 = k.mask;
                    if (int w = waypoint_index[p2]; w >= 0) {
                        if (soft_mode && (k.mask & (1u << w)) && p2 != k.p) {
                            b.set_edge(id, u, rej); // waypoint revisited
                            continue;
                        }
                        mask2 |= 1u << w;
                    }
                    b.set_edge(id, u, intern(Key{p2, k.a, mask2, 1}));
                } else {
                    const int x = k.a % g.width + dx, y = k.a / g.width + dy;
                    const bool is_stay = g.allow_stay && u == stay_symbol;
                    if (!is_stay && (!in_bounds(x, y) || forbidden_mask[y * g.width + x])) {
                        b.set_edge(id, u, adv);
                        continue;
                    }
                    const int a2 = is_stay ? k.a : y * g.width + x;
                    if (!soft_mode && a2 == k.p) {
                        b.set_edge(id, u, rej); // collision: the adversary stepped onto us
                        continue;
                    }
                    b.set_edge(id, u, intern(Key{k.p, a2, k.mask, 0}));
                }
            }
        }
        return b.finish(alphabet, start);
    }
};

} // namespace

CompiledGame compile_grid(const GridPatrolInstance& grid) {
    GridCompiler compiler(grid);
    CompiledGame out;
    out.alphabet = compiler.alphabet;
    out.hard = compiler.build(false);
    out.soft = grid.soft_no_revisit ? compiler.build(true) : Dfa::universal(compiler.alphabet);
    return out;
}

std::shared_ptr<const Dfa> pad_spec(const Dfa& dfa, int min_length, int target_length) {
    if (min_length < 0 || min_length > target_length) {
        throw ContractError("pad_spec requires 0 <= min_length <= target_length");
    }
    if (dfa.alphabet().find(kPadSymbol)) {
        throw InputError("pad_spec: '#' is already in the alphabet");
    }
    auto names = dfa.alphabet().names();
    names.emplace_back(kPadSymbol);
    AlphabetPtr alphabet = make_alphabet(std::move(names));
    const std::size_t nsym = alphabet->size();
    const SymbolId pad = static_cast<SymbolId>(nsym - 1);

    // State (v, c) with c = min(prefix length, min_length); padding is legal
    // exactly when c == min_length.
    DfaBuilder b{nsym, {}, {}, {}};
    const StateId rej = b.add_state("dead", false);
    const StateId pad_acc = b.add_state("pad-acc", true);
    b.make_absorbing(rej);
    b.make_absorbing(pad_acc);
    b.set_edge(pad_acc, pad, pad_acc);
    for (SymbolId u = 0; u < pad; ++u) b.set_edge(pad_acc, u, rej);

    struct Key {
        StateId v;
        int c;
        auto operator<=>(const Key&) const = default;
    };
    std::map<Key, StateId> index;
    std::deque<Key> queue;
    auto intern = [&](const Key& k) {
        auto it = index.find(k);
        if (it != index.end()) return it->second;
        const bool accept = (k.c == min_length) && dfa.is_accepting(k.v);
        StateId id = b.add_state(dfa.state_name(k.v) + "@" + std::to_string(k.c), accept);
        index.emplace(k, id);
        queue.push_back(k);
        return id;
    };

    const StateId start = intern(Key{dfa.initial(), std::min(0, min_length)});
    while (!queue.empty()) {
        const Key k = queue.front();
        queue.pop_front();
        const StateId id = index.at(k);
        for (SymbolId u = 0; u < pad; ++u) {
            b.set_edge(id, u, intern(Key{dfa.next(k.v, u), std::min(k.c + 1, min_length)}));
        }
        if (k.c == min_length && dfa.is_accepting(k.v)) {
            b.set_edge(id, pad, pad_acc);
        } else {
            b.set_edge(id, pad, rej);
        }
    }
    return b.finish(alphabet, start);
}

} // namespace rci
