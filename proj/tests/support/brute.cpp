#include "brute.hpp"

#include <algorithm>
#include <stdexcept>

namespace rci::testing {

namespace {

BigInt width_rec(const std::function<bool(const Word&)>& member, std::size_t nsym, int horizon,
                 Word& h) {
    if (static_cast<int>(h.size()) == horizon) {
        return member(h) ? 1 : 0;
    }
    const bool adversary = (h.size() % 2 == 1);
    BigInt result;
    for (SymbolId u = 0; u < nsym; ++u) {
        h.push_back(u);
        BigInt child = width_rec(member, nsym, horizon, h);
        h.pop_back();
        if (u == 0) {
            result = std::move(child);
        } else if (adversary) {
            if (child < result) result = std::move(child);
        } else {
            result += child;
        }
    }
    return result;
}

} // namespace

BigInt naive_width(const Spec& spec, int horizon, const Word& h) {
    Word scratch = h;
    return width_rec([&spec](const Word& w) { return spec.accepts(w); }, spec.alphabet().size(),
                     horizon, scratch);
}

BigInt naive_width_both(const Spec& a, const Spec& b, int horizon, const Word& h) {
    Word scratch = h;
    return width_rec([&](const Word& w) { return a.accepts(w) && b.accepts(w); },
                     a.alphabet().size(), horizon, scratch);
}

std::shared_ptr<const Dfa> random_dfa(AlphabetPtr alphabet, std::mt19937_64& rng,
                                      int max_states) {
    const int nstates = 1 + static_cast<int>(rng() % max_states);
    std::vector<std::string> names;
    std::vector<bool> accepting;
    for (int v = 0; v < nstates; ++v) {
        names.push_back("q" + std::to_string(v));
        accepting.push_back(rng() % 2 == 0);
    }
    std::vector<StateId> delta;
    for (int v = 0; v < nstates; ++v) {
        for (std::size_t u = 0; u < alphabet->size(); ++u) {
            delta.push_back(static_cast<StateId>(rng() % nstates));
        }
    }
    return std::make_shared<const Dfa>(std::move(alphabet), std::move(names), 0,
                                       std::move(accepting), std::move(delta));
}

namespace {

/// Self-contained model of the strategy: parameters and greedy budget
/// split re-derived on top of naive widths.
struct StrategyModel {
    const RciInstance& instance;
    Rational alpha, beta;
    BigInt root_a, root_i;

    explicit StrategyModel(const RciInstance& inst) : instance(inst) {
        const Word empty;
        root_i = naive_width(*inst.hard, inst.horizon, empty);
        root_a = naive_width_both(*inst.hard, *inst.soft, inst.horizon, empty);
        if (Rational(root_i) * inst.rho < 1) {
            throw std::logic_error("strategy model: unrealizable instance");
        }
        alpha = root_a == 0 ? Rational(0) : std::min(inst.rho, Rational(1) / Rational(root_a));
        beta = root_i == root_a
                   ? Rational(0)
                   : (Rational(1) - alpha * Rational(root_a)) / Rational(root_i - root_a);
    }

    BigInt width_i(const Word& h) const { return naive_width(*instance.hard, instance.horizon, h); }
    BigInt width_a(const Word& h) const {
        return naive_width_both(*instance.hard, *instance.soft, instance.horizon, h);
    }

    struct Budget {
        BigInt a, i;
    };

    std::vector<Budget> split(const BigInt& m_a, const BigInt& m_i, const Word& h) const {
        const std::size_t nsym = instance.alphabet->size();
        std::vector<BigInt> wa(nsym), wi(nsym);
        Word child = h;
        for (SymbolId u = 0; u < nsym; ++u) {
            child.push_back(u);
            wa[u] = width_a(child);
            wi[u] = width_i(child);
            child.pop_back();
        }
        std::vector<Budget> out(nsym);
        BigInt left = m_a;
        for (std::size_t u = 0; u < nsym; ++u) {
            out[u].a = std::min(left, wa[u]);
            left -= out[u].a;
        }
        left = m_i - m_a;
        for (std::size_t u = 0; u < nsym; ++u) {
            const BigInt room = wi[u] - out[u].a;
            const BigInt extra = std::min(left, room);
            out[u].i = out[u].a + extra;
            left -= extra;
        }
        if (left != 0) throw std::logic_error("strategy model: split failed");
        return out;
    }

    Rational weight(const Budget& b) const {
        return alpha * Rational(b.a) + beta * Rational(b.i - b.a);
    }
};

} // namespace

std::map<Word, Rational> enumerate_strategy(
    const RciInstance& instance, const std::function<SymbolId(const Word&)>& adversary) {
    StrategyModel model(instance);
    std::map<Word, Rational> out;

    std::function<void(Word&, BigInt, BigInt, Rational)> walk = [&](Word& h, BigInt m_a,
                                                                    BigInt m_i, Rational prob) {
        if (static_cast<int>(h.size()) == instance.horizon) {
            out[h] += prob;
            return;
        }
        if (h.size() % 2 == 1) {
            h.push_back(adversary(h));
            walk(h, std::move(m_a), std::move(m_i), std::move(prob));
            h.pop_back();
            return;
        }
        const auto budgets = model.split(m_a, m_i, h);
        Rational total = 0;
        for (const auto& b : budgets) total += model.weight(b);
        for (std::size_t u = 0; u < budgets.size(); ++u) {
            const Rational w = model.weight(budgets[u]);
            if (w == 0) continue;
            h.push_back(static_cast<SymbolId>(u));
            walk(h, budgets[u].a, budgets[u].i, prob * w / total);
            h.pop_back();
        }
    };

    Word h;
    walk(h, model.root_a, model.root_i, Rational(1));
    return out;
}

StrategyWorstCase strategy_worst_case(const RciInstance& instance) {
    StrategyModel model(instance);

    struct Node {
        Rational mass_i, mass_a, max_prob;
    };
    std::function<Node(Word&, const BigInt&, const BigInt&)> walk =
        [&](Word& h, const BigInt& m_a, const BigInt& m_i) -> Node {
        if (static_cast<int>(h.size()) == instance.horizon) {
            const bool in_i = instance.hard->accepts(h);
            const bool in_a = in_i && instance.soft->accepts(h);
            return {Rational(in_i ? 1 : 0), Rational(in_a ? 1 : 0), Rational(1)};
        }
        if (h.size() % 2 == 1) {
            // The adversary optimizes each constraint independently; the
            // definitions quantify over adversaries per constraint.
            Node worst{Rational(2), Rational(2), Rational(0)};
            for (SymbolId u = 0; u < instance.alphabet->size(); ++u) {
                h.push_back(u);
                Node child = walk(h, m_a, m_i);
                h.pop_back();
                worst.mass_i = std::min(worst.mass_i, child.mass_i);
                worst.mass_a = std::min(worst.mass_a, child.mass_a);
                worst.max_prob = std::max(worst.max_prob, child.max_prob);
            }
            return worst;
        }
        const auto budgets = model.split(m_a, m_i, h);
        Rational total = 0;
        for (const auto& b : budgets) total += model.weight(b);
        Node mix{Rational(0), Rational(0), Rational(0)};
        for (std::size_t u = 0; u < budgets.size(); ++u) {
            const Rational w = model.weight(budgets[u]);
            if (w == 0) continue;
            h.push_back(static_cast<SymbolId>(u));
            Node child = walk(h, budgets[u].a, budgets[u].i);
            h.pop_back();
            const Rational p = w / total;
            mix.mass_i += p * child.mass_i;
            mix.mass_a += p * child.mass_a;
            mix.max_prob = std::max(mix.max_prob, Rational(p * child.max_prob));
        }
        return mix;
    };

    Word h;
    Node root = walk(h, model.root_a, model.root_i);
    return {root.mass_i, root.mass_a, root.max_prob};
}

BigInt count_plays_against(const Spec& spec, int horizon,
                           const std::function<SymbolId(const Word&)>& adversary,
                           const Word& h) {
    Word scratch = h;
    std::function<BigInt()> walk = [&]() -> BigInt {
        if (static_cast<int>(scratch.size()) == horizon) {
            return spec.accepts(scratch) ? 1 : 0;
        }
        if (scratch.size() % 2 == 1) {
            scratch.push_back(adversary(scratch));
            BigInt n = walk();
            scratch.pop_back();
            return n;
        }
        BigInt total = 0;
        for (SymbolId u = 0; u < spec.alphabet().size(); ++u) {
            scratch.push_back(u);
            total += walk();
            scratch.pop_back();
        }
        return total;
    };
    return walk();
}

PlayVerdict simulate_grid_play(const GridPatrolInstance& grid, const Alphabet& alphabet,
                               const Word& word) {
    enum class Fate { Live, Accept, Reject };
    Fate hard = Fate::Live, soft = Fate::Live;
    auto px = grid.patroller.first, py = grid.patroller.second;
    auto ax = grid.adversary.first, ay = grid.adversary.second;
    std::vector<bool> visited(grid.waypoints.size(), false);
    auto waypoint_at = [&](int x, int y) -> int {
        for (std::size_t i = 0; i < grid.waypoints.size(); ++i) {
            if (grid.waypoints[i] == std::make_pair(x, y)) return static_cast<int>(i);
        }
        return -1;
    };
    auto forbidden_at = [&](int x, int y) {
        return std::find(grid.forbidden.begin(), grid.forbidden.end(), std::make_pair(x, y)) !=
               grid.forbidden.end();
    };
    if (int w = waypoint_at(px, py); w >= 0) visited[w] = true;

    for (std::size_t pos = 0; pos < word.size(); ++pos) {
        if (hard != Fate::Live && soft != Fate::Live) break;
        const std::string& move = alphabet.name(word[pos]);
        int dx = 0, dy = 0;
        if (move == "N") dy = 1;
        else if (move == "S") dy = -1;
        else if (move == "E") dx = 1;
        else if (move == "W") dx = -1;
        const bool is_stay = (move == "stay");

        if (pos % 2 == 0) { // patroller
            const int nx = px + dx, ny = py + dy;
            const bool oob = nx < 0 || nx >= grid.width || ny < 0 || ny >= grid.height;
            if (oob) {
                if (hard == Fate::Live) hard = Fate::Reject;
                if (soft == Fate::Live) soft = Fate::Reject;
                continue;
            }
            if (hard == Fate::Live && nx == ax && ny == ay) hard = Fate::Reject;
            if (int w = waypoint_at(nx, ny); w >= 0) {
                if (soft == Fate::Live && visited[w] && !(nx == px && ny == py)) {
                    soft = Fate::Reject;
                }
                visited[w] = true;
            }
            px = nx;
            py = ny;
        } else { // adversary
            const int nx = ax + dx, ny = ay + dy;
            const bool oob = nx < 0 || nx >= grid.width || ny < 0 || ny >= grid.height;
            if (!is_stay && (oob || forbidden_at(nx, ny))) {
                if (hard == Fate::Live) hard = Fate::Accept;
                if (soft == Fate::Live) soft = Fate::Accept;
                continue;
            }
            const int tx = is_stay ? ax : nx, ty = is_stay ? ay : ny;
            if (hard == Fate::Live && tx == px && ty == py) hard = Fate::Reject;
            ax = tx;
            ay = ty;
        }
    }

    PlayVerdict verdict;
    const bool all_visited = std::all_of(visited.begin(), visited.end(), [](bool b) { return b; });
    verdict.hard = hard == Fate::Accept || (hard == Fate::Live && all_visited);
    verdict.soft = soft == Fate::Accept || soft == Fate::Live;
    return verdict;
}

PlayVerdict simulate_game_play(const Rsg& game, int horizon, const Alphabet& alphabet,
                               const Word& word) {
    enum class Fate { Live, Accept, Reject };
    Fate fate = Fate::Live;
    int node = game.start;
    auto in_set = [&](const std::vector<bool>& set, int v) {
        return !set.empty() && set[static_cast<std::size_t>(v)];
    };
    bool visited_target = in_set(game.target, node);
    bool hit_avoid = in_set(game.avoid, node);
    bool visited_soft = game.has_soft && in_set(game.soft_target, node);
    const auto pad = alphabet.find("#");

    for (std::size_t pos = 0; pos < word.size() && fate == Fate::Live; ++pos) {
        const SymbolId u = word[pos];
        const bool ours = pos % 2 == 0;
        const bool terminal = game.nodes[node].edges.empty();
        if (terminal && pad && u == *pad) continue;
        int next = -1;
        for (const auto& [sym, to] : game.nodes[node].edges) {
            if (sym == u) next = to;
        }
        if (next < 0) {
            fate = ours ? Fate::Reject : Fate::Accept;
            continue;
        }
        node = next;
        visited_target = visited_target || in_set(game.target, node);
        hit_avoid = hit_avoid || in_set(game.avoid, node);
        visited_soft = visited_soft || (game.has_soft && in_set(game.soft_target, node));
    }

    (void)horizon;
    bool objective = false;
    switch (game.kind) {
    case Rsg::Kind::Reach: objective = visited_target; break;
    case Rsg::Kind::Safe: objective = !hit_avoid; break;
    case Rsg::Kind::ReachAvoid: objective = visited_target && !hit_avoid; break;
    }
    PlayVerdict verdict;
    verdict.hard = fate == Fate::Accept || (fate == Fate::Live && objective);
    verdict.soft = fate == Fate::Accept || (fate == Fate::Live && visited_soft);
    return verdict;
}

BigInt count_single_player_paths(const GridPatrolInstance& grid) {
    const int our_moves = (grid.horizon + 1) / 2;
    auto waypoint_at = [&](int x, int y) -> int {
        for (std::size_t i = 0; i < grid.waypoints.size(); ++i) {
            if (grid.waypoints[i] == std::make_pair(x, y)) return static_cast<int>(i);
        }
        return -1;
    };
    const unsigned full = (1u << grid.waypoints.size()) - 1;
    const std::vector<std::pair<int, int>> deltas = grid.allow_stay
        ? std::vector<std::pair<int, int>>{{0, 1}, {0, -1}, {1, 0}, {-1, 0}, {0, 0}}
        : std::vector<std::pair<int, int>>{{0, 1}, {0, -1}, {1, 0}, {-1, 0}};

    std::function<BigInt(int, int, unsigned, int)> walk = [&](int x, int y, unsigned mask,
                                                              int left) -> BigInt {
        if (left == 0) return mask == full ? 1 : 0;
        BigInt total = 0;
        for (const auto& [dx, dy] : deltas) {
            const int nx = x + dx, ny = y + dy;
            if (nx < 0 || nx >= grid.width || ny < 0 || ny >= grid.height) continue;
            if (nx == grid.adversary.first && ny == grid.adversary.second) continue;
            unsigned m = mask;
            if (int w = waypoint_at(nx, ny); w >= 0) m |= 1u << w;
            total += walk(nx, ny, m, left - 1);
        }
        return total;
    };

    unsigned mask0 = 0;
    if (int w = waypoint_at(grid.patroller.first, grid.patroller.second); w >= 0) mask0 |= 1u << w;
    return walk(grid.patroller.first, grid.patroller.second, mask0, our_moves);
}

} // namespace rci::testing
