#include "rci/dfa.hpp"

#include <deque>
#include <map>

#include "rci/errors.hpp"

namespace rci {

Dfa::Dfa(AlphabetPtr alphabet, std::vector<std::string> state_names, StateId initial,
         std::vector<bool> accepting, std::vector<StateId> transitions)
    : alphabet_(std::move(alphabet)),
      state_names_(std::move(state_names)),
      initial_(initial),
      accepting_(std::move(accepting)),
      delta_(std::move(transitions)) {
    if (!alphabet_) throw ContractError("Dfa requires an alphabet");
    symbol_count_ = alphabet_->size();
    const std::size_t n = state_names_.size();
    if (n == 0) throw InputError("DFA must have at least one state");
    if (accepting_.size() != n) throw ContractError("accepting vector size mismatch");
    if (delta_.size() != n * symbol_count_) {
        throw ContractError("transition table size mismatch: expected " +
                            std::to_string(n * symbol_count_) + " entries, got " +
                            std::to_string(delta_.size()));
    }
    if (initial_ >= n) throw InputError("initial state out of range");
    for (StateId t : delta_) {
        if (t >= n) throw InputError("transition target out of range");
    }
}

std::shared_ptr<const Dfa> Dfa::universal(AlphabetPtr alphabet) {
    std::vector<StateId> delta(alphabet->size(), 0);
    return std::make_shared<const Dfa>(std::move(alphabet), std::vector<std::string>{"*"}, 0,
                                       std::vector<bool>{true}, std::move(delta));
}

std::optional<StateId> Dfa::find_state(std::string_view name) const {
    for (StateId v = 0; v < state_names_.size(); ++v) {
        if (state_names_[v] == name) return v;
    }
    return std::nullopt;
}

StateId Dfa::run(const Word& w) const {
    return run_from(initial_, w.syms);
}

StateId Dfa::run_from(StateId v, std::span<const SymbolId> suffix) const {
    for (SymbolId u : suffix) {
        if (u >= symbol_count_) throw InputError("symbol index out of the DFA's alphabet");
        v = next(v, u);
    }
    return v;
}

std::shared_ptr<const Dfa> product(const Dfa& a, const Dfa& b,
                                   std::vector<std::pair<StateId, StateId>>* pair_map) {
    if (!(a.alphabet() == b.alphabet())) {
        throw InputError("product requires both DFAs to share one alphabet");
    }
    const std::size_t nsym = a.alphabet().size();

    // BFS over reachable pairs only.
    std::map<std::pair<StateId, StateId>, StateId> index;
    std::vector<std::pair<StateId, StateId>> pairs;
    std::deque<StateId> queue;
    auto intern = [&](StateId va, StateId vb) {
        auto [it, inserted] = index.try_emplace({va, vb}, static_cast<StateId>(pairs.size()));
        if (inserted) {
            pairs.emplace_back(va, vb);
            queue.push_back(it->second);
        }
        return it->second;
    };

    intern(a.initial(), b.initial());
    std::vector<StateId> delta;
    while (!queue.empty()) {
        const StateId id = queue.front();
        queue.pop_front();
        const auto [va, vb] = pairs[id];
        if (delta.size() < (id + 1) * nsym) delta.resize((id + 1) * nsym);
        for (SymbolId u = 0; u < nsym; ++u) {
            delta[id * nsym + u] = intern(a.next(va, u), b.next(vb, u));
        }
    }
    delta.resize(pairs.size() * nsym);

    std::vector<std::string> names;
    std::vector<bool> accepting;
    names.reserve(pairs.size());
    accepting.reserve(pairs.size());
    for (const auto& [va, vb] : pairs) {
        names.push_back(a.state_name(va) + "&" + b.state_name(vb));
        accepting.push_back(a.is_accepting(va) && b.is_accepting(vb));
    }
    if (pair_map) *pair_map = pairs;
    return std::make_shared<const Dfa>(a.alphabet_ptr(), std::move(names), 0,
                                       std::move(accepting), std::move(delta));
}

WidthTable::WidthTable(std::shared_ptr<const Dfa> dfa, int horizon)
    : dfa_(std::move(dfa)), horizon_(horizon) {
    if (!dfa_) throw ContractError("WidthTable requires a DFA");
    if (horizon_ < 0) throw ContractError("WidthTable requires a non-negative horizon");
    const std::size_t nstates = dfa_->state_count();
    const std::size_t nsym = dfa_->alphabet().size();
    counts_.assign(static_cast<std::size_t>(horizon_ + 1) * nstates, BigInt(0));

    auto level_entry = [&](int i, StateId v) -> BigInt& {
        return counts_[static_cast<std::size_t>(i) * nstates + v];
    };

    for (StateId v = 0; v < nstates; ++v) {
        level_entry(horizon_, v) = dfa_->is_accepting(v) ? 1 : 0;
    }
    for (int i = horizon_ - 1; i >= 0; --i) {
        const bool adversary_turn = (i % 2 == 1);
        for (StateId v = 0; v < nstates; ++v) {
            if (adversary_turn) {
                BigInt best = level_entry(i + 1, dfa_->next(v, 0));
                for (SymbolId u = 1; u < nsym; ++u) {
                    const BigInt& c = level_entry(i + 1, dfa_->next(v, u));
                    if (c < best) best = c;
                }
                level_entry(i, v) = best;
            } else {
                BigInt total = 0;
                for (SymbolId u = 0; u < nsym; ++u) {
                    total += level_entry(i + 1, dfa_->next(v, u));
                }
                level_entry(i, v) = total;
            }
        }
    }
}

const BigInt& WidthTable::at(StateId v, int level) const {
    if (level < 0 || level > horizon_) throw ContractError("width table level out of range");
    if (v >= dfa_->state_count()) throw ContractError("width table state out of range");
    return counts_[static_cast<std::size_t>(level) * dfa_->state_count() + v];
}

BigInt WidthTable::width_given(const Word& h) const {
    if (static_cast<long long>(h.size()) > horizon_) {
        throw ContractError("history longer than the table horizon");
    }
    return at(dfa_->run(h), static_cast<int>(h.size()));
}

} // namespace rci
