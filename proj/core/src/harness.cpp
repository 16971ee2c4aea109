#include "rci/harness.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <thread>

#include "rci/errors.hpp"

namespace rci {

SymbolId ScriptedAdversary::next_move(const Word& history) {
    if (history.size() >= script_.size()) {
        throw InputError("scripted adversary exhausted: no move at position " +
                         std::to_string(history.size()));
    }
    return script_[history.size()];
}

std::unique_ptr<Adversary> ScriptedAdversary::clone() const {
    return std::make_unique<ScriptedAdversary>(script_);
}

CyclicAdversary::CyclicAdversary(Word script) : script_(std::move(script)) {
    if (script_.empty()) throw InputError("cyclic adversary needs a non-empty script");
}

SymbolId CyclicAdversary::next_move(const Word& history) {
    if (history.size() % 2 == 0) {
        throw ContractError("adversary asked to move on our turn");
    }
    const std::size_t turn = history.size() / 2; // 0th, 1st, ... adversary move
    return script_[turn % script_.size()];
}

std::unique_ptr<Adversary> CyclicAdversary::clone() const {
    return std::make_unique<CyclicAdversary>(script_);
}

RandomAdversary::RandomAdversary(std::size_t alphabet_size, std::uint64_t seed)
    : alphabet_size_(alphabet_size), seed_(seed), source_(seed) {
    if (alphabet_size_ == 0) throw ContractError("random adversary needs a non-empty alphabet");
}

SymbolId RandomAdversary::next_move(const Word&) {
    std::vector<Rational> uniform(alphabet_size_, Rational(1));
    return static_cast<SymbolId>(sample_weighted(uniform, source_));
}

void RandomAdversary::begin_episode(std::uint64_t episode_seed) {
    source_ = Mt19937Source(derive_seed(seed_, episode_seed));
}

std::unique_ptr<Adversary> RandomAdversary::clone() const {
    return std::make_unique<RandomAdversary>(alphabet_size_, seed_);
}

GreedyMinWidthAdversary::GreedyMinWidthAdversary(WidthFn width, std::size_t alphabet_size)
    : width_(std::move(width)), alphabet_size_(alphabet_size) {
    if (!width_) throw ContractError("greedy adversary needs a width oracle");
}

SymbolId GreedyMinWidthAdversary::next_move(const Word& history) {
    Word child = history;
    SymbolId best = 0;
    BigInt best_width;
    for (SymbolId u = 0; u < alphabet_size_; ++u) {
        child.push_back(u);
        BigInt w = width_(child);
        child.pop_back();
        if (u == 0 || w < best_width) {
            best = u;
            best_width = std::move(w);
        }
    }
    return best;
}

std::unique_ptr<Adversary> GreedyMinWidthAdversary::clone() const {
    return std::make_unique<GreedyMinWidthAdversary>(width_, alphabet_size_);
}

DriftAdversary::DriftAdversary(const Alphabet& alphabet, const std::string& up,
                               const std::string& down) {
    auto u = alphabet.find(up);
    auto d = alphabet.find(down);
    if (!u || !d) {
        throw InputError("drift adversary needs symbols '" + up + "' and '" + down +
                         "' in the alphabet");
    }
    up_ = *u;
    down_ = *d;
}

SymbolId DriftAdversary::next_move(const Word& history) {
    long long counter = 0;
    for (SymbolId s : history.syms) {
        if (s == up_) ++counter;
        else if (s == down_) --counter;
    }
    return counter > 0 ? up_ : down_; // away from zero; down at zero
}

std::unique_ptr<Adversary> DriftAdversary::clone() const {
    auto copy = std::make_unique<DriftAdversary>(*this);
    return copy;
}

ReplAdversary::ReplAdversary(AlphabetPtr alphabet, std::istream& in, std::ostream& out)
    : alphabet_(std::move(alphabet)), in_(&in), out_(&out) {}

SymbolId ReplAdversary::next_move(const Word& history) {
    for (;;) {
        *out_ << "h=" << render_word(*alphabet_, history) << " your-move? " << std::flush;
        std::string line;
        if (!std::getline(*in_, line) || line.empty()) {
            throw EpisodeAborted();
        }
        if (auto id = alphabet_->find(line)) return *id;
        *out_ << "unknown symbol '" << line << "'; legal:";
        for (const auto& name : alphabet_->names()) *out_ << ' ' << name;
        *out_ << '\n';
    }
}

Word improvise_play(Improviser& improviser, Adversary& adversary, RandomSource& source) {
    return improviser.play([&adversary](const Word& h) { return adversary.next_move(h); },
                           source);
}

namespace {

struct Enumerator {
    const RciInstance& instance;
    const WidthOraclePair& widths;
    const ImproviserParams params;
    Adversary& adversary;
    const ExactDistributionOptions& options;
    std::size_t nodes = 0;
    DistributionMap result;

    void visit(Word& h, BigInt m_a, BigInt m_i, const Rational& probability) {
        if (++nodes > options.max_nodes) {
            throw EnumerationLimitError("exact enumeration exceeded " +
                                        std::to_string(options.max_nodes) + " nodes");
        }
        switch (turn_at(h.size(), instance.horizon)) {
        case Turn::Ended:
            result[h] += probability;
            return;
        case Turn::Adversary: {
            const SymbolId u = adversary.next_move(h);
            if (u >= instance.alphabet->size()) {
                throw InputError("adversary emitted a symbol outside the alphabet");
            }
            h.push_back(u);
            visit(h, std::move(m_a), std::move(m_i), probability);
            h.pop_back();
            return;
        }
        case Turn::Ours:
            break;
        }

        auto budgets = partition_budgets(m_a, m_i, h, instance.horizon, *instance.alphabet, widths);
        Rational total = 0;
        std::vector<Rational> weight(budgets.size());
        for (std::size_t u = 0; u < budgets.size(); ++u) {
            weight[u] = params.alpha * Rational(budgets[u].m_a) +
                        params.beta * Rational(budgets[u].m_i - budgets[u].m_a);
            total += weight[u];
        }
        if (total <= 0) {
            throw InternalError("all step weights vanished on a reachable state");
        }
        for (std::size_t u = 0; u < budgets.size(); ++u) {
            if (weight[u] == 0) continue;
            h.push_back(static_cast<SymbolId>(u));
            visit(h, budgets[u].m_a, budgets[u].m_i, probability * weight[u] / total);
            h.pop_back();
        }
    }
};

} // namespace

DistributionMap exact_distribution(const RciInstance& instance, const WidthOraclePair& widths,
                                   Adversary& adversary,
                                   const ExactDistributionOptions& options) {
    if (!adversary.is_deterministic()) {
        throw InputError("exact distribution requires a deterministic adversary");
    }
    const RealizabilityReport report = check_realizability(instance, widths);
    if (!report.realizable) {
        throw ContractError("exact distribution requested for an unrealizable instance");
    }
    Enumerator e{instance, widths, compute_params(report.width_a, report.width_i, instance.rho),
                 adversary, options};
    Word h;
    e.visit(h, report.width_a, report.width_i, Rational(1));
    return e.result;
}

Rational EpisodeStats::max_play_frequency() const {
    if (episodes == 0) return Rational(0);
    std::uint64_t max_count = 0;
    for (const auto& [word, count] : play_counts) max_count = std::max(max_count, count);
    return Rational(max_count, episodes);
}

namespace {

EpisodeStats run_episode_range(const RciInstance& instance, const WidthOraclePair& widths,
                               Adversary& adversary, std::uint64_t begin, std::uint64_t end,
                               std::uint64_t seed) {
    EpisodeStats stats;
    stats.seed = seed;
    Improviser improviser(instance, widths);
    for (std::uint64_t i = begin; i < end; ++i) {
        adversary.begin_episode(i);
        Mt19937Source source(derive_seed(seed, i));
        const Word play = improvise_play(improviser, adversary, source);
        ++stats.episodes;
        const bool in_hard = instance.hard->accepts(play);
        const bool in_soft = instance.soft->accepts(play);
        if (!in_hard) ++stats.hard_violations;
        if (in_hard && in_soft) ++stats.soft_hits;
        ++stats.play_counts[play];
    }
    return stats;
}

void merge_stats(EpisodeStats& into, const EpisodeStats& from) {
    into.episodes += from.episodes;
    into.hard_violations += from.hard_violations;
    into.soft_hits += from.soft_hits;
    for (const auto& [word, count] : from.play_counts) into.play_counts[word] += count;
}

} // namespace

EpisodeStats run_episodes(const RciInstance& instance, const WidthOraclePair& widths,
                          Adversary& adversary, std::uint64_t episodes, std::uint64_t seed,
                          unsigned jobs) {
    EpisodeStats stats;
    stats.seed = seed;
    if (episodes == 0) return stats;

    if (jobs > 1) {
        const unsigned workers = static_cast<unsigned>(
            std::min<std::uint64_t>(jobs, std::max<std::uint64_t>(episodes, 1)));
        std::vector<std::unique_ptr<Adversary>> copies;
        bool cloneable = true;
        for (unsigned w = 0; w < workers && cloneable; ++w) {
            copies.push_back(adversary.clone());
            if (!copies.back()) cloneable = false;
        }
        if (cloneable) {
            std::vector<EpisodeStats> partial(workers);
            std::vector<std::exception_ptr> errors(workers);
            std::vector<std::thread> threads;
            const std::uint64_t chunk = (episodes + workers - 1) / workers;
            for (unsigned w = 0; w < workers; ++w) {
                threads.emplace_back([&, w] {
                    const std::uint64_t begin = w * chunk;
                    const std::uint64_t end = std::min(episodes, begin + chunk);
                    try {
                        if (begin < end) {
                            partial[w] = run_episode_range(instance, widths, *copies[w], begin,
                                                           end, seed);
                        }
                    } catch (...) {
                        errors[w] = std::current_exception();
                    }
                });
            }
            for (auto& t : threads) t.join();
            for (auto& err : errors) {
                if (err) std::rethrow_exception(err);
            }
            for (const auto& p : partial) merge_stats(stats, p);
            return stats;
        }
        // Fall through to serial execution for uncloneable adversaries.
    }
    merge_stats(stats, run_episode_range(instance, widths, adversary, 0, episodes, seed));
    return stats;
}

} // namespace rci
