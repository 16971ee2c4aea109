#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <string>

#include "rci/alphabet.hpp"
#include "rci/improviser.hpp"
#include "rci/random_source.hpp"
#include "rci/rational.hpp"
#include "rci/spec.hpp"
#include "rci/width_oracle.hpp"

namespace rci {

/// The environment side of a game: produces a move on every adversary turn.
class Adversary {
public:
    virtual ~Adversary() = default;

    virtual SymbolId next_move(const Word& history) = 0;

    /// Deterministic kinds are pure functions of the history; only those
    /// are admissible for exact distribution enumeration.
    virtual bool is_deterministic() const = 0;

    /// Called once per episode with a per-episode seed; randomized kinds
    /// reseed their own source here.
    virtual void begin_episode(std::uint64_t /*episode_seed*/) {}

    /// Independent copy for parallel episode workers; null when the kind
    /// cannot be cloned (interactive), forcing serial execution.
    virtual std::unique_ptr<Adversary> clone() const { return nullptr; }
};

/// Position-indexed play template: the move at history h is script[|h|].
/// Throws InputError once the script is exhausted.
class ScriptedAdversary final : public Adversary {
public:
    explicit ScriptedAdversary(Word script) : script_(std::move(script)) {}
    SymbolId next_move(const Word& history) override;
    bool is_deterministic() const override { return true; }
    std::unique_ptr<Adversary> clone() const override;

private:
    Word script_;
};

/// Adversary-turn-indexed with wrap-around: the k-th adversary move is
/// script[k mod |script|].
class CyclicAdversary final : public Adversary {
public:
    explicit CyclicAdversary(Word script);
    SymbolId next_move(const Word& history) override;
    bool is_deterministic() const override { return true; }
    std::unique_ptr<Adversary> clone() const override;

private:
    Word script_;
};

/// Uniform over the alphabet from its own seeded source.
class RandomAdversary final : public Adversary {
public:
    RandomAdversary(std::size_t alphabet_size, std::uint64_t seed);
    SymbolId next_move(const Word& history) override;
    bool is_deterministic() const override { return false; }
    void begin_episode(std::uint64_t episode_seed) override;
    std::unique_ptr<Adversary> clone() const override;

private:
    std::size_t alphabet_size_;
    std::uint64_t seed_;
    Mt19937Source source_;
};

/// Picks argmin over symbols of width(h . u), ties broken by the canonical
/// order. Minimizes the width of I by default; pass the A oracle to target
/// the admissible set instead.
class GreedyMinWidthAdversary final : public Adversary {
public:
    GreedyMinWidthAdversary(WidthFn width, std::size_t alphabet_size);
    SymbolId next_move(const Word& history) override;
    bool is_deterministic() const override { return true; }
    std::unique_ptr<Adversary> clone() const override;

private:
    WidthFn width_;
    std::size_t alphabet_size_;
};

/// The counter-game adversary: moves away from zero, and down at zero,
/// where the counter is #up - #down over the history. Requires both symbol
/// names to exist in the alphabet.
class DriftAdversary final : public Adversary {
public:
    DriftAdversary(const Alphabet& alphabet, const std::string& up = "+",
                   const std::string& down = "-");
    SymbolId next_move(const Word& history) override;
    bool is_deterministic() const override { return true; }
    std::unique_ptr<Adversary> clone() const override;

private:
    SymbolId up_, down_;
};

/// Arbitrary history -> symbol function, for bespoke game-specific
/// adversaries.
class FunctionAdversary final : public Adversary {
public:
    FunctionAdversary(std::function<SymbolId(const Word&)> fn, bool deterministic = true)
        : fn_(std::move(fn)), deterministic_(deterministic) {}
    SymbolId next_move(const Word& history) override { return fn_(history); }
    bool is_deterministic() const override { return deterministic_; }
    std::unique_ptr<Adversary> clone() const override {
        return std::make_unique<FunctionAdversary>(fn_, deterministic_);
    }

private:
    std::function<SymbolId(const Word&)> fn_;
    bool deterministic_;
};

/// Raised when an interactive episode is abandoned with a blank line.
class EpisodeAborted : public std::runtime_error {
public:
    EpisodeAborted() : std::runtime_error("episode aborted") {}
};

/// Line-oriented interactive adversary: prompts with the history and the
/// legal symbols, re-prompts on invalid input, aborts on a blank line.
class ReplAdversary final : public Adversary {
public:
    ReplAdversary(AlphabetPtr alphabet, std::istream& in, std::ostream& out);
    SymbolId next_move(const Word& history) override;
    bool is_deterministic() const override { return false; }

private:
    AlphabetPtr alphabet_;
    std::istream* in_;
    std::ostream* out_;
};

/// Runs one full game: our moves sampled by the improviser, adversary
/// moves appended verbatim.
Word improvise_play(Improviser& improviser, Adversary& adversary, RandomSource& source);

using DistributionMap = std::map<Word, Rational>;

struct ExactDistributionOptions {
    /// Refuse (rather than approximate) past this many choice-tree nodes.
    std::size_t max_nodes = 1'000'000;
};

/// The exact output distribution of the improvising strategy against a
/// deterministic adversary, by enumerating the weighted choice tree.
/// Probabilities are exact rationals summing to 1; zero-probability plays
/// are omitted. Requires a realizable instance and a deterministic
/// adversary.
DistributionMap exact_distribution(const RciInstance& instance, const WidthOraclePair& widths,
                                   Adversary& adversary,
                                   const ExactDistributionOptions& options = {});

struct EpisodeStats {
    std::uint64_t episodes = 0;
    std::uint64_t hard_violations = 0;
    std::uint64_t soft_hits = 0;
    std::uint64_t seed = 0;
    std::map<Word, std::uint64_t> play_counts;

    Rational max_play_frequency() const;
};

/// Runs seeded episodes and verifies the constraints empirically.
/// Reproducible: episode i draws from a source seeded by counter-splitting
/// the master seed, so results do not depend on `jobs`.
EpisodeStats run_episodes(const RciInstance& instance, const WidthOraclePair& widths,
                          Adversary& adversary, std::uint64_t episodes, std::uint64_t seed,
                          unsigned jobs = 1);

} // namespace rci
