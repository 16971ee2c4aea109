#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "rci/alphabet.hpp"
#include "rci/random_source.hpp"
#include "rci/rational.hpp"
#include "rci/spec.hpp"
#include "rci/width_oracle.hpp"

namespace rci {

struct RealizabilityReport {
    bool realizable = false;
    BigInt width_i;
    BigInt width_a;
    /// Smallest achievable error probability at this rho:
    /// max(1 - rho * width_a, 0).
    Rational epsilon_opt;
    /// Least rho realizable at this epsilon; nullopt when no finite rho
    /// works (width_i = 0, or width_a = 0 with epsilon < 1).
    std::optional<Rational> rho_min;
};

/// Decides realizability with exact rational comparisons:
/// realizable iff width_i >= 1/rho and width_a >= (1 - epsilon)/rho.
RealizabilityReport check_realizability(const RciInstance& instance,
                                        const WidthOraclePair& widths);

/// The stationary sampling weights: alpha for plays kept in A, beta for
/// plays kept in I \ A. Both are at most rho whenever width_i >= 1/rho.
struct ImproviserParams {
    Rational alpha;
    Rational beta;
};

/// alpha = min(rho, 1/width_a)            (0 when width_a = 0)
/// beta  = (1 - alpha*width_a) / (width_i - width_a)   (0 when equal)
/// Requires width_i >= 1/rho; throws ContractError otherwise.
ImproviserParams compute_params(const BigInt& width_a, const BigInt& width_i,
                                const Rational& rho);

/// Play budgets handed to one successor symbol.
struct SymbolBudget {
    BigInt m_a;
    BigInt m_i;
};

/// The greedy budget split: under the canonical symbol order, fill m_a from
/// the per-symbol widths of A left to right (full widths, then the
/// remainder, then zeros), then split m_i - m_a over the leftover
/// per-symbol capacities of I the same way and add the A parts back.
/// Deterministic; sums are conserved and every per-symbol cap holds.
/// Preconditions (throws ContractError naming the violated inequality):
/// it is our turn after h, 0 <= m_a <= m_i <= width_i(h), m_a <= width_a(h).
std::vector<SymbolBudget> partition_budgets(const BigInt& m_a, const BigInt& m_i,
                                            const Word& h, int horizon,
                                            const Alphabet& alphabet,
                                            const WidthOraclePair& widths);

/// Per-symbol sampling weights t_u = alpha*m_a_u + beta*(m_i_u - m_a_u),
/// plus the budgets they came from so a step can commit to the drawn symbol.
struct StepWeights {
    std::vector<Rational> weight;
    Rational total;
    std::vector<SymbolBudget> budgets;
};

/// One sampling session of the improvising strategy. Exposes both a
/// stepwise interface (for interactive play and enumeration) and a
/// whole-play interface; both share the same state.
class Improviser {
public:
    /// Requires a realizable instance; throws ContractError otherwise
    /// (callers decide realizability first and report it their own way).
    Improviser(const RciInstance& instance, WidthOraclePair widths);

    const ImproviserParams& params() const { return params_; }
    const RealizabilityReport& report() const { return report_; }

    /// Restarts the session at the empty history.
    void reset();

    Turn turn() const;
    const Word& history() const { return history_; }
    const BigInt& budget_a() const { return m_a_; }
    const BigInt& budget_i() const { return m_i_; }

    /// Weights for the next move; only valid on our turn.
    StepWeights weights() const;

    /// Samples our next move from the step weights and commits it.
    SymbolId step_ours(RandomSource& source);

    /// Commits an adversary move; budgets carry over unchanged.
    /// Throws InputError if the symbol is outside the alphabet.
    void step_adversary(SymbolId symbol);

    /// Runs a full game against `adversary_move`, sampling our moves from
    /// `source`, and returns the length-n play.
    Word play(const std::function<SymbolId(const Word&)>& adversary_move,
              RandomSource& source);

private:
    void check_state_invariants() const;

    const RciInstance* instance_;
    WidthOraclePair widths_;
    RealizabilityReport report_;
    ImproviserParams params_;
    BigInt m_a_;
    BigInt m_i_;
    Word history_;
};

} // namespace rci
