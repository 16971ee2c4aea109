#include "rci/improviser.hpp"

#include "rci/errors.hpp"

namespace rci {

RealizabilityReport check_realizability(const RciInstance& instance,
                                        const WidthOraclePair& widths) {
    RealizabilityReport report;
    const Word empty;
    report.width_i = widths.width_i(empty);
    report.width_a = widths.width_a(empty);
    if (report.width_a > report.width_i) {
        throw ContractError("width oracles inconsistent: width_a exceeds width_i at the root");
    }

    const Rational one(1);
    report.epsilon_opt = one - instance.rho * Rational(report.width_a);
    if (report.epsilon_opt < 0) report.epsilon_opt = 0;

    // width_i >= 1/rho and width_a >= (1 - epsilon)/rho, decided exactly.
    const bool enough_i = Rational(report.width_i) * instance.rho >= one;
    const bool enough_a = Rational(report.width_a) * instance.rho >= one - instance.epsilon;
    report.realizable = enough_i && enough_a;

    if (report.width_i > 0) {
        Rational needed = one / Rational(report.width_i);
        if (instance.epsilon < 1) {
            if (report.width_a == 0) {
                report.rho_min = std::nullopt;
                return report;
            }
            Rational soft_needed = (one - instance.epsilon) / Rational(report.width_a);
            if (soft_needed > needed) needed = soft_needed;
        }
        report.rho_min = needed;
    } else {
        report.rho_min = std::nullopt;
    }
    return report;
}

ImproviserParams compute_params(const BigInt& width_a, const BigInt& width_i,
                                const Rational& rho) {
    if (rho <= 0) throw ContractError("compute_params: rho must be positive");
    if (Rational(width_i) * rho < 1) {
        throw ContractError("compute_params: width_i < 1/rho, instance unrealizable");
    }
    ImproviserParams p;
    if (width_a == 0) {
        p.alpha = 0;
    } else {
        p.alpha = Rational(1) / Rational(width_a);
        if (rho < p.alpha) p.alpha = rho;
    }
    const BigInt rest = width_i - width_a;
    if (rest == 0) {
        p.beta = 0;
    } else {
        p.beta = (Rational(1) - p.alpha * Rational(width_a)) / Rational(rest);
    }
    if (p.alpha > rho || p.beta > rho) {
        throw InternalError("improviser weights exceed rho despite width_i >= 1/rho");
    }
    return p;
}

namespace {

/// Greedy prefix fill: parts[j] = caps[j] for j < k, the remainder at k,
/// zero afterwards, where k is the greatest index whose cap prefix sum
/// still fits in `amount`. Requires amount <= sum(caps).
std::vector<BigInt> greedy_fill(const BigInt& amount, const std::vector<BigInt>& caps) {
    std::vector<BigInt> parts(caps.size(), BigInt(0));
    BigInt remaining = amount;
    for (std::size_t j = 0; j < caps.size() && remaining > 0; ++j) {
        if (caps[j] <= remaining) {
            parts[j] = caps[j];
            remaining -= caps[j];
        } else {
            parts[j] = remaining;
            remaining = 0;
        }
    }
    if (remaining > 0) {
        throw InternalError("partition greedy fill ran out of capacity");
    }
    return parts;
}

} // namespace

std::vector<SymbolBudget> partition_budgets(const BigInt& m_a, const BigInt& m_i,
                                            const Word& h, int horizon,
                                            const Alphabet& alphabet,
                                            const WidthOraclePair& widths) {
    if (turn_at(h.size(), horizon) != Turn::Ours) {
        throw ContractError("partition requires our turn after h");
    }
    if (m_a < 0) throw ContractError("partition precondition violated: 0 <= m_a");
    if (m_a > m_i) throw ContractError("partition precondition violated: m_a <= m_i");

    const std::size_t nsym = alphabet.size();
    std::vector<BigInt> wa(nsym), wi(nsym);
    BigInt wa_total = 0, wi_total = 0;
    Word child = h;
    for (SymbolId u = 0; u < nsym; ++u) {
        child.push_back(u);
        wa[u] = widths.width_a(child);
        wi[u] = widths.width_i(child);
        child.pop_back();
        if (wa[u] > wi[u]) {
            throw ContractError("width oracles inconsistent: width_a > width_i after '" +
                                alphabet.name(u) + "'");
        }
        wa_total += wa[u];
        wi_total += wi[u];
    }
    // On our turn width(X|h) is the sum of the successor widths, so these
    // totals are width_a(h) and width_i(h).
    if (m_a > wa_total) throw ContractError("partition precondition violated: m_a <= width_a(h)");
    if (m_i > wi_total) throw ContractError("partition precondition violated: m_i <= width_i(h)");

    std::vector<BigInt> parts_a = greedy_fill(m_a, wa);
    std::vector<BigInt> slack(nsym);
    for (std::size_t u = 0; u < nsym; ++u) slack[u] = wi[u] - parts_a[u];
    std::vector<BigInt> parts_d = greedy_fill(m_i - m_a, slack);

    std::vector<SymbolBudget> budgets(nsym);
    for (std::size_t u = 0; u < nsym; ++u) {
        budgets[u].m_a = parts_a[u];
        budgets[u].m_i = parts_a[u] + parts_d[u];
    }
    return budgets;
}

Improviser::Improviser(const RciInstance& instance, WidthOraclePair widths)
    : instance_(&instance), widths_(std::move(widths)) {
    report_ = check_realizability(instance, widths_);
    if (!report_.realizable) {
        throw ContractError("improviser requested for an unrealizable instance");
    }
    params_ = compute_params(report_.width_a, report_.width_i, instance.rho);
    reset();
}

void Improviser::reset() {
    m_a_ = report_.width_a;
    m_i_ = report_.width_i;
    history_.syms.clear();
}

Turn Improviser::turn() const {
    return turn_at(history_.size(), instance_->horizon);
}

StepWeights Improviser::weights() const {
    if (turn() != Turn::Ours) {
        throw ContractError("step weights are only defined on our turn");
    }
    StepWeights sw;
    sw.budgets = partition_budgets(m_a_, m_i_, history_, instance_->horizon,
                                   *instance_->alphabet, widths_);
    sw.total = 0;
    sw.weight.reserve(sw.budgets.size());
    for (const SymbolBudget& b : sw.budgets) {
        Rational t = params_.alpha * Rational(b.m_a) + params_.beta * Rational(b.m_i - b.m_a);
        sw.total += t;
        sw.weight.push_back(std::move(t));
    }
    if (sw.total <= 0) {
        throw InternalError("all step weights vanished on a reachable state");
    }
    return sw;
}

SymbolId Improviser::step_ours(RandomSource& source) {
    StepWeights sw = weights();
    const std::size_t pick = sample_weighted(sw.weight, source);
    m_a_ = sw.budgets[pick].m_a;
    m_i_ = sw.budgets[pick].m_i;
    history_.push_back(static_cast<SymbolId>(pick));
    check_state_invariants();
    return static_cast<SymbolId>(pick);
}

void Improviser::step_adversary(SymbolId symbol) {
    if (turn() != Turn::Adversary) {
        throw ContractError("not the adversary's turn");
    }
    if (symbol >= instance_->alphabet->size()) {
        throw InputError("adversary emitted a symbol outside the alphabet");
    }
    history_.push_back(symbol);
    check_state_invariants();
}

void Improviser::check_state_invariants() const {
    if (m_a_ < 0 || m_a_ > m_i_ || m_i_ <= 0) {
        throw InternalError("improviser budget invariant violated: 0 <= m_a <= m_i, m_i > 0");
    }
    if (m_i_ > widths_.width_i(history_) || m_a_ > widths_.width_a(history_)) {
        throw InternalError("improviser budgets exceed the widths of the current history");
    }
}

Word Improviser::play(const std::function<SymbolId(const Word&)>& adversary_move,
                      RandomSource& source) {
    reset();
    for (;;) {
        switch (turn()) {
        case Turn::Ended:
            return history_;
        case Turn::Ours:
            step_ours(source);
            break;
        case Turn::Adversary:
            step_adversary(adversary_move(history_));
            break;
        }
    }
}

} // namespace rci
