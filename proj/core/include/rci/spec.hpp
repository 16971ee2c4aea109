#pragma once

#include <memory>
#include <string>
#include <vector>

#include "rci/alphabet.hpp"
#include "rci/rational.hpp"

namespace rci {

/// A specification is anything with a deterministic membership test over
/// words of the game length. Concrete carriers: Dfa and LtlfSpec.
class Spec {
public:
    virtual ~Spec() = default;

    virtual const Alphabet& alphabet() const = 0;
    virtual AlphabetPtr alphabet_ptr() const = 0;
    virtual bool accepts(const Word& w) const = 0;
};

using SpecPtr = std::shared_ptr<const Spec>;

/// Accepts every word; the identity soft constraint.
class UniversalSpec final : public Spec {
public:
    explicit UniversalSpec(AlphabetPtr alphabet) : alphabet_(std::move(alphabet)) {}

    const Alphabet& alphabet() const override { return *alphabet_; }
    AlphabetPtr alphabet_ptr() const override { return alphabet_; }
    bool accepts(const Word&) const override { return true; }

private:
    AlphabetPtr alphabet_;
};

/// One synthesis problem: hard spec H, soft spec S, horizon n, and the
/// exact rational bounds epsilon (soft) and rho (randomness).
struct RciInstance {
    AlphabetPtr alphabet;
    SpecPtr hard;
    SpecPtr soft;
    int horizon = 0;
    Rational epsilon;
    Rational rho;
};

struct ValidationReport {
    std::vector<std::string> problems;
    bool valid() const { return problems.empty(); }
};

struct ValidationOptions {
    /// Horizon cap; widths can reach |alphabet|^n, so this bounds memory.
    int max_horizon = 64;
};

/// Reports every violated invariant; a valid instance yields an empty report.
ValidationReport validate_instance(const RciInstance& instance,
                                   const ValidationOptions& options = {});

} // namespace rci
