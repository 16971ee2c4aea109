#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "rci/alphabet.hpp"
#include "rci/errors.hpp"
#include "rci/generic_width.hpp"
#include "rci/spec.hpp"

namespace rci {

enum class LtlfOp {
    True,
    False,
    Atom,
    Not,
    And,
    Or,
    Implies,
    Next,       // strong: false at the last position
    Until,
    Eventually,
    Always,
};

class LtlfFormula;
using LtlfPtr = std::shared_ptr<const LtlfFormula>;

/// Immutable syntax tree over a fixed proposition list.
class LtlfFormula {
public:
    LtlfOp op() const { return op_; }
    int atom() const { return atom_; }
    const LtlfPtr& lhs() const { return lhs_; }
    const LtlfPtr& rhs() const { return rhs_; }

    static LtlfPtr constant(bool value);
    static LtlfPtr atom(int index);
    static LtlfPtr unary(LtlfOp op, LtlfPtr sub);
    static LtlfPtr binary(LtlfOp op, LtlfPtr lhs, LtlfPtr rhs);

private:
    LtlfOp op_ = LtlfOp::True;
    int atom_ = -1;
    LtlfPtr lhs_, rhs_;
};

class LtlfParseError : public InputError {
public:
    LtlfParseError(std::size_t position, const std::string& message)
        : InputError("parse error at position " + std::to_string(position) + ": " + message),
          position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Parses the textual form. Operators by decreasing precedence:
/// {! X F G} > U (right-assoc) > & > | > -> (right-assoc); && and || are
/// accepted as aliases. Atoms must come from `props`. Positions in errors
/// are 0-based byte offsets.
LtlfPtr parse_ltlf(std::string_view text, const std::vector<std::string>& props);

/// One assignment per position; bit i is the truth of props[i].
using PropAssignment = std::uint32_t;
using PropTrace = std::vector<PropAssignment>;

/// Finite-trace satisfaction at position 0, by dynamic programming over
/// (subformula, position); O(|formula| * |trace|). The empty trace
/// satisfies Always and the constants only.
bool ltlf_eval(const LtlfFormula& formula, const PropTrace& trace);

/// The alphabet 2^P: one symbol per assignment, ordered by binary counting
/// with the first proposition as the least significant bit. Symbol names
/// are bit strings in proposition order ("10" = first true, second false).
AlphabetPtr assignment_alphabet(const std::vector<std::string>& props);

/// An LTLf formula acting as a membership spec over the 2^P alphabet.
class LtlfSpec final : public Spec {
public:
    LtlfSpec(LtlfPtr formula, std::vector<std::string> props, std::string source_text = {});

    const Alphabet& alphabet() const override { return *alphabet_; }
    AlphabetPtr alphabet_ptr() const override { return alphabet_; }
    bool accepts(const Word& w) const override;

    const LtlfFormula& formula() const { return *formula_; }
    const std::vector<std::string>& props() const { return props_; }
    const std::string& source_text() const { return source_; }

private:
    LtlfPtr formula_;
    std::vector<std::string> props_;
    std::string source_;
    AlphabetPtr alphabet_;
};

/// Membership oracle for length-n traces. Throws InputError when the
/// proposition count exceeds `max_props` (the alphabet is 2^|P|).
MembershipOracle ltlf_oracle(std::shared_ptr<const LtlfSpec> spec, int horizon,
                             std::size_t max_props = 8);

} // namespace rci
