#include "rci/ltlf.hpp"

#include <cctype>
#include <map>

#include "rci/errors.hpp"

namespace rci {

LtlfPtr LtlfFormula::constant(bool value) {
    auto f = std::make_shared<LtlfFormula>();
    f->op_ = value ? LtlfOp::True : LtlfOp::False;
    return f;
}

LtlfPtr LtlfFormula::atom(int index) {
    auto f = std::make_shared<LtlfFormula>();
    f->op_ = LtlfOp::Atom;
    f->atom_ = index;
    return f;
}

LtlfPtr LtlfFormula::unary(LtlfOp op, LtlfPtr sub) {
    auto f = std::make_shared<LtlfFormula>();
    f->op_ = op;
    f->lhs_ = std::move(sub);
    return f;
}

LtlfPtr LtlfFormula::binary(LtlfOp op, LtlfPtr lhs, LtlfPtr rhs) {
    auto f = std::make_shared<LtlfFormula>();
    f->op_ = op;
    f->lhs_ = std::move(lhs);
    f->rhs_ = std::move(rhs);
    return f;
}

namespace {

struct Parser {
    std::string_view text;
    const std::vector<std::string>& props;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool eat(std::string_view token) {
        skip_ws();
        if (text.substr(pos, token.size()) == token) {
            pos += token.size();
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& message) { throw LtlfParseError(pos, message); }

    LtlfPtr parse() {
        LtlfPtr f = parse_implies();
        skip_ws();
        if (pos != text.size()) fail("unexpected trailing input");
        return f;
    }

    LtlfPtr parse_implies() {
        LtlfPtr lhs = parse_or();
        if (eat("->")) {
            LtlfPtr rhs = parse_implies();
            return LtlfFormula::binary(LtlfOp::Implies, std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    LtlfPtr parse_or() {
        LtlfPtr lhs = parse_and();
        for (;;) {
            skip_ws();
            // not consuming the '|' of nothing: '||' and '|' both mean or
            if (eat("||") || (pos < text.size() && text[pos] == '|' && (++pos, true))) {
                lhs = LtlfFormula::binary(LtlfOp::Or, std::move(lhs), parse_and());
            } else {
                return lhs;
            }
        }
    }

    LtlfPtr parse_and() {
        LtlfPtr lhs = parse_until();
        for (;;) {
            skip_ws();
            // '->' must not be mistaken for anything here; '&' and '&&' mean and
            if (eat("&&") || (pos < text.size() && text[pos] == '&' && (++pos, true))) {
                lhs = LtlfFormula::binary(LtlfOp::And, std::move(lhs), parse_until());
            } else {
                return lhs;
            }
        }
    }

    LtlfPtr parse_until() {
        LtlfPtr lhs = parse_unary();
        skip_ws();
        if (match_keyword("U")) {
            return LtlfFormula::binary(LtlfOp::Until, std::move(lhs), parse_until());
        }
        return lhs;
    }

    bool match_keyword(std::string_view kw) {
        skip_ws();
        if (text.substr(pos, kw.size()) != kw) return false;
        const std::size_t after = pos + kw.size();
        if (after < text.size()) {
            const char c = text[after];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') return false;
        }
        pos = after;
        return true;
    }

    LtlfPtr parse_unary() {
        skip_ws();
        if (eat("!")) return LtlfFormula::unary(LtlfOp::Not, parse_unary());
        if (match_keyword("X")) return LtlfFormula::unary(LtlfOp::Next, parse_unary());
        if (match_keyword("F")) return LtlfFormula::unary(LtlfOp::Eventually, parse_unary());
        if (match_keyword("G")) return LtlfFormula::unary(LtlfOp::Always, parse_unary());
        return parse_atom();
    }

    LtlfPtr parse_atom() {
        skip_ws();
        if (pos >= text.size()) fail("expected a proposition, constant or '('");
        if (eat("(")) {
            LtlfPtr f = parse_implies();
            skip_ws();
            if (!eat(")")) fail("expected ')'");
            return f;
        }
        const char c = text[pos];
        if (!std::isalpha(static_cast<unsigned char>(c)) && c != '_') {
            fail("expected a proposition, constant or '('");
        }
        const std::size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
            ++pos;
        }
        const std::string name(text.substr(start, pos - start));
        if (name == "true") return LtlfFormula::constant(true);
        if (name == "false") return LtlfFormula::constant(false);
        if (name == "U" || name == "X" || name == "F" || name == "G") {
            pos = start;
            fail("operator '" + name + "' used where a proposition was expected");
        }
        for (std::size_t i = 0; i < props.size(); ++i) {
            if (props[i] == name) return LtlfFormula::atom(static_cast<int>(i));
        }
        pos = start;
        fail("unknown atom '" + name + "'");
    }
};

/// Verdict on the empty suffix: only Always and True hold.
bool empty_trace_verdict(const LtlfFormula& f) {
    switch (f.op()) {
    case LtlfOp::True: return true;
    case LtlfOp::False: return false;
    case LtlfOp::Atom: return false;
    case LtlfOp::Not: return !empty_trace_verdict(*f.lhs());
    case LtlfOp::And: return empty_trace_verdict(*f.lhs()) && empty_trace_verdict(*f.rhs());
    case LtlfOp::Or: return empty_trace_verdict(*f.lhs()) || empty_trace_verdict(*f.rhs());
    case LtlfOp::Implies: return !empty_trace_verdict(*f.lhs()) || empty_trace_verdict(*f.rhs());
    case LtlfOp::Next: return false;
    case LtlfOp::Until: return false;
    case LtlfOp::Eventually: return false;
    case LtlfOp::Always: return true;
    }
    return false;
}

void collect_postorder(const LtlfFormula* f, std::vector<const LtlfFormula*>& out,
                       std::map<const LtlfFormula*, std::size_t>& ids) {
    if (ids.count(f)) return;
    if (f->lhs()) collect_postorder(f->lhs().get(), out, ids);
    if (f->rhs()) collect_postorder(f->rhs().get(), out, ids);
    ids.emplace(f, out.size());
    out.push_back(f);
}

} // namespace

LtlfPtr parse_ltlf(std::string_view text, const std::vector<std::string>& props) {
    Parser parser{text, props};
    return parser.parse();
}

bool ltlf_eval(const LtlfFormula& formula, const PropTrace& trace) {
    if (trace.empty()) return empty_trace_verdict(formula);

    std::vector<const LtlfFormula*> order;
    std::map<const LtlfFormula*, std::size_t> ids;
    collect_postorder(&formula, order, ids);

    const std::size_t len = trace.size();
    // sat[f][i]: does the suffix starting at i satisfy subformula f?
    std::vector<std::vector<char>> sat(order.size(), std::vector<char>(len, 0));
    for (std::size_t fi = 0; fi < order.size(); ++fi) {
        const LtlfFormula* f = order[fi];
        auto lhs = [&](std::size_t i) -> char { return sat[ids.at(f->lhs().get())][i]; };
        auto rhs = [&](std::size_t i) -> char { return sat[ids.at(f->rhs().get())][i]; };
        for (std::size_t ri = 0; ri < len; ++ri) {
            const std::size_t i = len - 1 - ri; // positions in decreasing order
            char v = 0;
            switch (f->op()) {
            case LtlfOp::True: v = 1; break;
            case LtlfOp::False: v = 0; break;
            case LtlfOp::Atom: v = (trace[i] >> f->atom()) & 1u; break;
            case LtlfOp::Not: v = !lhs(i); break;
            case LtlfOp::And: v = lhs(i) && rhs(i); break;
            case LtlfOp::Or: v = lhs(i) || rhs(i); break;
            case LtlfOp::Implies: v = !lhs(i) || rhs(i); break;
            case LtlfOp::Next: v = (i + 1 < len) && sat[ids.at(f->lhs().get())][i + 1]; break;
            case LtlfOp::Until:
                v = rhs(i) || (lhs(i) && i + 1 < len && sat[fi][i + 1]);
                break;
            case LtlfOp::Eventually:
                v = lhs(i) || (i + 1 < len && sat[fi][i + 1]);
                break;
            case LtlfOp::Always:
                v = lhs(i) && (i + 1 >= len || sat[fi][i + 1]);
                break;
            }
            sat[fi][i] = v;
        }
    }
    return sat[ids.at(&formula)][0];
}

AlphabetPtr assignment_alphabet(const std::vector<std::string>& props) {
    if (props.empty()) throw InputError("at least one proposition is required");
    if (props.size() > 16) {
        throw InputError("too many propositions (limit 16): the alphabet is 2^|P|");
    }
    std::vector<std::string> names;
    names.reserve(std::size_t{1} << props.size());
    for (std::uint32_t mask = 0; mask < (1u << props.size()); ++mask) {
        std::string name(props.size(), '0');
        for (std::size_t bit = 0; bit < props.size(); ++bit) {
            if (mask & (1u << bit)) name[bit] = '1';
        }
        names.push_back(std::move(name));
    }
    return make_alphabet(std::move(names));
}

LtlfSpec::LtlfSpec(LtlfPtr formula, std::vector<std::string> props, std::string source_text)
    : formula_(std::move(formula)),
      props_(std::move(props)),
      source_(std::move(source_text)),
      alphabet_(assignment_alphabet(props_)) {
    if (!formula_) throw ContractError("LtlfSpec requires a formula");
}

bool LtlfSpec::accepts(const Word& w) const {
    // Symbol ids are assignment masks by construction of the alphabet.
    PropTrace trace(w.syms.begin(), w.syms.end());
    return ltlf_eval(*formula_, trace);
}

MembershipOracle ltlf_oracle(std::shared_ptr<const LtlfSpec> spec, int horizon,
                             std::size_t max_props) {
    if (!spec) throw ContractError("ltlf_oracle requires a spec");
    if (spec->props().size() > max_props) {
        throw InputError("proposition count " + std::to_string(spec->props().size()) +
                         " exceeds the limit " + std::to_string(max_props) + " (alphabet is 2^|P|)");
    }
    return membership_oracle(spec, horizon);
}

} // namespace rci
