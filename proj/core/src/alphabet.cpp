#include "rci/alphabet.hpp"

#include <unordered_set>

#include "rci/errors.hpp"

namespace rci {

Alphabet::Alphabet(std::vector<std::string> symbols) : names_(std::move(symbols)) {
    if (names_.empty()) {
        throw InputError("alphabet must contain at least one symbol");
    }
    std::unordered_set<std::string_view> seen;
    for (const auto& s : names_) {
        if (s.empty()) {
            throw InputError("alphabet symbols must be non-empty strings");
        }
        if (!seen.insert(s).second) {
            throw InputError("duplicate alphabet symbol '" + s + "'");
        }
        if (s.size() != 1) single_char_ = false;
    }
}

std::optional<SymbolId> Alphabet::find(std::string_view name) const {
    for (SymbolId i = 0; i < names_.size(); ++i) {
        if (names_[i] == name) return i;
    }
    return std::nullopt;
}

AlphabetPtr make_alphabet(std::vector<std::string> symbols) {
    return std::make_shared<const Alphabet>(std::move(symbols));
}

Word parse_word(const Alphabet& alphabet, std::string_view text) {
    Word w;
    if (text.empty()) return w;
    if (text.find(',') == std::string_view::npos && alphabet.single_char()) {
        for (char c : text) {
            auto id = alphabet.find(std::string_view(&c, 1));
            if (!id) {
                throw InputError(std::string("symbol '") + c + "' is not in the alphabet");
            }
            w.push_back(*id);
        }
        return w;
    }
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(',', start);
        if (end == std::string_view::npos) end = text.size();
        auto piece = text.substr(start, end - start);
        auto id = alphabet.find(piece);
        if (!id) {
            throw InputError("symbol '" + std::string(piece) + "' is not in the alphabet");
        }
        w.push_back(*id);
        if (end == text.size()) break;
        start = end + 1;
    }
    return w;
}

std::string render_word(const Alphabet& alphabet, const Word& word) {
    std::string out;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (i > 0 && !alphabet.single_char()) out += ',';
        out += alphabet.name(word[i]);
    }
    return out;
}

Turn turn_at(std::size_t position, int horizon) {
    if (static_cast<long long>(position) >= horizon) return Turn::Ended;
    return (position % 2 == 0) ? Turn::Ours : Turn::Adversary;
}

Turn turn_of(const History& h) {
    if (static_cast<long long>(h.word.size()) > h.horizon) {
        throw ContractError("history longer than the horizon");
    }
    return turn_at(h.word.size(), h.horizon);
}

} // namespace rci
