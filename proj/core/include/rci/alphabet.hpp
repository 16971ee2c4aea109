#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rci {

using SymbolId = std::uint32_t;

/// An ordered list of distinct symbol names. The declaration order is the
/// canonical order used for tie-breaking everywhere (Partition, greedy
/// adversaries), so two alphabets with the same names in a different order
/// are different alphabets.
class Alphabet {
public:
    explicit Alphabet(std::vector<std::string> symbols);

    std::size_t size() const { return names_.size(); }
    const std::string& name(SymbolId id) const { return names_.at(id); }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<SymbolId> find(std::string_view name) const;

    /// True when every symbol is a single character, enabling the compact
    /// word rendering "++=+" instead of "+,+,=,+".
    bool single_char() const { return single_char_; }

    bool operator==(const Alphabet& other) const { return names_ == other.names_; }

private:
    std::vector<std::string> names_;
    bool single_char_ = true;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

AlphabetPtr make_alphabet(std::vector<std::string> symbols);

/// A fixed-length sequence of symbol indices over some alphabet.
struct Word {
    std::vector<SymbolId> syms;

    Word() = default;
    explicit Word(std::vector<SymbolId> s) : syms(std::move(s)) {}

    std::size_t size() const { return syms.size(); }
    bool empty() const { return syms.empty(); }
    SymbolId operator[](std::size_t i) const { return syms[i]; }
    void push_back(SymbolId s) { syms.push_back(s); }
    void pop_back() { syms.pop_back(); }

    auto operator<=>(const Word&) const = default;
};

/// Parses a word. Single-character alphabets accept the compact form;
/// otherwise symbols are comma-separated. Empty text is the empty word.
/// Throws InputError on unknown symbols.
Word parse_word(const Alphabet& alphabet, std::string_view text);

std::string render_word(const Alphabet& alphabet, const Word& word);

enum class Turn { Ours, Adversary, Ended };

/// A partial play of length <= horizon; position 0 is ours.
struct History {
    Word word;
    int horizon = 0;
};

Turn turn_at(std::size_t position, int horizon);
Turn turn_of(const History& h);

} // namespace rci
