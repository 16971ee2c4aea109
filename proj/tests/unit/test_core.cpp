#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "rci/alphabet.hpp"
#include "rci/errors.hpp"
#include "rci/rational.hpp"
#include "rci/spec.hpp"

using namespace rci;
using namespace rci::testing;

TEST_CASE("turn parity on the counter game") {
    const auto alphabet = counter_alphabet();
    auto h = [&](const char* text) { return History{parse_word(*alphabet, text), 4}; };
    CHECK(turn_of(h("")) == Turn::Ours);
    CHECK(turn_of(h("+")) == Turn::Adversary);
    CHECK(turn_of(h("++=+")) == Turn::Ended);
}

TEST_CASE("turn parity is a pure function of |h| and n") {
    for (int n = 0; n <= 10; ++n) {
        for (int len = 0; len <= n; ++len) {
            const Turn t = turn_at(static_cast<std::size_t>(len), n);
            if (len == n) {
                CHECK(t == Turn::Ended);
            } else if (len % 2 == 0) {
                CHECK(t == Turn::Ours);
            } else {
                CHECK(t == Turn::Adversary);
            }
        }
    }
    CHECK_THROWS_AS(turn_of(History{parse_word(*counter_alphabet(), "+++"), 2}), ContractError);
}

TEST_CASE("alphabet construction and lookup") {
    CHECK_THROWS_AS(Alphabet({}), InputError);
    CHECK_THROWS_AS(Alphabet({"a", "a"}), InputError);
    CHECK_THROWS_AS(Alphabet({"a", ""}), InputError);

    Alphabet ab({"up", "down"});
    CHECK(ab.size() == 2);
    CHECK(ab.find("down") == SymbolId{1});
    CHECK_FALSE(ab.find("left").has_value());
    CHECK_FALSE(ab.single_char());
}

TEST_CASE("canonical order survives serialization round trips") {
    const std::vector<std::string> names = {"+", "=", "-"};
    Alphabet original(names);
    Alphabet reloaded(original.names()); // serialize = the name list
    for (SymbolId i = 0; i < names.size(); ++i) {
        CHECK(reloaded.find(names[i]) == i);
        CHECK(reloaded.name(i) == original.name(i));
    }
}

TEST_CASE("word parsing and rendering") {
    const auto alphabet = counter_alphabet();
    const Word w = parse_word(*alphabet, "+=-");
    CHECK(w.syms == std::vector<SymbolId>{0, 1, 2});
    CHECK(render_word(*alphabet, w) == "+=-");
    CHECK(parse_word(*alphabet, "").empty());
    CHECK_THROWS_AS(parse_word(*alphabet, "+x"), InputError);

    Alphabet moves({"N", "stay"});
    const Word m = parse_word(moves, "N,stay,N");
    CHECK(m.size() == 3);
    CHECK(render_word(moves, m) == "N,stay,N");
    CHECK_THROWS_AS(parse_word(moves, "N,left"), InputError);
}

TEST_CASE("rational parsing and formatting") {
    CHECK(parse_rational("1/2") == Rational(1, 2));
    CHECK(parse_rational("3") == Rational(3));
    CHECK(parse_rational("2/4") == Rational(1, 2)); // reduced on load
    CHECK(fraction_string(Rational(1, 2)) == "1/2");
    CHECK(fraction_string(Rational(0)) == "0/1");
    CHECK(decimal_string(Rational(1, 2)) == "0.5");
    CHECK_THROWS_AS(parse_rational("1/0"), InputError);
    CHECK_THROWS_AS(parse_rational("1/-2"), InputError);
    CHECK_THROWS_AS(parse_rational("a/2"), InputError);
    CHECK_THROWS_AS(parse_rational(""), InputError);
}

TEST_CASE("instance validation") {
    SUBCASE("the running example is valid") {
        const auto inst = counter_instance(Rational(1, 2), Rational(1, 2));
        CHECK(validate_instance(inst).valid());
    }
    SUBCASE("rho = 0 is degenerate") {
        const auto inst = counter_instance(Rational(1, 2), Rational(0));
        const auto report = validate_instance(inst);
        REQUIRE_FALSE(report.valid());
        CHECK(report.problems.size() == 1);
    }
    SUBCASE("epsilon outside [0,1]") {
        CHECK_FALSE(validate_instance(counter_instance(Rational(3, 2), Rational(1, 2))).valid());
    }
    SUBCASE("alphabet mismatch is reported") {
        auto inst = counter_instance(Rational(1, 2), Rational(1, 2));
        inst.soft = std::make_shared<UniversalSpec>(make_alphabet({"a", "b"}));
        const auto report = validate_instance(inst);
        CHECK_FALSE(report.valid());
    }
    SUBCASE("horizon limit is configurable") {
        auto inst = counter_instance(Rational(1, 2), Rational(1, 2));
        inst.horizon = 65;
        CHECK_FALSE(validate_instance(inst).valid());
        CHECK(validate_instance(inst, {.max_horizon = 128}).valid());
    }
}
