#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "brute.hpp"
#include "fixtures.hpp"
#include "rci/errors.hpp"
#include "rci/games.hpp"
#include "rci/harness.hpp"
#include "rci/json_io.hpp"

using namespace rci;
using namespace rci::testing;

namespace {

DistributionMap expected_drift_distribution(const Alphabet& ab) {
    DistributionMap m;
    m[parse_word(ab, "++-+")] = Rational(1, 2);
    m[parse_word(ab, "=-+-")] = Rational(1, 6);
    m[parse_word(ab, "=-=-")] = Rational(1, 6);
    m[parse_word(ab, "--+-")] = Rational(1, 6);
    return m;
}

} // namespace

TEST_CASE("adversary kinds") {
    auto inst = counter_instance(Rational(1, 2), Rational(1, 2));
    auto widths = make_width_oracles(inst);
    const auto& ab = *inst.alphabet;

    SUBCASE("greedy minimizes the width of I, ties to the canonical order") {
        GreedyMinWidthAdversary greedy(widths.width_i, ab.size());
        CHECK(ab.name(greedy.next_move(parse_word(ab, "+"))) == "+"); // widths 1,2,3
        // At the counter 0 the min ties between + and -, so + wins.
        CHECK(ab.name(greedy.next_move(parse_word(ab, "="))) == "+");
    }
    SUBCASE("drift moves away from zero and down at zero") {
        DriftAdversary drift(ab);
        CHECK(ab.name(drift.next_move(parse_word(ab, "+"))) == "+");
        CHECK(ab.name(drift.next_move(parse_word(ab, "-"))) == "-");
        CHECK(ab.name(drift.next_move(parse_word(ab, "="))) == "-");
        CHECK(ab.name(drift.next_move(parse_word(ab, "=-+"))) == "-");
    }
    SUBCASE("cyclic wraps around its adversary turns") {
        CyclicAdversary cyclic(parse_word(ab, "+="));
        CHECK(cyclic.next_move(parse_word(ab, "=")) == *ab.find("+"));    // position 1
        CHECK(cyclic.next_move(parse_word(ab, "===")) == *ab.find("="));  // position 3
        CHECK(cyclic.next_move(parse_word(ab, "=====")) == *ab.find("+")); // position 5
    }
    SUBCASE("scripted reads a position-indexed template and exhausts") {
        ScriptedAdversary scripted(parse_word(ab, "+="));
        CHECK(scripted.next_move(parse_word(ab, "="))== *ab.find("="));
        CHECK_THROWS_AS(scripted.next_move(parse_word(ab, "===")), InputError);
    }
    SUBCASE("repl prompts, re-prompts on junk and aborts on blank") {
        std::istringstream in("nope\n+\n");
        std::ostringstream out;
        ReplAdversary repl(inst.alphabet, in, out);
        CHECK(repl.next_move(parse_word(ab, "=")) == *ab.find("+"));
        CHECK(out.str().find("h== your-move?") != std::string::npos);
        CHECK(out.str().find("unknown symbol 'nope'") != std::string::npos);

        std::istringstream blank("\n");
        ReplAdversary aborting(inst.alphabet, blank, out);
        CHECK_THROWS_AS(aborting.next_move(parse_word(ab, "=")), EpisodeAborted);
    }
}

TEST_CASE("exact distribution of the running example against the drift adversary") {
    auto inst = counter_instance(Rational(1, 2), Rational(1, 2));
    auto widths = make_width_oracles(inst);
    DriftAdversary drift(*inst.alphabet);
    const DistributionMap dist = exact_distribution(inst, widths, drift);

    CHECK(dist == expected_drift_distribution(*inst.alphabet));

    // And the from-scratch model agrees play for play.
    DriftAdversary drift2(*inst.alphabet);
    const auto oracle_dist =
        enumerate_strategy(inst, [&](const Word& h) { return drift2.next_move(h); });
    CHECK(dist.size() == oracle_dist.size());
    for (const auto& [word, p] : oracle_dist) {
        auto it = dist.find(word);
        REQUIRE(it != dist.end());
        CHECK(it->second == p);
    }
}

TEST_CASE("exact distributions normalize and respect the improvisation bounds") {
    auto inst = counter_instance(Rational(1, 2), Rational(1, 2));
    auto widths = make_width_oracles(inst);

    std::vector<std::unique_ptr<Adversary>> adversaries;
    adversaries.push_back(std::make_unique<DriftAdversary>(*inst.alphabet));
    adversaries.push_back(
        std::make_unique<GreedyMinWidthAdversary>(widths.width_i, inst.alphabet->size()));
    adversaries.push_back(
        std::make_unique<GreedyMinWidthAdversary>(widths.width_a, inst.alphabet->size()));
    adversaries.push_back(std::make_unique<CyclicAdversary>(parse_word(*inst.alphabet, "=")));

    for (auto& adversary : adversaries) {
        const DistributionMap dist = exact_distribution(inst, widths, *adversary);
        Rational total = 0, mass_a = 0, max_p = 0;
        for (const auto& [word, p] : dist) {
            CHECK(inst.hard->accepts(word)); // support inside I, zero tolerance
            total += p;
            if (inst.soft->accepts(word)) mass_a += p;
            max_p = std::max(max_p, p);
        }
        CHECK(total == Rational(1));
        CHECK(mass_a >= Rational(1, 2));              // >= min(rho * width_A, 1) = 1/2
        CHECK(max_p <= inst.rho);                     // randomness, exact
        CHECK(BigInt(dist.size()) >= 2);              // support >= 1/rho
    }
}

TEST_CASE("exact distribution input contracts") {
    auto inst = counter_instance(Rational(1, 2), Rational(1, 2));
    auto widths = make_width_oracles(inst);

    SUBCASE("non-deterministic adversaries are refused") {
        RandomAdversary random(inst.alphabet->size(), 1);
        CHECK_THROWS_AS(exact_distribution(inst, widths, random), InputError);
    }
    SUBCASE("the node budget refuses instead of approximating") {
        DriftAdversary drift(*inst.alphabet);
        ExactDistributionOptions tiny;
        tiny.max_nodes = 3;
        CHECK_THROWS_AS(exact_distribution(inst, widths, drift, tiny), EnumerationLimitError);
    }
    SUBCASE("unrealizable instances are contract errors") {
        auto bad = counter_instance(Rational(1, 2), Rational(1, 3));
        auto bad_widths = make_width_oracles(bad);
        DriftAdversary drift(*bad.alphabet);
        CHECK_THROWS_AS(exact_distribution(bad, bad_widths, drift), ContractError);
    }
}

TEST_CASE("the two-branch game's distributions beat the memoryless bound") {
    // Compiled from the counterexample game: width_I = 3, width_A = 2,
    // realizable at epsilon = rho = 1/3 though no memoryless strategy works.
    const Rsg game = load_game(instances_dir() / "fig3" / "left.json");
    const CompiledGame compiled = compile_rsg(game, 4);
    RciInstance inst;
    inst.alphabet = compiled.alphabet;
    inst.hard = compiled.hard;
    inst.soft = compiled.soft;
    inst.horizon = 4;
    inst.epsilon = Rational(1, 3);
    inst.rho = Rational(1, 3);
    REQUIRE(validate_instance(inst).valid());
    auto widths = make_width_oracles(inst);
    REQUIRE(check_realizability(inst, widths).realizable);

    const auto& ab = *inst.alphabet;
    const SymbolId u = *ab.find("u"), d = *ab.find("d"), pad = *ab.find("#");
    auto branch_adversary = [&](bool to_y) {
        return FunctionAdversary([&ab, u, d, pad, to_y](const Word& h) -> SymbolId {
            if (h.size() != 1) return pad;    // terminal padding turns
            if (h[0] == u) return to_y ? u : d; // at X, pick the Y or Z branch
            return d;                           // at the bottom node, the only move
        });
    };

    for (bool to_y : {true, false}) {
        auto adversary = branch_adversary(to_y);
        const DistributionMap dist = exact_distribution(inst, widths, adversary);
        Rational total = 0, mass_a = 0, max_p = 0;
        for (const auto& [word, p] : dist) {
            CHECK(inst.hard->accepts(word));
            total += p;
            if (inst.soft->accepts(word)) mass_a += p;
            max_p = std::max(max_p, p);
        }
        CHECK(total == Rational(1));
        CHECK(mass_a >= Rational(2, 3)); // 1 - epsilon
        CHECK(max_p <= Rational(1, 3)); // rho
    }
}

TEST_CASE("episode statistics") {
    auto inst = counter_instance(Rational(1, 2), Rational(1, 2));
    auto widths = make_width_oracles(inst);

    SUBCASE("zero episodes yield empty stats without dividing") {
        DriftAdversary drift(*inst.alphabet);
        const EpisodeStats stats = run_episodes(inst, widths, drift, 0, 7);
        CHECK(stats.episodes == 0);
        CHECK(stats.max_play_frequency() == Rational(0));
    }
    SUBCASE("runs are reproducible under a fixed seed") {
        DriftAdversary drift(*inst.alphabet);
        const EpisodeStats a = run_episodes(inst, widths, drift, 500, 42);
        const EpisodeStats b = run_episodes(inst, widths, drift, 500, 42);
        CHECK(a.play_counts == b.play_counts);
        CHECK(a.soft_hits == b.soft_hits);
        const EpisodeStats c = run_episodes(inst, widths, drift, 500, 43);
        CHECK(c.play_counts != a.play_counts);
    }
    SUBCASE("parallel execution does not change the outcome") {
        RandomAdversary random(inst.alphabet->size(), 5);
        const EpisodeStats serial = run_episodes(inst, widths, random, 400, 11, 1);
        const EpisodeStats parallel = run_episodes(inst, widths, random, 400, 11, 4);
        CHECK(serial.play_counts == parallel.play_counts);
        CHECK(serial.hard_violations == 0);
        CHECK(parallel.hard_violations == 0);
    }
    SUBCASE("frequencies converge to the exact distribution (3 sigma at N = 10000)") {
        DriftAdversary drift(*inst.alphabet);
        const DistributionMap dist = exact_distribution(inst, widths, drift);
        const std::uint64_t n = 10000;
        DriftAdversary drift2(*inst.alphabet);
        const EpisodeStats stats = run_episodes(inst, widths, drift2, n, 1234);
        CHECK(stats.hard_violations == 0);
        for (const auto& [word, p] : dist) {
            const double expect = p.convert_to<double>();
            const double sigma = std::sqrt(expect * (1 - expect) * static_cast<double>(n));
            const auto it = stats.play_counts.find(word);
            const double observed = it == stats.play_counts.end()
                                        ? 0.0
                                        : static_cast<double>(it->second);
            CHECK(std::abs(observed - expect * static_cast<double>(n)) <= 3 * sigma + 1);
        }
    }
}

TEST_CASE("stats and distribution JSON forms") {
    auto inst = counter_instance(Rational(1, 2), Rational(1, 2));
    auto widths = make_width_oracles(inst);
    DriftAdversary drift(*inst.alphabet);
    const EpisodeStats stats = run_episodes(inst, widths, drift, 8, 42);
    const std::string json = stats_to_json(stats, *inst.alphabet);
    CHECK(json.find("\"episodes\":8") != std::string::npos);
    CHECK(json.find("\"hard_violations\":0") != std::string::npos);
    CHECK(json.find("\"seed\":42") != std::string::npos);
    CHECK(json.find("\"max_play_frequency\":\"") != std::string::npos);

    const std::string dist_json =
        distribution_to_json(exact_distribution(inst, widths, drift), *inst.alphabet);
    CHECK(dist_json.find("\"++-+\": \"1/2\"") != std::string::npos);
}
