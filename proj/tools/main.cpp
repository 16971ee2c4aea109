// Command-line surface for the improvisation engine: realizability checks,
// width queries, sampling, interactive play, statistical verification,
// exact distributions, and game/grid compilation.

#include <filesystem>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rci/errors.hpp"
#include "rci/games.hpp"
#include "rci/harness.hpp"
#include "rci/improviser.hpp"
#include "rci/json_io.hpp"
#include "rci/ltlf.hpp"
#include "rci/width_oracle.hpp"

namespace {

using namespace rci;
using nlohmann::ordered_json;

constexpr int kExitRealizable = 0;
constexpr int kExitUnrealizable = 1;
constexpr int kExitInputError = 2;
constexpr int kExitInternalError = 3;

struct CommonOptions {
    std::string format = "human";
    std::uint64_t seed = 0; // fixed default for reproducibility
    std::string backend = "auto";

    bool json() const { return format == "json"; }
    WidthBackend width_backend() const {
        if (backend == "auto") return WidthBackend::Auto;
        if (backend == "dfa") return WidthBackend::DfaTable;
        if (backend == "generic") return WidthBackend::Generic;
        throw InputError("unknown backend '" + backend + "'");
    }
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--format", opts.format, "Output format: human or json")
        ->check(CLI::IsMember({"human", "json"}));
    cmd->add_option("--seed", opts.seed, "Randomness seed (default 0)");
    cmd->add_option("--backend", opts.backend, "Width backend: auto, dfa or generic")
        ->check(CLI::IsMember({"auto", "dfa", "generic"}));
}

std::string pretty_rational(const Rational& r) {
    return fraction_string(r) + " (" + decimal_string(r) + ")";
}

ordered_json width_json(const BigInt& w) {
    if (w <= BigInt(1) << 53) return w.convert_to<std::uint64_t>();
    return w.str();
}

RciInstance load_checked_instance(const std::string& path) {
    RciInstance instance = load_instance(path);
    const ValidationReport report = validate_instance(instance);
    if (!report.valid()) {
        std::string msg = "invalid instance '" + path + "':";
        for (const auto& p : report.problems) msg += "\n  - " + p;
        throw InputError(msg);
    }
    return instance;
}

std::unique_ptr<Adversary> make_adversary(const std::string& descriptor,
                                          const RciInstance& instance,
                                          const WidthOraclePair& widths, std::uint64_t seed) {
    const auto colon = descriptor.find(':');
    const std::string kind = descriptor.substr(0, colon);
    const std::string arg =
        colon == std::string::npos ? std::string() : descriptor.substr(colon + 1);

    if (kind == "greedy") {
        return std::make_unique<GreedyMinWidthAdversary>(widths.width_i,
                                                         instance.alphabet->size());
    }
    if (kind == "greedy-a") {
        return std::make_unique<GreedyMinWidthAdversary>(widths.width_a,
                                                         instance.alphabet->size());
    }
    if (kind == "drift") {
        if (arg.empty()) return std::make_unique<DriftAdversary>(*instance.alphabet);
        const auto comma = arg.find(',');
        if (comma == std::string::npos) {
            throw InputError("drift adversary takes 'drift:UP,DOWN'");
        }
        return std::make_unique<DriftAdversary>(*instance.alphabet, arg.substr(0, comma),
                                                arg.substr(comma + 1));
    }
    if (kind == "random") {
        const std::uint64_t s = arg.empty() ? seed : std::stoull(arg);
        return std::make_unique<RandomAdversary>(instance.alphabet->size(), s);
    }
    if (kind == "scripted") {
        return std::make_unique<ScriptedAdversary>(parse_word(*instance.alphabet, arg));
    }
    if (kind == "cyclic") {
        return std::make_unique<CyclicAdversary>(parse_word(*instance.alphabet, arg));
    }
    if (kind == "repl") {
        return std::make_unique<ReplAdversary>(instance.alphabet, std::cin, std::cout);
    }
    throw InputError("unknown adversary '" + descriptor +
                     "' (greedy, greedy-a, drift[:UP,DOWN], random[:SEED], scripted:WORD, "
                     "cyclic:WORD, repl)");
}

void print_report(const RealizabilityReport& report, const RciInstance& instance,
                  const CommonOptions& opts) {
    if (opts.json()) {
        std::cout << report_to_json(report);
        return;
    }
    std::cout << "realizable: " << (report.realizable ? "yes" : "no") << "\n"
              << "width_I: " << report.width_i.str() << "\n"
              << "width_A: " << report.width_a.str() << "\n"
              << "epsilon: " << pretty_rational(instance.epsilon) << "\n"
              << "rho: " << pretty_rational(instance.rho) << "\n"
              << "epsilon_opt: " << pretty_rational(report.epsilon_opt) << "\n";
    if (report.rho_min) {
        std::cout << "rho_min: " << pretty_rational(*report.rho_min) << "\n";
    } else {
        std::cout << "rho_min: none (no finite rho is realizable at this epsilon)\n";
    }
}

int cmd_check(const std::string& path, const CommonOptions& opts) {
    const RciInstance instance = load_checked_instance(path);
    const WidthOraclePair widths = make_width_oracles(instance, opts.width_backend());
    const RealizabilityReport report = check_realizability(instance, widths);
    print_report(report, instance, opts);
    return report.realizable ? kExitRealizable : kExitUnrealizable;
}

int cmd_widths(const std::string& path, const std::string& history_text,
               const CommonOptions& opts) {
    const RciInstance instance = load_checked_instance(path);
    const WidthOraclePair widths = make_width_oracles(instance, opts.width_backend());
    const Word history = parse_word(*instance.alphabet, history_text);
    if (history.size() > static_cast<std::size_t>(instance.horizon)) {
        throw InputError("history is longer than the horizon");
    }
    const BigInt wi = widths.width_i(history);
    const BigInt wa = widths.width_a(history);
    if (opts.json()) {
        ordered_json j;
        j["history"] = render_word(*instance.alphabet, history);
        j["width_I"] = width_json(wi);
        j["width_A"] = width_json(wa);
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "width_I(h) = " << wi.str() << "\n"
                  << "width_A(h) = " << wa.str() << "\n";
    }
    return kExitRealizable;
}

/// Shared by sample/verify/exact: oracles plus a realizability gate.
struct PreparedInstance {
    RciInstance instance;
    WidthOraclePair widths;
    RealizabilityReport report;
};

PreparedInstance prepare(const std::string& path, const CommonOptions& opts) {
    PreparedInstance p{load_checked_instance(path), {}, {}};
    p.widths = make_width_oracles(p.instance, opts.width_backend());
    p.report = check_realizability(p.instance, p.widths);
    return p;
}

int require_realizable(const PreparedInstance& p, const CommonOptions& opts) {
    if (p.report.realizable) return kExitRealizable;
    if (opts.json()) {
        std::cout << report_to_json(p.report);
    } else {
        std::cout << "instance is not realizable\n";
        print_report(p.report, p.instance, opts);
    }
    return kExitUnrealizable;
}

int cmd_sample(const std::string& path, const std::string& adversary_desc, unsigned count,
               const CommonOptions& opts) {
    PreparedInstance p = prepare(path, opts);
    if (int rc = require_realizable(p, opts)) return rc;
    auto adversary = make_adversary(adversary_desc, p.instance, p.widths, opts.seed);
    Improviser improviser(p.instance, p.widths);

    ordered_json plays = ordered_json::array();
    for (unsigned k = 0; k < count; ++k) {
        adversary->begin_episode(k);
        Mt19937Source source(derive_seed(opts.seed, k));
        const Word play = improvise_play(improviser, *adversary, source);
        const bool in_hard = p.instance.hard->accepts(play);
        const bool in_soft = in_hard && p.instance.soft->accepts(play);
        if (opts.json()) {
            ordered_json pj;
            pj["play"] = render_word(*p.instance.alphabet, play);
            pj["in_hard"] = in_hard;
            pj["in_soft"] = in_soft;
            plays.push_back(std::move(pj));
        } else {
            std::cout << render_word(*p.instance.alphabet, play)
                      << (in_soft ? "  (admissible)" : in_hard ? "  (improvisation)" : "  (!)")
                      << "\n";
        }
    }
    if (opts.json()) {
        ordered_json j;
        j["seed"] = opts.seed;
        j["plays"] = std::move(plays);
        std::cout << j.dump() << "\n";
    }
    return kExitRealizable;
}

int cmd_play(const std::string& path, const CommonOptions& opts) {
    PreparedInstance p = prepare(path, opts);
    if (int rc = require_realizable(p, opts)) return rc;
    Improviser improviser(p.instance, p.widths);
    ReplAdversary repl(p.instance.alphabet, std::cin, std::cout);
    Mt19937Source source(derive_seed(opts.seed, 0));

    try {
        for (;;) {
            const Turn turn = improviser.turn();
            if (turn == Turn::Ended) break;
            if (turn == Turn::Ours) {
                const SymbolId u = improviser.step_ours(source);
                std::cout << "improviser: " << p.instance.alphabet->name(u) << "\n";
            } else {
                improviser.step_adversary(repl.next_move(improviser.history()));
            }
        }
    } catch (const EpisodeAborted&) {
        std::cout << "aborted\n";
        return kExitRealizable;
    }

    const Word& play = improviser.history();
    const bool in_hard = p.instance.hard->accepts(play);
    const bool in_soft = in_hard && p.instance.soft->accepts(play);
    if (opts.json()) {
        ordered_json j;
        j["play"] = render_word(*p.instance.alphabet, play);
        j["in_hard"] = in_hard;
        j["in_soft"] = in_soft;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "play: " << render_word(*p.instance.alphabet, play) << "\n"
                  << "hard constraint: " << (in_hard ? "satisfied" : "VIOLATED") << "\n"
                  << "soft constraint: " << (in_soft ? "satisfied" : "missed") << "\n";
    }
    return kExitRealizable;
}

int cmd_verify(const std::string& path, const std::string& adversary_desc,
               std::uint64_t episodes, unsigned jobs, const CommonOptions& opts) {
    PreparedInstance p = prepare(path, opts);
    if (int rc = require_realizable(p, opts)) return rc;
    auto adversary = make_adversary(adversary_desc, p.instance, p.widths, opts.seed);
    const EpisodeStats stats =
        run_episodes(p.instance, p.widths, *adversary, episodes, opts.seed, jobs);

    if (opts.json()) {
        std::cout << stats_to_json(stats, *p.instance.alphabet);
    } else {
        std::cout << "episodes: " << stats.episodes << "\n"
                  << "hard_violations: " << stats.hard_violations << "\n"
                  << "soft_hits: " << stats.soft_hits << "\n"
                  << "max_play_frequency: " << pretty_rational(stats.max_play_frequency()) << "\n"
                  << "seed: " << stats.seed << "\n";
    }
    // A hard violation contradicts the strategy's guarantee; that is a bug.
    return stats.hard_violations == 0 ? kExitRealizable : kExitInternalError;
}

int cmd_exact(const std::string& path, const std::string& adversary_desc,
              std::size_t max_nodes, const CommonOptions& opts) {
    PreparedInstance p = prepare(path, opts);
    if (int rc = require_realizable(p, opts)) return rc;
    auto adversary = make_adversary(adversary_desc, p.instance, p.widths, opts.seed);
    ExactDistributionOptions options;
    options.max_nodes = max_nodes;
    const DistributionMap distribution =
        exact_distribution(p.instance, p.widths, *adversary, options);

    if (opts.json()) {
        std::cout << distribution_to_json(distribution, *p.instance.alphabet);
        return kExitRealizable;
    }
    Rational total = 0, soft_mass = 0, max_mass = 0;
    for (const auto& [word, probability] : distribution) {
        std::cout << render_word(*p.instance.alphabet, word) << "  "
                  << pretty_rational(probability) << "\n";
        total += probability;
        if (p.instance.soft->accepts(word)) soft_mass += probability;
        if (probability > max_mass) max_mass = probability;
    }
    std::cout << "plays: " << distribution.size() << "\n"
              << "total mass: " << pretty_rational(total) << "\n"
              << "mass on A: " << pretty_rational(soft_mass) << "\n"
              << "max play probability: " << pretty_rational(max_mass) << "\n";
    return kExitRealizable;
}

int summarize_compiled(const CompiledGame& compiled, int horizon, const std::string& out_hard,
                       const std::string& out_soft, const CommonOptions& opts) {
    write_text_file(out_hard, dfa_to_json(*compiled.hard));
    write_text_file(out_soft, dfa_to_json(*compiled.soft));

    WidthTable table_i(compiled.hard, horizon);
    WidthTable table_a(product(*compiled.hard, *compiled.soft), horizon);
    const Word empty;
    if (opts.json()) {
        ordered_json j;
        j["hard"] = out_hard;
        j["soft"] = out_soft;
        j["hard_states"] = compiled.hard->state_count();
        j["soft_states"] = compiled.soft->state_count();
        j["n"] = horizon;
        j["width_I"] = width_json(table_i.width_given(empty));
        j["width_A"] = width_json(table_a.width_given(empty));
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "hard DFA: " << compiled.hard->state_count() << " states -> " << out_hard
                  << "\n"
                  << "soft DFA: " << compiled.soft->state_count() << " states -> " << out_soft
                  << "\n"
                  << "width_I = " << table_i.width_given(empty).str() << ", width_A = "
                  << table_a.width_given(empty).str() << " at n = " << horizon << "\n";
    }
    return kExitRealizable;
}

std::string default_output(const std::string& input, const char* suffix) {
    return std::filesystem::path(input).stem().string() + suffix;
}

int cmd_compile_game(const std::string& path, int horizon, std::string out_hard,
                     std::string out_soft, const CommonOptions& opts) {
    const Rsg game = load_game(path);
    const CompiledGame compiled = compile_rsg(game, horizon);
    if (out_hard.empty()) out_hard = default_output(path, "_hard.json");
    if (out_soft.empty()) out_soft = default_output(path, "_soft.json");
    return summarize_compiled(compiled, horizon, out_hard, out_soft, opts);
}

int cmd_compile_grid(const std::string& path, std::string out_hard, std::string out_soft,
                     const CommonOptions& opts) {
    const GridPatrolInstance grid = load_grid(path);
    const CompiledGame compiled = compile_grid(grid);
    if (out_hard.empty()) out_hard = default_output(path, "_hard.json");
    if (out_soft.empty()) out_soft = default_output(path, "_soft.json");
    return summarize_compiled(compiled, grid.horizon, out_hard, out_soft, opts);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"rci - exact randomized reactive synthesis in a finite window"};
    app.require_subcommand(1);

    CommonOptions opts;
    std::string instance_path, history_text, adversary_desc = "greedy";
    std::string game_path, out_hard, out_soft;
    unsigned count = 1, jobs = 1;
    std::uint64_t episodes = 10000;
    std::size_t max_nodes = 1'000'000;
    int horizon = 0;

    auto* check = app.add_subcommand("check", "Decide realizability and report widths");
    check->add_option("instance", instance_path, "Instance JSON file")->required();
    add_common(check, opts);

    auto* widths = app.add_subcommand("widths", "Report width_I and width_A for a history");
    widths->add_option("instance", instance_path)->required();
    widths->add_option("--history", history_text, "History word (empty for the root)");
    add_common(widths, opts);

    auto* sample = app.add_subcommand("sample", "Sample improvised plays against an adversary");
    sample->add_option("instance", instance_path)->required();
    sample->add_option("--adversary", adversary_desc, "Adversary descriptor (default greedy)");
    sample->add_option("--count", count, "Number of plays to sample");
    add_common(sample, opts);

    auto* play = app.add_subcommand("play", "Interactive game: you are the adversary");
    play->add_option("instance", instance_path)->required();
    add_common(play, opts);

    auto* verify = app.add_subcommand("verify", "Run seeded episodes and report statistics");
    verify->add_option("instance", instance_path)->required();
    verify->add_option("--adversary", adversary_desc, "Adversary descriptor (default greedy)");
    verify->add_option("--episodes", episodes, "Episode count (default 10000)");
    verify->add_option("--jobs", jobs, "Worker threads (default 1)");
    add_common(verify, opts);

    auto* exact = app.add_subcommand("exact", "Exact output distribution vs a deterministic adversary");
    exact->add_option("instance", instance_path)->required();
    exact->add_option("--adversary", adversary_desc, "Deterministic adversary descriptor");
    exact->add_option("--max-nodes", max_nodes, "Enumeration node budget");
    add_common(exact, opts);

    auto* cgame = app.add_subcommand("compile-game", "Compile a reachability/safety game to DFAs");
    cgame->add_option("game", game_path, "Game JSON file")->required();
    cgame->add_option("--n", horizon, "Horizon to pad/measure at")->required();
    cgame->add_option("--out-hard", out_hard, "Hard DFA output path");
    cgame->add_option("--out-soft", out_soft, "Soft DFA output path");
    add_common(cgame, opts);

    auto* cgrid = app.add_subcommand("compile-grid", "Compile a grid patrol instance to DFAs");
    cgrid->add_option("grid", game_path, "Grid JSON file")->required();
    cgrid->add_option("--out-hard", out_hard, "Hard DFA output path");
    cgrid->add_option("--out-soft", out_soft, "Soft DFA output path");
    add_common(cgrid, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitInputError;
    }

    try {
        if (check->parsed()) return cmd_check(instance_path, opts);
        if (widths->parsed()) return cmd_widths(instance_path, history_text, opts);
        if (sample->parsed()) return cmd_sample(instance_path, adversary_desc, count, opts);
        if (play->parsed()) return cmd_play(instance_path, opts);
        if (verify->parsed()) return cmd_verify(instance_path, adversary_desc, episodes, jobs, opts);
        if (exact->parsed()) return cmd_exact(instance_path, adversary_desc, max_nodes, opts);
        if (cgame->parsed()) return cmd_compile_game(game_path, horizon, out_hard, out_soft, opts);
        if (cgrid->parsed()) return cmd_compile_grid(game_path, out_hard, out_soft, opts);
        return kExitInputError;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const InternalError& e) {
        std::cerr << "internal invariant violation: " << e.what() << "\n";
        return kExitInternalError;
    } catch (const ContractError& e) {
        std::cerr << "internal contract violation: " << e.what() << "\n";
        return kExitInternalError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternalError;
    }
}
