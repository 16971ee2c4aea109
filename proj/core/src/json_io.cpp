#include "rci/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rci/errors.hpp"
#include "rci/ltlf.hpp"

namespace rci {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

json parse_json_text(const std::string& text, const std::string& what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw InputError("malformed JSON in " + what);
    return j;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

const json& require(const json& j, const char* key, const std::string& what) {
    auto it = j.find(key);
    if (it == j.end()) throw InputError(what + " is missing the \"" + key + "\" field");
    return *it;
}

AlphabetPtr alphabet_from_json(const json& j, const std::string& what) {
    if (!j.is_array()) throw InputError(what + ": \"alphabet\" must be an array of strings");
    std::vector<std::string> names;
    for (const auto& s : j) {
        if (!s.is_string()) throw InputError(what + ": alphabet symbols must be strings");
        names.push_back(s.get<std::string>());
    }
    return make_alphabet(std::move(names));
}

Rational rational_from_json(const json& j, const char* key, const std::string& what) {
    const json& field = require(j, key, what);
    if (field.is_string()) return parse_rational(field.get<std::string>());
    if (field.is_number_integer()) return Rational(field.get<long long>());
    throw InputError(what + ": \"" + std::string(key) + "\" must be a \"p/q\" string");
}

std::shared_ptr<const Dfa> dfa_from_json(const json& j);

SpecPtr spec_from_json(const json& j, const std::filesystem::path& base_dir,
                       const AlphabetPtr& instance_alphabet, int depth) {
    if (depth > 8) throw InputError("spec references nest too deeply");
    if (j.is_string()) {
        std::filesystem::path ref = j.get<std::string>();
        if (ref.is_relative()) ref = base_dir / ref;
        const json loaded = parse_json_text(read_text_file(ref), "'" + ref.string() + "'");
        return spec_from_json(loaded, ref.parent_path(), instance_alphabet, depth + 1);
    }
    if (!j.is_object()) throw InputError("spec reference must be an object or a file path");

    const std::string type = j.value("type", j.contains("states") ? "dfa" : "");
    if (type == "dfa") return dfa_from_json(j);
    if (type == "universal") {
        if (!instance_alphabet) {
            throw InputError("a universal spec needs the instance alphabet for context");
        }
        return std::make_shared<UniversalSpec>(instance_alphabet);
    }
    if (type == "ltlf") {
        const json& props_json = require(j, "props", "ltlf spec");
        std::vector<std::string> props;
        for (const auto& p : props_json) props.push_back(p.get<std::string>());
        const std::string text = require(j, "formula", "ltlf spec").get<std::string>();
        return std::make_shared<LtlfSpec>(parse_ltlf(text, props), std::move(props), text);
    }
    throw InputError("unknown spec type '" + type + "' (expected dfa, ltlf or universal)");
}

std::shared_ptr<const Dfa> dfa_from_json(const json& j) {
    AlphabetPtr alphabet = alphabet_from_json(require(j, "alphabet", "DFA"), "DFA");

    const json& states_json = require(j, "states", "DFA");
    std::vector<std::string> state_names;
    for (const auto& s : states_json) state_names.push_back(s.get<std::string>());

    auto state_index = [&state_names](const std::string& name) -> std::optional<StateId> {
        for (StateId i = 0; i < state_names.size(); ++i) {
            if (state_names[i] == name) return i;
        }
        return std::nullopt;
    };

    const std::string initial_name = require(j, "initial", "DFA").get<std::string>();
    auto initial = state_index(initial_name);
    if (!initial) throw InputError("DFA initial state '" + initial_name + "' is not declared");

    std::vector<bool> accepting(state_names.size(), false);
    for (const auto& s : require(j, "accepting", "DFA")) {
        const std::string name = s.get<std::string>();
        auto id = state_index(name);
        if (!id) throw InputError("DFA accepting state '" + name + "' is not declared");
        accepting[*id] = true;
    }

    const json& table = require(j, "transitions", "DFA");
    const std::size_t nsym = alphabet->size();
    std::vector<StateId> delta(state_names.size() * nsym, 0);
    std::vector<std::string> missing;
    for (StateId v = 0; v < state_names.size(); ++v) {
        auto row = table.find(state_names[v]);
        for (SymbolId u = 0; u < nsym; ++u) {
            const std::string& sym = alphabet->name(u);
            if (row == table.end() || !row->contains(sym)) {
                missing.push_back("(" + state_names[v] + ", " + sym + ")");
                continue;
            }
            const std::string to_name = (*row)[sym].get<std::string>();
            auto to = state_index(to_name);
            if (!to) {
                throw InputError("DFA transition from '" + state_names[v] + "' on '" + sym +
                                 "' targets undeclared state '" + to_name + "'");
            }
            delta[v * nsym + u] = *to;
        }
    }
    if (!missing.empty()) {
        std::string msg = "DFA transition table is not total; missing:";
        for (const auto& m : missing) msg += " " + m;
        throw InputError(msg);
    }
    return std::make_shared<const Dfa>(alphabet, std::move(state_names), *initial,
                                       std::move(accepting), std::move(delta));
}

std::pair<int, int> cell_from_json(const json& j, const std::string& what) {
    if (!j.is_array() || j.size() != 2) throw InputError(what + " must be an [x, y] pair");
    return {j[0].get<int>(), j[1].get<int>()};
}

RciInstance parse_instance_json(const json& j, const std::filesystem::path& base_dir) {
    RciInstance instance;
    instance.alphabet = alphabet_from_json(require(j, "alphabet", "instance"), "instance");
    instance.horizon = require(j, "n", "instance").get<int>();
    instance.epsilon = rational_from_json(j, "epsilon", "instance");
    instance.rho = rational_from_json(j, "rho", "instance");
    instance.hard = spec_from_json(require(j, "hard", "instance"), base_dir, instance.alphabet, 0);
    instance.soft = spec_from_json(require(j, "soft", "instance"), base_dir, instance.alphabet, 0);
    return instance;
}

} // namespace

RciInstance load_instance(const std::filesystem::path& path) {
    const json j = parse_json_text(read_text_file(path), "'" + path.string() + "'");
    return parse_instance_json(j, path.parent_path());
}

RciInstance parse_instance(const std::string& json_text, const std::filesystem::path& base_dir) {
    return parse_instance_json(parse_json_text(json_text, "instance"), base_dir);
}

std::shared_ptr<const Dfa> load_dfa(const std::filesystem::path& path) {
    return dfa_from_json(parse_json_text(read_text_file(path), "'" + path.string() + "'"));
}

std::shared_ptr<const Dfa> parse_dfa(const std::string& json_text) {
    return dfa_from_json(parse_json_text(json_text, "DFA"));
}

std::string dfa_to_json(const Dfa& dfa) {
    ordered_json j;
    j["alphabet"] = dfa.alphabet().names();
    j["states"] = dfa.state_names();
    j["initial"] = dfa.state_name(dfa.initial());
    json accepting = json::array();
    for (StateId v = 0; v < dfa.state_count(); ++v) {
        if (dfa.is_accepting(v)) accepting.push_back(dfa.state_name(v));
    }
    j["accepting"] = std::move(accepting);
    ordered_json table = ordered_json::object();
    for (StateId v = 0; v < dfa.state_count(); ++v) {
        ordered_json row = ordered_json::object();
        for (SymbolId u = 0; u < dfa.alphabet().size(); ++u) {
            row[dfa.alphabet().name(u)] = dfa.state_name(dfa.next(v, u));
        }
        table[dfa.state_name(v)] = std::move(row);
    }
    j["transitions"] = std::move(table);
    return j.dump(2) + "\n";
}

Rsg parse_game(const std::string& json_text) {
    const json j = parse_json_text(json_text, "game");
    Rsg game;
    game.alphabet = alphabet_from_json(require(j, "alphabet", "game"), "game");

    const std::string kind = require(j, "kind", "game").get<std::string>();
    if (kind == "reach") game.kind = Rsg::Kind::Reach;
    else if (kind == "safe") game.kind = Rsg::Kind::Safe;
    else if (kind == "reach-avoid") game.kind = Rsg::Kind::ReachAvoid;
    else throw InputError("unknown game kind '" + kind + "'");

    const json& nodes_json = require(j, "nodes", "game");
    if (!nodes_json.is_object()) throw InputError("game \"nodes\" must be an object");
    std::vector<std::string> order;
    for (auto it = nodes_json.begin(); it != nodes_json.end(); ++it) order.push_back(it.key());
    std::sort(order.begin(), order.end());
    auto node_index = [&order](const std::string& name) -> std::optional<int> {
        for (std::size_t i = 0; i < order.size(); ++i) {
            if (order[i] == name) return static_cast<int>(i);
        }
        return std::nullopt;
    };

    for (const auto& name : order) {
        const json& nj = nodes_json.at(name);
        Rsg::Node node;
        node.name = name;
        const std::string owner = require(nj, "owner", "node '" + name + "'").get<std::string>();
        if (owner == "us") node.ours = true;
        else if (owner == "adversary") node.ours = false;
        else throw InputError("node '" + name + "': owner must be \"us\" or \"adversary\"");
        if (nj.contains("edges")) {
            for (auto it = nj["edges"].begin(); it != nj["edges"].end(); ++it) {
                auto sym = game.alphabet->find(it.key());
                if (!sym) {
                    throw InputError("node '" + name + "': edge label '" + it.key() +
                                     "' is not in the alphabet");
                }
                const std::string to = it.value().get<std::string>();
                auto target = node_index(to);
                if (!target) {
                    throw InputError("node '" + name + "': edge targets unknown node '" + to + "'");
                }
                node.edges.emplace_back(*sym, *target);
            }
            std::sort(node.edges.begin(), node.edges.end());
        }
        game.nodes.push_back(std::move(node));
    }

    auto node_set = [&](const char* key) {
        std::vector<bool> set(game.nodes.size(), false);
        if (!j.contains(key)) return set;
        for (const auto& s : j.at(key)) {
            const std::string name = s.get<std::string>();
            auto id = node_index(name);
            if (!id) throw InputError(std::string(key) + " names unknown node '" + name + "'");
            set[*id] = true;
        }
        return set;
    };
    game.target = node_set("target");
    game.avoid = node_set("avoid");
    game.soft_target = node_set("soft_target");
    game.has_soft = j.contains("soft_target");

    const std::string start = require(j, "start", "game").get<std::string>();
    auto start_id = node_index(start);
    if (!start_id) throw InputError("game start node '" + start + "' is not declared");
    game.start = *start_id;
    return game;
}

Rsg load_game(const std::filesystem::path& path) {
    return parse_game(read_text_file(path));
}

GridPatrolInstance parse_grid(const std::string& json_text) {
    const json j = parse_json_text(json_text, "grid");
    GridPatrolInstance grid;
    grid.width = require(j, "width", "grid").get<int>();
    grid.height = require(j, "height", "grid").get<int>();
    grid.patroller = cell_from_json(require(j, "patroller", "grid"), "patroller");
    grid.adversary = cell_from_json(require(j, "adversary", "grid"), "adversary");
    for (const auto& c : require(j, "waypoints", "grid")) {
        grid.waypoints.push_back(cell_from_json(c, "waypoint"));
    }
    if (j.contains("forbidden")) {
        for (const auto& c : j.at("forbidden")) {
            grid.forbidden.push_back(cell_from_json(c, "forbidden cell"));
        }
    }
    grid.horizon = require(j, "n", "grid").get<int>();
    grid.allow_stay = j.value("allow_stay", true);
    const std::string soft = j.value("soft", "no-revisit");
    if (soft == "no-revisit") grid.soft_no_revisit = true;
    else if (soft == "none") grid.soft_no_revisit = false;
    else throw InputError("unknown grid soft rule '" + soft + "' (expected no-revisit or none)");
    if (j.contains("state_budget")) grid.state_budget = j.at("state_budget").get<std::size_t>();
    return grid;
}

GridPatrolInstance load_grid(const std::filesystem::path& path) {
    return parse_grid(read_text_file(path));
}

namespace {

/// Widths fit a JSON number only while exact in a double; emit a string
/// beyond that.
ordered_json width_to_json(const BigInt& w) {
    if (w <= BigInt(1) << 53) return w.convert_to<std::uint64_t>();
    return w.str();
}

} // namespace

std::string report_to_json(const RealizabilityReport& report) {
    ordered_json j;
    j["realizable"] = report.realizable;
    j["width_I"] = width_to_json(report.width_i);
    j["width_A"] = width_to_json(report.width_a);
    j["epsilon_opt"] = fraction_string(report.epsilon_opt);
    if (report.rho_min) j["rho_min"] = fraction_string(*report.rho_min);
    else j["rho_min"] = nullptr;
    return j.dump() + "\n";
}

std::string stats_to_json(const EpisodeStats& stats, const Alphabet&) {
    ordered_json j;
    j["episodes"] = stats.episodes;
    j["hard_violations"] = stats.hard_violations;
    j["soft_hits"] = stats.soft_hits;
    j["max_play_frequency"] = fraction_string(stats.max_play_frequency());
    j["seed"] = stats.seed;
    return j.dump() + "\n";
}

std::string distribution_to_json(const DistributionMap& distribution, const Alphabet& alphabet) {
    ordered_json j = ordered_json::object();
    for (const auto& [word, probability] : distribution) {
        j[render_word(alphabet, word)] = fraction_string(probability);
    }
    return j.dump(2) + "\n";
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path.string() + "'");
    out << text;
    if (!out) throw InputError("failed while writing '" + path.string() + "'");
}

} // namespace rci
