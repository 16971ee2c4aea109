#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "rci/dfa.hpp"
#include "rci/games.hpp"
#include "rci/harness.hpp"
#include "rci/improviser.hpp"
#include "rci/spec.hpp"

namespace rci {

/// Instance file:
///   {"alphabet": ["+","=","-"], "hard": <spec-ref>, "soft": <spec-ref>,
///    "n": 4, "epsilon": "1/2", "rho": "1/2"}
/// Rationals are "p/q" strings (gcd-reduced on load). A spec-ref is an
/// inline spec object ({"type":"ltlf",...}, {"type":"universal"} or a DFA
/// object) or a file path relative to the referencing file.
RciInstance load_instance(const std::filesystem::path& path);
RciInstance parse_instance(const std::string& json_text,
                           const std::filesystem::path& base_dir = ".");

/// DFA file:
///   {"alphabet":[...], "states":[...], "initial":"+0", "accepting":[...],
///    "transitions":{"+0":{"+":"+1",...},...}}
/// The transition table must be total; partial tables are rejected with the
/// list of missing (state, symbol) pairs.
std::shared_ptr<const Dfa> load_dfa(const std::filesystem::path& path);
std::shared_ptr<const Dfa> parse_dfa(const std::string& json_text);
std::string dfa_to_json(const Dfa& dfa);

/// Game file:
///   {"kind":"reach-avoid", "alphabet":[...],
///    "nodes":{"P":{"owner":"us","edges":{"u":"Q"}},...}, "start":"P",
///    "target":[...], "avoid":[...], "soft_target":[...]}
Rsg load_game(const std::filesystem::path& path);
Rsg parse_game(const std::string& json_text);

/// Grid file:
///   {"width":7,"height":7,"patroller":[0,6],"adversary":[6,0],
///    "waypoints":[[1,1]],"forbidden":[[3,3]],"n":30,"soft":"no-revisit"}
GridPatrolInstance load_grid(const std::filesystem::path& path);
GridPatrolInstance parse_grid(const std::string& json_text);

std::string report_to_json(const RealizabilityReport& report);
std::string stats_to_json(const EpisodeStats& stats, const Alphabet& alphabet);
std::string distribution_to_json(const DistributionMap& distribution, const Alphabet& alphabet);

void write_text_file(const std::filesystem::path& path, const std::string& text);

} // namespace rci
