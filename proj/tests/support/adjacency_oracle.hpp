// Test-only oracle: simulates the two route probes as hard-coded
// adjacency tables over region names, fully independent of the guard and
// probe machinery under test. Fixes are mapped to regions with classify
// (the oracle's specified input) and then walked through the tables.
#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "routeprobe/geo.hpp"
#include "routeprobe/trace.hpp"

namespace oracle {

enum class Verdict { Accepted, Rejected };

struct LooseRun {
    std::string initial_state;
    std::string final_state;
    bool airport_visited = false;
    bool centre_visited = false;
    bool error_seen = false;
    std::optional<std::size_t> error_event_index;
    Verdict verdict = Verdict::Accepted;
};

inline std::vector<std::optional<std::string>> region_sequence(
    const routeprobe::Trace& trace, const routeprobe::RegionSet& rs) {
    std::vector<std::optional<std::string>> seq;
    seq.reserve(trace.size());
    for (const routeprobe::Observation& obs : trace.observations()) {
        seq.push_back(rs.classify(obs.point()));
    }
    return seq;
}

// The loose probe: state == current region, neighbours in the
// airport--suburbs1--suburbs2--centre--garage chain reachable both ways,
// any out-of-region fix is fatal, ERROR absorbs.
inline LooseRun loose_run(const routeprobe::Trace& trace,
                          const routeprobe::RegionSet& rs) {
    static const std::map<std::string, std::set<std::string>> kAdjacent = {
        {"airport", {"airport", "suburbs1"}},
        {"suburbs1", {"airport", "suburbs1", "suburbs2"}},
        {"suburbs2", {"suburbs1", "suburbs2", "centre"}},
        {"centre", {"suburbs2", "centre", "garage"}},
        {"garage", {"centre", "garage"}},
    };
    static const std::map<std::string, std::string> kStateName = {
        {"airport", "AIRPORT"},   {"suburbs1", "SUBURBS1"},
        {"suburbs2", "SUBURBS2"}, {"centre", "CENTRE"},
        {"garage", "GARAGE"},
    };

    const auto seq = region_sequence(trace, rs);
    LooseRun run;
    std::set<std::string> visited;

    std::optional<std::string> current = seq.front();
    run.initial_state = current ? kStateName.at(*current) : "ERROR";
    visited.insert(run.initial_state);
    if (!current) run.error_event_index = 0;

    for (std::size_t i = 0; i < seq.size() && !run.error_event_index; ++i) {
        const auto& region = seq[i];
        if (!region || kAdjacent.at(*current).count(*region) == 0) {
            run.error_event_index = i;
            break;
        }
        current = region;
        visited.insert(kStateName.at(*region));
    }

    run.error_seen = run.error_event_index.has_value();
    run.verdict = run.error_seen ? Verdict::Rejected : Verdict::Accepted;
    run.final_state =
        run.error_seen ? "ERROR" : kStateName.at(*current);
    run.airport_visited = visited.count("AIRPORT") > 0;
    run.centre_visited = visited.count("CENTRE") > 0;
    return run;
}

inline Verdict loose_verdict(const routeprobe::Trace& trace,
                             const routeprobe::RegionSet& rs) {
    return loose_run(trace, rs).verdict;
}

// The strict probe: fixed start at A, outward chain A->S1A->S2A->C, the
// garage shuttle C<->G, return chain C->S2R->S1R->A.
inline Verdict strict_verdict(const routeprobe::Trace& trace,
                              const routeprobe::RegionSet& rs) {
    static const std::map<std::string, std::map<std::string, std::string>>
        kNext = {
            {"A", {{"airport", "A"}, {"suburbs1", "S1A"}}},
            {"S1A", {{"suburbs1", "S1A"}, {"suburbs2", "S2A"}}},
            {"S2A", {{"suburbs2", "S2A"}, {"centre", "C"}}},
            {"C", {{"centre", "C"}, {"garage", "G"}, {"suburbs2", "S2R"}}},
            {"G", {{"garage", "G"}, {"centre", "C"}}},
            {"S2R", {{"suburbs2", "S2R"}, {"suburbs1", "S1R"}}},
            {"S1R", {{"suburbs1", "S1R"}, {"airport", "A"}}},
        };

    std::string state = "A";
    for (const auto& region : region_sequence(trace, rs)) {
        if (!region) return Verdict::Rejected;
        const auto& moves = kNext.at(state);
        auto it = moves.find(*region);
        if (it == moves.end()) return Verdict::Rejected;
        state = it->second;
    }
    return Verdict::Accepted;
}

// Which regions may follow `from` without erroring, per the loose chain.
// Exposed for step-rule spot checks.
inline bool loose_adjacent(const std::string& from, const std::string& to) {
    static const std::map<std::string, std::set<std::string>> kAdjacent = {
        {"airport", {"airport", "suburbs1"}},
        {"suburbs1", {"airport", "suburbs1", "suburbs2"}},
        {"suburbs2", {"suburbs1", "suburbs2", "centre"}},
        {"centre", {"suburbs2", "centre", "garage"}},
        {"garage", {"centre", "garage"}},
    };
    auto it = kAdjacent.find(from);
    return it != kAdjacent.end() && it->second.count(to) > 0;
}

}  // namespace oracle
