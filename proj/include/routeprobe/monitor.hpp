#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "routeprobe/probe.hpp"
#include "routeprobe/trace.hpp"

namespace routeprobe {

/// Per-trace result: one row of the fleet table.
struct Verdict {
    enum class Result { Accepted, Rejected };

    std::string vehicle_id;
    std::string initial_state;
    std::string final_state;
    bool airport_visited = false;
    bool centre_visited = false;
    bool error_seen = false;
    Result result = Result::Accepted;
    std::optional<std::size_t> error_event_index;
};

std::string_view to_string(Verdict::Result result);

/// The probe's state after each event, with the probe's state universe
/// attached so measures can validate state names.
struct StateHistory {
    struct Sample {
        std::size_t event_index;
        long elapsed_s;
        std::string state;
    };

    std::vector<std::string> states;
    std::vector<Sample> samples;
};

struct RunResult {
    Verdict verdict;
    StateHistory history;
};

/// Runs one probe over one trace: initial state from the first
/// observation (per the probe's policy), then one step per move event.
/// Liveness flags come from the visited set, so a vehicle ending
/// mid-route still registers its visits.
RunResult run_probe(const Trace& trace, const ProbeDef& probe,
                    const RegionSet& rs);

/// Named time series sampled once per processed event.
struct MeasureSeries {
    struct Sample {
        long elapsed_s;
        double value;
    };

    std::string name;
    std::vector<Sample> samples;
};

/// 1.0 when the probe is in `state` at that event, else 0.0. Throws
/// ValidationError for a state name outside the history's universe.
MeasureSeries measure_count_in_state(const StateHistory& history,
                                     std::string_view state);

/// Sum of per-cursor indicators across several aligned histories
/// (the paper's count-of-probes-in-state measure for a collective).
/// All histories must have the same sample count.
MeasureSeries measure_count_in_state(
    std::span<const StateHistory> histories, std::string_view state);

enum class TraceAttribute { Latitude, Longitude };

/// Running maximum of the chosen attribute, one sample per event.
MeasureSeries measure_max_attribute(const Trace& trace,
                                    TraceAttribute attribute);

/// One fleet-table row; `verdict` is empty when the run failed, with the
/// failure text in `error`.
struct FleetRow {
    std::string vehicle_id;
    std::optional<Verdict> verdict;
    std::string error;
};

struct FleetReport {
    std::vector<FleetRow> rows;
};

/// Checks each (trace, probe) pair in input order. A failing row is
/// reported in place; remaining rows are unaffected.
FleetReport fleet_report(
    std::span<const std::pair<const Trace*, const ProbeDef*>> runs,
    const RegionSet& rs);

/// Aligned text table in the layout of the paper's fleet-results table,
/// plus an error-event column.
std::string render_fleet_table(const FleetReport& report);

/// Two-column delimited text: `elapsed_s, value` per line.
std::string serialize_measure(const MeasureSeries& series);

}  // namespace routeprobe
