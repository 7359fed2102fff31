#include "routeprobe/monitor.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "routeprobe/detail/text.hpp"
#include "routeprobe/errors.hpp"

namespace routeprobe {

std::string_view to_string(Verdict::Result result) {
    return result == Verdict::Result::Accepted ? "Accepted" : "Rejected";
}

RunResult run_probe(const Trace& trace, const ProbeDef& probe,
                    const RegionSet& rs) {
    ValidatedProbe validated(probe, rs);
    ProbeCursor cursor(validated, trace.observations().front());

    RunResult result;
    result.verdict.vehicle_id = trace.vehicle_id();
    result.verdict.initial_state = cursor.current_name();
    result.history.states = validated.def().states;
    result.history.samples.reserve(trace.size());

    for (const MoveEvent& event : as_event_stream(trace)) {
        cursor.step(event);
        result.history.samples.push_back(StateHistory::Sample{
            event.index, event.elapsed_s, cursor.current_name()});
    }

    Verdict& v = result.verdict;
    v.final_state = cursor.current_name();
    v.airport_visited = cursor.visited_state("AIRPORT");
    v.centre_visited = cursor.visited_state("CENTRE");
    v.error_seen = cursor.error_event_index().has_value();
    v.error_event_index = cursor.error_event_index();
    v.result = v.error_seen ? Verdict::Result::Rejected
                            : Verdict::Result::Accepted;
    return result;
}

MeasureSeries measure_count_in_state(const StateHistory& history,
                                     std::string_view state) {
    return measure_count_in_state(std::span(&history, 1), state);
}

MeasureSeries measure_count_in_state(
    std::span<const StateHistory> histories, std::string_view state) {
    if (histories.empty()) {
        throw ValidationError("measure_count_in_state: no histories given");
    }
    for (const StateHistory& h : histories) {
        if (std::find(h.states.begin(), h.states.end(), state) ==
            h.states.end()) {
            throw ValidationError("unknown probe state '" +
                                  std::string(state) + "'");
        }
        if (h.samples.size() != histories.front().samples.size()) {
            throw ValidationError(
                "measure_count_in_state: histories have different lengths");
        }
        if (h.samples.empty()) {
            throw ValidationError("measure_count_in_state: empty history");
        }
    }

    MeasureSeries series;
    series.name = "ProbeInState" + std::string(state);
    series.samples.reserve(histories.front().samples.size());
    for (std::size_t i = 0; i < histories.front().samples.size(); ++i) {
        double count = 0.0;
        for (const StateHistory& h : histories) {
            if (h.samples[i].state == state) count += 1.0;
        }
        series.samples.push_back(MeasureSeries::Sample{
            histories.front().samples[i].elapsed_s, count});
    }
    return series;
}

MeasureSeries measure_max_attribute(const Trace& trace,
                                    TraceAttribute attribute) {
    MeasureSeries series;
    series.name = attribute == TraceAttribute::Latitude ? "MaxLatitude"
                                                        : "MaxLongitude";
    series.samples.reserve(trace.size());
    double running = 0.0;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const Observation& obs = trace.observations()[i];
        const double value = attribute == TraceAttribute::Latitude
                                 ? obs.latitude
                                 : obs.longitude;
        running = i == 0 ? value : std::max(running, value);
        series.samples.push_back(
            MeasureSeries::Sample{trace.elapsed_s()[i], running});
    }
    return series;
}

FleetReport fleet_report(
    std::span<const std::pair<const Trace*, const ProbeDef*>> runs,
    const RegionSet& rs) {
    FleetReport report;
    report.rows.reserve(runs.size());
    for (const auto& [trace, probe] : runs) {
        FleetRow row;
        row.vehicle_id = trace->vehicle_id();
        try {
            row.verdict = run_probe(*trace, *probe, rs).verdict;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

namespace {

const char* yes_no(bool b) { return b ? "Yes" : "No"; }

}  // namespace

std::string render_fleet_table(const FleetReport& report) {
    const std::vector<std::string> header = {
        "Vehicle",       "Initial state", "Final state", "AIRPORT visited",
        "CENTRE visited", "ERROR seen",    "Result",      "Error event"};

    std::vector<std::vector<std::string>> rows;
    rows.push_back(header);
    for (const FleetRow& row : report.rows) {
        if (row.verdict) {
            const Verdict& v = *row.verdict;
            rows.push_back({v.vehicle_id, v.initial_state, v.final_state,
                            yes_no(v.airport_visited),
                            yes_no(v.centre_visited), yes_no(v.error_seen),
                            std::string(to_string(v.result)),
                            v.error_event_index
                                ? std::to_string(*v.error_event_index)
                                : "-"});
        } else {
            rows.push_back({row.vehicle_id, "-", "-", "-", "-", "-", "Error",
                            "-"});
        }
    }

    std::vector<std::size_t> widths(header.size(), 0);
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            widths[c] = std::max(widths[c], row[c].size());
        }
    }

    std::string out;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
            out += rows[r][c];
            if (c + 1 < rows[r].size()) {
                out.append(widths[c] - rows[r][c].size() + 2, ' ');
            }
        }
        out += '\n';
        if (r == 0) {
            std::size_t total = 0;
            for (std::size_t c = 0; c < widths.size(); ++c) {
                total += widths[c] + (c + 1 < widths.size() ? 2 : 0);
            }
            out.append(total, '-');
            out += '\n';
        }
    }
    return out;
}

std::string serialize_measure(const MeasureSeries& series) {
    std::string out = "# elapsed_s, " + series.name + "\n";
    for (const MeasureSeries::Sample& s : series.samples) {
        out += std::to_string(s.elapsed_s);
        out += ", ";
        out += detail::format_double(s.value);
        out += '\n';
    }
    return out;
}

}  // namespace routeprobe
