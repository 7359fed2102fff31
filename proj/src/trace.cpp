#include "routeprobe/trace.hpp"

#include <cctype>
#include <utility>

#include "routeprobe/detail/text.hpp"
#include "routeprobe/errors.hpp"

namespace routeprobe {

namespace {

constexpr long kSecondsPerDay = 86400;

bool two_digits(std::string_view s, int& out) {
    if (s.size() != 2 || !std::isdigit(static_cast<unsigned char>(s[0])) ||
        !std::isdigit(static_cast<unsigned char>(s[1]))) {
        return false;
    }
    out = (s[0] - '0') * 10 + (s[1] - '0');
    return true;
}

// Strict HH:MM:SS, two digits per component.
bool parse_time_of_day(std::string_view s, TimeOfDay& out) {
    if (s.size() != 8 || s[2] != ':' || s[5] != ':') return false;
    return two_digits(s.substr(0, 2), out.hour) &&
           two_digits(s.substr(3, 2), out.minute) &&
           two_digits(s.substr(6, 2), out.second) && out.valid();
}

std::string format_time_of_day(const TimeOfDay& t) {
    return detail::pad2(t.hour) + ":" + detail::pad2(t.minute) + ":" +
           detail::pad2(t.second);
}

}  // namespace

Observation make_observation(double latitude, double longitude, TimeOfDay t) {
    Observation obs;
    obs.latitude = latitude;
    obs.longitude = longitude;
    obs.time = t;
    obs.latitude_text = detail::format_double(latitude);
    obs.longitude_text = detail::format_double(longitude);
    return obs;
}

std::vector<long> compute_elapsed(std::span<const TimeOfDay> times) {
    if (times.empty()) {
        throw ValidationError("compute_elapsed: empty timestamp list");
    }
    std::vector<long> elapsed;
    elapsed.reserve(times.size());
    elapsed.push_back(0);
    long previous_absolute = times[0].seconds();
    long day_offset = 0;
    for (std::size_t i = 1; i < times.size(); ++i) {
        long seconds = times[i].seconds();
        if (seconds < previous_absolute - day_offset) {
            day_offset += kSecondsPerDay;  // crossed midnight
        }
        long absolute = seconds + day_offset;
        if (absolute == previous_absolute) {
            throw ValidationError(
                "duplicate consecutive timestamps at record " +
                std::to_string(i));
        }
        elapsed.push_back(absolute - times[0].seconds());
        previous_absolute = absolute;
    }
    return elapsed;
}

Trace Trace::from_observations(std::string vehicle_id,
                               std::vector<Observation> observations) {
    if (observations.empty()) {
        throw ValidationError("trace '" + vehicle_id +
                              "' has no observations");
    }
    std::vector<TimeOfDay> times;
    times.reserve(observations.size());
    for (const Observation& obs : observations) {
        times.push_back(obs.time);
    }
    std::vector<long> elapsed = compute_elapsed(times);
    return Trace(std::move(vehicle_id), std::move(observations),
                 std::move(elapsed));
}

Trace parse_trace(std::string_view text, std::string vehicle_id,
                  char delimiter, std::string_view source_name) {
    std::vector<Observation> observations;
    const auto lines = detail::split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        std::string_view line = detail::trim(lines[i]);
        if (line.empty() || line.front() == '#') continue;

        const auto fields = detail::split_fields(line, delimiter);
        if (fields.size() != 3) {
            throw ParseError(std::string(source_name), line_no,
                             "expected 3 fields (latitude, longitude, "
                             "HH:MM:SS), got " +
                                 std::to_string(fields.size()));
        }
        Observation obs;
        auto lat = detail::parse_double(fields[0]);
        if (!lat || *lat < -90.0 || *lat > 90.0) {
            throw ParseError(std::string(source_name), line_no,
                             "field 1: '" + std::string(fields[0]) +
                                 "' is not a latitude in [-90, 90]");
        }
        auto lon = detail::parse_double(fields[1]);
        if (!lon || *lon < -180.0 || *lon > 180.0) {
            throw ParseError(std::string(source_name), line_no,
                             "field 2: '" + std::string(fields[1]) +
                                 "' is not a longitude in [-180, 180]");
        }
        if (!parse_time_of_day(fields[2], obs.time)) {
            throw ParseError(std::string(source_name), line_no,
                             "field 3: '" + std::string(fields[2]) +
                                 "' is not an HH:MM:SS timestamp");
        }
        obs.latitude = *lat;
        obs.longitude = *lon;
        obs.latitude_text = std::string(fields[0]);
        obs.longitude_text = std::string(fields[1]);
        observations.push_back(std::move(obs));
    }
    if (observations.empty()) {
        throw ParseError(std::string(source_name), lines.size(),
                         "no records in trace input");
    }
    return Trace::from_observations(std::move(vehicle_id),
                                    std::move(observations));
}

std::string serialize_trace(const Trace& trace, char delimiter) {
    std::string out;
    for (const Observation& obs : trace.observations()) {
        out += obs.latitude_text;
        out += delimiter;
        out += obs.longitude_text;
        out += delimiter;
        out += format_time_of_day(obs.time);
        out += '\n';
    }
    return out;
}

std::vector<MoveEvent> as_event_stream(const Trace& trace) {
    std::vector<MoveEvent> events;
    events.reserve(trace.size());
    for (std::size_t i = 0; i < trace.size(); ++i) {
        events.push_back(
            MoveEvent{i, trace.observations()[i], trace.elapsed_s()[i]});
    }
    return events;
}

}  // namespace routeprobe
