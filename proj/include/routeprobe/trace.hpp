#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "routeprobe/geo.hpp"

namespace routeprobe {

struct TimeOfDay {
    int hour = 0;    // [0, 23]
    int minute = 0;  // [0, 59]
    int second = 0;  // [0, 59]

    long seconds() const noexcept {
        return hour * 3600L + minute * 60L + second;
    }
    bool valid() const noexcept {
        return hour >= 0 && hour <= 23 && minute >= 0 && minute <= 59 &&
               second >= 0 && second <= 59;
    }
};

/// One timestamped GPS fix. The coordinate lexemes are kept verbatim so
/// serialization and code generation reproduce the input digits exactly.
struct Observation {
    double latitude = 0.0;
    double longitude = 0.0;
    TimeOfDay time;
    std::string latitude_text;
    std::string longitude_text;

    GeoPoint point() const noexcept { return {longitude, latitude}; }
};

/// Builds an Observation from numeric values, deriving canonical lexemes.
Observation make_observation(double latitude, double longitude, TimeOfDay t);

/// Seconds since the first record. First entry is 0; whenever the
/// time-of-day decreases relative to the previous record one day (86400 s)
/// is added, so traces may span any number of midnights. Throws
/// ValidationError on a zero delta (duplicate consecutive timestamps),
/// naming the record index.
std::vector<long> compute_elapsed(std::span<const TimeOfDay> times);

/// An ordered, non-empty sequence of fixes for one vehicle.
/// Immutable after construction.
class Trace {
public:
    static Trace from_observations(std::string vehicle_id,
                                   std::vector<Observation> observations);

    const std::string& vehicle_id() const noexcept { return vehicle_id_; }
    const std::vector<Observation>& observations() const noexcept {
        return observations_;
    }
    const std::vector<long>& elapsed_s() const noexcept { return elapsed_; }
    std::size_t size() const noexcept { return observations_.size(); }

private:
    Trace(std::string vehicle_id, std::vector<Observation> observations,
          std::vector<long> elapsed)
        : vehicle_id_(std::move(vehicle_id)),
          observations_(std::move(observations)),
          elapsed_(std::move(elapsed)) {}

    std::string vehicle_id_;
    std::vector<Observation> observations_;
    std::vector<long> elapsed_;
};

/// One broadcast move event: the semantic content of one state of the
/// generated straight-line component.
struct MoveEvent {
    std::size_t index = 0;
    Observation payload;
    long elapsed_s = 0;
};

/// Parses delimited trace text: one `latitude, longitude, HH:MM:SS` record
/// per line, `#` comments and blank lines skipped. Throws ParseError with
/// the offending line and field.
Trace parse_trace(std::string_view text, std::string vehicle_id,
                  char delimiter = ',',
                  std::string_view source_name = "<trace>");

/// Inverse of parse_trace on well-formed input (record lines only).
std::string serialize_trace(const Trace& trace, char delimiter = ',');

/// One MoveEvent per observation, in order, payloads preserved verbatim.
/// The returned stream is immutable; any number of observers may iterate
/// it independently.
std::vector<MoveEvent> as_event_stream(const Trace& trace);

}  // namespace routeprobe
