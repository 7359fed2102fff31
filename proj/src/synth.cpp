#include "routeprobe/synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "routeprobe/detail/text.hpp"
#include "routeprobe/errors.hpp"

namespace routeprobe {

std::string_view to_string(Label label) {
    return label == Label::Accepted ? "Accepted" : "Rejected";
}

namespace {

constexpr long kSecondsPerDay = 86400;
// Offset of inserted boundary-oscillation fixes from the boundary line.
constexpr double kOscillationOffset = 0.002;
// Jitter cap: 3*sigma must stay below the tightest corridor margin of the
// default route (the oscillation offset), or labels cannot be guaranteed.
constexpr double kMaxNoiseReach = 0.002;

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Deterministic across platforms: raw splitmix64 draws plus Box-Muller,
// clamped to +-3 sigma so label-soundness margins are provable.
class Jitter {
public:
    explicit Jitter(std::uint64_t seed) : state_(seed) {}

    double gaussian(double sigma) {
        const double u1 =
            (static_cast<double>(splitmix64(state_) >> 11) + 1.0) * 0x1p-53;
        const double u2 =
            static_cast<double>(splitmix64(state_) >> 11) * 0x1p-53;
        double z = std::sqrt(-2.0 * std::log(u1)) *
                   std::cos(6.283185307179586476925286766559 * u2);
        z = std::clamp(z, -3.0, 3.0);
        return z * sigma;
    }

private:
    std::uint64_t state_;
};

double distance(const GeoPoint& a, const GeoPoint& b) {
    const double dx = a.longitude - b.longitude;
    const double dy = a.latitude - b.latitude;
    return std::sqrt(dx * dx + dy * dy);
}

// Distance from p to the (closed) rectangle of r; 0 when inside.
double distance_to_region(const Region& r, const GeoPoint& p) {
    const double dx = std::max({r.min_long - p.longitude, 0.0,
                                p.longitude - r.max_long});
    const double dy =
        std::max({r.min_lat - p.latitude, 0.0, p.latitude - r.max_lat});
    return std::sqrt(dx * dx + dy * dy);
}

double min_distance_to_any_region(const RegionSet& rs, const GeoPoint& p) {
    double best = std::numeric_limits<double>::infinity();
    for (const Region& r : rs.regions()) {
        best = std::min(best, distance_to_region(r, p));
    }
    return best;
}

struct Segment {
    double t_begin;
    double t_end;
    GeoPoint from;
    GeoPoint to;
};

std::vector<Segment> build_timeline(const std::vector<Waypoint>& waypoints,
                                    double speed) {
    std::vector<Segment> segments;
    double t = 0.0;
    for (std::size_t i = 0; i < waypoints.size(); ++i) {
        const Waypoint& w = waypoints[i];
        if (w.dwell_s > 0) {
            segments.push_back(
                Segment{t, t + static_cast<double>(w.dwell_s), w.point,
                        w.point});
            t += static_cast<double>(w.dwell_s);
        }
        if (i + 1 < waypoints.size()) {
            const double d = distance(w.point, waypoints[i + 1].point);
            if (d > 0.0) {
                const double duration = d / speed;
                segments.push_back(
                    Segment{t, t + duration, w.point, waypoints[i + 1].point});
                t += duration;
            }
        }
    }
    return segments;
}

GeoPoint position_at(const std::vector<Segment>& segments, double t) {
    for (const Segment& s : segments) {
        if (t <= s.t_end) {
            if (s.t_end == s.t_begin) return s.from;
            const double f = (t - s.t_begin) / (s.t_end - s.t_begin);
            return GeoPoint{s.from.longitude +
                                f * (s.to.longitude - s.from.longitude),
                            s.from.latitude +
                                f * (s.to.latitude - s.from.latitude)};
        }
    }
    return segments.back().to;
}

void validate_route(const RouteSpec& route) {
    if (route.waypoints.size() < 2) {
        throw ValidationError("route needs at least 2 waypoints");
    }
    if (!(route.travel_speed > 0.0)) {
        throw ValidationError("route travel_speed must be positive");
    }
    if (route.sample_interval_s < 1 ||
        route.sample_interval_s >= kSecondsPerDay) {
        throw ValidationError(
            "route sample_interval_s must be in [1, 86399]");
    }
    if (route.noise_sigma < 0.0) {
        throw ValidationError("route noise_sigma must be non-negative");
    }
    if (!route.start_time.valid()) {
        throw ValidationError("route start_time is out of range");
    }
    for (const Waypoint& w : route.waypoints) {
        if (!valid_coordinates(w.point)) {
            throw ValidationError("route waypoint outside coordinate domain");
        }
        if (w.dwell_s < 0) {
            throw ValidationError("route dwell_s must be non-negative");
        }
    }
    if (route.noise_sigma > 0.0 &&
        3.0 * route.noise_sigma >= kMaxNoiseReach) {
        throw ValidationError(
            "noise_sigma " + detail::format_double(route.noise_sigma) +
            " is too large to guarantee the trace label (3*sigma must stay "
            "below " +
            detail::format_double(kMaxNoiseReach) + " degrees)");
    }
}

// The generator's own notion of an acceptable trajectory: classify each
// fix to a region index and require consecutive indices to differ by at
// most one, with any out-of-region fix rejecting. Mirrors the loose route
// probe over the set's declared order without touching probe machinery.
Label chain_label(const std::vector<GeoPoint>& fixes, const RegionSet& rs) {
    std::optional<std::size_t> previous = rs.classify_index(fixes.front());
    if (!previous) return Label::Rejected;
    for (std::size_t i = 1; i < fixes.size(); ++i) {
        auto current = rs.classify_index(fixes[i]);
        if (!current) return Label::Rejected;
        const std::size_t a = *previous;
        const std::size_t b = *current;
        if (a != b && a + 1 != b && b + 1 != a) return Label::Rejected;
        previous = current;
    }
    return Label::Accepted;
}

struct OscillationPlan {
    std::size_t insert_before = 0;
    std::vector<GeoPoint> fixes;
};

OscillationPlan plan_oscillation(const BoundaryOscillationFault& fault,
                                 const std::vector<GeoPoint>& ideal,
                                 const RegionSet& rs) {
    if (fault.cycles < 1) {
        throw ValidationError("boundary_oscillation cycles must be >= 1");
    }
    const bool along_long =
        fault.axis == BoundaryOscillationFault::Axis::Longitude;
    auto coord = [&](const GeoPoint& p) {
        return along_long ? p.longitude : p.latitude;
    };

    for (std::size_t i = 1; i < ideal.size(); ++i) {
        const double a = coord(ideal[i - 1]) - fault.value;
        const double b = coord(ideal[i]) - fault.value;
        if ((a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0)) {
            const double f = a / (a - b);
            GeoPoint crossing{
                ideal[i - 1].longitude +
                    f * (ideal[i].longitude - ideal[i - 1].longitude),
                ideal[i - 1].latitude +
                    f * (ideal[i].latitude - ideal[i - 1].latitude)};

            OscillationPlan plan;
            plan.insert_before = i;
            const double near_sign = a < 0.0 ? -1.0 : 1.0;
            for (int k = 0; k < 2 * fault.cycles; ++k) {
                // Even fixes land on the far side, odd back on the near
                // side: the paper's [S1; S2; S1; S2] pattern.
                const double sign = k % 2 == 0 ? -near_sign : near_sign;
                GeoPoint p = crossing;
                (along_long ? p.longitude : p.latitude) =
                    fault.value + sign * kOscillationOffset;
                if (!rs.classify_index(p)) {
                    throw ValidationError(
                        "boundary_oscillation fix falls outside every "
                        "region; the boundary at " +
                        detail::format_double(fault.value) +
                        " does not separate two adjacent regions here");
                }
                plan.fixes.push_back(p);
            }
            return plan;
        }
    }
    throw ValidationError(
        "route never crosses the requested oscillation boundary at " +
        detail::format_double(fault.value));
}

}  // namespace

RouteSpec default_route(const RegionSet& rs) {
    if (rs.size() < 2) {
        throw ValidationError(
            "default route needs a region set with at least 2 regions");
    }
    RouteSpec route;
    auto center = [](const Region& r) {
        return GeoPoint{(r.min_long + r.max_long) / 2.0,
                        (r.min_lat + r.max_lat) / 2.0};
    };
    for (std::size_t i = 0; i < rs.size(); ++i) {
        route.waypoints.push_back(Waypoint{center(rs.regions()[i]), 120});
    }
    for (std::size_t i = rs.size() - 1; i-- > 0;) {
        route.waypoints.push_back(Waypoint{center(rs.regions()[i]), 120});
    }
    return route;
}

LabelledTrace generate_trace(const RouteSpec& route, const FaultSpec& fault,
                             std::string vehicle_id, const RegionSet& rs) {
    validate_route(route);
    if (rs.empty()) {
        throw ValidationError("generate_trace needs a non-empty region set");
    }

    std::vector<Waypoint> waypoints = route.waypoints;
    Label intended = Label::Accepted;

    if (const auto* detour = std::get_if<DetourFault>(&fault)) {
        if (rs.classify_index(detour->target)) {
            throw ValidationError(
                "detour target must lie outside every region");
        }
        const double margin = min_distance_to_any_region(rs, detour->target);
        if (margin <= 3.0 * route.noise_sigma) {
            throw ValidationError(
                "detour target is too close to a region to guarantee a "
                "Rejected label under the requested noise");
        }
        if (detour->duration_s < route.sample_interval_s) {
            throw ValidationError(
                "detour duration_s must be at least one sample interval");
        }
        waypoints.insert(
            waypoints.begin() + 1,
            {Waypoint{detour->target, detour->duration_s},
             Waypoint{waypoints.front().point, 0}});
        intended = Label::Rejected;
    }

    const auto segments = build_timeline(waypoints, route.travel_speed);
    if (segments.empty()) {
        throw ValidationError("route has zero duration");
    }
    const double total = segments.back().t_end;
    const std::size_t count =
        static_cast<std::size_t>(total / route.sample_interval_s) + 1;

    std::vector<GeoPoint> fixes;
    fixes.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        fixes.push_back(position_at(
            segments, static_cast<double>(k) *
                          static_cast<double>(route.sample_interval_s)));
    }

    if (const auto* osc = std::get_if<BoundaryOscillationFault>(&fault)) {
        OscillationPlan plan = plan_oscillation(*osc, fixes, rs);
        fixes.insert(fixes.begin() + plan.insert_before, plan.fixes.begin(),
                     plan.fixes.end());
    } else if (const auto* jump = std::get_if<OutOfRegionJumpFault>(&fault)) {
        if (jump->event_index >= fixes.size()) {
            throw ValidationError(
                "out_of_region_jump index " +
                std::to_string(jump->event_index) +
                " exceeds the trace length " + std::to_string(fixes.size()));
        }
        fixes[jump->event_index] = GeoPoint{0.0, 0.0};
        intended = Label::Rejected;
    }

    Jitter jitter(route.seed);
    if (route.noise_sigma > 0.0) {
        for (GeoPoint& p : fixes) {
            p.longitude += jitter.gaussian(route.noise_sigma);
            p.latitude += jitter.gaussian(route.noise_sigma);
        }
    }

    const Label actual = chain_label(fixes, rs);
    if (actual != intended) {
        throw ValidationError(
            "generator refuses: trace '" + vehicle_id + "' would be " +
            std::string(to_string(actual)) + " but is labelled " +
            std::string(to_string(intended)) +
            " (noise_sigma or fault parameters make the label unsound)");
    }

    std::vector<Observation> observations;
    observations.reserve(fixes.size());
    const long start = route.start_time.seconds();
    for (std::size_t k = 0; k < fixes.size(); ++k) {
        if (!valid_coordinates(fixes[k])) {
            throw ValidationError(
                "generated fix left the coordinate domain");
        }
        const long t =
            (start + static_cast<long>(k) * route.sample_interval_s) %
            kSecondsPerDay;
        TimeOfDay tod{static_cast<int>(t / 3600),
                      static_cast<int>((t / 60) % 60),
                      static_cast<int>(t % 60)};
        observations.push_back(
            make_observation(fixes[k].latitude, fixes[k].longitude, tod));
    }

    return LabelledTrace{
        Trace::from_observations(std::move(vehicle_id),
                                 std::move(observations)),
        intended};
}

std::vector<LabelledTrace> generate_fleet(std::size_t n_correct,
                                          const std::vector<FaultSpec>& faults,
                                          std::uint64_t seed,
                                          const RegionSet& rs) {
    std::vector<LabelledTrace> fleet;
    fleet.reserve(n_correct + faults.size());

    const RouteSpec base = default_route(rs);
    // Waypoint cycle over region indices: 0, 1, ..., n-1, n-2, ..., 1.
    std::vector<std::size_t> cycle;
    for (std::size_t i = 0; i < rs.size(); ++i) cycle.push_back(i);
    for (std::size_t i = rs.size() - 1; i-- > 1;) cycle.push_back(i);

    auto center = [&](std::size_t region) {
        const Region& r = rs.regions()[region];
        return GeoPoint{(r.min_long + r.max_long) / 2.0,
                        (r.min_lat + r.max_lat) / 2.0};
    };
    auto rotated_route = [&](std::size_t rotation,
                             std::uint64_t child_seed) {
        RouteSpec route = base;
        route.waypoints.clear();
        for (std::size_t k = 0; k <= cycle.size(); ++k) {
            route.waypoints.push_back(
                Waypoint{center(cycle[(rotation + k) % cycle.size()]), 120});
        }
        route.seed = child_seed;
        return route;
    };
    auto child_seed = [&](std::size_t index) {
        std::uint64_t s = seed + 0x632BE59BD9B4E019ULL * (index + 1);
        return splitmix64(s);
    };

    int fleet_number = 937;
    for (std::size_t i = 0; i < n_correct; ++i, ++fleet_number) {
        fleet.push_back(generate_trace(
            rotated_route(i % cycle.size(), child_seed(i)), NoFault{},
            std::to_string(fleet_number), rs));
    }
    // Faulted vehicles start at the last region's waypoint (the garage in
    // the shipped config), so a detour precedes any airport/centre visit.
    for (std::size_t f = 0; f < faults.size(); ++f, ++fleet_number) {
        fleet.push_back(generate_trace(
            rotated_route(rs.size() - 1, child_seed(n_correct + f)),
            faults[f], std::to_string(fleet_number), rs));
    }
    return fleet;
}

RouteSpec parse_route_spec(std::string_view text,
                           std::string_view source_name) {
    RouteSpec route;
    route.waypoints.clear();

    const auto lines = detail::split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        std::string_view line = detail::trim(lines[i]);
        if (line.empty() || line.front() == '#') continue;

        std::size_t colon = line.find(':');
        if (colon == std::string_view::npos) {
            throw ParseError(std::string(source_name), line_no,
                             "expected '<directive>: <value>'");
        }
        std::string_view key = detail::trim(line.substr(0, colon));
        std::string_view value = detail::trim(line.substr(colon + 1));

        auto number = [&](std::string_view field) {
            auto v = detail::parse_double(field);
            if (!v) {
                throw ParseError(std::string(source_name), line_no,
                                 "expected a number, got '" +
                                     std::string(field) + "'");
            }
            return *v;
        };

        if (key == "speed") {
            route.travel_speed = number(value);
        } else if (key == "interval") {
            auto v = detail::parse_long(value);
            if (!v) {
                throw ParseError(std::string(source_name), line_no,
                                 "expected seconds, got '" +
                                     std::string(value) + "'");
            }
            route.sample_interval_s = *v;
        } else if (key == "noise_sigma") {
            route.noise_sigma = number(value);
        } else if (key == "seed") {
            auto v = detail::parse_long(value);
            if (!v || *v < 0) {
                throw ParseError(std::string(source_name), line_no,
                                 "expected a non-negative seed");
            }
            route.seed = static_cast<std::uint64_t>(*v);
        } else if (key == "start_time") {
            if (value.size() != 8 || value[2] != ':' || value[5] != ':') {
                throw ParseError(std::string(source_name), line_no,
                                 "expected HH:MM:SS");
            }
            TimeOfDay t{};
            auto h = detail::parse_long(value.substr(0, 2));
            auto m = detail::parse_long(value.substr(3, 2));
            auto s = detail::parse_long(value.substr(6, 2));
            if (!h || !m || !s) {
                throw ParseError(std::string(source_name), line_no,
                                 "expected HH:MM:SS");
            }
            t.hour = static_cast<int>(*h);
            t.minute = static_cast<int>(*m);
            t.second = static_cast<int>(*s);
            if (!t.valid()) {
                throw ParseError(std::string(source_name), line_no,
                                 "start_time out of range");
            }
            route.start_time = t;
        } else if (key == "waypoint") {
            const auto fields = detail::split_fields(value, ',');
            if (fields.size() != 3) {
                throw ParseError(std::string(source_name), line_no,
                                 "expected '<long>, <lat>, <dwell_s>'");
            }
            Waypoint w;
            w.point.longitude = number(fields[0]);
            w.point.latitude = number(fields[1]);
            auto dwell = detail::parse_long(fields[2]);
            if (!dwell || *dwell < 0) {
                throw ParseError(std::string(source_name), line_no,
                                 "dwell_s must be a non-negative integer");
            }
            w.dwell_s = *dwell;
            route.waypoints.push_back(w);
        } else {
            throw ParseError(std::string(source_name), line_no,
                             "unknown directive '" + std::string(key) + "'");
        }
    }
    return route;
}

std::vector<FaultSpec> parse_fault_specs(std::string_view text,
                                         std::string_view source_name) {
    std::vector<FaultSpec> faults;
    const auto lines = detail::split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        std::string_view line = detail::trim(lines[i]);
        if (line.empty() || line.front() == '#') continue;

        std::size_t colon = line.find(':');
        if (colon == std::string_view::npos) {
            throw ParseError(std::string(source_name), line_no,
                             "expected '<fault-kind>: <parameters>'");
        }
        std::string_view kind = detail::trim(line.substr(0, colon));
        std::string_view value = detail::trim(line.substr(colon + 1));

        if (kind == "none") {
            faults.push_back(NoFault{});
        } else if (kind == "detour") {
            const auto fields = detail::split_fields(value, ',');
            if (fields.size() != 3) {
                throw ParseError(std::string(source_name), line_no,
                                 "expected '<long>, <lat>, <duration_s>'");
            }
            DetourFault fault;
            auto lon = detail::parse_double(fields[0]);
            auto lat = detail::parse_double(fields[1]);
            auto dur = detail::parse_long(fields[2]);
            if (!lon || !lat || !dur || *dur < 1) {
                throw ParseError(std::string(source_name), line_no,
                                 "malformed detour parameters");
            }
            fault.target = GeoPoint{*lon, *lat};
            fault.duration_s = *dur;
            faults.push_back(fault);
        } else if (kind == "out_of_region_jump") {
            auto index = detail::parse_long(value);
            if (!index || *index < 0) {
                throw ParseError(std::string(source_name), line_no,
                                 "expected a non-negative event index");
            }
            faults.push_back(
                OutOfRegionJumpFault{static_cast<std::size_t>(*index)});
        } else if (kind == "boundary_oscillation") {
            const auto fields = detail::split_fields(value, ',');
            if (fields.size() != 3) {
                throw ParseError(std::string(source_name), line_no,
                                 "expected '<long|lat>, <value>, <cycles>'");
            }
            BoundaryOscillationFault fault;
            if (fields[0] == "long") {
                fault.axis = BoundaryOscillationFault::Axis::Longitude;
            } else if (fields[0] == "lat") {
                fault.axis = BoundaryOscillationFault::Axis::Latitude;
            } else {
                throw ParseError(std::string(source_name), line_no,
                                 "axis must be 'long' or 'lat'");
            }
            auto v = detail::parse_double(fields[1]);
            auto cycles = detail::parse_long(fields[2]);
            if (!v || !cycles || *cycles < 1) {
                throw ParseError(std::string(source_name), line_no,
                                 "malformed boundary_oscillation parameters");
            }
            fault.value = *v;
            fault.cycles = static_cast<int>(*cycles);
            faults.push_back(fault);
        } else {
            throw ParseError(std::string(source_name), line_no,
                             "unknown fault kind '" + std::string(kind) +
                                 "'");
        }
    }
    return faults;
}

std::string serialize_labels(std::span<const LabelledTrace> traces) {
    std::string out = "# vehicle_id, expected_result\n";
    for (const LabelledTrace& lt : traces) {
        out += lt.trace.vehicle_id();
        out += ", ";
        out += to_string(lt.label);
        out += '\n';
    }
    return out;
}

}  // namespace routeprobe
