#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "routeprobe/geo.hpp"
#include "routeprobe/trace.hpp"

namespace routeprobe {

struct Waypoint {
    GeoPoint point;
    long dwell_s = 0;
};

/// Piecewise-linear motion through waypoints with per-waypoint dwells,
/// sampled on a fixed interval grid with optional position jitter.
struct RouteSpec {
    std::vector<Waypoint> waypoints;
    double travel_speed = 2e-4;   // degrees per second along segments
    long sample_interval_s = 60;
    double noise_sigma = 0.0;     // isotropic jitter, degrees per axis
    TimeOfDay start_time{23, 30, 0};
    std::uint64_t seed = 0;
};

struct NoFault {};

/// Leave the route right after the first waypoint's dwell, drive to
/// `target` (which must lie outside every region), dwell there, return.
struct DetourFault {
    GeoPoint target{-3.10, 55.98};
    long duration_s = 600;
};

/// Replace the fix at `event_index` with the far-outside point (0, 0).
struct OutOfRegionJumpFault {
    std::size_t event_index = 0;
};

/// A vehicle stopped on a region boundary with GPS jitter: inserts
/// 2*cycles fixes alternating across the boundary line at the route's
/// first crossing of it.
struct BoundaryOscillationFault {
    enum class Axis { Longitude, Latitude };
    Axis axis = Axis::Longitude;
    double value = 0.0;
    int cycles = 1;
};

using FaultSpec = std::variant<NoFault, DetourFault, OutOfRegionJumpFault,
                               BoundaryOscillationFault>;

enum class Label { Accepted, Rejected };

std::string_view to_string(Label label);

struct LabelledTrace {
    Trace trace;
    Label label;
};

/// Centers of the regions in set order, out and back
/// (r0 -> r1 -> ... -> r_last -> ... -> r1 -> r0), 120 s dwells.
RouteSpec default_route(const RegionSet& rs);

/// Samples the route, applies the fault, and labels the result. The
/// label is checked against an internal region-adjacency walk before the
/// trace is released; when jitter (or a fault parameter) makes the label
/// unguaranteeable the generator refuses with a ValidationError rather
/// than emit a mislabelled trace. Deterministic in route.seed.
LabelledTrace generate_trace(const RouteSpec& route, const FaultSpec& fault,
                             std::string vehicle_id, const RegionSet& rs);

/// A fleet of n_correct fault-free traces plus one trace per fault, all
/// on rotations of the default route (faulted vehicles start at the last
/// region's waypoint). Vehicle numbering starts at 937. Reproducible
/// bit-for-bit from `seed`.
std::vector<LabelledTrace> generate_fleet(std::size_t n_correct,
                                          const std::vector<FaultSpec>& faults,
                                          std::uint64_t seed,
                                          const RegionSet& rs);

/// Route config: `speed:`, `interval:`, `noise_sigma:`, `start_time:`,
/// `seed:` and one `waypoint: <long>, <lat>, <dwell_s>` line per stop.
RouteSpec parse_route_spec(std::string_view text,
                           std::string_view source_name = "<route>");

/// Fault config: one fault per line — `none:`,
/// `detour: <long>, <lat>, <duration_s>`, `out_of_region_jump: <index>`,
/// `boundary_oscillation: <long|lat>, <value>, <cycles>`.
std::vector<FaultSpec> parse_fault_specs(
    std::string_view text, std::string_view source_name = "<faults>");

/// Sidecar label document: `vehicle_id, expected_result` per line.
std::string serialize_labels(std::span<const LabelledTrace> traces);

}  // namespace routeprobe
