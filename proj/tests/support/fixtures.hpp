// Shared test fixtures: canonical inputs and small builders.
// Include doctest.h before this header.
#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "routeprobe/geo.hpp"
#include "routeprobe/trace.hpp"

namespace fixtures {

// The three measurement records of the conversion example, verbatim.
inline const char* kFig4Trace =
    "55.948413846216582,-3.363214449536430,00:11:39\n"
    "55.944855742591862,-3.361568243977290,00:12:41\n"
    "55.937544319811479,-3.358045792384101,00:13:43\n";

inline routeprobe::GeoPoint region_center(const routeprobe::RegionSet& rs,
                                          const std::string& name) {
    const routeprobe::Region* r = rs.find(name);
    REQUIRE(r != nullptr);
    return {(r->min_long + r->max_long) / 2.0,
            (r->min_lat + r->max_lat) / 2.0};
}

inline routeprobe::Trace trace_from_points(
    std::string vehicle_id, const std::vector<routeprobe::GeoPoint>& points,
    routeprobe::TimeOfDay start = {10, 0, 0}, long interval_s = 60) {
    std::vector<routeprobe::Observation> observations;
    observations.reserve(points.size());
    long t0 = start.seconds();
    for (std::size_t i = 0; i < points.size(); ++i) {
        long t = (t0 + static_cast<long>(i) * interval_s) % 86400;
        routeprobe::TimeOfDay tod{static_cast<int>(t / 3600),
                                  static_cast<int>((t / 60) % 60),
                                  static_cast<int>(t % 60)};
        observations.push_back(routeprobe::make_observation(
            points[i].latitude, points[i].longitude, tod));
    }
    return routeprobe::Trace::from_observations(std::move(vehicle_id),
                                                std::move(observations));
}

// A trace visiting the named regions' centers in order.
inline routeprobe::Trace trace_through_regions(
    std::string vehicle_id, const routeprobe::RegionSet& rs,
    const std::vector<std::string>& regions,
    routeprobe::TimeOfDay start = {10, 0, 0}) {
    std::vector<routeprobe::GeoPoint> points;
    points.reserve(regions.size());
    for (const std::string& name : regions) {
        points.push_back(region_center(rs, name));
    }
    return trace_from_points(std::move(vehicle_id), points, start);
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "cannot open " << path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace fixtures
