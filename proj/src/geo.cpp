#include "routeprobe/geo.hpp"

#include <utility>

#include "routeprobe/detail/text.hpp"
#include "routeprobe/errors.hpp"

namespace routeprobe {

bool valid_coordinates(const GeoPoint& p) {
    return p.longitude >= -180.0 && p.longitude <= 180.0 &&
           p.latitude >= -90.0 && p.latitude <= 90.0;
}

bool contains(const Region& region, const GeoPoint& p) {
    return p.longitude > region.min_long && p.longitude < region.max_long &&
           p.latitude > region.min_lat && p.latitude < region.max_lat;
}

namespace {

// Open interiors intersect iff both axis intervals overlap strictly;
// touching edges do not count.
bool interiors_overlap(const Region& a, const Region& b) {
    return a.min_long < b.max_long && b.min_long < a.max_long &&
           a.min_lat < b.max_lat && b.min_lat < a.max_lat;
}

}  // namespace

RegionSet RegionSet::from_regions(std::vector<Region> regions) {
    for (const Region& r : regions) {
        if (r.name.empty()) {
            throw ValidationError("region with empty name");
        }
        if (!(r.min_long < r.max_long) || !(r.min_lat < r.max_lat)) {
            throw ValidationError("region '" + r.name +
                                  "' is degenerate: bounds must satisfy "
                                  "min_long < max_long and min_lat < max_lat");
        }
        if (r.min_long < -180.0 || r.max_long > 180.0 || r.min_lat < -90.0 ||
            r.max_lat > 90.0) {
            throw ValidationError("region '" + r.name +
                                  "' exceeds the longitude/latitude domain");
        }
    }
    for (std::size_t i = 0; i < regions.size(); ++i) {
        for (std::size_t j = i + 1; j < regions.size(); ++j) {
            if (regions[i].name == regions[j].name) {
                throw ValidationError("duplicate region name '" +
                                      regions[i].name + "'");
            }
            if (interiors_overlap(regions[i], regions[j])) {
                throw ValidationError("regions '" + regions[i].name +
                                      "' and '" + regions[j].name +
                                      "' have overlapping interiors");
            }
        }
    }
    return RegionSet(std::move(regions));
}

const Region* RegionSet::find(std::string_view name) const {
    for (const Region& r : regions_) {
        if (r.name == name) return &r;
    }
    return nullptr;
}

std::optional<std::size_t> RegionSet::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < regions_.size(); ++i) {
        if (regions_[i].name == name) return i;
    }
    return std::nullopt;
}

std::optional<std::size_t> RegionSet::classify_index(const GeoPoint& p) const {
    std::optional<std::size_t> hit;
    for (std::size_t i = 0; i < regions_.size(); ++i) {
        if (contains(regions_[i], p)) {
            if (hit) {
                throw ValidationError(
                    "regions '" + regions_[*hit].name + "' and '" +
                    regions_[i].name + "' both contain the same point");
            }
            hit = i;
        }
    }
    return hit;
}

std::optional<std::string> RegionSet::classify(const GeoPoint& p) const {
    auto idx = classify_index(p);
    if (!idx) return std::nullopt;
    return regions_[*idx].name;
}

RegionSet load_regions(std::string_view text, std::string_view source_name) {
    std::vector<Region> regions;
    const auto lines = detail::split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        std::string_view line = detail::trim(lines[i]);
        if (line.empty() || line.front() == '#') continue;

        const auto fields = detail::split_fields(line, ',');
        if (fields.size() != 5) {
            throw ParseError(std::string(source_name), line_no,
                             "expected 5 fields (name, min_long, max_long, "
                             "min_lat, max_lat), got " +
                                 std::to_string(fields.size()));
        }
        Region r;
        r.name = std::string(fields[0]);
        if (!detail::is_identifier(r.name)) {
            throw ParseError(std::string(source_name), line_no,
                             "field 1: '" + r.name +
                                 "' is not a valid region name");
        }
        double* const bounds[4] = {&r.min_long, &r.max_long, &r.min_lat,
                                   &r.max_lat};
        for (int f = 0; f < 4; ++f) {
            auto value = detail::parse_double(fields[f + 1]);
            if (!value) {
                throw ParseError(std::string(source_name), line_no,
                                 "field " + std::to_string(f + 2) +
                                     ": expected a number, got '" +
                                     std::string(fields[f + 1]) + "'");
            }
            *bounds[f] = *value;
        }
        regions.push_back(std::move(r));
    }
    return RegionSet::from_regions(std::move(regions));
}

RegionSet default_regions() {
    return RegionSet::from_regions({
        {"airport", -3.38, -3.34, 55.935, 55.950},
        {"suburbs1", -3.34, -3.28, 55.935, 55.945},
        {"suburbs2", -3.28, -3.22, 55.940, 55.950},
        {"centre", -3.22, -3.18, 55.945, 55.955},
        {"garage", -3.20, -3.18, 55.955, 55.965},
    });
}

}  // namespace routeprobe
