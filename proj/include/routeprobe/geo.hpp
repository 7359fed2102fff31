#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace routeprobe {

/// Decimal degrees, east-positive / north-positive.
struct GeoPoint {
    double longitude = 0.0;
    double latitude = 0.0;
};

bool valid_coordinates(const GeoPoint& p);

/// Named open rectangle in longitude/latitude space.
struct Region {
    std::string name;
    double min_long = 0.0;
    double max_long = 0.0;
    double min_lat = 0.0;
    double max_lat = 0.0;
};

/// True iff p lies strictly inside the rectangle. Boundary points are
/// outside; all four comparisons are strict.
bool contains(const Region& region, const GeoPoint& p);

/// Ordered list of regions with pairwise disjoint open interiors.
/// Immutable after construction; safe to share across threads.
class RegionSet {
public:
    RegionSet() = default;

    /// Validates names (unique, non-empty), rectangle shape and pairwise
    /// interior disjointness. Throws ValidationError on violation.
    static RegionSet from_regions(std::vector<Region> regions);

    const std::vector<Region>& regions() const noexcept { return regions_; }
    std::size_t size() const noexcept { return regions_.size(); }
    bool empty() const noexcept { return regions_.empty(); }

    const Region* find(std::string_view name) const;
    std::optional<std::size_t> index_of(std::string_view name) const;

    /// The unique region whose open interior holds p, or nullopt when p is
    /// in no region (boundary points included). Throws ValidationError if
    /// two regions claim p; construction validation rules that out.
    std::optional<std::size_t> classify_index(const GeoPoint& p) const;
    std::optional<std::string> classify(const GeoPoint& p) const;

private:
    explicit RegionSet(std::vector<Region> regions)
        : regions_(std::move(regions)) {}

    std::vector<Region> regions_;
};

/// Parses a region config document: one `name, min_long, max_long,
/// min_lat, max_lat` entry per line, `#` comments and blank lines skipped.
/// Throws ParseError (with line/field location) or ValidationError.
RegionSet load_regions(std::string_view text,
                       std::string_view source_name = "<regions>");

/// The five service-100 route regions (airport, suburbs1, suburbs2,
/// centre, garage).
RegionSet default_regions();

}  // namespace routeprobe
