#include <doctest.h>

#include <algorithm>
#include <random>

#include "routeprobe/errors.hpp"
#include "routeprobe/geo.hpp"

using namespace routeprobe;

namespace {

const Region kAirport{"airport", -3.38, -3.34, 55.935, 55.950};
const Region kGarage{"garage", -3.20, -3.18, 55.955, 55.965};

}  // namespace

TEST_CASE("contains is strict on all four bounds") {
    CHECK(contains(kAirport, {-3.36, 55.940}));
    CHECK_FALSE(contains(kAirport, {-3.34, 55.940}));  // east edge
    CHECK(contains(kGarage, {-3.19, 55.960}));

    CHECK_FALSE(contains(kAirport, {-3.38, 55.940}));
    CHECK_FALSE(contains(kAirport, {-3.36, 55.935}));
    CHECK_FALSE(contains(kAirport, {-3.36, 55.950}));
    CHECK_FALSE(contains(kAirport, {-3.34, 55.935}));  // corner
}

TEST_CASE("classify finds the unique region or none") {
    RegionSet rs = default_regions();
    CHECK(rs.classify({-3.30, 55.940}) == "suburbs1");
    CHECK_FALSE(rs.classify({-3.28, 55.942}).has_value());  // shared boundary
    CHECK_FALSE(rs.classify({0.0, 0.0}).has_value());
}

TEST_CASE("classify is invariant under region reordering") {
    RegionSet rs = default_regions();
    std::vector<Region> reversed(rs.regions().rbegin(), rs.regions().rend());
    RegionSet rs2 = RegionSet::from_regions(reversed);

    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> lon(-3.45, -3.10);
    std::uniform_real_distribution<double> lat(55.90, 56.00);
    for (int i = 0; i < 2000; ++i) {
        GeoPoint p{lon(rng), lat(rng)};
        CHECK(rs.classify(p) == rs2.classify(p));
    }
}

TEST_CASE("at most one region contains any point") {
    RegionSet rs = default_regions();
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> lon(-3.45, -3.10);
    std::uniform_real_distribution<double> lat(55.90, 56.00);
    for (int i = 0; i < 5000; ++i) {
        GeoPoint p{lon(rng), lat(rng)};
        int hits = 0;
        for (const Region& r : rs.regions()) {
            if (contains(r, p)) ++hits;
        }
        CHECK(hits <= 1);
        // classify never throws its defensive error on a validated set
        CHECK_NOTHROW(rs.classify(p));
    }
}

TEST_CASE("load_regions parses the five-region config") {
    const char* text =
        "# comment\n"
        "airport,  -3.38, -3.34, 55.935, 55.950\n"
        "suburbs1, -3.34, -3.28, 55.935, 55.945\n"
        "suburbs2, -3.28, -3.22, 55.940, 55.950\n"
        "centre,   -3.22, -3.18, 55.945, 55.955\n"
        "garage,   -3.20, -3.18, 55.955, 55.965\n";
    RegionSet rs = load_regions(text);
    REQUIRE(rs.size() == 5);
    CHECK(rs.regions()[0].name == "airport");
    CHECK(rs.regions()[0].min_long == -3.38);
    CHECK(rs.regions()[4].max_lat == 55.965);
    CHECK(rs.index_of("centre") == 3);
}

TEST_CASE("load_regions accepts an empty document") {
    RegionSet rs = load_regions("# nothing here\n");
    CHECK(rs.empty());
}

TEST_CASE("load_regions rejects overlapping interiors naming both regions") {
    const char* text =
        "airport,  -3.38, -3.34, 55.935, 55.950\n"
        "suburbs1, -3.34, -3.28, 55.935, 55.945\n"
        "airport2, -3.36, -3.30, 55.936, 55.944\n";
    try {
        load_regions(text);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        std::string what = e.what();
        CHECK(what.find("airport") != std::string::npos);
        CHECK(what.find("airport2") != std::string::npos);
    }
}

TEST_CASE("touching edges are not an overlap") {
    CHECK_NOTHROW(load_regions(
        "a, 0, 1, 0, 1\n"
        "b, 1, 2, 0, 1\n"));
}

TEST_CASE("load_regions rejects degenerate rectangles") {
    CHECK_THROWS_AS(load_regions("flat, -3.3, -3.3, 55.9, 55.95\n"),
                    ValidationError);
    CHECK_THROWS_AS(load_regions("inverted, -3.3, -3.4, 55.9, 55.95\n"),
                    ValidationError);
}

TEST_CASE("load_regions rejects duplicate names") {
    CHECK_THROWS_AS(load_regions("a, 0, 1, 0, 1\na, 2, 3, 2, 3\n"),
                    ValidationError);
}

TEST_CASE("load_regions reports line and field of malformed entries") {
    try {
        load_regions("a, 0, 1, 0, 1\nb, 2, x, 2, 3\n", "regions.cfg");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        std::string what = e.what();
        CHECK(what.find("regions.cfg:2") != std::string::npos);
        CHECK(what.find("field 3") != std::string::npos);
    }
    CHECK_THROWS_AS(load_regions("only, three, fields\n"), ParseError);
}

TEST_CASE("default_regions matches the shipped bounds") {
    RegionSet rs = default_regions();
    REQUIRE(rs.size() == 5);
    const Region* suburbs2 = rs.find("suburbs2");
    REQUIRE(suburbs2 != nullptr);
    CHECK(suburbs2->min_long == -3.28);
    CHECK(suburbs2->max_long == -3.22);
    CHECK(suburbs2->min_lat == 55.940);
    CHECK(suburbs2->max_lat == 55.950);
}

TEST_CASE("boundary points belong to no region") {
    RegionSet rs = default_regions();
    for (const Region& r : rs.regions()) {
        const double mid_long = (r.min_long + r.max_long) / 2.0;
        const double mid_lat = (r.min_lat + r.max_lat) / 2.0;
        const GeoPoint edges[] = {
            {r.min_long, mid_lat},
            {r.max_long, mid_lat},
            {mid_long, r.min_lat},
            {mid_long, r.max_lat},
        };
        for (const GeoPoint& p : edges) {
            CHECK_FALSE(contains(r, p));
        }
    }
}
