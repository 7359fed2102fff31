#include <doctest.h>

#include <array>

#include "routeprobe/errors.hpp"
#include "routeprobe/trace.hpp"
#include "support/fixtures.hpp"

using namespace routeprobe;

namespace {

// Independent oracle for midnight handling: convert each time of day to
// absolute seconds, adding a day whenever the clock reading decreases.
std::vector<long> absolute_seconds_oracle(const std::vector<TimeOfDay>& ts) {
    std::vector<long> absolute;
    long offset = 0;
    long prev = -1;
    for (const TimeOfDay& t : ts) {
        long s = t.seconds() + offset;
        if (prev >= 0 && s <= prev) {
            offset += 86400;
            s = t.seconds() + offset;
        }
        absolute.push_back(s);
        prev = s;
    }
    std::vector<long> elapsed;
    for (long s : absolute) elapsed.push_back(s - absolute.front());
    return elapsed;
}

}  // namespace

TEST_CASE("parse_trace handles the three-record conversion example") {
    Trace t = parse_trace(fixtures::kFig4Trace, "937");
    REQUIRE(t.size() == 3);
    CHECK(t.vehicle_id() == "937");
    CHECK(t.elapsed_s() == std::vector<long>{0, 62, 124});
    CHECK(t.observations()[0].latitude == 55.948413846216582);
    CHECK(t.observations()[0].longitude == -3.363214449536430);
    CHECK(t.observations()[0].latitude_text == "55.948413846216582");
    CHECK(t.observations()[0].time.hour == 0);
    CHECK(t.observations()[0].time.minute == 11);
    CHECK(t.observations()[0].time.second == 39);
}

TEST_CASE("single-record trace has elapsed [0]") {
    Trace t = parse_trace("55.9,-3.3,10:00:00\n", "x");
    CHECK(t.size() == 1);
    CHECK(t.elapsed_s() == std::vector<long>{0});
}

TEST_CASE("midnight rollover adds one day") {
    Trace t = parse_trace("55.9,-3.3,23:59:30\n55.9,-3.3,00:00:30\n", "x");
    CHECK(t.elapsed_s() == std::vector<long>{0, 60});
}

TEST_CASE("compute_elapsed on the conversion example timestamps") {
    std::vector<TimeOfDay> times = {{0, 11, 39}, {0, 12, 41}, {0, 13, 43}};
    CHECK(compute_elapsed(times) == std::vector<long>{0, 62, 124});
    CHECK(compute_elapsed(times) == absolute_seconds_oracle(times));
}

TEST_CASE("compute_elapsed single entry") {
    std::vector<TimeOfDay> times = {{10, 0, 0}};
    CHECK(compute_elapsed(times) == std::vector<long>{0});
}

TEST_CASE("compute_elapsed wraps midnight per the absolute-seconds oracle") {
    std::vector<TimeOfDay> times = {{23, 59, 0}, {0, 1, 0}, {0, 3, 0}};
    CHECK(compute_elapsed(times) == std::vector<long>{0, 120, 240});
    CHECK(compute_elapsed(times) == absolute_seconds_oracle(times));

    // two midnights
    std::vector<TimeOfDay> two_days = {
        {23, 0, 0}, {11, 0, 0}, {23, 30, 0}, {1, 0, 0}};
    CHECK(compute_elapsed(two_days) == absolute_seconds_oracle(two_days));
    auto elapsed = compute_elapsed(two_days);
    CHECK(elapsed.back() == (24 - 23) * 3600 + 24 * 3600 + 3600 + 1800);
}

TEST_CASE("duplicate consecutive timestamps are an error naming the record") {
    std::vector<TimeOfDay> times = {{10, 0, 0}, {10, 1, 0}, {10, 1, 0}};
    try {
        compute_elapsed(times);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("2") != std::string::npos);
    }
}

TEST_CASE("parse_trace rejects malformed records with a location") {
    try {
        parse_trace("55.9,-3.3,10:00:00\n95.2,-3.3,10:01:00\n", "x", ',',
                    "bus.trace");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(std::string(e.what()).find("bus.trace:2") != std::string::npos);
    }

    CHECK_THROWS_AS(parse_trace("55.9,-3.3\n", "x"), ParseError);
    CHECK_THROWS_AS(parse_trace("55.9,-3.3,10:00\n", "x"), ParseError);
    CHECK_THROWS_AS(parse_trace("55.9,-3.3,10:61:00\n", "x"), ParseError);
    CHECK_THROWS_AS(parse_trace("55.9,oops,10:00:00\n", "x"), ParseError);
}

TEST_CASE("parse_trace rejects empty input") {
    CHECK_THROWS_AS(parse_trace("", "x"), ParseError);
    CHECK_THROWS_AS(parse_trace("# only a comment\n", "x"), ParseError);
}

TEST_CASE("parse_trace supports alternate delimiters and comments") {
    Trace t = parse_trace("# hdr\n55.9;-3.3;10:00:00\n55.8;-3.2;10:01:00\n",
                          "x", ';');
    CHECK(t.size() == 2);
}

TEST_CASE("serialization round-trips canonical text") {
    std::string canonical = fixtures::kFig4Trace;
    Trace t = parse_trace(canonical, "937");
    CHECK(serialize_trace(t) == canonical);

    // lexemes survive even when they are not shortest-form doubles
    std::string padded = "55.900000,-3.30,08:00:00\n55.90,-3.31,08:01:00\n";
    CHECK(serialize_trace(parse_trace(padded, "x")) == padded);
}

TEST_CASE("event stream preserves order, payloads and length") {
    Trace t = parse_trace(fixtures::kFig4Trace, "937");
    auto events = as_event_stream(t);
    REQUIRE(events.size() == 3);
    for (std::size_t i = 0; i < events.size(); ++i) {
        CHECK(events[i].index == i);
        CHECK(events[i].elapsed_s == t.elapsed_s()[i]);
        CHECK(events[i].payload.latitude_text ==
              t.observations()[i].latitude_text);
    }
    CHECK(events[0].payload.latitude == 55.948413846216582);
    CHECK(events[0].payload.longitude == -3.363214449536430);
    CHECK(events[0].payload.time.hour == 0);
    CHECK(events[0].payload.time.minute == 11);
    CHECK(events[0].payload.time.second == 39);
}

TEST_CASE("a 1440-record trace yields 1440 events") {
    std::string text;
    for (int i = 0; i < 1440; ++i) {
        int t = (8 * 3600 + i * 60) % 86400;
        char buf[64];
        std::snprintf(buf, sizeof(buf), "55.95,-3.30,%02d:%02d:%02d\n",
                      t / 3600, (t / 60) % 60, t % 60);
        text += buf;
    }
    Trace t = parse_trace(text, "day");
    CHECK(t.size() == 1440);
    CHECK(as_event_stream(t).size() == 1440);
    CHECK(t.elapsed_s().back() == 1439 * 60);
}

TEST_CASE("elapsed deltas equal timestamp deltas modulo 86400") {
    Trace t = parse_trace(
        "55.9,-3.3,23:58:10\n55.9,-3.3,23:59:10\n55.9,-3.3,00:00:40\n"
        "55.9,-3.3,00:02:00\n",
        "x");
    for (std::size_t i = 1; i < t.size(); ++i) {
        long delta = t.elapsed_s()[i] - t.elapsed_s()[i - 1];
        long tod_delta = (t.observations()[i].time.seconds() -
                          t.observations()[i - 1].time.seconds() + 86400) %
                         86400;
        CHECK(delta % 86400 == tod_delta % 86400);
        CHECK(delta > 0);
    }
}
