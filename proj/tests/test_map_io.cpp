#include <catch2/catch_amalgamated.hpp>

#include "anyangle/map_io.hpp"
#include "anyangle/mapgen.hpp"
#include "oracles.hpp"

using namespace anyangle;

TEST_CASE("map parsing") {
    SECTION("a two-by-two map of dots") {
        const GridMap m = parse_map("type octile\nheight 2\nwidth 2\nmap\n..\n..\n");
        CHECK(m.width() == 2);
        CHECK(m.height() == 2);
        for (int y = 0; y < 2; ++y) {
            for (int x = 0; x < 2; ++x) CHECK_FALSE(m.blocked(x, y));
        }
    }
    SECTION("every blocked character blocks; G is passable") {
        const GridMap m = parse_map("type octile\nheight 1\nwidth 6\nmap\n@OTSWG\n");
        CHECK(m.blocked(0, 0));
        CHECK(m.blocked(1, 0));
        CHECK(m.blocked(2, 0));
        CHECK(m.blocked(3, 0));
        CHECK(m.blocked(4, 0));
        CHECK_FALSE(m.blocked(5, 0));
    }
    SECTION("header order of width and height is flexible") {
        const GridMap m = parse_map("type octile\nwidth 3\nheight 1\nmap\n.@.\n");
        CHECK(m.width() == 3);
        CHECK(m.blocked(1, 0));
    }
    SECTION("CRLF input is tolerated") {
        const GridMap m = parse_map("type octile\r\nheight 1\r\nwidth 2\r\nmap\r\n.@\r\n");
        CHECK(m.blocked(1, 0));
    }
    SECTION("a truncated row names its line") {
        try {
            parse_map("type octile\nheight 2\nwidth 3\nmap\n...\n..\n");
            FAIL("expected a parse error");
        } catch (const MapParseError& e) {
            CHECK(e.line == 6);
        }
    }
    SECTION("missing rows are an error") {
        CHECK_THROWS_AS(parse_map("type octile\nheight 3\nwidth 2\nmap\n..\n"), MapParseError);
    }
    SECTION("unknown characters are an error") {
        CHECK_THROWS_AS(parse_map("type octile\nheight 1\nwidth 2\nmap\n.x\n"), MapParseError);
    }
    SECTION("missing headers are an error") {
        CHECK_THROWS_AS(parse_map("height 1\nwidth 1\nmap\n.\n"), MapParseError);
        CHECK_THROWS_AS(parse_map("type octile\nwidth 1\nmap\n.\n"), MapParseError);
    }
}

TEST_CASE("map writing round-trips") {
    SECTION("empty and full maps") {
        CHECK(write_map(GridMap(2, 2)) == "type octile\nheight 2\nwidth 2\nmap\n..\n..\n");
        const GridMap full(2, 1, {1, 1});
        CHECK(write_map(full) == "type octile\nheight 1\nwidth 2\nmap\n@@\n");
    }
    SECTION("write-parse-write is byte identical on generated maps") {
        anyangle::SplitMix64 rng(2);
        for (double d : {0.0, 0.2, 0.5, 1.0}) {
            const GridMap m = oracle::random_map(17, 23, d, rng.next());
            const std::string once = write_map(m);
            const GridMap back = parse_map(once);
            CHECK(back == m);
            CHECK(write_map(back) == once);
        }
    }
}

TEST_CASE("scenario parsing") {
    const char* text =
        "version 1\n"
        "0 arena.map 8 8 1 2 6 7 7.4142\n"
        "1 arena.map 8 8 0 0 7 7 9.8994\n";
    SECTION("valid entries parse") {
        const auto entries = parse_scenarios(text);
        REQUIRE(entries.size() == 2);
        CHECK(entries[0].bucket == 0);
        CHECK(entries[0].map_name == "arena.map");
        CHECK(entries[0].width == 8);
        CHECK(entries[0].start_x == 1);
        CHECK(entries[0].goal_y == 7);
        CHECK(entries[0].octile_length == Catch::Approx(7.4142));
    }
    SECTION("bad version is rejected") {
        CHECK_THROWS_AS(parse_scenarios("version 2\n"), MapParseError);
        CHECK_THROWS_AS(parse_scenarios("bogus\n"), MapParseError);
    }
    SECTION("field-count mismatches are rejected") {
        CHECK_THROWS_AS(parse_scenarios("version 1\n0 arena.map 8 8 1 2 6 7\n"),
                        MapParseError);
    }
    SECTION("out-of-bounds coordinates are rejected") {
        CHECK_THROWS_AS(parse_scenarios("version 1\n0 arena.map 8 8 1 2 8 7 1.0\n"),
                        MapParseError);
    }
}

TEST_CASE("scenario endpoints map to vertices") {
    const GridMap m = oracle::make_map(4, 4, {{0, 0}});
    SECTION("default: the tile's own corner") {
        CHECK(scenario_vertex(m, 2, 3) == Vertex{2, 3});
    }
    SECTION("centre snapping avoids fully blocked vertices") {
        const GridMap solid = oracle::make_map(4, 4, {{0, 0}, {1, 0}, {0, 1}, {1, 1}});
        const Vertex v = scenario_vertex(solid, 0, 0, true);
        const ObstacleConfig c = solid.config_at(v.x, v.y);
        CHECK_FALSE((c.ne && c.nw && c.sw && c.se));
    }
}

TEST_CASE("any-angle lengths never exceed the octile reference") {
    // Build a small scenario corpus with octile reference lengths computed
    // by an independent 8-directional search, then check the documented
    // relationship against the any-angle geodesic.
    anyangle::SplitMix64 rng(42);
    const GridMap m = oracle::random_map(12, 12, 0.25, 31);
    const oracle::GeodesicOracle geo(m, 1);
    int produced = 0;
    std::string scen = "version 1\n";
    std::vector<double> anyangle_lengths;
    while (produced < 12) {
        // Scenario coordinates address tiles, so stay within [0, width).
        const Vertex s{static_cast<int>(rng.below(12)), static_cast<int>(rng.below(12))};
        const Vertex t{static_cast<int>(rng.below(12)), static_cast<int>(rng.below(12))};
        if (s == t) continue;
        const double octile = oracle::octile_length(m, s, t);
        if (std::isinf(octile)) continue;
        const double direct = geo.geodesic({s.x, s.y}, {t.x, t.y});
        REQUIRE(std::isfinite(direct));
        scen += "0 gen.map 12 12 " + std::to_string(s.x) + " " + std::to_string(s.y) + " " +
                std::to_string(t.x) + " " + std::to_string(t.y) + " " +
                std::to_string(octile) + "\n";
        anyangle_lengths.push_back(direct);
        ++produced;
    }
    const auto entries = parse_scenarios(scen);
    REQUIRE(entries.size() == anyangle_lengths.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        CHECK(anyangle_lengths[i] <= entries[i].octile_length + 1e-6);
    }
}
