#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <thread>

#include "anyangle/bench.hpp"
#include "anyangle/search.hpp"
#include "oracles.hpp"

using namespace anyangle;

namespace {

bool fully_blocked_around(const GridMap& m, Vertex v) {
    const ObstacleConfig c = m.config_at(v.x, v.y);
    return c.ne && c.nw && c.sw && c.se;
}

}  // namespace

TEST_CASE("svg query basics") {
    SECTION("empty map: the direct segment") {
        const VisGraph g = build_svg(GridMap(8, 8));
        const PathResult r = query_svg(g, {1, 1}, {7, 5});
        REQUIRE(r.found);
        CHECK(r.waypoints == std::vector<Vertex>{{1, 1}, {7, 5}});
        CHECK(r.length == Catch::Approx(euclid({1, 1}, {7, 5})).epsilon(1e-12));
        CHECK(audit_path(g.map, r.waypoints));
    }
    SECTION("s == t") {
        const VisGraph g = build_svg(GridMap(4, 4));
        const PathResult r = query_svg(g, {2, 2}, {2, 2});
        REQUIRE(r.found);
        CHECK(r.waypoints.size() == 1);
        CHECK(r.length == 0.0);
        CHECK(audit_path(g.map, r.waypoints));
    }
    SECTION("a single tile forces a two-corner detour") {
        const GridMap m = oracle::make_map(4, 4, {{1, 1}});
        const VisGraph g = build_svg(m);
        const PathResult r = query_svg(g, {0, 0}, {3, 3});
        REQUIRE(r.found);
        CHECK(r.waypoints.size() == 3);
        const oracle::GeodesicOracle geo(m, 1);
        CHECK(r.length == Catch::Approx(geo.geodesic({0, 0}, {3, 3})).epsilon(1e-12));
        CHECK(audit_path(m, r.waypoints));
    }
    SECTION("sealed rooms are unreachable") {
        // A ring of blocked tiles with a free pocket inside.
        const GridMap m = oracle::from_ascii({
            "......",
            ".####.",
            ".#..#.",
            ".#..#.",
            ".####.",
            "......",
        });
        const VisGraph g = build_svg(m);
        const PathResult r = query_svg(g, {3, 3}, {0, 0});
        CHECK_FALSE(r.found);
    }
}

TEST_CASE("queries match the independent geodesic oracle") {
    anyangle::SplitMix64 rng(5150);
    for (double d : {0.12, 0.25, 0.4}) {
        for (int rep = 0; rep < 2; ++rep) {
            const GridMap m = oracle::random_map(16, 16, d, rng.next());
            const VisGraph svg = build_svg(m);
            const EdgeHierarchy h = build_hierarchy(svg);
            const oracle::GeodesicOracle geo(m, 1);
            int done = 0;
            while (done < 25) {
                const Vertex s{static_cast<int>(rng.below(17)),
                               static_cast<int>(rng.below(17))};
                const Vertex t{static_cast<int>(rng.below(17)),
                               static_cast<int>(rng.below(17))};
                if (s == t || fully_blocked_around(m, s) || fully_blocked_around(m, t)) {
                    continue;
                }
                ++done;
                const double want = geo.geodesic({s.x, s.y}, {t.x, t.y});
                const PathResult a = query_svg(svg, s, t);
                const PathResult b = query_enlsvg(svg, h, s, t);
                CAPTURE(d, rep, s.x, s.y, t.x, t.y);
                if (std::isinf(want)) {
                    REQUIRE_FALSE(a.found);
                    REQUIRE_FALSE(b.found);
                    continue;
                }
                REQUIRE(a.found);
                REQUIRE(b.found);
                REQUIRE(a.length == Catch::Approx(want).epsilon(1e-9));
                REQUIRE(b.length == Catch::Approx(want).epsilon(1e-9));
                REQUIRE(audit_path(m, a.waypoints));
                REQUIRE(audit_path(m, b.waypoints));
                CHECK(a.stats.settled_g_violations == 0);
                CHECK(b.stats.settled_g_violations == 0);
            }
        }
    }
}

TEST_CASE("hierarchical query agrees with the flat query at larger scale") {
    anyangle::SplitMix64 rng(8088);
    const GridMap m = oracle::random_map(48, 48, 0.3, 31415);
    const VisGraph svg = build_svg(m);
    const EdgeHierarchy h = build_hierarchy(svg);
    const Reachability reach(m);
    MarkState marks;
    std::size_t enlsvg_cheaper = 0, total = 0;
    for (int i = 0; i < 120; ++i) {
        Vertex s, t;
        if (!sample_reachable_pair(m, reach, rng, s, t)) break;
        const PathResult a = query_svg(svg, s, t);
        const PathResult b = query_enlsvg(svg, h, s, t, &marks);
        CAPTURE(s.x, s.y, t.x, t.y);
        REQUIRE(a.found);
        REQUIRE(b.found);
        REQUIRE(b.length == Catch::Approx(a.length).epsilon(1e-9));
        REQUIRE(audit_path(m, b.waypoints));
        ++total;
        if (b.stats.nodes_expanded <= a.stats.nodes_expanded) ++enlsvg_cheaper;
    }
    REQUIRE(total > 100);
    // The hierarchy should rarely expand more than the flat search.
    CHECK(enlsvg_cheaper * 10 >= total * 7);
}

TEST_CASE("returned waypoint sequences are well-formed") {
    const GridMap m = oracle::random_map(20, 20, 0.3, 246);
    const VisGraph svg = build_svg(m);
    const EdgeHierarchy h = build_hierarchy(svg);
    const Reachability reach(m);
    anyangle::SplitMix64 rng(1);
    for (int i = 0; i < 40; ++i) {
        Vertex s, t;
        if (!sample_reachable_pair(m, reach, rng, s, t)) break;
        const PathResult r = query_enlsvg(svg, h, s, t);
        REQUIRE(r.found);
        REQUIRE(r.waypoints.front() == s);
        REQUIRE(r.waypoints.back() == t);
        double len = 0.0;
        for (std::size_t k = 0; k + 1 < r.waypoints.size(); ++k) {
            len += euclid(r.waypoints[k], r.waypoints[k + 1]);
        }
        CHECK(r.length == Catch::Approx(len).epsilon(1e-9));
    }
}

TEST_CASE("audit rejects corrupted paths") {
    const GridMap m = oracle::make_map(6, 6, {{2, 2}});
    CHECK(audit_path(m, {{0, 0}, {5, 0}}));
    // A bend with no wrapping obstacle.
    CHECK_FALSE(audit_path(m, {{0, 0}, {1, 3}, {5, 0}}));
    // A segment through the tile.
    CHECK_FALSE(audit_path(m, {{1, 1}, {4, 4}}));
    // Degenerate repeats.
    CHECK_FALSE(audit_path(m, {{0, 0}, {0, 0}, {1, 1}}));
    // Trivial paths pass.
    CHECK(audit_path(m, {{0, 0}}));
    CHECK(audit_path(m, {}));
}

TEST_CASE("marking on the single-tile map stays within the wrap cycle") {
    const GridMap m = oracle::make_map(4, 4, {{1, 1}});
    const VisGraph svg = build_svg(m);
    const EdgeHierarchy h = build_hierarchy(svg);
    const QueryEndpoints q = insert_endpoints(svg, {0, 0}, {3, 3});
    MarkState marks;
    marks.begin(svg.edge_count(), h.skip_edges.size());
    const std::size_t from_s = mark_edges(svg, h, q, true, marks);
    const std::size_t from_t = mark_edges(svg, h, q, false, marks);
    // All four edges are level W; marking walks W chains only as far as the
    // nearest skip vertex, so it never round-trips the whole square.
    std::size_t marked = 0;
    for (std::uint32_t e = 0; e < svg.edge_count(); ++e) marked += marks.marked(e);
    CHECK(from_s + from_t >= marked);
    CHECK(marked >= 2);
    CHECK(marked <= 4);
}

TEST_CASE("interleaved queries on one shared graph match serial execution") {
    const GridMap m = oracle::random_map(24, 24, 0.3, 5151);
    const VisGraph svg = build_svg(m);
    const EdgeHierarchy h = build_hierarchy(svg);
    const Reachability reach(m);

    anyangle::SplitMix64 rng(9);
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (int i = 0; i < 64; ++i) {
        Vertex s, t;
        if (sample_reachable_pair(m, reach, rng, s, t)) pairs.push_back({s, t});
    }
    REQUIRE(pairs.size() == 64);

    std::vector<double> serial;
    for (const auto& [s, t] : pairs) serial.push_back(query_enlsvg(svg, h, s, t).length);

    std::vector<double> threaded(pairs.size(), -1.0);
    std::vector<std::thread> workers;
    for (int w = 0; w < 4; ++w) {
        workers.emplace_back([&, w] {
            MarkState marks;  // private per worker
            for (std::size_t i = w; i < pairs.size(); i += 4) {
                threaded[i] = query_enlsvg(svg, h, pairs[i].first, pairs[i].second, &marks).length;
            }
        });
    }
    for (auto& t : workers) t.join();
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        CHECK(threaded[i] == Catch::Approx(serial[i]).epsilon(1e-12));
    }
}
