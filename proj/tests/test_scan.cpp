#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>

#include "anyangle/scan.hpp"
#include "oracles.hpp"

using namespace anyangle;

namespace {

// Independent restatement of the scan's contract: every convex corner with
// oracle line of sight, minus corners hidden exactly behind a nearer
// collinear corner (each vertex is an epsilon-size obstruction).
std::vector<Vertex> check_visible_set(const GridMap& map, Vertex src) {
    auto corner_between = [&](Vertex u, Vertex v) {
        const int dx = v.x - u.x;
        const int dy = v.y - u.y;
        const int g = std::gcd(dx < 0 ? -dx : dx, dy < 0 ? -dy : dy);
        if (g <= 1) return false;
        for (int i = 1; i < g; ++i) {
            if (map.is_convex_corner(u.x + i * dx / g, u.y + i * dy / g)) return true;
        }
        return false;
    };
    std::vector<Vertex> out;
    for (const Vertex& c : oracle::corners_of(map)) {
        if (c == src) continue;
        if (!oracle::los(map, src, c)) continue;
        if (corner_between(src, c)) continue;
        out.push_back(c);
    }
    return out;
}

std::vector<Vertex> scan_set(const ScanResult& res) {
    std::vector<Vertex> out;
    for (const auto& sv : res.visible) out.push_back(sv.v);
    return out;
}

}  // namespace

TEST_CASE("interval successors: projection through the source") {
    SECTION("open cone widens by the projection formula") {
        const GridMap empty(8, 8);
        ScanInterval iv{3, Fraction(0), Fraction(4), true, true, +1};
        const auto succ = interval_successors(empty, iv, Vertex{2, 2});
        REQUIRE(succ.size() == 1);
        // x' = 2 + (x - 2) * 2 / 1, clamped to the map.
        CHECK(succ[0].y == 4);
        CHECK(succ[0].xl == Fraction(0));
        CHECK(succ[0].xr == Fraction(6));
    }
    SECTION("fully obstructed next row yields nothing") {
        const GridMap m =
            oracle::make_map(6, 6, {{0, 3}, {1, 3}, {2, 3}, {3, 3}, {4, 3}, {5, 3}});
        ScanInterval iv{3, Fraction(1), Fraction(5), true, true, +1};
        CHECK(interval_successors(m, iv, Vertex{3, 2}).empty());
    }
    SECTION("a blocked tile splits the projection at its corners") {
        const GridMap m = oracle::make_map(8, 8, {{3, 4}});
        ScanInterval iv{4, Fraction(1), Fraction(6), true, true, +1};
        const auto succ = interval_successors(m, iv, Vertex{3, 2});
        REQUIRE(succ.size() == 2);
        auto a = succ[0], b = succ[1];
        if (b.xl < a.xl) std::swap(a, b);
        CHECK(a.y == 5);
        CHECK(b.y == 5);
        // The left piece ends at the tile's near corner; the right piece
        // starts at the projection of the far corner: 3 + (4 - 3) * 3/2.
        CHECK(a.xr == Fraction(3));
        CHECK(b.xl == Fraction(9, 2));
    }
}

TEST_CASE("all-direction scan equals the pairwise check set") {
    SECTION("empty map has no corners to see") {
        const GridMap empty(8, 8);
        CHECK(scan_all_directions(empty, {3, 3}).visible.empty());
        CHECK(scan_all_directions(empty, {0, 0}).visible.empty());
    }
    SECTION("single blocked tile, sources all around") {
        const GridMap one = oracle::make_map(5, 5, {{2, 2}});
        for (int y = 0; y <= 5; ++y) {
            for (int x = 0; x <= 5; ++x) {
                const Vertex src{x, y};
                const auto got = scan_set(scan_all_directions(one, src));
                const auto want = check_visible_set(one, src);
                CAPTURE(x, y);
                CHECK(got == want);
            }
        }
    }
    SECTION("random maps, every vertex as source") {
        const double densities[] = {0.1, 0.25, 0.4};
        for (int seed = 1; seed <= 3; ++seed) {
            for (double d : densities) {
                const GridMap m = oracle::random_map(12, 12, d, 555 * seed + 11);
                for (int y = 0; y <= 12; ++y) {
                    for (int x = 0; x <= 12; ++x) {
                        const Vertex src{x, y};
                        const auto got = scan_set(scan_all_directions(m, src));
                        const auto want = check_visible_set(m, src);
                        if (got != want) {
                            CAPTURE(seed, d, x, y);
                            REQUIRE(got == want);
                        }
                    }
                }
            }
        }
    }
    SECTION("larger random maps, sampled sources") {
        anyangle::SplitMix64 rng(2024);
        for (double d : {0.08, 0.2, 0.35}) {
            const GridMap m = oracle::random_map(48, 48, d, rng.next());
            for (int i = 0; i < 40; ++i) {
                const Vertex src{static_cast<int>(rng.below(49)),
                                 static_cast<int>(rng.below(49))};
                const auto got = scan_set(scan_all_directions(m, src));
                const auto want = check_visible_set(m, src);
                if (got != want) {
                    CAPTURE(d, src.x, src.y);
                    REQUIRE(got == want);
                }
            }
        }
    }
}

TEST_CASE("scan intervals are entirely visible from the source") {
    anyangle::SplitMix64 rng(77);
    for (double d : {0.15, 0.3}) {
        const GridMap m = oracle::random_map(16, 16, d, rng.next());
        for (int i = 0; i < 12; ++i) {
            const Vertex src{static_cast<int>(rng.below(17)), static_cast<int>(rng.below(17))};
            std::vector<ScanInterval> captured;
            scan_all_directions(m, src, &captured);
            for (const auto& iv : captured) {
                // Probe closed endpoints and the midpoint with the exact
                // scaled-lattice oracle.
                auto probe = [&](std::int64_t num, std::int64_t den) {
                    const oracle::Pt p{src.x * den, src.y * den};
                    const oracle::Pt q{num, static_cast<std::int64_t>(iv.y) * den};
                    const bool ok = oracle::segment_legal_scaled(m, p, q, den);
                    if (!ok) {
                        CAPTURE(d, src.x, src.y, iv.y, num, den);
                        REQUIRE(ok);
                    }
                };
                if (iv.closed_l) probe(iv.xl.num, iv.xl.den);
                if (iv.closed_r) probe(iv.xr.num, iv.xr.den);
                const Fraction mid(iv.xl.num * iv.xr.den + iv.xr.num * iv.xl.den,
                                   2 * iv.xl.den * iv.xr.den);
                if (iv.xl < mid && mid < iv.xr) probe(mid.num, mid.den);
            }
        }
    }
}

TEST_CASE("interval count stays bounded") {
    const GridMap m = oracle::random_map(32, 32, 0.3, 4242);
    const std::size_t corners = oracle::corners_of(m).size();
    for (const Vertex src : {Vertex{0, 0}, Vertex{16, 16}, Vertex{32, 5}}) {
        const ScanResult res = scan_all_directions(m, src);
        CHECK(res.stats.intervals <= 4 * (corners + 8) * 33);
    }
}

TEST_CASE("taut-direction scan") {
    SECTION("requires a convex corner source") {
        const GridMap empty(4, 4);
        CHECK_THROWS_AS(scan_taut_directions(empty, {2, 2}), std::invalid_argument);
    }
    SECTION("equals the all-direction scan filtered by the taut region") {
        const double densities[] = {0.15, 0.3, 0.45};
        for (int seed = 1; seed <= 3; ++seed) {
            for (double d : densities) {
                const GridMap m = oracle::random_map(14, 14, d, 881 * seed);
                for (const Vertex& src : oracle::corners_of(m)) {
                    auto want = scan_set(scan_all_directions(m, src));
                    want.erase(std::remove_if(want.begin(), want.end(),
                                              [&](Vertex v) {
                                                  return !taut_region_contains(m, src, v);
                                              }),
                               want.end());
                    const auto got = scan_set(scan_taut_directions(m, src));
                    if (got != want) {
                        CAPTURE(seed, d, src.x, src.y);
                        REQUIRE(got == want);
                    }
                }
            }
        }
    }
    SECTION("result is always a subset of the all-direction result") {
        const GridMap m = oracle::random_map(20, 20, 0.25, 999);
        for (const Vertex& src : oracle::corners_of(m)) {
            const auto all = scan_set(scan_all_directions(m, src));
            const auto taut = scan_set(scan_taut_directions(m, src));
            CHECK(std::includes(all.begin(), all.end(), taut.begin(), taut.end(),
                                [](Vertex a, Vertex b) { return a < b; }));
        }
    }
    SECTION("reported flags match taut_region_contains") {
        const GridMap m = oracle::random_map(10, 10, 0.3, 51);
        for (int y = 0; y <= 10; ++y) {
            for (int x = 0; x <= 10; ++x) {
                for (const auto& sv : scan_all_directions(m, {x, y}).visible) {
                    CHECK(sv.taut_from_source == taut_region_contains(m, {x, y}, sv.v));
                }
            }
        }
    }
}
