#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "anyangle/fraction.hpp"
#include "anyangle/grid.hpp"

namespace anyangle {

/// One horizontal interval of a line-of-sight scan: all points on grid line
/// `y` between xl and xr visible from the scan source. `dir` is the row-step
/// direction away from the source; the open flags record whether the exact
/// endpoint is part of the visible set.
struct ScanInterval {
    int y = 0;
    Fraction xl, xr;
    bool closed_l = true;
    bool closed_r = true;
    std::int8_t dir = 1;
};

struct ScanVisible {
    Vertex v;
    bool taut_from_source = false;

    friend bool operator==(ScanVisible a, ScanVisible b) {
        return a.v == b.v && a.taut_from_source == b.taut_from_source;
    }
    friend bool operator<(ScanVisible a, ScanVisible b) { return a.v < b.v; }
};

struct ScanStats {
    std::size_t intervals = 0;
};

struct ScanResult {
    Vertex source;
    std::vector<ScanVisible> visible;
    ScanStats stats;
};

namespace detail {

/// Interval DFS shared by the all-direction and taut-direction scans.
///
/// Every interval pushed is entirely visible from the source. Projection to
/// the next grid line clips the image cone against the blocked-tile runs of
/// the row being crossed; a boundary ray that passes exactly through a grid
/// vertex continues only if the squeeze there is legal and the vertex is not
/// a convex corner (a corner is a graph vertex and occludes everything
/// collinear behind it, which is the collinear-pruning policy applied at
/// scan time).
class Scanner {
public:
    Scanner(const GridMap& map, Vertex source, std::vector<ScanInterval>* capture)
        : map_(map), src_(source), capture_(capture) {}

    ScanResult run() {
        while (!stack_.empty()) {
            const ScanInterval iv = stack_.back();
            stack_.pop_back();
            ++result_.stats.intervals;
            if (capture_) capture_->push_back(iv);
            report_vertices(iv);
            project(iv);
        }
        result_.source = src_;
        std::sort(result_.visible.begin(), result_.visible.end());
        result_.visible.erase(std::unique(result_.visible.begin(), result_.visible.end()),
                              result_.visible.end());
        return result_;
    }

    std::vector<ScanInterval> take_stack() { return std::move(stack_); }
    void project_only(const ScanInterval& iv) { project(iv); }

    /// Walks the source row in one direction, stopping at the first convex
    /// corner (which it reports) or at a squeeze where both flanking tiles
    /// are blocked.
    void ray_walk(int sgn) {
        int x = src_.x;
        for (;;) {
            const int tx = sgn > 0 ? x : x - 1;
            if (map_.blocked(tx, src_.y) && map_.blocked(tx, src_.y - 1)) return;
            x += sgn;
            if (x < 0 || x > map_.width()) return;
            if (map_.is_convex_corner(x, src_.y)) {
                report(x, src_.y);
                return;
            }
        }
    }

    /// Seeds the cone one row above (dir=+1) or below (dir=-1) the source.
    /// clip > 0 restricts the seed to x >= source.x, clip < 0 to x <= source.x.
    void seed_cone(int dir, int clip) {
        const int row = dir > 0 ? src_.y : src_.y - 1;
        if (row < 0 || row >= map_.height()) return;
        int lo = map_.blocked(src_.x - 1, row) ? src_.x : map_.free_run_left(row, src_.x);
        int hi = map_.blocked(src_.x, row) ? src_.x : map_.free_run_right(row, src_.x);
        if (clip > 0) lo = std::max(lo, src_.x);
        if (clip < 0) hi = std::min(hi, src_.x);
        if (lo > hi) return;
        if (lo == hi && map_.blocked(lo - 1, row) && map_.blocked(lo, row)) return;
        stack_.push_back(ScanInterval{src_.y + dir, Fraction(lo), Fraction(hi), true, true,
                                      static_cast<std::int8_t>(dir)});
    }

private:
    struct Shadow {
        Fraction lo, hi;
        bool lo_flag;  // the boundary point at lo stays visible
        bool hi_flag;
    };

    void report(int x, int y) {
        if (x == src_.x && y == src_.y) return;
        if (!map_.is_convex_corner(x, y)) return;
        const Vertex v{x, y};
        result_.visible.push_back(ScanVisible{v, taut_region_contains(map_, src_, v)});
    }

    /// Whether the boundary ray may continue past the grid vertex (c, y):
    /// the diagonal squeeze there must be legal and the vertex must not be a
    /// convex corner.
    bool ray_survives(std::int64_t c64, int y, int row_ahead, int row_behind) const {
        const int c = static_cast<int>(c64);
        if (map_.is_convex_corner(c, y)) return false;
        if (c > src_.x) return !(map_.blocked(c, row_behind) && map_.blocked(c - 1, row_ahead));
        if (c < src_.x) return !(map_.blocked(c - 1, row_behind) && map_.blocked(c, row_ahead));
        return !(map_.blocked(c - 1, row_ahead) && map_.blocked(c, row_ahead));
    }

    /// Visibility of the boundary point (v, y + dir) whose cut happens at an
    /// integer column of the crossed row: the segment from the source still
    /// crosses line y somewhere, and if that crossing is a grid vertex the
    /// usual pass-through rules apply there.
    bool integer_boundary_flag(std::int64_t v, int y, std::int64_t k, int row_ahead,
                               int row_behind) const {
        const Fraction bp(v * k + src_.x, k + 1);  // sx + (v - sx) * k / (k + 1)
        if (!bp.is_integer()) return true;
        return ray_survives(bp.num, y, row_ahead, row_behind);
    }

    /// Reports grid vertices covered by the interval. Interior corners can
    /// only arise from tiles in the row ahead (the interval invariant keeps
    /// the row behind free inside the open interval), so candidates are the
    /// interval endpoints plus run boundaries of the row ahead.
    void report_vertices(const ScanInterval& iv) {
        const int y = iv.y;
        const int row_ahead = iv.dir > 0 ? y : y - 1;
        std::int64_t first = iv.xl.ceil();
        if (!iv.closed_l && iv.xl.is_integer()) ++first;
        std::int64_t last = iv.xr.floor();
        if (!iv.closed_r && iv.xr.is_integer()) --last;
        if (first > last) return;
        report(static_cast<int>(first), y);
        if (last != first) report(static_cast<int>(last), y);
        if (row_ahead >= 0 && row_ahead < map_.height()) {
            int pos = static_cast<int>(first);
            while (pos < last && pos < map_.width()) {
                const int nxt = map_.blocked(pos, row_ahead)
                                    ? map_.blocked_run_right(row_ahead, pos)
                                    : map_.free_run_right(row_ahead, pos);
                if (nxt >= last) break;
                report(nxt, y);
                pos = nxt;
            }
        }
    }

    /// Projects the interval onto the next line away from the source,
    /// clipping against the blocked runs of the crossed row, and pushes the
    /// surviving pieces.
    void project(const ScanInterval& iv) {
        const int y = iv.y;
        const int dir = iv.dir;
        const int row_ahead = dir > 0 ? y : y - 1;
        const int row_behind = dir > 0 ? y - 1 : y;
        if (row_ahead < 0 || row_ahead >= map_.height()) return;
        const std::int64_t k = std::abs(y - src_.y);
        Fraction pl = project_step(iv.xl, src_.x, k);
        Fraction pr = project_step(iv.xr, src_.x, k);
        bool fl = iv.closed_l &&
                  (!iv.xl.is_integer() || ray_survives(iv.xl.num, y, row_ahead, row_behind));
        bool fr = iv.closed_r &&
                  (!iv.xr.is_integer() || ray_survives(iv.xr.num, y, row_ahead, row_behind));
        if (pl < Fraction(0)) {
            pl = Fraction(0);
            fl = integer_boundary_flag(0, y, k, row_ahead, row_behind);
        }
        if (pr > Fraction(map_.width())) {
            pr = Fraction(map_.width());
            fr = integer_boundary_flag(map_.width(), y, k, row_ahead, row_behind);
        }
        if (pr < pl) return;

        // Blocked runs of the crossed row shadow parts of the cone.
        const std::int64_t wlo64 = min(iv.xl, pl).floor();
        const std::int64_t whi64 = max(iv.xr, pr).ceil();
        const int wlo = static_cast<int>(std::max<std::int64_t>(wlo64, 0));
        const int whi = static_cast<int>(std::min<std::int64_t>(whi64, map_.width()));
        shadows_.clear();
        int pos = wlo;
        while (pos < whi) {
            if (!map_.blocked(pos, row_ahead)) {
                pos = map_.free_run_right(row_ahead, pos);
                continue;
            }
            const int run_end = map_.blocked_run_right(row_ahead, pos);
            Shadow s;
            if (pos >= src_.x) {
                s.lo = Fraction(pos);
                s.lo_flag = integer_boundary_flag(pos, y, k, row_ahead, row_behind);
            } else {
                s.lo = project_step(Fraction(pos), src_.x, k);
                s.lo_flag = ray_survives(pos, y, row_ahead, row_behind);
            }
            if (run_end <= src_.x) {
                s.hi = Fraction(run_end);
                s.hi_flag = integer_boundary_flag(run_end, y, k, row_ahead, row_behind);
            } else {
                s.hi = project_step(Fraction(run_end), src_.x, k);
                s.hi_flag = ray_survives(run_end, y, row_ahead, row_behind);
            }
            shadows_.push_back(s);
            pos = run_end;
        }

        // Subtract the shadows from [pl, pr].
        Fraction cur = pl;
        bool curf = fl;
        bool done = false;
        for (const Shadow& s : shadows_) {
            if (s.hi < cur) continue;
            if (s.hi == cur) {
                curf = curf && s.hi_flag;
                continue;
            }
            if (s.lo > pr) break;
            if (cur < s.lo || (cur == s.lo && curf && s.lo_flag)) {
                const Fraction to = min(s.lo, pr);
                const bool tof = (s.lo < pr) ? s.lo_flag : (s.lo_flag && fr);
                emit(cur, curf, to, tof, y + dir, dir);
            }
            cur = s.hi;
            curf = s.hi_flag;
            if (cur > pr) {
                done = true;
                break;
            }
        }
        if (!done && cur <= pr) {
            emit(cur, curf, pr, (cur == pr) ? (curf && fr) : fr, y + dir, dir);
        }
    }

    void emit(const Fraction& from, bool ffrom, const Fraction& to, bool fto, int y, int dir) {
        if (from > to) return;
        if (from == to && !(ffrom && fto)) return;
        stack_.push_back(
            ScanInterval{y, from, to, ffrom, fto, static_cast<std::int8_t>(dir)});
    }

    const GridMap& map_;
    Vertex src_;
    std::vector<ScanInterval>* capture_;
    std::vector<ScanInterval> stack_;
    std::vector<Shadow> shadows_;
    ScanResult result_;
};

}  // namespace detail

/// Enumerates every convex corner visible from `source`, by interval DFS
/// over both vertical cones plus two horizontal ray walks on the source
/// row. Vertices hidden exactly behind a nearer collinear corner are not
/// reported: each corner acts as an epsilon-size obstruction.
inline ScanResult scan_all_directions(const GridMap& map, Vertex source,
                                      std::vector<ScanInterval>* capture = nullptr) {
    detail::Scanner s(map, source, capture);
    s.ray_walk(+1);
    s.ray_walk(-1);
    s.seed_cone(+1, 0);
    s.seed_cone(-1, 0);
    return s.run();
}

/// Successor intervals of `iv` under projection through `source`: the
/// maximal visible sub-intervals of the projection onto the next row away
/// from the source.
inline std::vector<ScanInterval> interval_successors(const GridMap& map,
                                                     const ScanInterval& iv, Vertex source) {
    detail::Scanner s(map, source, nullptr);
    s.project_only(iv);
    return s.take_stack();
}

/// Like scan_all_directions, but seeds only the taut regions of the source's
/// obstacle configuration, so the result is the all-direction visible set
/// intersected with the source's taut region.
inline ScanResult scan_taut_directions(const GridMap& map, Vertex source,
                                       std::vector<ScanInterval>* capture = nullptr) {
    const ObstacleConfig cfg = map.config_at(source.x, source.y);
    if (!cfg.convex()) {
        throw std::invalid_argument("scan_taut_directions: source is not a convex corner");
    }
    int up_clip = 0;
    int down_clip = 0;
    int contributing = 0;
    if (cfg.ne_convex()) {
        down_clip = +1;
        ++contributing;
    }
    if (cfg.nw_convex()) {
        down_clip = -1;
        ++contributing;
    }
    if (cfg.sw_convex()) {
        up_clip = -1;
        ++contributing;
    }
    if (cfg.se_convex()) {
        up_clip = +1;
        ++contributing;
    }
    if (contributing == 2) {
        // Two diagonally-opposite wrapped tiles: the union of their taut
        // regions covers every direction.
        up_clip = 0;
        down_clip = 0;
    }
    detail::Scanner s(map, source, capture);
    s.ray_walk(+1);
    s.ray_walk(-1);
    s.seed_cone(+1, up_clip);
    s.seed_cone(-1, down_clip);
    return s.run();
}

}  // namespace anyangle
