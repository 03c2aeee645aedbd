#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

namespace anyangle {

/// A vertex of the grid. Tiles span unit squares; tile (c, r) has corners
/// (c, r), (c+1, r), (c, r+1), (c+1, r+1), so the vertex space of a
/// width x height map is (width+1) x (height+1).
struct Vertex {
    int x = 0;
    int y = 0;

    friend bool operator==(Vertex a, Vertex b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(Vertex a, Vertex b) { return !(a == b); }
    /// Row-major order (y, then x); vertex ids are assigned in this order.
    friend bool operator<(Vertex a, Vertex b) {
        return a.y != b.y ? a.y < b.y : a.x < b.x;
    }
};

/// Blocked status of the four tiles incident to a vertex. Directions use
/// +x = east, +y = north; the NE tile of vertex (x, y) is tile (x, y).
struct ObstacleConfig {
    bool ne = false;
    bool nw = false;
    bool sw = false;
    bool se = false;

    /// A blocked tile whose two side-adjacent tiles at the vertex are free
    /// makes the vertex a convex corner of that tile.
    bool ne_convex() const { return ne && !nw && !se; }
    bool nw_convex() const { return nw && !ne && !sw; }
    bool sw_convex() const { return sw && !se && !nw; }
    bool se_convex() const { return se && !sw && !ne; }
    bool convex() const { return ne_convex() || nw_convex() || sw_convex() || se_convex(); }
};

/// Horizontal run tables, one entry per vertex column per tile row.
/// free_right[row][x] is the first vertex column >= x at which the free run
/// of tiles starting at tile (x, row) ends; blocked_right is the analogue
/// for blocked runs, and free_left scans leftward. Scans use these to jump
/// between obstacle boundaries instead of stepping tile by tile.
struct Extents {
    int width = 0;
    int height = 0;
    std::vector<std::int32_t> free_right;
    std::vector<std::int32_t> free_left;
    std::vector<std::int32_t> blocked_right;

    friend bool operator==(const Extents& a, const Extents& b) {
        return a.width == b.width && a.height == b.height && a.free_right == b.free_right &&
               a.free_left == b.free_left && a.blocked_right == b.blocked_right;
    }
};

/// Immutable blocked-tile raster plus derived per-vertex run tables.
/// Out-of-bounds tiles count as blocked, so the map border never produces
/// convex corners and every path stays inside the grid.
class GridMap {
public:
    GridMap() = default;

    GridMap(int width, int height, std::vector<std::uint8_t> blocked)
        : width_(width), height_(height), blocked_(std::move(blocked)) {
        assert(static_cast<std::size_t>(width_) * height_ == blocked_.size());
        extents_ = compute_extents(*this);
    }

    GridMap(int width, int height)
        : GridMap(width, height, std::vector<std::uint8_t>(
                                     static_cast<std::size_t>(width) * height, 0)) {}

    int width() const { return width_; }
    int height() const { return height_; }

    bool blocked(int tx, int ty) const {
        if (tx < 0 || ty < 0 || tx >= width_ || ty >= height_) return true;
        return blocked_[static_cast<std::size_t>(ty) * width_ + tx] != 0;
    }

    bool in_vertex_space(Vertex v) const {
        return v.x >= 0 && v.y >= 0 && v.x <= width_ && v.y <= height_;
    }

    ObstacleConfig config_at(int x, int y) const {
        return ObstacleConfig{blocked(x, y), blocked(x - 1, y), blocked(x - 1, y - 1),
                              blocked(x, y - 1)};
    }

    bool is_convex_corner(int x, int y) const { return config_at(x, y).convex(); }
    bool is_convex_corner(Vertex v) const { return is_convex_corner(v.x, v.y); }

    /// True when neither tile flanking the unit step from (x, y) to (x+1, y)
    /// is free on at least one side, i.e. the step along the row is passable.
    bool can_step_right(int x, int y) const {
        return !(blocked(x, y) && blocked(x, y - 1));
    }
    bool can_step_up(int x, int y) const {
        return !(blocked(x, y) && blocked(x - 1, y));
    }

    const Extents& extents() const { return extents_; }

    /// End (exclusive, as a vertex column) of the free tile run starting at
    /// tile (x, row); x itself if that tile is blocked or the row is outside
    /// the map.
    int free_run_right(int row, int x) const {
        if (row < 0 || row >= height_) return x;
        if (x < 0 || x >= width_) return x;
        return extents_.free_right[static_cast<std::size_t>(row) * (width_ + 1) + x];
    }

    /// Start of the free tile run ending at tile (x-1, row); x itself if that
    /// tile is blocked or outside the map.
    int free_run_left(int row, int x) const {
        if (row < 0 || row >= height_) return x;
        if (x < 1 || x > width_) return x;
        return extents_.free_left[static_cast<std::size_t>(row) * (width_ + 1) + x];
    }

    int blocked_run_right(int row, int x) const {
        if (row < 0 || row >= height_) return width_;  // virtual all-blocked row
        if (x < 0) return 0;
        if (x >= width_) return x;
        return extents_.blocked_right[static_cast<std::size_t>(row) * (width_ + 1) + x];
    }

    /// FNV-1a over dimensions and raster; used to tie serialized graphs to
    /// the map they were built from.
    std::uint64_t hash() const {
        std::uint64_t h = 14695981039346656037ull;
        auto mix = [&h](std::uint64_t v) {
            for (int i = 0; i < 8; ++i) {
                h ^= (v >> (8 * i)) & 0xff;
                h *= 1099511628211ull;
            }
        };
        mix(static_cast<std::uint64_t>(width_));
        mix(static_cast<std::uint64_t>(height_));
        for (std::size_t i = 0; i < blocked_.size(); ++i) {
            h ^= blocked_[i];
            h *= 1099511628211ull;
        }
        return h;
    }

    const std::vector<std::uint8_t>& raster() const { return blocked_; }

    friend bool operator==(const GridMap& a, const GridMap& b) {
        return a.width_ == b.width_ && a.height_ == b.height_ && a.blocked_ == b.blocked_;
    }

    static Extents compute_extents(const GridMap& m) {
        Extents e;
        e.width = m.width_;
        e.height = m.height_;
        const int stride = m.width_ + 1;
        e.free_right.assign(static_cast<std::size_t>(stride) * m.height_, 0);
        e.free_left.assign(static_cast<std::size_t>(stride) * m.height_, 0);
        e.blocked_right.assign(static_cast<std::size_t>(stride) * m.height_, 0);
        for (int r = 0; r < m.height_; ++r) {
            auto* fr = &e.free_right[static_cast<std::size_t>(r) * stride];
            auto* fl = &e.free_left[static_cast<std::size_t>(r) * stride];
            auto* br = &e.blocked_right[static_cast<std::size_t>(r) * stride];
            fr[m.width_] = m.width_;
            br[m.width_] = m.width_;
            for (int x = m.width_ - 1; x >= 0; --x) {
                fr[x] = m.blocked(x, r) ? x : fr[x + 1];
                br[x] = m.blocked(x, r) ? br[x + 1] : x;
            }
            fl[0] = 0;
            for (int x = 1; x <= m.width_; ++x) {
                fl[x] = m.blocked(x - 1, r) ? x : fl[x - 1];
            }
        }
        return e;
    }

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> blocked_;
    Extents extents_;
};

inline bool is_blocked(const GridMap& map, int tx, int ty) { return map.blocked(tx, ty); }

inline std::uint64_t sq_dist(Vertex a, Vertex b) {
    const std::int64_t dx = a.x - b.x;
    const std::int64_t dy = a.y - b.y;
    return static_cast<std::uint64_t>(dx * dx + dy * dy);
}

inline double euclid(Vertex a, Vertex b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

/// Line of sight between two grid vertices. The open segment may not cross
/// any blocked tile's interior nor squeeze between two diagonally-adjacent
/// blocked tiles; touching a single blocked tile's corner or sliding along
/// its edge is allowed. Integer-only supercover walk, exact and symmetric.
inline bool line_of_sight(const GridMap& map, Vertex p, Vertex q) {
    if (p == q) return true;
    if (p.y == q.y) {
        const int lo = p.x < q.x ? p.x : q.x;
        const int hi = p.x < q.x ? q.x : p.x;
        for (int x = lo; x < hi; ++x) {
            if (!map.can_step_right(x, p.y)) return false;
        }
        return true;
    }
    if (p.x == q.x) {
        const int lo = p.y < q.y ? p.y : q.y;
        const int hi = p.y < q.y ? q.y : p.y;
        for (int y = lo; y < hi; ++y) {
            if (!map.can_step_up(p.x, y)) return false;
        }
        return true;
    }
    // Orient so the walk moves up-right in logical coordinates; mirror the
    // tile row lookup when the real segment descends.
    if (q.x < p.x) std::swap(p, q);
    const bool flip = q.y < p.y;
    const std::int64_t dx = q.x - p.x;
    const std::int64_t dy = flip ? p.y - q.y : q.y - p.y;
    auto tile = [&](int cx, int cy) {
        return map.blocked(p.x + cx, flip ? p.y - 1 - cy : p.y + cy);
    };
    const int tx = static_cast<int>(dx) - 1;
    const int ty = static_cast<int>(dy) - 1;
    int cx = 0, cy = 0;  // tile offsets from p in logical space
    for (;;) {
        if (tile(cx, cy)) return false;
        if (cx == tx && cy == ty) return true;
        const std::int64_t cr = dx * (cy + 1) - dy * (cx + 1);
        if (cr > 0) {
            ++cx;
        } else if (cr < 0) {
            ++cy;
        } else {
            // Exact pass through the corner (cx+1, cy+1): forbidden iff both
            // tiles diagonal to the crossing are blocked.
            if (tile(cx + 1, cy) && tile(cx, cy + 1)) return false;
            ++cx;
            ++cy;
        }
    }
}

/// Tautness of the bend a-b-c, assuming both segments have line of sight.
/// A heading change is taut only when the turn wraps tightly around a
/// blocked tile at b; the tile to inspect follows from the incoming octant
/// and the turn direction. Collinear with b strictly between a and c is
/// taut; a reversal never is.
inline bool is_taut(const GridMap& map, Vertex a, Vertex b, Vertex c) {
    assert(a != b && b != c);
    const ObstacleConfig cfg = map.config_at(b.x, b.y);
    const std::int64_t dx = b.x - a.x;
    const std::int64_t dy = b.y - a.y;
    const std::int64_t ex = c.x - b.x;
    const std::int64_t ey = c.y - b.y;
    const std::int64_t cross = dx * ey - dy * ex;

    if (dx > 0) {
        if (dy > 0) {  // moving NE
            if (ex < 0 || ey < 0) return false;
            if (cross > 0) return cfg.nw;
            if (cross < 0) return cfg.se;
            return true;
        }
        if (dy < 0) {  // moving SE
            if (ex < 0 || ey > 0) return false;
            if (cross > 0) return cfg.ne;
            if (cross < 0) return cfg.sw;
            return true;
        }
        // moving E
        if (ex < 0) return false;
        if (ey > 0) return cfg.nw;
        if (ey < 0) return cfg.sw;
        return true;
    }
    if (dx < 0) {
        if (dy > 0) {  // moving NW
            if (ex > 0 || ey < 0) return false;
            if (cross > 0) return cfg.sw;
            if (cross < 0) return cfg.ne;
            return true;
        }
        if (dy < 0) {  // moving SW
            if (ex > 0 || ey > 0) return false;
            if (cross > 0) return cfg.se;
            if (cross < 0) return cfg.nw;
            return true;
        }
        // moving W
        if (ex > 0) return false;
        if (ey > 0) return cfg.ne;
        if (ey < 0) return cfg.se;
        return true;
    }
    if (dy > 0) {  // moving N
        if (ey < 0) return false;
        if (ex > 0) return cfg.se;
        if (ex < 0) return cfg.sw;
        return true;
    }
    // moving S
    if (ey > 0) return false;
    if (ex > 0) return cfg.ne;
    if (ex < 0) return cfg.nw;
    return true;
}

/// Whether the edge u-v admits a taut exit from v, decided from v's
/// obstacle configuration and the octant u lies in. For each blocked tile
/// contributing a convex corner at v, the taut region is everything except
/// the open quadrant diagonally opposite that tile; a query endpoint with
/// no contributing tile accepts every direction.
inline bool taut_region_contains(const GridMap& map, Vertex v, Vertex u) {
    assert(u != v);
    const ObstacleConfig cfg = map.config_at(v.x, v.y);
    const bool corner = cfg.convex();
    if (!corner) return true;
    if (cfg.ne_convex() && !(u.x < v.x && u.y < v.y)) return true;
    if (cfg.nw_convex() && !(u.x > v.x && u.y < v.y)) return true;
    if (cfg.sw_convex() && !(u.x > v.x && u.y > v.y)) return true;
    if (cfg.se_convex() && !(u.x < v.x && u.y > v.y)) return true;
    return false;
}

}  // namespace anyangle
