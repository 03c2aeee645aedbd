#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "anyangle/grid.hpp"

namespace anyangle {

/// SplitMix64; the fixed generator behind every map family so corpora
/// reproduce bit-identically across platforms.
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed = 0) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return next() % n; }
};

enum class GenKind : std::uint8_t { uniform, cave, upscale, tile };

struct GenSpec {
    GenKind kind = GenKind::uniform;
    int width = 0;
    int height = 0;
    double blocked_ratio = 0.0;
    std::uint64_t seed = 0;
    int ca_iterations = 0;
    int ca_birth = 5;    // free tile becomes blocked at >= this many blocked neighbours
    int ca_survive = 5;  // blocked tile stays blocked at >= this many
    int scale = 1;       // upscale factor
    int tiles_x = 1;     // tiling grid
    int tiles_y = 1;
};

namespace detail {

inline std::vector<std::uint8_t> ca_step(int w, int h, const std::vector<std::uint8_t>& cur,
                                         int birth, int survive) {
    std::vector<std::uint8_t> out(cur.size());
    auto at = [&](int x, int y) -> int {
        if (x < 0 || y < 0 || x >= w || y >= h) return 1;  // border counts blocked
        return cur[static_cast<std::size_t>(y) * w + x];
    };
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            int nb = 0;
            for (int dy = -1; dy <= 1; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    if (dx == 0 && dy == 0) continue;
                    nb += at(x + dx, y + dy);
                }
            }
            const bool blocked = at(x, y) != 0;
            out[static_cast<std::size_t>(y) * w + x] =
                (nb >= (blocked ? survive : birth)) ? 1 : 0;
        }
    }
    return out;
}

inline std::vector<std::uint8_t> uniform_raster(const GenSpec& spec) {
    SplitMix64 rng(spec.seed);
    std::vector<std::uint8_t> cells(static_cast<std::size_t>(spec.width) * spec.height);
    for (auto& c : cells) c = rng.unit() < spec.blocked_ratio ? 1 : 0;
    return cells;
}

}  // namespace detail

/// Each tile independently blocked with probability blocked_ratio.
inline GridMap gen_uniform(const GenSpec& spec) {
    if (spec.blocked_ratio < 0.0 || spec.blocked_ratio > 1.0) {
        throw std::invalid_argument("gen_uniform: blocked_ratio outside [0, 1]");
    }
    return GridMap(spec.width, spec.height, detail::uniform_raster(spec));
}

/// Uniform seeding followed by cellular-automata smoothing over the
/// 8-neighbourhood; out-of-bounds neighbours count blocked.
inline GridMap gen_cave(const GenSpec& spec) {
    if (spec.ca_iterations < 0) throw std::invalid_argument("gen_cave: negative iterations");
    std::vector<std::uint8_t> cells = detail::uniform_raster(spec);
    for (int i = 0; i < spec.ca_iterations; ++i) {
        cells = detail::ca_step(spec.width, spec.height, cells, spec.ca_birth, spec.ca_survive);
    }
    return GridMap(spec.width, spec.height, std::move(cells));
}

/// Nearest-neighbour blowup by `scale`, then CA smoothing passes.
inline GridMap gen_upscale(const GenSpec& spec, const GridMap& base) {
    if (spec.scale < 1) throw std::invalid_argument("gen_upscale: scale must be >= 1");
    const int w = base.width() * spec.scale;
    const int h = base.height() * spec.scale;
    std::vector<std::uint8_t> cells(static_cast<std::size_t>(w) * h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            cells[static_cast<std::size_t>(y) * w + x] =
                base.blocked(x / spec.scale, y / spec.scale) ? 1 : 0;
        }
    }
    for (int i = 0; i < spec.ca_iterations; ++i) {
        cells = detail::ca_step(w, h, cells, spec.ca_birth, spec.ca_survive);
    }
    return GridMap(w, h, std::move(cells));
}

/// Repeats the base map in a tiles_x by tiles_y grid with a one-tile-wide
/// unblocked seam between copies, so cross-copy paths exist.
inline GridMap gen_tile(const GenSpec& spec, const GridMap& base) {
    if (spec.tiles_x < 1 || spec.tiles_y < 1) {
        throw std::invalid_argument("gen_tile: tile counts must be >= 1");
    }
    const int w = base.width() * spec.tiles_x + (spec.tiles_x - 1);
    const int h = base.height() * spec.tiles_y + (spec.tiles_y - 1);
    std::vector<std::uint8_t> cells(static_cast<std::size_t>(w) * h, 0);
    for (int ty = 0; ty < spec.tiles_y; ++ty) {
        for (int tx = 0; tx < spec.tiles_x; ++tx) {
            const int ox = tx * (base.width() + 1);
            const int oy = ty * (base.height() + 1);
            for (int y = 0; y < base.height(); ++y) {
                for (int x = 0; x < base.width(); ++x) {
                    if (base.blocked(x, y)) {
                        cells[static_cast<std::size_t>(oy + y) * w + (ox + x)] = 1;
                    }
                }
            }
        }
    }
    return GridMap(w, h, std::move(cells));
}

inline const char* gen_kind_name(GenKind k) {
    switch (k) {
        case GenKind::uniform: return "uniform";
        case GenKind::cave: return "cave";
        case GenKind::upscale: return "upscale";
        case GenKind::tile: return "tile";
    }
    return "?";
}

/// Plain-text key=value sidecar describing how a map was generated.
inline std::string write_genspec(const GenSpec& s) {
    std::string out;
    auto kv = [&out](const std::string& k, const std::string& v) {
        out += k;
        out += '=';
        out += v;
        out += '\n';
    };
    kv("kind", gen_kind_name(s.kind));
    kv("width", std::to_string(s.width));
    kv("height", std::to_string(s.height));
    kv("blocked_ratio", std::to_string(s.blocked_ratio));
    kv("seed", std::to_string(s.seed));
    kv("ca_iterations", std::to_string(s.ca_iterations));
    kv("ca_birth", std::to_string(s.ca_birth));
    kv("ca_survive", std::to_string(s.ca_survive));
    kv("scale", std::to_string(s.scale));
    kv("tiles_x", std::to_string(s.tiles_x));
    kv("tiles_y", std::to_string(s.tiles_y));
    kv("rng", "splitmix64");
    return out;
}

}  // namespace anyangle
