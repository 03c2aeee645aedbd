#pragma once

#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "anyangle/grid.hpp"

namespace anyangle {

struct MapParseError : std::runtime_error {
    int line;
    MapParseError(int line_no, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
};

namespace detail {

/// Splits into lines, tolerating LF and CRLF.
inline std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            if (start < text.size()) lines.push_back(text.substr(start));
            break;
        }
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        start = end + 1;
    }
    return lines;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

inline long parse_long(std::string_view s, int line_no, const char* what) {
    long v = 0;
    bool any = false;
    bool neg = false;
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
        neg = s[i] == '-';
        ++i;
    }
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw MapParseError(line_no, std::string("bad ") + what);
        v = v * 10 + (s[i] - '0');
        any = true;
    }
    if (!any) throw MapParseError(line_no, std::string("bad ") + what);
    return neg ? -v : v;
}

}  // namespace detail

/// Parses the standard grid benchmark map format:
///   type octile / height H / width W / map / H rows of W characters.
/// '.' and 'G' are traversable; '@', 'O', 'T', 'S', 'W' are blocked. Any
/// other character is an error (reported with its line number).
inline GridMap parse_map(std::string_view text) {
    const auto lines = detail::split_lines(text);
    int width = -1, height = -1;
    std::size_t i = 0;
    bool saw_type = false;
    for (; i < lines.size(); ++i) {
        const auto fields = detail::split_fields(lines[i]);
        if (fields.empty()) continue;
        const int line_no = static_cast<int>(i) + 1;
        if (fields[0] == "type") {
            saw_type = true;
        } else if (fields[0] == "height") {
            if (fields.size() != 2) throw MapParseError(line_no, "malformed height line");
            height = static_cast<int>(detail::parse_long(fields[1], line_no, "height"));
        } else if (fields[0] == "width") {
            if (fields.size() != 2) throw MapParseError(line_no, "malformed width line");
            width = static_cast<int>(detail::parse_long(fields[1], line_no, "width"));
        } else if (fields[0] == "map") {
            ++i;
            break;
        } else {
            throw MapParseError(line_no, "unexpected header token '" + std::string(fields[0]) + "'");
        }
    }
    if (!saw_type) throw MapParseError(1, "missing 'type' header");
    if (width <= 0 || height <= 0) throw MapParseError(1, "missing or invalid width/height");

    std::vector<std::uint8_t> cells(static_cast<std::size_t>(width) * height, 0);
    for (int row = 0; row < height; ++row, ++i) {
        const int line_no = static_cast<int>(i) + 1;
        if (i >= lines.size()) throw MapParseError(line_no, "map truncated: missing rows");
        const std::string_view line = lines[i];
        if (static_cast<int>(line.size()) != width) {
            throw MapParseError(line_no, "row has " + std::to_string(line.size()) +
                                             " characters, expected " + std::to_string(width));
        }
        for (int col = 0; col < width; ++col) {
            const char c = line[col];
            bool blocked;
            switch (c) {
                case '.': case 'G': blocked = false; break;
                case '@': case 'O': case 'T': case 'S': case 'W': blocked = true; break;
                default:
                    throw MapParseError(line_no, std::string("unknown map character '") + c + "'");
            }
            cells[static_cast<std::size_t>(row) * width + col] = blocked ? 1 : 0;
        }
    }
    return GridMap(width, height, std::move(cells));
}

/// Emits the same format; parse(write(m)) == m and a write/parse/write
/// cycle is byte-identical.
inline std::string write_map(const GridMap& map) {
    std::string out;
    out += "type octile\n";
    out += "height " + std::to_string(map.height()) + "\n";
    out += "width " + std::to_string(map.width()) + "\n";
    out += "map\n";
    for (int row = 0; row < map.height(); ++row) {
        for (int col = 0; col < map.width(); ++col) {
            out += map.blocked(col, row) ? '@' : '.';
        }
        out += '\n';
    }
    return out;
}

/// One line of a scenario file. Reference lengths in the public files are
/// octile (8-directional), so they upper-bound the any-angle optimum.
struct ScenarioEntry {
    int bucket = 0;
    std::string map_name;
    int width = 0;
    int height = 0;
    int start_x = 0;
    int start_y = 0;
    int goal_x = 0;
    int goal_y = 0;
    double octile_length = 0.0;
};

inline std::vector<ScenarioEntry> parse_scenarios(std::string_view text) {
    const auto lines = detail::split_lines(text);
    if (lines.empty()) throw MapParseError(1, "empty scenario file");
    {
        const auto fields = detail::split_fields(lines[0]);
        if (fields.size() != 2 || fields[0] != "version" || fields[1] != "1") {
            throw MapParseError(1, "expected 'version 1' header");
        }
    }
    std::vector<ScenarioEntry> entries;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto f = detail::split_fields(lines[i]);
        if (f.empty()) continue;
        const int line_no = static_cast<int>(i) + 1;
        if (f.size() != 9) {
            throw MapParseError(line_no, "expected 9 fields, got " + std::to_string(f.size()));
        }
        ScenarioEntry e;
        e.bucket = static_cast<int>(detail::parse_long(f[0], line_no, "bucket"));
        e.map_name = std::string(f[1]);
        e.width = static_cast<int>(detail::parse_long(f[2], line_no, "width"));
        e.height = static_cast<int>(detail::parse_long(f[3], line_no, "height"));
        e.start_x = static_cast<int>(detail::parse_long(f[4], line_no, "start x"));
        e.start_y = static_cast<int>(detail::parse_long(f[5], line_no, "start y"));
        e.goal_x = static_cast<int>(detail::parse_long(f[6], line_no, "goal x"));
        e.goal_y = static_cast<int>(detail::parse_long(f[7], line_no, "goal y"));
        try {
            e.octile_length = std::stod(std::string(f[8]));
        } catch (const std::exception&) {
            throw MapParseError(line_no, "bad reference length");
        }
        if (e.start_x < 0 || e.start_x >= e.width || e.goal_x < 0 || e.goal_x >= e.width ||
            e.start_y < 0 || e.start_y >= e.height || e.goal_y < 0 || e.goal_y >= e.height) {
            throw MapParseError(line_no, "scenario coordinates outside declared dimensions");
        }
        entries.push_back(std::move(e));
    }
    return entries;
}

/// Maps a scenario tile to a query vertex. The default is the tile's
/// top-left corner; with `centers` the tile centre is snapped to the
/// nearest vertex that touches a traversable tile.
inline Vertex scenario_vertex(const GridMap& map, int tile_x, int tile_y, bool centers = false) {
    if (!centers) return Vertex{tile_x, tile_y};
    const Vertex candidates[4] = {{tile_x, tile_y},
                                  {tile_x + 1, tile_y},
                                  {tile_x, tile_y + 1},
                                  {tile_x + 1, tile_y + 1}};
    for (const Vertex& v : candidates) {
        const ObstacleConfig c = map.config_at(v.x, v.y);
        if (!(c.ne && c.nw && c.sw && c.se)) return v;
    }
    return Vertex{tile_x, tile_y};
}

}  // namespace anyangle
