#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "anyangle/graph.hpp"

namespace anyangle {

struct RenderOptions {
    double tile_px = 10.0;
    bool draw_graph_edges = false;
};

/// Static SVG image of a map, optionally with graph edges, a search tree,
/// and a path. y grows upward in grid space, downward on screen.
inline std::string render_svg(const GridMap& map, const VisGraph* graph,
                              const std::vector<std::pair<Vertex, Vertex>>* tree,
                              const std::vector<Vertex>* path, const RenderOptions& opt = {}) {
    const double px = opt.tile_px;
    const double w = (map.width()) * px;
    const double h = (map.height()) * px;
    auto sx = [&](double x) { return x * px; };
    auto sy = [&](double y) { return h - y * px; };

    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(2);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
       << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n";
    os << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"#ffffff\"/>\n";

    // Blocked tiles, merged into per-row runs.
    os << "<g fill=\"#444444\">\n";
    for (int r = 0; r < map.height(); ++r) {
        int c = 0;
        while (c < map.width()) {
            if (!map.blocked(c, r)) {
                ++c;
                continue;
            }
            const int run_end = map.blocked_run_right(r, c);
            os << "<rect x=\"" << sx(c) << "\" y=\"" << sy(r + 1) << "\" width=\""
               << (run_end - c) * px << "\" height=\"" << px << "\"/>\n";
            c = run_end;
        }
    }
    os << "</g>\n";

    if (graph && opt.draw_graph_edges) {
        os << "<g stroke=\"#bbbbbb\" stroke-width=\"1\">\n";
        for (const auto& e : graph->edges) {
            const Vertex a = graph->pos(e.a);
            const Vertex b = graph->pos(e.b);
            os << "<line x1=\"" << sx(a.x) << "\" y1=\"" << sy(a.y) << "\" x2=\"" << sx(b.x)
               << "\" y2=\"" << sy(b.y) << "\"/>\n";
        }
        os << "</g>\n";
    }

    if (tree) {
        os << "<g stroke=\"#4a90d9\" stroke-width=\"1\" opacity=\"0.7\">\n";
        for (const auto& [a, b] : *tree) {
            os << "<line x1=\"" << sx(a.x) << "\" y1=\"" << sy(a.y) << "\" x2=\"" << sx(b.x)
               << "\" y2=\"" << sy(b.y) << "\"/>\n";
        }
        os << "</g>\n";
    }

    if (path && path->size() >= 2) {
        os << "<polyline fill=\"none\" stroke=\"#d03030\" stroke-width=\"2.5\" points=\"";
        for (const Vertex& v : *path) {
            os << sx(v.x) << ',' << sy(v.y) << ' ';
        }
        os << "\"/>\n";
    }
    if (path && !path->empty()) {
        const Vertex s = path->front();
        const Vertex t = path->back();
        os << "<circle cx=\"" << sx(s.x) << "\" cy=\"" << sy(s.y)
           << "\" r=\"4\" fill=\"#30a030\"/>\n";
        os << "<circle cx=\"" << sx(t.x) << "\" cy=\"" << sy(t.y)
           << "\" r=\"4\" fill=\"#d03030\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace anyangle
