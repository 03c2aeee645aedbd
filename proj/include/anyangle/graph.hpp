#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "anyangle/grid.hpp"
#include "anyangle/scan.hpp"

namespace anyangle {

enum class GraphVariant : std::uint8_t { vg = 0, svg = 1 };

inline constexpr std::uint32_t kNoVertex = 0xffffffffu;

/// Visibility graph over the convex corners of a map. Vertices are sorted
/// row-major and densely numbered; undirected edges are stored once, with a
/// CSR adjacency giving both directed views. The graph is immutable after
/// construction — per-query start/goal attachments live in QueryEndpoints
/// side buffers, never here.
struct VisGraph {
    GraphVariant variant = GraphVariant::vg;
    GridMap map;

    struct Edge {
        std::uint32_t a = 0;
        std::uint32_t b = 0;
        std::uint64_t sq_len = 0;
        double len = 0.0;
    };

    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
    std::vector<std::uint32_t> adj_offsets;  // size V+1
    std::vector<std::uint32_t> adj_vertex;   // size 2E
    std::vector<std::uint32_t> adj_edge;     // size 2E
    std::vector<std::int32_t> vertex_at;     // (W+1)*(H+1), id or -1

    std::size_t vertex_count() const { return vertices.size(); }
    std::size_t edge_count() const { return edges.size(); }

    std::int32_t id_of(Vertex v) const {
        if (!map.in_vertex_space(v)) return -1;
        return vertex_at[static_cast<std::size_t>(v.y) * (map.width() + 1) + v.x];
    }

    Vertex pos(std::uint32_t id) const { return vertices[id]; }

    struct NeighborRange {
        const std::uint32_t* vtx_begin;
        const std::uint32_t* vtx_end;
        const std::uint32_t* edge_begin;
    };

    NeighborRange neighbors(std::uint32_t id) const {
        return NeighborRange{adj_vertex.data() + adj_offsets[id],
                             adj_vertex.data() + adj_offsets[id + 1],
                             adj_edge.data() + adj_offsets[id]};
    }

    double avg_degree() const {
        if (vertices.empty()) return 0.0;
        return 2.0 * static_cast<double>(edges.size()) / static_cast<double>(vertices.size());
    }

    /// Hash of everything a query could corrupt; used by teardown-identity
    /// checks.
    std::uint64_t structural_hash() const {
        std::uint64_t h = 14695981039346656037ull;
        auto mix = [&h](std::uint64_t v) {
            for (int i = 0; i < 8; ++i) {
                h ^= (v >> (8 * i)) & 0xff;
                h *= 1099511628211ull;
            }
        };
        mix(static_cast<std::uint64_t>(variant));
        mix(map.hash());
        mix(vertices.size());
        for (const Vertex& v : vertices) {
            mix((static_cast<std::uint64_t>(static_cast<std::uint32_t>(v.x)) << 32) |
                static_cast<std::uint32_t>(v.y));
        }
        mix(edges.size());
        for (const Edge& e : edges) {
            mix((static_cast<std::uint64_t>(e.a) << 32) | e.b);
            mix(e.sq_len);
        }
        for (std::uint32_t v : adj_offsets) mix(v);
        for (std::uint32_t v : adj_vertex) mix(v);
        for (std::uint32_t v : adj_edge) mix(v);
        return h;
    }
};

namespace detail {

inline std::vector<Vertex> collect_corners(const GridMap& map) {
    std::vector<Vertex> corners;
    for (int y = 0; y <= map.height(); ++y) {
        for (int x = 0; x <= map.width(); ++x) {
            if (map.is_convex_corner(x, y)) corners.push_back(Vertex{x, y});
        }
    }
    return corners;
}

/// True when some convex corner lies strictly between u and v on the open
/// segment. Such an edge skips over a graph vertex and is dropped by the
/// collinear policy.
inline bool corner_strictly_between(const GridMap& map, Vertex u, Vertex v) {
    const int dx = v.x - u.x;
    const int dy = v.y - u.y;
    const int g = std::gcd(dx < 0 ? -dx : dx, dy < 0 ? -dy : dy);
    if (g <= 1) return false;
    const int sx = dx / g;
    const int sy = dy / g;
    for (int i = 1; i < g; ++i) {
        if (map.is_convex_corner(u.x + i * sx, u.y + i * sy)) return true;
    }
    return false;
}

inline VisGraph assemble(GraphVariant variant, GridMap map, std::vector<Vertex> vertices,
                         std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs) {
    VisGraph g;
    g.variant = variant;
    g.map = std::move(map);
    g.vertices = std::move(vertices);
    g.vertex_at.assign(static_cast<std::size_t>(g.map.width() + 1) * (g.map.height() + 1), -1);
    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
        const Vertex v = g.vertices[i];
        g.vertex_at[static_cast<std::size_t>(v.y) * (g.map.width() + 1) + v.x] =
            static_cast<std::int32_t>(i);
    }
    for (auto& p : pairs) {
        if (p.first > p.second) std::swap(p.first, p.second);
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    g.edges.reserve(pairs.size());
    for (const auto& [a, b] : pairs) {
        VisGraph::Edge e;
        e.a = a;
        e.b = b;
        e.sq_len = sq_dist(g.vertices[a], g.vertices[b]);
        e.len = std::sqrt(static_cast<double>(e.sq_len));
        g.edges.push_back(e);
    }
    const std::size_t n = g.vertices.size();
    g.adj_offsets.assign(n + 1, 0);
    for (const auto& e : g.edges) {
        ++g.adj_offsets[e.a + 1];
        ++g.adj_offsets[e.b + 1];
    }
    std::partial_sum(g.adj_offsets.begin(), g.adj_offsets.end(), g.adj_offsets.begin());
    g.adj_vertex.assign(2 * g.edges.size(), 0);
    g.adj_edge.assign(2 * g.edges.size(), 0);
    std::vector<std::uint32_t> fill(g.adj_offsets.begin(), g.adj_offsets.end() - 1);
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        const auto& e = g.edges[i];
        g.adj_vertex[fill[e.a]] = e.b;
        g.adj_edge[fill[e.a]++] = static_cast<std::uint32_t>(i);
        g.adj_vertex[fill[e.b]] = e.a;
        g.adj_edge[fill[e.b]++] = static_cast<std::uint32_t>(i);
    }
    return g;
}

}  // namespace detail

/// Baseline visibility graph built from pairwise line-of-sight checks.
/// Quadratic in the number of corners; kept as the oracle the scan-based
/// builders are validated against.
inline VisGraph build_vg_checks(const GridMap& map) {
    std::vector<Vertex> corners = detail::collect_corners(map);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    for (std::uint32_t i = 0; i < corners.size(); ++i) {
        for (std::uint32_t j = i + 1; j < corners.size(); ++j) {
            if (!line_of_sight(map, corners[i], corners[j])) continue;
            if (detail::corner_strictly_between(map, corners[i], corners[j])) continue;
            pairs.emplace_back(i, j);
        }
    }
    return detail::assemble(GraphVariant::vg, map, std::move(corners), std::move(pairs));
}

/// Visibility graph built from one all-direction line-of-sight scan per
/// corner. Produces exactly the same graph as build_vg_checks.
inline VisGraph build_vg_scans(const GridMap& map) {
    std::vector<Vertex> corners = detail::collect_corners(map);
    VisGraph g = detail::assemble(GraphVariant::vg, map, std::move(corners), {});
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    for (std::uint32_t i = 0; i < g.vertices.size(); ++i) {
        const ScanResult res = scan_all_directions(g.map, g.vertices[i]);
        for (const ScanVisible& sv : res.visible) {
            const std::int32_t j = g.id_of(sv.v);
            if (j >= 0 && static_cast<std::uint32_t>(j) > i) {
                pairs.emplace_back(i, static_cast<std::uint32_t>(j));
            }
        }
    }
    return detail::assemble(GraphVariant::vg, std::move(g.map), std::move(g.vertices),
                            std::move(pairs));
}

/// Sparse visibility graph: an edge survives only if each endpoint lies in
/// the taut region of the other. Built directly from taut-direction scans,
/// keeping an edge exactly when each endpoint discovered the other.
inline VisGraph build_svg(const GridMap& map) {
    std::vector<Vertex> corners = detail::collect_corners(map);
    VisGraph g = detail::assemble(GraphVariant::svg, map, std::move(corners), {});
    // Directed discovery sets; an undirected edge needs both.
    std::vector<std::vector<std::uint32_t>> seen(g.vertices.size());
    for (std::uint32_t i = 0; i < g.vertices.size(); ++i) {
        const ScanResult res = scan_taut_directions(g.map, g.vertices[i]);
        for (const ScanVisible& sv : res.visible) {
            const std::int32_t j = g.id_of(sv.v);
            if (j >= 0) seen[i].push_back(static_cast<std::uint32_t>(j));
        }
        std::sort(seen[i].begin(), seen[i].end());
    }
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    for (std::uint32_t i = 0; i < g.vertices.size(); ++i) {
        for (std::uint32_t j : seen[i]) {
            if (j <= i) continue;
            if (std::binary_search(seen[j].begin(), seen[j].end(), i)) {
                pairs.emplace_back(i, j);
            }
        }
    }
    return detail::assemble(GraphVariant::svg, std::move(g.map), std::move(g.vertices),
                            std::move(pairs));
}

/// Drops every edge that skips over an intermediate collinear vertex, so a
/// clique of collinear corners collapses to the path of consecutive
/// neighbours. The builders already enforce this; the operation is exposed
/// for oracle-built graphs and stays idempotent.
inline VisGraph apply_collinear_policy(VisGraph g) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    pairs.reserve(g.edges.size());
    for (const auto& e : g.edges) {
        if (!detail::corner_strictly_between(g.map, g.vertices[e.a], g.vertices[e.b])) {
            pairs.emplace_back(e.a, e.b);
        }
    }
    return detail::assemble(g.variant, std::move(g.map), std::move(g.vertices),
                            std::move(pairs));
}

/// Per-query start/goal attachment. All temporary state lives here; the
/// underlying graph is shared read-only, so concurrent queries on one graph
/// are safe and teardown is just dropping this object.
struct QueryEndpoints {
    Vertex s, t;
    std::uint32_t s_id = kNoVertex;
    std::uint32_t t_id = kNoVertex;
    bool s_is_graph_vertex = false;
    bool t_is_graph_vertex = false;

    struct TempEdge {
        std::uint32_t corner;
        double len;
    };
    std::vector<TempEdge> s_edges, t_edges;
    bool direct_st = false;
    double st_len = 0.0;
};

namespace detail {

inline bool has_traversable_incident_tile(const GridMap& map, Vertex v) {
    const ObstacleConfig c = map.config_at(v.x, v.y);
    return !(c.ne && c.nw && c.sw && c.se);
}

inline void attach_endpoint(const VisGraph& g, Vertex p, std::uint32_t virtual_id,
                            std::uint32_t& id_out, bool& reused_out,
                            std::vector<QueryEndpoints::TempEdge>& edges_out) {
    const std::int32_t existing = g.id_of(p);
    reused_out = existing >= 0;
    id_out = reused_out ? static_cast<std::uint32_t>(existing) : virtual_id;
    const ScanResult res = scan_all_directions(g.map, p);
    edges_out.reserve(res.visible.size());
    for (const ScanVisible& sv : res.visible) {
        const std::int32_t c = g.id_of(sv.v);
        if (c < 0) continue;
        if (reused_out) {
            // Skip neighbours already present in the base adjacency.
            const auto nb = g.neighbors(id_out);
            if (std::find(nb.vtx_begin, nb.vtx_end, static_cast<std::uint32_t>(c)) !=
                nb.vtx_end) {
                continue;
            }
        }
        edges_out.push_back(
            QueryEndpoints::TempEdge{static_cast<std::uint32_t>(c), euclid(p, sv.v)});
    }
}

}  // namespace detail

/// Connects s and t to the graph with all-direction scans (an endpoint has
/// no incoming heading, so every visible exit is valid). Coinciding graph
/// vertices are reused. The direct s-t edge is added when it has line of
/// sight.
inline QueryEndpoints insert_endpoints(const VisGraph& g, Vertex s, Vertex t) {
    if (!g.map.in_vertex_space(s) || !g.map.in_vertex_space(t)) {
        throw std::invalid_argument("insert_endpoints: endpoint outside the vertex space");
    }
    if (!detail::has_traversable_incident_tile(g.map, s) ||
        !detail::has_traversable_incident_tile(g.map, t)) {
        throw std::invalid_argument("insert_endpoints: endpoint has no traversable incident tile");
    }
    QueryEndpoints q;
    q.s = s;
    q.t = t;
    const std::uint32_t base = static_cast<std::uint32_t>(g.vertex_count());
    detail::attach_endpoint(g, s, base, q.s_id, q.s_is_graph_vertex, q.s_edges);
    if (t == s) {
        q.t_id = q.s_id;
        q.t_is_graph_vertex = q.s_is_graph_vertex;
        return q;
    }
    detail::attach_endpoint(g, t, base + 1, q.t_id, q.t_is_graph_vertex, q.t_edges);
    if (line_of_sight(g.map, s, t)) {
        q.direct_st = true;
        q.st_len = euclid(s, t);
    }
    return q;
}

/// Same attachment as insert_endpoints but via one line-of-sight check per
/// corner instead of scans. This is the insertion step of the checks-based
/// visibility graph algorithm; it produces exactly the same edge sets.
inline QueryEndpoints insert_endpoints_checks(const VisGraph& g, Vertex s, Vertex t) {
    if (!g.map.in_vertex_space(s) || !g.map.in_vertex_space(t)) {
        throw std::invalid_argument("insert_endpoints: endpoint outside the vertex space");
    }
    if (!detail::has_traversable_incident_tile(g.map, s) ||
        !detail::has_traversable_incident_tile(g.map, t)) {
        throw std::invalid_argument("insert_endpoints: endpoint has no traversable incident tile");
    }
    QueryEndpoints q;
    q.s = s;
    q.t = t;
    const std::uint32_t base = static_cast<std::uint32_t>(g.vertex_count());
    auto attach = [&](Vertex p, std::uint32_t virtual_id, std::uint32_t& id_out,
                      bool& reused_out, std::vector<QueryEndpoints::TempEdge>& out) {
        const std::int32_t existing = g.id_of(p);
        reused_out = existing >= 0;
        id_out = reused_out ? static_cast<std::uint32_t>(existing) : virtual_id;
        for (std::uint32_t c = 0; c < g.vertex_count(); ++c) {
            const Vertex v = g.pos(c);
            if (v == p) continue;
            if (!line_of_sight(g.map, p, v)) continue;
            if (detail::corner_strictly_between(g.map, p, v)) continue;
            if (reused_out) {
                const auto nb = g.neighbors(id_out);
                if (std::find(nb.vtx_begin, nb.vtx_end, c) != nb.vtx_end) continue;
            }
            out.push_back(QueryEndpoints::TempEdge{c, euclid(p, v)});
        }
    };
    attach(s, base, q.s_id, q.s_is_graph_vertex, q.s_edges);
    if (t == s) {
        q.t_id = q.s_id;
        q.t_is_graph_vertex = q.s_is_graph_vertex;
        return q;
    }
    attach(t, base + 1, q.t_id, q.t_is_graph_vertex, q.t_edges);
    if (line_of_sight(g.map, s, t)) {
        q.direct_st = true;
        q.st_len = euclid(s, t);
    }
    return q;
}

/// Tears a query down. The graph was never mutated, so this only clears the
/// side buffers; it exists so call sites read as insert/remove pairs.
inline void remove_endpoints(const VisGraph&, QueryEndpoints& q) {
    q.s_edges.clear();
    q.t_edges.clear();
    q.direct_st = false;
    q.s_id = kNoVertex;
    q.t_id = kNoVertex;
}

}  // namespace anyangle
