#pragma once

#include <chrono>
#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

#include "anyangle/graph.hpp"
#include "anyangle/hierarchy.hpp"

namespace anyangle {

struct SearchStats {
    std::uint64_t nodes_expanded = 0;
    std::uint64_t edges_relaxed = 0;
    std::uint64_t heap_pops = 0;
    std::uint64_t marked_edges = 0;
    std::uint64_t scan_intervals = 0;  // intervals processed while inserting endpoints
    std::uint64_t settled_g_violations = 0;
    double insert_seconds = 0.0;
    double mark_seconds = 0.0;
    double search_seconds = 0.0;
};

struct PathResult {
    bool found = false;
    std::vector<Vertex> waypoints;
    double length = 0.0;
    SearchStats stats;
};

/// Per-query edge marks. Stamps are generation counters so a new query
/// resets in O(1); an edge is marked for the current query iff its stamp
/// equals the current generation. Each query owns its MarkState, so
/// concurrent queries on one shared graph cannot interfere.
struct MarkState {
    std::vector<std::uint32_t> edge_stamp;
    std::vector<std::uint32_t> skip_stamp;
    std::vector<std::uint32_t> directed_visit;  // DFS bookkeeping, 2E
    std::uint32_t generation = 0;

    void begin(std::size_t edge_count, std::size_t skip_count) {
        if (edge_stamp.size() != edge_count) edge_stamp.assign(edge_count, 0);
        if (skip_stamp.size() != skip_count) skip_stamp.assign(skip_count, 0);
        if (directed_visit.size() != 2 * edge_count) directed_visit.assign(2 * edge_count, 0);
        ++generation;
    }

    bool marked(std::uint32_t e) const { return edge_stamp[e] == generation; }
    void mark(std::uint32_t e) { edge_stamp[e] = generation; }
    bool skip_marked(std::uint32_t s) const { return skip_stamp[s] == generation; }
    void mark_skip(std::uint32_t s) { skip_stamp[s] = generation; }
    bool visited(std::uint32_t d) const { return directed_visit[d] == generation; }
    void visit(std::uint32_t d) { directed_visit[d] = generation; }
};

namespace detail {

struct MarkItem {
    std::uint32_t vertex;
    Vertex from_pos;
    std::uint32_t incoming_level;  // kLevelW while walking the W-subgraph
};

}  // namespace detail

/// Depth-first marking from an inserted endpoint: follow taut continuations
/// of strictly increasing level (the first hop is unconstrained), and on
/// reaching the level-W subgraph keep marking W-edges until a skip vertex.
/// Returns the number of edges stamped.
inline std::size_t mark_edges(const VisGraph& g, const EdgeHierarchy& h,
                              const QueryEndpoints& q, bool from_start, MarkState& marks) {
    const std::uint32_t from_id = from_start ? q.s_id : q.t_id;
    const Vertex from_pos = from_start ? q.s : q.t;
    const bool reused = from_start ? q.s_is_graph_vertex : q.t_is_graph_vertex;
    const auto& temp = from_start ? q.s_edges : q.t_edges;

    std::size_t stamped = 0;
    std::vector<detail::MarkItem> stack;

    auto consider = [&](std::uint32_t v, Vertex parent_pos, std::uint32_t lvl_in) {
        const auto nb = g.neighbors(v);
        const std::size_t deg = static_cast<std::size_t>(nb.vtx_end - nb.vtx_begin);
        for (std::size_t i = 0; i < deg; ++i) {
            const std::uint32_t e = nb.edge_begin[i];
            const std::uint32_t w = nb.vtx_begin[i];
            const std::uint32_t le = h.level[e];
            if (le == kLevelW) {
                if (!is_taut(g.map, parent_pos, g.pos(v), g.pos(w))) continue;
                const std::uint32_t d = TautNeighborTable::directed(e, g.edges[e].b == w);
                if (marks.visited(d)) continue;
                marks.visit(d);
                if (!marks.marked(e)) {
                    marks.mark(e);
                    ++stamped;
                }
                if (h.covering_skip[e] != kNoSkipEdge) marks.mark_skip(h.covering_skip[e]);
                if (!h.is_skip_vertex[w]) {
                    stack.push_back(detail::MarkItem{w, g.pos(v), kLevelW});
                }
            } else if (lvl_in != kLevelW && le > lvl_in) {
                if (!is_taut(g.map, parent_pos, g.pos(v), g.pos(w))) continue;
                const std::uint32_t d = TautNeighborTable::directed(e, g.edges[e].b == w);
                if (marks.visited(d)) continue;
                marks.visit(d);
                if (!marks.marked(e)) {
                    marks.mark(e);
                    ++stamped;
                }
                stack.push_back(detail::MarkItem{w, g.pos(v), le});
            }
        }
    };

    // First hops: temporary scan edges, plus the base edges of a reused
    // graph vertex. A first hop has no incoming heading, so it is stamped
    // unconditionally.
    for (const auto& te : temp) {
        stack.push_back(detail::MarkItem{te.corner, from_pos, 0});
    }
    if (reused) {
        const auto nb = g.neighbors(from_id);
        const std::size_t deg = static_cast<std::size_t>(nb.vtx_end - nb.vtx_begin);
        for (std::size_t i = 0; i < deg; ++i) {
            const std::uint32_t e = nb.edge_begin[i];
            const std::uint32_t w = nb.vtx_begin[i];
            if (!marks.marked(e)) {
                marks.mark(e);
                ++stamped;
            }
            const std::uint32_t le = h.level[e];
            if (le == kLevelW) {
                if (h.covering_skip[e] != kNoSkipEdge) marks.mark_skip(h.covering_skip[e]);
                if (!h.is_skip_vertex[w]) {
                    stack.push_back(detail::MarkItem{w, from_pos, kLevelW});
                }
            } else {
                stack.push_back(detail::MarkItem{w, from_pos, le});
            }
        }
    }

    while (!stack.empty()) {
        const detail::MarkItem it = stack.back();
        stack.pop_back();
        consider(it.vertex, it.from_pos, it.incoming_level);
    }
    return stamped;
}

namespace detail {

struct HeapNode {
    double f;
    double g;
    std::uint32_t v;
};
struct HeapCmp {
    bool operator()(const HeapNode& x, const HeapNode& y) const {
        if (x.f != y.f) return x.f > y.f;
        return x.g < y.g;  // among equal f, larger g first
    }
};

}  // namespace detail

/// Taut A* over the base graph plus the query's temporary edges. With a
/// hierarchy and mark state, moves are restricted to marked edges and
/// skip-edges (traversed atomically, with tautness checked against the
/// stored first hop at each end). The heuristic is the Euclidean distance
/// to the goal, so settled costs are optimal; reopenings after settlement
/// are counted as violations.
inline PathResult taut_astar(const VisGraph& g, const QueryEndpoints& q,
                             const EdgeHierarchy* hier = nullptr,
                             const MarkState* marks = nullptr,
                             std::vector<std::pair<Vertex, Vertex>>* tree_capture = nullptr) {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    const std::size_t base_n = g.vertex_count();
    const std::size_t n = base_n + 2;

    PathResult res;
    if (q.s_id == q.t_id) {
        res.found = true;
        res.waypoints = {q.s};
        res.length = 0.0;
        return res;
    }

    auto pos_of = [&](std::uint32_t id) -> Vertex {
        if (id < base_n) return g.pos(id);
        return id == q.s_id ? q.s : q.t;
    };

    std::vector<double> dist(n, kInf);
    std::vector<double> settled_g(n, kInf);
    std::vector<std::uint32_t> parent(n, kNoVertex);
    std::vector<std::int32_t> via_skip(n, -1);
    std::vector<std::uint8_t> settled(n, 0);

    // Temporary edges into the goal, keyed by corner id for O(1) lookup
    // while expanding arbitrary vertices.
    std::vector<double> to_goal(base_n, -1.0);
    if (!q.t_is_graph_vertex) {
        for (const auto& te : q.t_edges) to_goal[te.corner] = te.len;
    }

    const Vertex goal_pos = q.t;
    auto h_of = [&](std::uint32_t id) { return euclid(pos_of(id), goal_pos); };

    std::priority_queue<detail::HeapNode, std::vector<detail::HeapNode>, detail::HeapCmp> open;
    dist[q.s_id] = 0.0;
    open.push(detail::HeapNode{h_of(q.s_id), 0.0, q.s_id});

    auto parent_pos_at = [&](std::uint32_t v) -> Vertex {
        // Geometric predecessor used by the taut filter: for a skip-edge
        // arrival this is the last underlying hop, not the far endpoint.
        const std::int32_t sk = via_skip[v];
        if (sk >= 0) {
            const SkipEdge& se = hier->skip_edges[sk];
            return g.pos(se.b == v ? se.first_hop_b : se.first_hop_a);
        }
        return pos_of(parent[v]);
    };

    while (!open.empty()) {
        const detail::HeapNode top = open.top();
        open.pop();
        ++res.stats.heap_pops;
        if (top.g != dist[top.v]) continue;  // stale
        const std::uint32_t v = top.v;
        if (settled[v]) {
            if (top.g < settled_g[v]) ++res.stats.settled_g_violations;
        } else {
            settled[v] = 1;
            settled_g[v] = top.g;
        }
        if (v == q.t_id) break;
        ++res.stats.nodes_expanded;

        const bool have_parent = parent[v] != kNoVertex;
        const Vertex vp = pos_of(v);
        const Vertex pp = have_parent ? parent_pos_at(v) : Vertex{};

        auto relax = [&](std::uint32_t w, double len, Vertex first_pos, std::int32_t skip_id) {
            if (have_parent && !is_taut(g.map, pp, vp, first_pos)) return;
            const double ng = top.g + len;
            if (ng < dist[w]) {
                dist[w] = ng;
                parent[w] = v;
                via_skip[w] = skip_id;
                ++res.stats.edges_relaxed;
                open.push(detail::HeapNode{ng + h_of(w), ng, w});
                if (tree_capture) tree_capture->emplace_back(vp, pos_of(w));
            }
        };

        if (v < base_n) {
            const auto nb = g.neighbors(v);
            const std::size_t deg = static_cast<std::size_t>(nb.vtx_end - nb.vtx_begin);
            for (std::size_t i = 0; i < deg; ++i) {
                const std::uint32_t e = nb.edge_begin[i];
                if (marks && !marks->marked(e)) continue;
                const std::uint32_t w = nb.vtx_begin[i];
                relax(w, g.edges[e].len, g.pos(w), -1);
            }
            if (hier && hier->is_skip_vertex[v]) {
                for (std::uint32_t i = hier->skip_adj_offsets[v];
                     i < hier->skip_adj_offsets[v + 1]; ++i) {
                    const std::uint32_t si = hier->skip_adj_edge[i];
                    const SkipEdge& se = hier->skip_edges[si];
                    if (se.a == se.b) continue;  // a loop can never improve
                    const std::uint32_t w = se.a == v ? se.b : se.a;
                    const std::uint32_t hop = se.a == v ? se.first_hop_a : se.first_hop_b;
                    relax(w, se.weight, g.pos(hop), static_cast<std::int32_t>(si));
                }
            }
            if (to_goal[v] >= 0.0) relax(q.t_id, to_goal[v], q.t, -1);
            if (q.t_is_graph_vertex && v == q.t_id) {
                // unreachable: the loop breaks when the goal is popped
            }
        }
        if (v == q.s_id) {
            for (const auto& te : q.s_edges) {
                relax(te.corner, te.len, g.pos(te.corner), -1);
            }
            if (q.direct_st) relax(q.t_id, q.st_len, q.t, -1);
        }
        if (q.t_is_graph_vertex) {
            // Goal coincides with a corner: its temporary edges widen the
            // approach beyond the pruned base adjacency.
            if (v == q.s_id || v < base_n) {
                for (const auto& te : q.t_edges) {
                    if (te.corner == v) relax(q.t_id, te.len, q.t, -1);
                }
            }
        }
    }

    if (dist[q.t_id] == kInf) {
        res.found = false;
        return res;
    }

    // Reconstruct, expanding skip edges back to their underlying chains.
    res.found = true;
    res.length = dist[q.t_id];
    std::vector<Vertex> rev;
    std::uint32_t cur = q.t_id;
    while (cur != q.s_id) {
        rev.push_back(pos_of(cur));
        const std::int32_t sk = via_skip[cur];
        if (sk >= 0) {
            const SkipEdge& se = hier->skip_edges[sk];
            if (se.b == cur) {
                for (std::size_t i = se.path.size() - 1; i-- > 1;) {
                    rev.push_back(g.pos(se.path[i]));
                }
            } else {
                for (std::size_t i = 1; i + 1 < se.path.size(); ++i) {
                    rev.push_back(g.pos(se.path[i]));
                }
            }
        }
        cur = parent[cur];
    }
    rev.push_back(pos_of(q.s_id));
    res.waypoints.assign(rev.rbegin(), rev.rend());
    return res;
}

/// True iff consecutive waypoints all have line of sight and every interior
/// bend is taut. Every path returned by the queries must satisfy this.
inline bool audit_path(const GridMap& map, const std::vector<Vertex>& waypoints) {
    for (std::size_t i = 0; i + 1 < waypoints.size(); ++i) {
        if (waypoints[i] == waypoints[i + 1]) return false;
        if (!line_of_sight(map, waypoints[i], waypoints[i + 1])) return false;
    }
    for (std::size_t i = 0; i + 2 < waypoints.size(); ++i) {
        if (!is_taut(map, waypoints[i], waypoints[i + 1], waypoints[i + 2])) return false;
    }
    return true;
}

namespace detail {

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace detail

/// Optimal any-angle query: insert endpoints with all-direction scans, run
/// Taut A* over the whole graph, tear the endpoints down.
inline PathResult query_svg(const VisGraph& g, Vertex s, Vertex t,
                            std::vector<std::pair<Vertex, Vertex>>* tree_capture = nullptr) {
    if (s == t) {
        PathResult res;
        res.found = true;
        res.waypoints = {s};
        res.length = 0.0;
        return res;
    }
    const auto t0 = std::chrono::steady_clock::now();
    QueryEndpoints q = insert_endpoints(g, s, t);
    const double t_insert = detail::seconds_since(t0);
    const auto t1 = std::chrono::steady_clock::now();
    PathResult res = taut_astar(g, q, nullptr, nullptr, tree_capture);
    res.stats.search_seconds = detail::seconds_since(t1);
    res.stats.insert_seconds = t_insert;
    remove_endpoints(g, q);
    return res;
}

/// Hierarchical query: insert, mark reachable edges from both endpoints,
/// then Taut A* restricted to marked edges plus the skip network. Returns
/// the same lengths as query_svg.
inline PathResult query_enlsvg(const VisGraph& g, const EdgeHierarchy& h, Vertex s, Vertex t,
                               MarkState* reuse_marks = nullptr,
                               std::vector<std::pair<Vertex, Vertex>>* tree_capture = nullptr) {
    if (s == t) {
        PathResult res;
        res.found = true;
        res.waypoints = {s};
        res.length = 0.0;
        return res;
    }
    MarkState local;
    MarkState& marks = reuse_marks ? *reuse_marks : local;
    const auto t0 = std::chrono::steady_clock::now();
    QueryEndpoints q = insert_endpoints(g, s, t);
    const double t_insert = detail::seconds_since(t0);

    const auto t1 = std::chrono::steady_clock::now();
    marks.begin(g.edge_count(), h.skip_edges.size());
    std::size_t stamped = mark_edges(g, h, q, true, marks);
    stamped += mark_edges(g, h, q, false, marks);
    const double t_mark = detail::seconds_since(t1);

    const auto t2 = std::chrono::steady_clock::now();
    PathResult res = taut_astar(g, q, &h, &marks, tree_capture);
    res.stats.search_seconds = detail::seconds_since(t2);
    res.stats.insert_seconds = t_insert;
    res.stats.mark_seconds = t_mark;
    res.stats.marked_edges = stamped;
    remove_endpoints(g, q);
    return res;
}

}  // namespace anyangle
