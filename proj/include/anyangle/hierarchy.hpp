#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "anyangle/graph.hpp"

namespace anyangle {

inline constexpr std::uint32_t kLevelW = 0xffffffffu;
inline constexpr std::uint32_t kNoSkipEdge = 0xffffffffu;

/// Taut-continuation relation over directed edges. Directed edge 2e+s points
/// toward endpoint b of edge e when s == 1, toward a when s == 0; its
/// successors are the directed edges (v -> w) such that the bend u-v-w is
/// taut, where v is the head of the incoming edge.
struct TautNeighborTable {
    std::vector<std::uint32_t> offsets;  // size 2E+1
    std::vector<std::uint32_t> next;     // successor directed-edge ids

    static std::uint32_t directed(std::uint32_t edge, bool toward_b) {
        return 2 * edge + (toward_b ? 1 : 0);
    }
    static std::uint32_t edge_of(std::uint32_t directed_id) { return directed_id / 2; }

    struct Range {
        const std::uint32_t* begin_;
        const std::uint32_t* end_;
        const std::uint32_t* begin() const { return begin_; }
        const std::uint32_t* end() const { return end_; }
    };

    Range successors(std::uint32_t directed_id) const {
        return Range{next.data() + offsets[directed_id], next.data() + offsets[directed_id + 1]};
    }

    static TautNeighborTable build(const VisGraph& g) {
        const std::size_t m = g.edge_count();
        std::vector<std::vector<std::uint32_t>> tmp(2 * m);
        for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
            const auto nb = g.neighbors(v);
            const std::size_t deg = static_cast<std::size_t>(nb.vtx_end - nb.vtx_begin);
            for (std::size_t i = 0; i < deg; ++i) {
                const std::uint32_t u = nb.vtx_begin[i];
                const std::uint32_t ein = nb.edge_begin[i];
                const std::uint32_t din = directed(ein, g.edges[ein].b == v);
                auto& out = tmp[din];
                for (std::size_t j = 0; j < deg; ++j) {
                    if (j == i) continue;
                    const std::uint32_t w = nb.vtx_begin[j];
                    const std::uint32_t eout = nb.edge_begin[j];
                    if (is_taut(g.map, g.pos(u), g.pos(v), g.pos(w))) {
                        out.push_back(directed(eout, g.edges[eout].b == w));
                    }
                }
            }
        }
        TautNeighborTable t;
        t.offsets.assign(2 * m + 1, 0);
        for (std::size_t d = 0; d < 2 * m; ++d) {
            t.offsets[d + 1] = t.offsets[d] + static_cast<std::uint32_t>(tmp[d].size());
        }
        t.next.reserve(t.offsets.back());
        for (auto& v : tmp) t.next.insert(t.next.end(), v.begin(), v.end());
        return t;
    }
};

struct SkipEdge {
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    double weight = 0.0;
    std::uint32_t first_hop_a = 0;  // vertex adjacent to a on the underlying path
    std::uint32_t first_hop_b = 0;
    std::vector<std::uint32_t> path;  // vertex ids a .. b
};

/// Per-edge levels plus the skip network over the level-W subgraph.
struct EdgeHierarchy {
    std::vector<std::uint32_t> level;  // kLevelW when never assigned
    TautNeighborTable taut;
    std::vector<std::uint8_t> is_skip_vertex;       // per vertex
    std::vector<std::uint32_t> skip_vertices;       // sorted ids
    std::vector<SkipEdge> skip_edges;
    std::vector<std::uint32_t> covering_skip;       // per edge: skip edge id or kNoSkipEdge
    std::vector<std::uint32_t> skip_adj_offsets;    // size V+1
    std::vector<std::uint32_t> skip_adj_edge;

    std::uint32_t max_finite_level() const {
        std::uint32_t m = 0;
        for (std::uint32_t l : level) {
            if (l != kLevelW && l > m) m = l;
        }
        return m;
    }
};

namespace detail {

/// True when the path arriving at `endpoint` through edge e can continue
/// with a taut neighbour of level >= ell.
inline bool has_taut_exit_ge(const VisGraph& g, const TautNeighborTable& taut,
                             const std::vector<std::uint32_t>& level, std::uint32_t e,
                             bool endpoint_is_b, std::uint32_t ell) {
    const std::uint32_t din = TautNeighborTable::directed(e, endpoint_is_b);
    for (std::uint32_t dout : taut.successors(din)) {
        if (level[TautNeighborTable::edge_of(dout)] >= ell) return true;
    }
    (void)g;
    return false;
}

}  // namespace detail

/// Iterative level assignment: at pass ell, every still-unassigned edge with
/// no taut exit of level >= ell at one of its endpoints becomes level ell.
/// Edges assigned within a pass still count as level >= ell for the rest of
/// that pass, so the result does not depend on the iteration order; `order`
/// exists so tests can verify exactly that.
inline std::vector<std::uint32_t> compute_levels(
    const VisGraph& g, const TautNeighborTable& taut,
    const std::vector<std::uint32_t>* order = nullptr) {
    const std::size_t m = g.edge_count();
    std::vector<std::uint32_t> level(m, kLevelW);
    std::vector<std::uint32_t> idx;
    if (order) {
        idx = *order;
    } else {
        idx.resize(m);
        for (std::uint32_t i = 0; i < m; ++i) idx[i] = i;
    }
    std::uint32_t ell = 1;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::uint32_t e : idx) {
            if (level[e] != kLevelW) continue;
            if (!detail::has_taut_exit_ge(g, taut, level, e, false, ell) ||
                !detail::has_taut_exit_ge(g, taut, level, e, true, ell)) {
                level[e] = ell;
                changed = true;
            }
        }
        ++ell;
    }
    return level;
}

/// The set of edges lying on some taut cycle, computed as the edges whose
/// directed version belongs to a strongly connected component of size >= 2
/// in the taut-continuation digraph. Taut reversals are impossible, so there
/// are no self-loops.
inline std::vector<std::uint32_t> find_taut_cycles(const VisGraph& g,
                                                   const TautNeighborTable& taut) {
    const std::size_t n = 2 * g.edge_count();
    std::vector<std::uint32_t> index(n, 0), low(n, 0);
    std::vector<std::uint8_t> on_stack(n, 0);
    std::vector<std::uint32_t> comp(n, kNoVertex);
    std::vector<std::uint32_t> stack;
    std::vector<std::uint32_t> comp_size;
    std::uint32_t next_index = 1;

    struct Frame {
        std::uint32_t node;
        const std::uint32_t* it;
        const std::uint32_t* end;
    };
    std::vector<Frame> call;

    for (std::uint32_t root = 0; root < n; ++root) {
        if (index[root] != 0) continue;
        auto open = [&](std::uint32_t v) {
            index[v] = low[v] = next_index++;
            stack.push_back(v);
            on_stack[v] = 1;
            const auto r = taut.successors(v);
            call.push_back(Frame{v, r.begin(), r.end()});
        };
        open(root);
        while (!call.empty()) {
            Frame& f = call.back();
            if (f.it != f.end) {
                const std::uint32_t w = *f.it++;
                if (index[w] == 0) {
                    open(w);
                } else if (on_stack[w]) {
                    low[f.node] = std::min(low[f.node], index[w]);
                }
            } else {
                const std::uint32_t v = f.node;
                call.pop_back();
                if (!call.empty()) {
                    low[call.back().node] = std::min(low[call.back().node], low[v]);
                }
                if (low[v] == index[v]) {
                    const std::uint32_t c = static_cast<std::uint32_t>(comp_size.size());
                    comp_size.push_back(0);
                    for (;;) {
                        const std::uint32_t w = stack.back();
                        stack.pop_back();
                        on_stack[w] = 0;
                        comp[w] = c;
                        ++comp_size[c];
                        if (w == v) break;
                    }
                }
            }
        }
    }

    std::vector<std::uint32_t> result;
    for (std::uint32_t e = 0; e < g.edge_count(); ++e) {
        if (comp_size[comp[2 * e]] >= 2 || comp_size[comp[2 * e + 1]] >= 2) {
            result.push_back(e);
        }
    }
    return result;
}

/// Lemma check used as a test oracle: along any taut triple of edges
/// f-e-g with e of finite level, at least one neighbour level is strictly
/// below e's. Equivalently, no finite-level edge keeps a taut exit of level
/// >= its own at both endpoints.
inline bool verify_lemma2(const VisGraph& g, const EdgeHierarchy& h) {
    for (std::uint32_t e = 0; e < g.edge_count(); ++e) {
        const std::uint32_t le = h.level[e];
        if (le == kLevelW) continue;
        if (detail::has_taut_exit_ge(g, h.taut, h.level, e, false, le) &&
            detail::has_taut_exit_ge(g, h.taut, h.level, e, true, le)) {
            return false;
        }
    }
    return true;
}

/// Builds the skip network over the level-W subgraph: vertices of W-degree
/// >= 3 (or 1) anchor maximal unbranching chains; chains that close into a
/// cycle with no such anchor get the two smallest vertices on the cycle as
/// breakers. Interior chain vertices have W-degree exactly 2, and the two
/// W-edges at such a vertex are always mutually taut, so every chain is
/// internally taut and safe to traverse atomically.
inline void build_skip_graph(const VisGraph& g, EdgeHierarchy& h) {
    const std::size_t n = g.vertex_count();
    const std::size_t m = g.edge_count();
    std::vector<std::uint32_t> wdeg(n, 0);
    for (std::uint32_t e = 0; e < m; ++e) {
        if (h.level[e] == kLevelW) {
            ++wdeg[g.edges[e].a];
            ++wdeg[g.edges[e].b];
        }
    }
    h.is_skip_vertex.assign(n, 0);
    for (std::uint32_t v = 0; v < n; ++v) {
        if (wdeg[v] >= 3 || wdeg[v] == 1) h.is_skip_vertex[v] = 1;
    }

    // Components of the W-subgraph made only of degree-2 vertices are pure
    // cycles; give each its two smallest vertices as skip vertices so the
    // cycle splits into two proper chains.
    std::vector<std::uint8_t> seen(n, 0);
    std::vector<std::uint32_t> comp_stack;
    for (std::uint32_t v0 = 0; v0 < n; ++v0) {
        if (seen[v0] || wdeg[v0] == 0) continue;
        comp_stack.assign(1, v0);
        seen[v0] = 1;
        std::vector<std::uint32_t> members;
        bool has_anchor = false;
        while (!comp_stack.empty()) {
            const std::uint32_t v = comp_stack.back();
            comp_stack.pop_back();
            members.push_back(v);
            if (h.is_skip_vertex[v]) has_anchor = true;
            const auto nb = g.neighbors(v);
            const std::size_t deg = static_cast<std::size_t>(nb.vtx_end - nb.vtx_begin);
            for (std::size_t i = 0; i < deg; ++i) {
                if (h.level[nb.edge_begin[i]] != kLevelW) continue;
                const std::uint32_t w = nb.vtx_begin[i];
                if (!seen[w]) {
                    seen[w] = 1;
                    comp_stack.push_back(w);
                }
            }
        }
        if (!has_anchor) {
            std::sort(members.begin(), members.end());
            h.is_skip_vertex[members[0]] = 1;
            if (members.size() > 1) h.is_skip_vertex[members[1]] = 1;
        }
    }

    // Trace maximal unbranching chains between skip vertices.
    h.skip_edges.clear();
    h.covering_skip.assign(m, kNoSkipEdge);
    std::vector<std::uint8_t> used(m, 0);
    auto trace = [&](std::uint32_t start, std::uint32_t first_edge) {
        SkipEdge se;
        se.a = start;
        se.path.push_back(start);
        std::uint32_t cur = start;
        std::uint32_t e = first_edge;
        for (;;) {
            used[e] = 1;
            h.covering_skip[e] = static_cast<std::uint32_t>(h.skip_edges.size());
            se.weight += g.edges[e].len;
            const std::uint32_t nxt = g.edges[e].a == cur ? g.edges[e].b : g.edges[e].a;
            se.path.push_back(nxt);
            cur = nxt;
            if (h.is_skip_vertex[cur]) break;
            const auto nb = g.neighbors(cur);
            const std::size_t deg = static_cast<std::size_t>(nb.vtx_end - nb.vtx_begin);
            std::uint32_t cont = kNoVertex;
            for (std::size_t i = 0; i < deg; ++i) {
                const std::uint32_t e2 = nb.edge_begin[i];
                if (h.level[e2] == kLevelW && e2 != e) {
                    cont = e2;
                    break;
                }
            }
            e = cont;  // degree-2 interior vertex: exactly one continuation
        }
        se.b = cur;
        se.first_hop_a = se.path[1];
        se.first_hop_b = se.path[se.path.size() - 2];
        h.skip_edges.push_back(std::move(se));
    };
    for (std::uint32_t v = 0; v < n; ++v) {
        if (!h.is_skip_vertex[v]) continue;
        const auto nb = g.neighbors(v);
        const std::size_t deg = static_cast<std::size_t>(nb.vtx_end - nb.vtx_begin);
        for (std::size_t i = 0; i < deg; ++i) {
            const std::uint32_t e = nb.edge_begin[i];
            if (h.level[e] == kLevelW && !used[e]) trace(v, e);
        }
    }

    h.skip_vertices.clear();
    for (std::uint32_t v = 0; v < n; ++v) {
        if (h.is_skip_vertex[v]) h.skip_vertices.push_back(v);
    }
    h.skip_adj_offsets.assign(n + 1, 0);
    for (const SkipEdge& se : h.skip_edges) {
        ++h.skip_adj_offsets[se.a + 1];
        if (se.b != se.a) ++h.skip_adj_offsets[se.b + 1];
    }
    for (std::size_t v = 0; v < n; ++v) {
        h.skip_adj_offsets[v + 1] += h.skip_adj_offsets[v];
    }
    h.skip_adj_edge.assign(h.skip_adj_offsets.back(), 0);
    std::vector<std::uint32_t> fill(h.skip_adj_offsets.begin(), h.skip_adj_offsets.end() - 1);
    for (std::uint32_t i = 0; i < h.skip_edges.size(); ++i) {
        const SkipEdge& se = h.skip_edges[i];
        h.skip_adj_edge[fill[se.a]++] = i;
        if (se.b != se.a) h.skip_adj_edge[fill[se.b]++] = i;
    }
}

/// Full hierarchy construction for a sparse visibility graph.
inline EdgeHierarchy build_hierarchy(const VisGraph& g,
                                     const std::vector<std::uint32_t>* order = nullptr) {
    EdgeHierarchy h;
    h.taut = TautNeighborTable::build(g);
    h.level = compute_levels(g, h.taut, order);
    build_skip_graph(g, h);
    return h;
}

}  // namespace anyangle
