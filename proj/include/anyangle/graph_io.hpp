#pragma once

#include <cstdint>
#include <cstring>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "anyangle/graph.hpp"
#include "anyangle/hierarchy.hpp"

namespace anyangle {

/// Versioned binary container for a graph, the map it was built from, and
/// (optionally) its edge hierarchy. Deterministic given the map: vertices
/// and edges are already in canonical order.
namespace graph_io {

inline constexpr std::uint32_t kMagic = 0x47535641u;  // "AVSG" little-endian
inline constexpr std::uint32_t kVersion = 1;

namespace detail {

struct Writer {
    std::vector<std::uint8_t> bytes;
    void u8(std::uint8_t v) { bytes.push_back(v); }
    void u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) bytes.push_back((v >> (8 * i)) & 0xff);
    }
    void u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) bytes.push_back((v >> (8 * i)) & 0xff);
    }
    void i32(std::int32_t v) { u32(static_cast<std::uint32_t>(v)); }
    void f64(double v) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, 8);
        u64(bits);
    }
};

struct Reader {
    const std::uint8_t* p;
    const std::uint8_t* end;
    void need(std::size_t n) const {
        if (static_cast<std::size_t>(end - p) < n) {
            throw std::runtime_error("graph file truncated");
        }
    }
    std::uint8_t u8() {
        need(1);
        return *p++;
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(*p++) << (8 * i);
        return v;
    }
    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(*p++) << (8 * i);
        return v;
    }
    std::int32_t i32() { return static_cast<std::int32_t>(u32()); }
    double f64() {
        const std::uint64_t bits = u64();
        double v;
        std::memcpy(&v, &bits, 8);
        return v;
    }
};

}  // namespace detail

inline std::vector<std::uint8_t> serialize(const VisGraph& g, const EdgeHierarchy* h) {
    detail::Writer w;
    w.u32(kMagic);
    w.u32(kVersion);
    w.u64(g.map.hash());
    w.u8(static_cast<std::uint8_t>(g.variant));
    w.u8(h ? 1 : 0);
    w.i32(g.map.width());
    w.i32(g.map.height());
    const auto& raster = g.map.raster();
    for (std::size_t i = 0; i < raster.size(); i += 8) {
        std::uint8_t packed = 0;
        for (std::size_t b = 0; b < 8 && i + b < raster.size(); ++b) {
            if (raster[i + b]) packed |= static_cast<std::uint8_t>(1u << b);
        }
        w.u8(packed);
    }
    w.u32(static_cast<std::uint32_t>(g.vertices.size()));
    for (const Vertex& v : g.vertices) {
        w.i32(v.x);
        w.i32(v.y);
    }
    w.u32(static_cast<std::uint32_t>(g.edges.size()));
    for (const auto& e : g.edges) {
        w.u32(e.a);
        w.u32(e.b);
        w.u64(e.sq_len);
    }
    if (h) {
        for (std::uint32_t l : h->level) w.u32(l);
        w.u32(static_cast<std::uint32_t>(h->skip_vertices.size()));
        for (std::uint32_t v : h->skip_vertices) w.u32(v);
        w.u32(static_cast<std::uint32_t>(h->skip_edges.size()));
        for (const SkipEdge& se : h->skip_edges) {
            w.u32(se.a);
            w.u32(se.b);
            w.u32(se.first_hop_a);
            w.u32(se.first_hop_b);
            w.f64(se.weight);
            w.u32(static_cast<std::uint32_t>(se.path.size()));
            for (std::uint32_t p : se.path) w.u32(p);
        }
    }
    return w.bytes;
}

struct LoadedGraph {
    VisGraph graph;
    bool has_hierarchy = false;
    EdgeHierarchy hierarchy;
};

inline LoadedGraph deserialize(const std::vector<std::uint8_t>& bytes) {
    detail::Reader r{bytes.data(), bytes.data() + bytes.size()};
    if (r.u32() != kMagic) throw std::runtime_error("not a graph file (bad magic)");
    const std::uint32_t version = r.u32();
    if (version != kVersion) {
        throw std::runtime_error("unsupported graph file version " + std::to_string(version));
    }
    const std::uint64_t map_hash = r.u64();
    const auto variant = static_cast<GraphVariant>(r.u8());
    const bool has_h = r.u8() != 0;
    const std::int32_t width = r.i32();
    const std::int32_t height = r.i32();
    if (width < 0 || height < 0) throw std::runtime_error("bad map dimensions");
    const std::size_t ntiles = static_cast<std::size_t>(width) * height;
    std::vector<std::uint8_t> raster(ntiles, 0);
    for (std::size_t i = 0; i < ntiles; i += 8) {
        const std::uint8_t packed = r.u8();
        for (std::size_t b = 0; b < 8 && i + b < ntiles; ++b) {
            raster[i + b] = (packed >> b) & 1;
        }
    }
    GridMap map(width, height, std::move(raster));
    if (map.hash() != map_hash) throw std::runtime_error("graph file map hash mismatch");

    const std::uint32_t nv = r.u32();
    std::vector<Vertex> vertices(nv);
    for (auto& v : vertices) {
        v.x = r.i32();
        v.y = r.i32();
    }
    const std::uint32_t ne = r.u32();
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    pairs.reserve(ne);
    std::vector<std::uint64_t> sq(ne);
    for (std::uint32_t i = 0; i < ne; ++i) {
        const std::uint32_t a = r.u32();
        const std::uint32_t b = r.u32();
        sq[i] = r.u64();
        if (a >= nv || b >= nv) throw std::runtime_error("edge endpoint out of range");
        pairs.emplace_back(a, b);
    }
    LoadedGraph out;
    out.graph = anyangle::detail::assemble(variant, std::move(map), std::move(vertices),
                                           std::move(pairs));
    for (std::uint32_t i = 0; i < ne; ++i) {
        if (out.graph.edges[i].sq_len != sq[i]) {
            throw std::runtime_error("edge length mismatch in graph file");
        }
    }
    if (has_h) {
        out.has_hierarchy = true;
        EdgeHierarchy& h = out.hierarchy;
        h.level.resize(ne);
        for (auto& l : h.level) l = r.u32();
        const std::uint32_t nskipv = r.u32();
        h.skip_vertices.resize(nskipv);
        h.is_skip_vertex.assign(nv, 0);
        for (auto& v : h.skip_vertices) {
            v = r.u32();
            if (v >= nv) throw std::runtime_error("skip vertex out of range");
            h.is_skip_vertex[v] = 1;
        }
        const std::uint32_t nskipe = r.u32();
        h.skip_edges.resize(nskipe);
        h.covering_skip.assign(ne, kNoSkipEdge);
        for (std::uint32_t i = 0; i < nskipe; ++i) {
            SkipEdge& se = h.skip_edges[i];
            se.a = r.u32();
            se.b = r.u32();
            se.first_hop_a = r.u32();
            se.first_hop_b = r.u32();
            se.weight = r.f64();
            const std::uint32_t plen = r.u32();
            se.path.resize(plen);
            for (auto& p : se.path) p = r.u32();
        }
        // Rebuild derived tables that are cheaper to recompute than store.
        h.taut = TautNeighborTable::build(out.graph);
        h.skip_adj_offsets.assign(nv + 1, 0);
        for (const SkipEdge& se : h.skip_edges) {
            ++h.skip_adj_offsets[se.a + 1];
            if (se.b != se.a) ++h.skip_adj_offsets[se.b + 1];
        }
        for (std::size_t v = 0; v < nv; ++v) h.skip_adj_offsets[v + 1] += h.skip_adj_offsets[v];
        h.skip_adj_edge.assign(h.skip_adj_offsets.back(), 0);
        std::vector<std::uint32_t> fill(h.skip_adj_offsets.begin(), h.skip_adj_offsets.end() - 1);
        for (std::uint32_t i = 0; i < nskipe; ++i) {
            const SkipEdge& se = h.skip_edges[i];
            h.skip_adj_edge[fill[se.a]++] = i;
            if (se.b != se.a) h.skip_adj_edge[fill[se.b]++] = i;
            for (std::size_t j = 0; j + 1 < se.path.size(); ++j) {
                // Recover the per-edge covering map from the stored paths.
                const std::uint32_t u = se.path[j];
                const std::uint32_t v2 = se.path[j + 1];
                const auto nb = out.graph.neighbors(u);
                for (const std::uint32_t* it = nb.vtx_begin; it != nb.vtx_end; ++it) {
                    if (*it == v2) {
                        h.covering_skip[nb.edge_begin[it - nb.vtx_begin]] = i;
                        break;
                    }
                }
            }
        }
    }
    return out;
}

/// Tab-separated textual dump for diffing.
inline std::string dump_tsv(const VisGraph& g, const EdgeHierarchy* h) {
    std::ostringstream os;
    os << "section\tvertices\n";
    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
        os << i << '\t' << g.vertices[i].x << '\t' << g.vertices[i].y << '\n';
    }
    os << "section\tedges\n";
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        const auto& e = g.edges[i];
        os << i << '\t' << e.a << '\t' << e.b << '\t' << e.sq_len;
        if (h) {
            os << '\t';
            if (h->level[i] == kLevelW) {
                os << 'W';
            } else {
                os << h->level[i];
            }
        }
        os << '\n';
    }
    if (h) {
        os << "section\tskip_vertices\n";
        for (std::uint32_t v : h->skip_vertices) os << v << '\n';
        os << "section\tskip_edges\n";
        for (std::size_t i = 0; i < h->skip_edges.size(); ++i) {
            const SkipEdge& se = h->skip_edges[i];
            os << i << '\t' << se.a << '\t' << se.b << '\t' << se.weight << '\t'
               << se.path.size() << '\n';
        }
    }
    return os.str();
}

}  // namespace graph_io
}  // namespace anyangle
