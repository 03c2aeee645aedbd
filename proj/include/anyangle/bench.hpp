#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

#include "anyangle/graph.hpp"
#include "anyangle/hierarchy.hpp"
#include "anyangle/mapgen.hpp"
#include "anyangle/search.hpp"

namespace anyangle {

/// Connectivity over free tiles (4-adjacent). Two endpoints admit an
/// any-angle path iff some free tile incident to one shares a component
/// with a free tile incident to the other; tile adjacency rather than
/// vertex adjacency keeps diagonal crossing points (where passage is
/// forbidden) from merging regions.
class Reachability {
public:
    explicit Reachability(const GridMap& map) : map_(&map) {
        const int w = map.width();
        const int h = map.height();
        comp_.assign(static_cast<std::size_t>(w) * h, -1);
        std::int32_t next = 0;
        std::vector<std::pair<int, int>> stack;
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                if (map.blocked(x, y) || comp_[idx(x, y)] >= 0) continue;
                const std::int32_t c = next++;
                stack.push_back({x, y});
                comp_[idx(x, y)] = c;
                while (!stack.empty()) {
                    const auto [cx, cy] = stack.back();
                    stack.pop_back();
                    const int nx[4] = {cx + 1, cx - 1, cx, cx};
                    const int ny[4] = {cy, cy, cy + 1, cy - 1};
                    for (int i = 0; i < 4; ++i) {
                        if (nx[i] < 0 || ny[i] < 0 || nx[i] >= w || ny[i] >= h) continue;
                        if (map.blocked(nx[i], ny[i])) continue;
                        if (comp_[idx(nx[i], ny[i])] >= 0) continue;
                        comp_[idx(nx[i], ny[i])] = c;
                        stack.push_back({nx[i], ny[i]});
                    }
                }
            }
        }
        components_ = next;
    }

    int components() const { return components_; }

    bool reachable(Vertex s, Vertex t) const {
        std::int32_t cs[4], ct[4];
        const int ns = incident_components(s, cs);
        const int nt = incident_components(t, ct);
        for (int i = 0; i < ns; ++i) {
            for (int j = 0; j < nt; ++j) {
                if (cs[i] == ct[j]) return true;
            }
        }
        return false;
    }

    bool traversable(Vertex v) const {
        std::int32_t c[4];
        return incident_components(v, c) > 0;
    }

private:
    std::size_t idx(int x, int y) const {
        return static_cast<std::size_t>(y) * map_->width() + x;
    }

    int incident_components(Vertex v, std::int32_t out[4]) const {
        int n = 0;
        const int tx[4] = {v.x, v.x - 1, v.x - 1, v.x};
        const int ty[4] = {v.y, v.y, v.y - 1, v.y - 1};
        for (int i = 0; i < 4; ++i) {
            if (tx[i] < 0 || ty[i] < 0 || tx[i] >= map_->width() || ty[i] >= map_->height()) {
                continue;
            }
            if (map_->blocked(tx[i], ty[i])) continue;
            const std::int32_t c = comp_[idx(tx[i], ty[i])];
            bool dup = false;
            for (int j = 0; j < n; ++j) dup = dup || out[j] == c;
            if (!dup) out[n++] = c;
        }
        return n;
    }

    const GridMap* map_;
    std::vector<std::int32_t> comp_;
    int components_ = 0;
};

/// Samples a reachable vertex pair; returns false when none exists (fully
/// blocked or single-tile free regions only make this nearly impossible in
/// practice, so a bounded number of rejection rounds is fine).
inline bool sample_reachable_pair(const GridMap& map, const Reachability& reach,
                                  SplitMix64& rng, Vertex& s, Vertex& t,
                                  int max_attempts = 10000) {
    for (int i = 0; i < max_attempts; ++i) {
        s = Vertex{static_cast<int>(rng.below(map.width() + 1)),
                   static_cast<int>(rng.below(map.height() + 1))};
        t = Vertex{static_cast<int>(rng.below(map.width() + 1)),
                   static_cast<int>(rng.below(map.height() + 1))};
        if (s == t) continue;
        if (!reach.traversable(s) || !reach.traversable(t)) continue;
        if (reach.reachable(s, t)) return true;
    }
    return false;
}

/// Plain Dijkstra over a visibility graph with endpoints attached by
/// pairwise checks — no taut filter, no heuristic. Used as the optimality
/// oracle for --verify and the acceptance suite.
inline PathResult dijkstra_oracle(const VisGraph& g, Vertex s, Vertex t) {
    PathResult res;
    if (s == t) {
        res.found = true;
        res.waypoints = {s};
        res.length = 0.0;
        return res;
    }
    QueryEndpoints q = insert_endpoints_checks(g, s, t);
    constexpr double kInf = std::numeric_limits<double>::infinity();
    const std::size_t base_n = g.vertex_count();
    const std::size_t n = base_n + 2;
    std::vector<double> dist(n, kInf);
    std::vector<std::uint32_t> parent(n, kNoVertex);
    std::vector<double> to_goal(base_n, -1.0);
    for (const auto& te : q.t_edges) to_goal[te.corner] = te.len;

    using Item = std::pair<double, std::uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
    dist[q.s_id] = 0.0;
    open.push({0.0, q.s_id});
    while (!open.empty()) {
        const auto [d, v] = open.top();
        open.pop();
        if (d != dist[v]) continue;
        if (v == q.t_id) break;
        auto relax = [&](std::uint32_t w, double len) {
            if (d + len < dist[w]) {
                dist[w] = d + len;
                parent[w] = v;
                open.push({dist[w], w});
            }
        };
        if (v < base_n) {
            const auto nb = g.neighbors(v);
            const std::size_t deg = static_cast<std::size_t>(nb.vtx_end - nb.vtx_begin);
            for (std::size_t i = 0; i < deg; ++i) {
                relax(nb.vtx_begin[i], g.edges[nb.edge_begin[i]].len);
            }
            if (to_goal[v] >= 0.0) relax(q.t_id, to_goal[v]);
        }
        if (v == q.s_id) {
            for (const auto& te : q.s_edges) relax(te.corner, te.len);
            if (q.direct_st) relax(q.t_id, q.st_len);
        }
    }
    if (dist[q.t_id] == kInf) {
        res.found = false;
        return res;
    }
    res.found = true;
    res.length = dist[q.t_id];
    std::vector<Vertex> rev;
    std::uint32_t cur = q.t_id;
    auto pos_of = [&](std::uint32_t id) -> Vertex {
        if (id < base_n) return g.pos(id);
        return id == q.s_id ? q.s : q.t;
    };
    while (cur != kNoVertex) {
        rev.push_back(pos_of(cur));
        if (cur == q.s_id) break;
        cur = parent[cur];
    }
    res.waypoints.assign(rev.rbegin(), rev.rend());
    return res;
}

enum class Algo : std::uint8_t { vg_checks, vg_scans, svg, enlsvg };

inline const char* algo_name(Algo a) {
    switch (a) {
        case Algo::vg_checks: return "VG_C";
        case Algo::vg_scans: return "VG_S";
        case Algo::svg: return "SVG";
        case Algo::enlsvg: return "ENLSVG";
    }
    return "?";
}

struct AlgoReport {
    Algo algo = Algo::svg;
    double construction_seconds = 0.0;
    std::size_t vertices = 0;
    std::size_t edges = 0;
    double avg_degree = 0.0;
    // Per-query aggregates over the run set.
    double mean_total_ms = 0.0;
    double median_total_ms = 0.0;
    double mean_insert_ms = 0.0;
    double mean_mark_ms = 0.0;
    double mean_search_ms = 0.0;
    double mean_nodes_expanded = 0.0;
    double median_nodes_expanded = 0.0;
    std::size_t no_path = 0;
    std::size_t verify_mismatches = 0;
};

struct MapReport {
    std::string name;
    int width = 0;
    int height = 0;
    std::size_t runs = 0;
    std::vector<AlgoReport> algos;
};

struct BenchReport {
    std::uint64_t seed = 0;
    std::size_t runs_per_map = 0;
    std::vector<MapReport> maps;

    std::string to_text() const;
    std::string to_json() const;
};

struct BenchOptions {
    std::vector<Algo> algos{Algo::vg_scans, Algo::svg, Algo::enlsvg};
    std::size_t runs = 100;
    std::uint64_t seed = 1;
    bool verify = false;       // cross-check lengths against the Dijkstra oracle
    int verify_max_dim = 128;  // skip oracle beyond this edge length
};

namespace detail {

inline double mean(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

inline double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace detail

/// Runs the requested algorithms over one map with a shared seeded set of
/// reachable query pairs. Operation counts are the cross-machine metric;
/// times are reported for local comparison only.
inline MapReport bench_map(const std::string& name, const GridMap& map,
                           const BenchOptions& opt) {
    MapReport mr;
    mr.name = name;
    mr.width = map.width();
    mr.height = map.height();

    const Reachability reach(map);
    SplitMix64 rng(opt.seed ^ map.hash());
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (std::size_t i = 0; i < opt.runs; ++i) {
        Vertex s, t;
        if (sample_reachable_pair(map, reach, rng, s, t)) pairs.push_back({s, t});
    }
    mr.runs = pairs.size();

    const bool want_oracle =
        opt.verify && map.width() <= opt.verify_max_dim && map.height() <= opt.verify_max_dim;
    VisGraph oracle_graph;
    std::vector<double> oracle_len(pairs.size(), -1.0);
    if (want_oracle) {
        oracle_graph = build_vg_checks(map);
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            const PathResult r = dijkstra_oracle(oracle_graph, pairs[i].first, pairs[i].second);
            oracle_len[i] = r.found ? r.length : -1.0;
        }
    }

    for (Algo algo : opt.algos) {
        AlgoReport ar;
        ar.algo = algo;
        const auto t0 = std::chrono::steady_clock::now();
        VisGraph g;
        EdgeHierarchy hier;
        switch (algo) {
            case Algo::vg_checks: g = build_vg_checks(map); break;
            case Algo::vg_scans: g = build_vg_scans(map); break;
            case Algo::svg: g = build_svg(map); break;
            case Algo::enlsvg:
                g = build_svg(map);
                hier = build_hierarchy(g);
                break;
        }
        ar.construction_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        ar.vertices = g.vertex_count();
        ar.edges = g.edge_count();
        ar.avg_degree = g.avg_degree();

        std::vector<double> totals, inserts, marks, searches, expanded;
        MarkState mark_state;
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            const auto [s, t] = pairs[i];
            const auto q0 = std::chrono::steady_clock::now();
            PathResult r;
            if (algo == Algo::enlsvg) {
                r = query_enlsvg(g, hier, s, t, &mark_state);
            } else if (algo == Algo::vg_checks) {
                const auto ti = std::chrono::steady_clock::now();
                QueryEndpoints q = insert_endpoints_checks(g, s, t);
                r.stats.insert_seconds =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - ti).count();
                const auto ts = std::chrono::steady_clock::now();
                PathResult inner = taut_astar(g, q);
                inner.stats.insert_seconds = r.stats.insert_seconds;
                inner.stats.search_seconds =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - ts).count();
                remove_endpoints(g, q);
                r = std::move(inner);
            } else {
                r = query_svg(g, s, t);
            }
            const double total_ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - q0)
                    .count();
            totals.push_back(total_ms);
            inserts.push_back(r.stats.insert_seconds * 1e3);
            marks.push_back(r.stats.mark_seconds * 1e3);
            searches.push_back(r.stats.search_seconds * 1e3);
            expanded.push_back(static_cast<double>(r.stats.nodes_expanded));
            if (!r.found) ++ar.no_path;
            if (want_oracle) {
                const double ref = oracle_len[i];
                const bool both_found = r.found && ref >= 0.0;
                const bool both_missing = !r.found && ref < 0.0;
                if (both_found) {
                    if (std::abs(r.length - ref) > 1e-9 * std::max(1.0, ref)) {
                        ++ar.verify_mismatches;
                    }
                } else if (!both_missing) {
                    ++ar.verify_mismatches;
                }
            }
        }
        ar.mean_total_ms = detail::mean(totals);
        ar.median_total_ms = detail::median(totals);
        ar.mean_insert_ms = detail::mean(inserts);
        ar.mean_mark_ms = detail::mean(marks);
        ar.mean_search_ms = detail::mean(searches);
        ar.mean_nodes_expanded = detail::mean(expanded);
        ar.median_nodes_expanded = detail::median(expanded);
        mr.algos.push_back(std::move(ar));
    }
    return mr;
}

inline std::string BenchReport::to_text() const {
    std::ostringstream os;
    os << "map\tsize\truns\talgo\tbuild_s\tverts\tedges\tavgdeg\tmean_ms\tmedian_ms"
       << "\tinsert_ms\tmark_ms\tsearch_ms\tmean_exp\tmedian_exp\tno_path\tmismatch\n";
    for (const MapReport& m : maps) {
        for (const AlgoReport& a : m.algos) {
            os << m.name << '\t' << m.width << 'x' << m.height << '\t' << m.runs << '\t'
               << algo_name(a.algo) << '\t' << a.construction_seconds << '\t' << a.vertices
               << '\t' << a.edges << '\t' << a.avg_degree << '\t' << a.mean_total_ms << '\t'
               << a.median_total_ms << '\t' << a.mean_insert_ms << '\t' << a.mean_mark_ms
               << '\t' << a.mean_search_ms << '\t' << a.mean_nodes_expanded << '\t'
               << a.median_nodes_expanded << '\t' << a.no_path << '\t' << a.verify_mismatches
               << '\n';
        }
    }
    return os.str();
}

inline std::string BenchReport::to_json() const {
    std::ostringstream os;
    os << "{\"format\":\"anyangle-bench\",\"version\":1,\"seed\":" << seed
       << ",\"runs_per_map\":" << runs_per_map << ",\"maps\":[";
    bool first_map = true;
    for (const MapReport& m : maps) {
        if (!first_map) os << ',';
        first_map = false;
        os << "{\"name\":\"" << m.name << "\",\"width\":" << m.width
           << ",\"height\":" << m.height << ",\"runs\":" << m.runs << ",\"algos\":[";
        bool first = true;
        for (const AlgoReport& a : m.algos) {
            if (!first) os << ',';
            first = false;
            os << "{\"algo\":\"" << algo_name(a.algo) << "\""
               << ",\"construction_seconds\":" << a.construction_seconds
               << ",\"vertices\":" << a.vertices << ",\"edges\":" << a.edges
               << ",\"avg_degree\":" << a.avg_degree << ",\"mean_total_ms\":" << a.mean_total_ms
               << ",\"median_total_ms\":" << a.median_total_ms
               << ",\"mean_insert_ms\":" << a.mean_insert_ms
               << ",\"mean_mark_ms\":" << a.mean_mark_ms
               << ",\"mean_search_ms\":" << a.mean_search_ms
               << ",\"mean_nodes_expanded\":" << a.mean_nodes_expanded
               << ",\"median_nodes_expanded\":" << a.median_nodes_expanded
               << ",\"no_path\":" << a.no_path
               << ",\"verify_mismatches\":" << a.verify_mismatches << "}";
        }
        os << "]}";
    }
    os << "]}";
    return os.str();
}

}  // namespace anyangle
