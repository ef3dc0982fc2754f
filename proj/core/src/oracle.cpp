#include "spanroute/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <random>

namespace spanroute {

EdgeListGraph::EdgeListGraph(std::size_t n, std::vector<WeightedEdge> edges)
    : n_(n), edges_(std::move(edges)), adj_(n) {
    for (const auto& e : edges_) {
        if (e.u >= n_ || e.v >= n_) throw UnknownVertex("edge endpoint out of range");
        adj_[e.u].emplace_back(e.v, e.w);
        adj_[e.v].emplace_back(e.u, e.w);
    }
}

EdgeListGraph EdgeListGraph::from_points(
    const std::vector<Point>& pts, const std::vector<std::pair<VertexId, VertexId>>& edges) {
    std::vector<WeightedEdge> we;
    we.reserve(edges.size());
    for (auto [u, v] : edges) we.push_back({u, v, dist(pts[u].xy(), pts[v].xy())});
    return EdgeListGraph(pts.size(), std::move(we));
}

std::vector<double> shortest_paths(const EdgeListGraph& g, VertexId source) {
    if (source >= g.size()) throw UnknownVertex("shortest_paths: bad source");
    std::vector<double> dist(g.size(), kInfDist);
    using Item = std::pair<double, VertexId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[source] = 0.0;
    pq.emplace(0.0, source);
    while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (d > dist[v]) continue;
        for (auto [to, w] : g.adjacent(v)) {
            const double nd = d + w;
            if (nd < dist[to]) {
                dist[to] = nd;
                pq.emplace(nd, to);
            }
        }
    }
    return dist;
}

StretchReport stretch_factor(const EdgeListGraph& g, const std::vector<Point>& pts,
                             StretchReference ref, const EdgeListGraph* base) {
    const std::size_t n = g.size();
    StretchReport rep;
    rep.max_ratio = (n > 1) ? 0.0 : 1.0;
    for (VertexId s = 0; s < n; ++s) {
        const auto dg = shortest_paths(g, s);
        std::vector<double> db;
        if (ref == StretchReference::BaseGraphDistances) {
            if (!base) throw Error("stretch_factor: base graph missing");
            db = shortest_paths(*base, s);
        }
        for (VertexId v = 0; v < n; ++v) {
            if (v == s) continue;
            if (dg[v] == kInfDist) throw Disconnected("stretch_factor: graph is disconnected");
            const double denom = (ref == StretchReference::EuclideanAllPairs)
                                     ? dist(pts[s].xy(), pts[v].xy())
                                     : db[v];
            const double ratio = dg[v] / denom;
            if (ratio > rep.max_ratio) {
                rep.max_ratio = ratio;
                rep.witness = {s, v};
            }
        }
    }
    return rep;
}

namespace {

struct Dsu {
    std::vector<VertexId> parent;
    explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
    VertexId find(VertexId x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(VertexId a, VertexId b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

std::vector<std::pair<VertexId, VertexId>> kruskal(std::size_t n,
                                                   std::vector<WeightedEdge> edges) {
    std::sort(edges.begin(), edges.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
        if (a.w != b.w) return a.w < b.w;
        if (a.u != b.u) return a.u < b.u;
        return a.v < b.v;
    });
    Dsu dsu(n);
    std::vector<std::pair<VertexId, VertexId>> out;
    for (const auto& e : edges)
        if (dsu.unite(e.u, e.v)) out.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
    if (out.size() + 1 != n && n > 0) throw Disconnected("spanning tree does not exist");
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<std::pair<VertexId, VertexId>> euclidean_mst(const std::vector<Point>& pts) {
    if (pts.empty()) return {};
    if (pts.size() == 1) return {};
    std::vector<WeightedEdge> edges;
    edges.reserve(pts.size() * (pts.size() - 1) / 2);
    for (VertexId u = 0; u < pts.size(); ++u)
        for (VertexId v = u + 1; v < pts.size(); ++v)
            edges.push_back({u, v, dist(pts[u].xy(), pts[v].xy())});
    return kruskal(pts.size(), std::move(edges));
}

std::vector<std::pair<VertexId, VertexId>> graph_mst(const EdgeListGraph& g) {
    return kruskal(g.size(), g.edges());
}

double tree_weight(const std::vector<Point>& pts,
                   const std::vector<std::pair<VertexId, VertexId>>& edges) {
    double w = 0.0;
    for (auto [u, v] : edges) w += dist(pts[u].xy(), pts[v].xy());
    return w;
}

StretchReport empirical_routing_ratio(const RouterFn& route, const std::vector<Point>& pts,
                                      const std::vector<std::pair<VertexId, VertexId>>& pairs) {
    StretchReport rep;
    rep.max_ratio = 0.0;
    for (auto [s, t] : pairs) {
        const double len = route(s, t);
        const double ratio = len / dist(pts[s].xy(), pts[t].xy());
        if (ratio > rep.max_ratio) {
            rep.max_ratio = ratio;
            rep.witness = {s, t};
        }
    }
    return rep;
}

BruteForceCheck delaunay_bruteforce_check(const TriangulationMesh& mesh) {
    const std::size_t n = mesh.size();
    if (n > 60) throw TooLarge("brute-force Delaunay check capped at 60 points");
    const auto& pts = mesh.points();

    auto empty_circle_exists = [&](VertexId u, VertexId v) {
        const XY a = pts[u].xy(), b = pts[v].xy();
        // diameter circle: empty iff no point sees [uv] under an obtuse angle
        bool diam_ok = true;
        for (VertexId w = 0; w < n && diam_ok; ++w) {
            if (w == u || w == v) continue;
            const XY p = pts[w].xy();
            if (dot_sign(p.x, p.y, a.x, a.y, b.x, b.y) < 0) diam_ok = false;
        }
        if (diam_ok) return true;
        // circles through u, v and a third point
        for (VertexId w = 0; w < n; ++w) {
            if (w == u || w == v) continue;
            const XY c = pts[w].xy();
            const int o = orient_sign(a, b, c);
            if (o == 0) continue;
            bool ok = true;
            for (VertexId z = 0; z < n && ok; ++z) {
                if (z == u || z == v || z == w) continue;
                const XY d = pts[z].xy();
                if (incircle_sign(a.x, a.y, b.x, b.y, c.x, c.y, d.x, d.y) * o > 0) ok = false;
            }
            if (ok) return true;
        }
        return false;
    };

    for (VertexId u = 0; u < n; ++u) {
        for (VertexId v = u + 1; v < n; ++v) {
            const bool expect = empty_circle_exists(u, v);
            const bool have = mesh.has_edge(u, v);
            if (expect != have) {
                return {false, {u, v},
                        expect ? "edge admitted by an empty circle is missing"
                               : "edge present without an empty circle"};
            }
        }
    }
    return {};
}

std::vector<std::pair<VertexId, VertexId>> all_pairs(std::size_t n) {
    std::vector<std::pair<VertexId, VertexId>> out;
    out.reserve(n * (n - 1));
    for (VertexId s = 0; s < n; ++s)
        for (VertexId t = 0; t < n; ++t)
            if (s != t) out.emplace_back(s, t);
    return out;
}

std::vector<std::pair<VertexId, VertexId>> sample_pairs(std::size_t n, std::size_t count,
                                                        std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::pair<VertexId, VertexId>> out;
    out.reserve(count);
    while (out.size() < count) {
        const auto s = static_cast<VertexId>(rng() % n);
        const auto t = static_cast<VertexId>(rng() % n);
        if (s != t) out.emplace_back(s, t);
    }
    return out;
}

}  // namespace spanroute
