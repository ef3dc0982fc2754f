#include "spanroute/lightness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

namespace spanroute {

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

// neighbor lists sorted counterclockwise from the positive x axis
std::vector<std::vector<VertexId>> ccw_adjacency(
    const std::vector<Point>& pts, const std::vector<std::pair<VertexId, VertexId>>& edges,
    std::size_t n) {
    std::vector<std::vector<VertexId>> adj(n);
    for (auto [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    for (VertexId u = 0; u < n; ++u) {
        const XY apex = pts[u].xy();
        const XY ref{apex.x + 1.0, apex.y};
        AngularOrder ord{apex, ref, +1};
        std::sort(adj[u].begin(), adj[u].end(), [&](VertexId a, VertexId b) {
            const XY pa = pts[a].xy(), pb = pts[b].xy();
            if (ord.before(pa, pb)) return true;
            if (ord.before(pb, pa)) return false;
            const int c = cmp_dist2(apex.x, apex.y, pa.x, pa.y, apex.x, apex.y, pb.x, pb.y);
            if (c != 0) return c < 0;
            return a < b;
        });
    }
    return adj;
}

}  // namespace

TourPolygon euler_tour_polygon(const std::vector<Point>& points,
                               const std::vector<std::pair<VertexId, VertexId>>& mst_edges) {
    const std::size_t n = points.size();
    if (n == 0) throw NotATree("empty vertex set");
    if (mst_edges.size() + 1 != n) throw NotATree("edge count is not n - 1");
    Dsu dsu(n);
    for (auto [u, v] : mst_edges)
        if (!dsu.unite(u, v)) throw NotATree("cycle detected");

    const auto adj = ccw_adjacency(points, mst_edges, n);

    TourPolygon tour;
    if (n == 1) return tour;
    const VertexId start = 0;
    const VertexId first = adj[start].front();
    VertexId prev = start, cur = first;
    tour.boundary.push_back(start);
    while (true) {
        tour.boundary.push_back(cur);
        const auto& ring = adj[cur];
        const std::size_t k = ring.size();
        std::size_t idx = 0;
        while (idx < k && ring[idx] != prev) ++idx;
        const VertexId nxt = ring[(idx + 1) % k];
        prev = cur;
        cur = nxt;
        if (prev == start && cur == first) break;  // initial directed edge repeats
    }
    tour.boundary.pop_back();  // the closing start vertex was re-appended
    tour.step_weight.resize(tour.boundary.size());
    for (std::size_t i = 0; i < tour.boundary.size(); ++i) {
        const XY a = points[tour.boundary[i]].xy();
        const XY b = points[tour.boundary[(i + 1) % tour.boundary.size()]].xy();
        tour.step_weight[i] = dist(a, b);
    }
    return tour;
}

IncludeDecision include_decision(double boundary_weight_sum, double edge_length, double r) {
    return boundary_weight_sum > (1.0 + 1.0 / r) * edge_length ? IncludeDecision::Include
                                                               : IncludeDecision::Exclude;
}

std::vector<std::pair<VertexId, VertexId>> marked_graph_mst(const MarkedGraph& g) {
    struct E {
        double w;
        VertexId u, v;
    };
    std::vector<E> es;
    for (auto [u, v] : g.edges())
        es.push_back({dist(g.mesh().point(u).xy(), g.mesh().point(v).xy()), u, v});
    std::sort(es.begin(), es.end(), [](const E& a, const E& b) {
        if (a.w != b.w) return a.w < b.w;
        if (a.u != b.u) return a.u < b.u;
        return a.v < b.v;
    });
    Dsu dsu(g.size());
    std::vector<std::pair<VertexId, VertexId>> out;
    for (const auto& e : es)
        if (dsu.unite(e.u, e.v)) out.emplace_back(e.u, e.v);
    if (out.size() + 1 != g.size()) throw Disconnected("marked graph is disconnected");
    return out;
}

namespace {

// Working state of the expanding polygon. The boundary is kept
// counterclockwise; pockets close toward hull edges on its exterior.
struct Polygon {
    std::vector<VertexId> b;       // boundary vertices, cyclic
    std::vector<double> w;         // settled weight of step i: b[i] -> b[i+1]
    std::vector<double> credit;    // diagnostic mirror of the pruning budget

    std::size_t size() const { return b.size(); }
    VertexId at(std::size_t i) const { return b[i % b.size()]; }
};

struct Chord {
    std::size_t a, z;  // positions within the pocket walk, a < z
    VertexId u, v;     // vertices at those positions
};

class Protocol {
public:
    Protocol(const MarkedGraph& g, double r) : g_(g), r_(r), pts_(g.mesh().points()) {}

    void run();

    std::unordered_set<std::uint64_t> included;
    std::unordered_map<std::uint64_t, double> settled;
    std::vector<std::vector<ExcludedEdgeRecord>> excluded;

private:
    const MarkedGraph& g_;
    double r_;
    const std::vector<Point>& pts_;
    Polygon P_;
    double scale_ = 0.0;  // magnitude reference for the credit assertion

    XY at(VertexId v) const { return pts_[v].xy(); }
    bool is_settled(VertexId x, VertexId y) const { return settled.count(edge_key(x, y)) != 0; }

    bool in_exterior_wedge(std::size_t pos, XY target) const;
    void process_hull_edge(VertexId u, VertexId v);
    double settle(VertexId u, VertexId v, double path_sum, double path_credit,
                  const std::vector<VertexId>& path_verts, double& credit_out);
};

bool Protocol::in_exterior_wedge(std::size_t pos, XY target) const {
    const std::size_t n = P_.size();
    const XY apex = at(P_.b[pos]);
    const XY prv = at(P_.b[(pos + n - 1) % n]);
    const XY nxt = at(P_.b[(pos + 1) % n]);
    AngularOrder ord{apex, prv, +1};
    if (ord.half(target) == 0) return false;  // exactly along the incoming step
    if (prv == nxt) return true;              // spur tip: everything else is outside
    return ord.before(target, nxt);
}

// Settle one edge: decide inclusion, record weights, credits and (for
// exclusions) the face-path records at both endpoints.
double Protocol::settle(VertexId u, VertexId v, double path_sum, double path_credit,
                        const std::vector<VertexId>& path_verts, double& credit_out) {
    if (is_settled(u, v)) throw Error("edge settled twice");
    const double len = dist(at(u), at(v));
    const auto decision = include_decision(path_sum, len, r_);
    double weight;
    if (decision == IncludeDecision::Include) {
        included.insert(edge_key(u, v));
        weight = len;
        credit_out = path_credit - len;
    } else {
        weight = path_sum;
        credit_out = path_credit;
        // orientation of the cell: path from u to v closed by the chord
        double area2 = 0.0;
        for (std::size_t i = 0; i + 1 < path_verts.size(); ++i)
            area2 += cross(at(path_verts[i]), at(path_verts[i + 1]));
        area2 += cross(at(path_verts.back()), at(path_verts.front()));
        const int bit_u = area2 > 0.0 ? 1 : 0;
        excluded[u].push_back({v, bit_u, weight});
        excluded[v].push_back({u, 1 - bit_u, weight});
    }
    settled[edge_key(u, v)] = weight;
    if (credit_out < r_ * weight - 1e-6 * scale_ || credit_out < -1e-6 * scale_)
        throw Error("pruning credit went negative");
    return weight;
}

void Protocol::process_hull_edge(VertexId u, VertexId v) {
    const std::size_t n = P_.size();
    // skip when the boundary already runs along u -> v
    for (std::size_t i = 0; i < n; ++i)
        if (P_.b[i] == u && P_.at(i + 1) == v) return;

    // locate the unique boundary occurrences facing the pocket
    std::size_t iu = n, iv = n;
    for (std::size_t i = 0; i < n; ++i) {
        if (P_.b[i] == u && in_exterior_wedge(i, at(v))) {
            if (iu != n) throw Error("ambiguous pocket start");
            iu = i;
        }
        if (P_.b[i] == v && in_exterior_wedge(i, at(u))) {
            if (iv != n) throw Error("ambiguous pocket end");
            iv = i;
        }
    }
    if (iu == n || iv == n) throw Error("pocket not found on the boundary");

    // pocket walk u .. v, forward along the boundary
    const std::size_t len = (iv + n - iu) % n + 1;
    std::vector<std::size_t> gpos(len);
    std::vector<VertexId> wv(len);
    for (std::size_t k = 0; k < len; ++k) {
        gpos[k] = (iu + k) % n;
        wv[k] = P_.b[gpos[k]];
    }

    // chords: unsettled surviving edges with both endpoints on the walk,
    // leaving each endpoint through its pocket-side wedge
    std::unordered_map<VertexId, std::vector<std::size_t>> pos_of;
    for (std::size_t k = 0; k < len; ++k) pos_of[wv[k]].push_back(k);
    std::vector<Chord> chords;
    std::unordered_set<std::uint64_t> registered;
    const std::uint64_t closing = edge_key(u, v);
    for (std::size_t k = 0; k < len; ++k) {
        const VertexId x = wv[k];
        for (const auto& me : g_.marked_edges(x)) {
            const VertexId y = me.to;
            if (edge_key(x, y) == closing) continue;  // settled as the root below
            if (is_settled(x, y) || registered.count(edge_key(x, y))) continue;
            if (!in_exterior_wedge(gpos[k], at(y))) continue;
            auto it = pos_of.find(y);
            if (it == pos_of.end()) continue;
            std::size_t ky = len;
            for (std::size_t cand : it->second) {
                if (cand == k) continue;
                if (in_exterior_wedge(gpos[cand], at(x))) {
                    if (ky != len) throw Error("chord matches two boundary occurrences");
                    ky = cand;
                }
            }
            if (ky == len) continue;  // far endpoint faces another pocket
            registered.insert(edge_key(x, y));
            chords.push_back({std::min(k, ky), std::max(k, ky), 0, 0});
            chords.back().u = wv[chords.back().a];
            chords.back().v = wv[chords.back().z];
        }
    }
    std::sort(chords.begin(), chords.end(), [](const Chord& a, const Chord& b) {
        if (a.a != b.a) return a.a < b.a;
        return a.z > b.z;
    });

    // laminar forest over the walk intervals, hull edge as the root
    const std::size_t root = chords.size();
    std::vector<std::vector<std::size_t>> children(chords.size() + 1);
    std::vector<std::size_t> stack{root};
    auto span_a = [&](std::size_t c) { return c == root ? std::size_t{0} : chords[c].a; };
    auto span_z = [&](std::size_t c) { return c == root ? len - 1 : chords[c].z; };
    for (std::size_t c = 0; c < chords.size(); ++c) {
        while (span_z(stack.back()) <= chords[c].a) stack.pop_back();
        if (chords[c].z > span_z(stack.back())) throw Error("crossing chords in a pocket");
        children[stack.back()].push_back(c);
        stack.push_back(c);
    }

    // settle bottom-up; each node's path is its uncovered steps plus the
    // chords of its direct children
    std::vector<double> node_weight(chords.size() + 1, 0.0);
    std::vector<double> node_credit(chords.size() + 1, 0.0);
    // iterative post-order over the forest
    std::vector<std::size_t> order;
    {
        std::vector<std::size_t> st{root};
        while (!st.empty()) {
            std::size_t c = st.back();
            st.pop_back();
            order.push_back(c);
            for (std::size_t ch : children[c]) st.push_back(ch);
        }
        std::reverse(order.begin(), order.end());
    }
    for (std::size_t c : order) {
        const std::size_t a = span_a(c), z = span_z(c);
        double sum = 0.0, cred = 0.0;
        std::vector<VertexId> path{wv[a]};
        std::size_t pos = a;
        std::size_t child_i = 0;
        // children are produced in increasing `a`
        while (pos < z) {
            if (child_i < children[c].size() && chords[children[c][child_i]].a == pos) {
                const std::size_t ch = children[c][child_i++];
                sum += node_weight[ch];
                cred += node_credit[ch];
                pos = chords[ch].z;
            } else {
                sum += P_.w[gpos[pos]];
                cred += P_.credit[gpos[pos]];
                ++pos;
            }
            path.push_back(wv[pos]);
        }
        const VertexId cu = (c == root) ? u : chords[c].u;
        const VertexId cv = (c == root) ? v : chords[c].v;
        node_weight[c] = settle(cu, cv, sum, cred, path, node_credit[c]);
    }

    // splice: the walk collapses to the single step u -> v
    Polygon np;
    np.b.reserve(n - len + 2);
    np.b.push_back(u);
    np.w.push_back(node_weight[root]);
    np.credit.push_back(node_credit[root]);
    for (std::size_t i = iv; i != iu; i = (i + 1) % n) {
        np.b.push_back(P_.b[i]);
        np.w.push_back(P_.w[i]);
        np.credit.push_back(P_.credit[i]);
    }
    P_ = std::move(np);
}

void Protocol::run() {
    const std::size_t n = g_.size();
    excluded.assign(n, {});
    const auto mst = marked_graph_mst(g_);
    for (auto [u, v] : mst) {
        included.insert(edge_key(u, v));
        settled[edge_key(u, v)] = dist(at(u), at(v));
    }
    for (const auto& p : pts_) scale_ = std::max({scale_, std::abs(p.x), std::abs(p.y)});
    scale_ = std::max(scale_, 1.0) * static_cast<double>(n);

    const TourPolygon tour = euler_tour_polygon(pts_, mst);
    P_.b = tour.boundary;
    P_.w = tour.step_weight;
    P_.credit.resize(P_.w.size());
    for (std::size_t i = 0; i < P_.w.size(); ++i) P_.credit[i] = r_ * P_.w[i];

    const auto& hull = g_.mesh().hull_ccw();
    for (std::size_t i = 0; i < hull.size(); ++i)
        process_hull_edge(hull[i], hull[(i + 1) % hull.size()]);

    if (P_.size() != hull.size()) throw Error("boundary did not close on the hull");
}

}  // namespace

namespace {
void sort_records(std::vector<std::vector<ExcludedEdgeRecord>>& recs) {
    for (auto& list : recs)
        std::sort(list.begin(), list.end(),
                  [](const ExcludedEdgeRecord& a, const ExcludedEdgeRecord& b) {
                      return a.other < b.other;
                  });
}
}  // namespace

LightGraph LightGraph::build(const MarkedGraph& g, double r) {
    if (!(r > 0.0)) throw BadR("r must be positive");
    Protocol proto(g, r);
    proto.run();
    LightGraph lg;
    lg.base_ = &g;
    lg.r_ = r;
    lg.included_ = std::move(proto.included);
    lg.excluded_ = std::move(proto.excluded);
    sort_records(lg.excluded_);
    lg.settled_weight_ = std::move(proto.settled);
    return lg;
}

LightGraph LightGraph::from_parts(const MarkedGraph& g, double r,
                                  std::vector<std::pair<VertexId, VertexId>> included,
                                  std::vector<std::vector<ExcludedEdgeRecord>> excluded) {
    LightGraph lg;
    lg.base_ = &g;
    lg.r_ = r;
    for (auto [u, v] : included) {
        lg.included_.insert(edge_key(u, v));
        lg.settled_weight_[edge_key(u, v)] = dist(g.mesh().point(u).xy(), g.mesh().point(v).xy());
    }
    lg.excluded_ = std::move(excluded);
    sort_records(lg.excluded_);
    for (VertexId u = 0; u < lg.excluded_.size(); ++u)
        for (const auto& rec : lg.excluded_[u])
            lg.settled_weight_[edge_key(u, rec.other)] = rec.weight;
    return lg;
}

std::vector<std::pair<VertexId, VertexId>> LightGraph::included_edges() const {
    std::vector<std::pair<VertexId, VertexId>> out;
    out.reserve(included_.size());
    for (auto k : included_)
        out.emplace_back(static_cast<VertexId>(k >> 32), static_cast<VertexId>(k & 0xffffffffu));
    std::sort(out.begin(), out.end());
    return out;
}

double LightGraph::total_weight() const {
    double w = 0.0;
    for (auto k : included_) {
        const auto u = static_cast<VertexId>(k >> 32), v = static_cast<VertexId>(k & 0xffffffffu);
        w += dist(base_->mesh().point(u).xy(), base_->mesh().point(v).xy());
    }
    return w;
}

double LightGraph::settled_weight(VertexId u, VertexId v) const {
    auto it = settled_weight_.find(edge_key(u, v));
    if (it == settled_weight_.end()) throw Error("edge was never settled");
    return it->second;
}

LocalView LightGraph::view(VertexId v) const {
    if (v >= excluded_.size()) throw UnknownVertex("view: vertex id out of range");
    const auto& mesh = base_->mesh();
    std::vector<ViewEdge> edges;
    for (const auto& e : base_->marked_edges(v))
        edges.push_back({e.to, mesh.point(e.to).xy(), e.mark, includes(v, e.to)});
    std::vector<ViewSemi> semi;
    for (const auto& rec : base_->semi_records(v))
        semi.push_back({rec.other, mesh.point(rec.other).xy(), rec.side_bit});
    std::vector<ViewExcluded> exc;
    for (const auto& rec : excluded_[v])
        exc.push_back({rec.other, mesh.point(rec.other).xy(), rec.dir_bit, rec.weight});
    return LocalView(v, mesh.point(v).xy(), std::move(edges), std::move(semi), std::move(exc));
}

std::vector<VertexId> recover_face_path(const LightGraph& lg, VertexId u,
                                        const ExcludedEdgeRecord& rec) {
    const auto& mesh = lg.base().mesh();
    const int sense = rec.dir_bit ? -1 : +1;  // 1: rotate clockwise
    const std::size_t guard = 4 * lg.base().size() + 16;

    std::vector<VertexId> path{u};
    VertexId cur = u;
    XY ref = mesh.point(rec.other).xy();  // first rotation starts at the chord
    for (std::size_t step = 0; step < guard; ++step) {
        const XY apex = mesh.point(cur).xy();
        AngularOrder ord{apex, ref, sense};
        const VertexId* best = nullptr;
        XY best_xy{};
        bool best_is_back = false;
        for (const auto& e : lg.base().marked_edges(cur)) {
            if (!lg.includes(cur, e.to)) continue;
            const XY exy = mesh.point(e.to).xy();
            const bool is_back = ord.half(exy) == 0;  // exactly along the reference
            if (!best) {
                best = &e.to;
                best_xy = exy;
                best_is_back = is_back;
                continue;
            }
            const bool better = best_is_back ? !is_back : (!is_back && ord.before(exy, best_xy));
            if (better) {
                best = &e.to;
                best_xy = exy;
                best_is_back = is_back;
            }
        }
        if (!best) throw BrokenRecord("face walk stranded on an isolated vertex");
        path.push_back(*best);
        if (*best == rec.other) return path;
        ref = apex;  // rotate from the edge we arrived on
        cur = *best;
    }
    throw BrokenRecord("face walk did not close");
}

}  // namespace spanroute
