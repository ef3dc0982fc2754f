#include "spanroute/spanner.hpp"

#include <algorithm>
#include <unordered_map>

namespace spanroute {

namespace {

// classification of one cone's clockwise-ordered neighbor list
struct ConeRun {
    int cone;
    std::vector<VertexId> members;  // clockwise
};

std::vector<ConeRun> cone_runs(const TriangulationMesh& mesh, const ConeSystem& cones,
                               VertexId u) {
    const auto& ring = mesh.ring_cw(u);
    const XY apex = mesh.point(u).xy();
    const std::size_t k = ring.size();
    std::vector<int> cone_of(k);
    for (std::size_t i = 0; i < k; ++i)
        cone_of[i] = cone_index(cones, apex, mesh.point(ring[i]).xy());

    // angles decrease monotonically along a clockwise ring, so each cone
    // occupies one contiguous stretch; cyclic rings are rotated to a cone
    // boundary first
    std::size_t start = 0;
    if (!mesh.on_hull(u)) {
        for (std::size_t i = 0; i < k; ++i)
            if (cone_of[i] != cone_of[(i + k - 1) % k]) {
                start = i;
                break;
            }
    }
    std::vector<ConeRun> runs;
    for (std::size_t d = 0; d < k; ++d) {
        const std::size_t i = (start + d) % k;
        if (runs.empty() || runs.back().cone != cone_of[i]) runs.push_back({cone_of[i], {}});
        runs.back().members.push_back(ring[i]);
    }
    return runs;
}

struct ConeMarks {
    std::unordered_map<VertexId, ProtectionMark> mark;
    std::vector<VertexId> unmarked;  // clockwise positions of the dropped chords
    long middle_pos = -1;
    std::vector<long> unmarked_pos;
};

ConeMarks classify_run(const TriangulationMesh& mesh, VertexId u,
                       const std::vector<VertexId>& nbrs) {
    ConeMarks out;
    if (nbrs.empty()) return out;
    const std::size_t m = nbrs.size() - 1;
    out.mark[nbrs[0]] = ProtectionMark::Extreme;
    out.mark[nbrs[m]] = ProtectionMark::Extreme;
    if (nbrs.size() >= 3) {
        out.mark.emplace(nbrs[1], ProtectionMark::Penultimate);
        out.mark.emplace(nbrs[m - 1], ProtectionMark::Penultimate);
    }
    if (nbrs.size() >= 5) {
        const XY apex = mesh.point(u).xy();
        long best = -1;
        for (std::size_t i = 2; i + 2 <= m; ++i) {
            if (out.mark.count(nbrs[i])) continue;
            if (best < 0) {
                best = static_cast<long>(i);
                continue;
            }
            const XY a = mesh.point(nbrs[i]).xy(), b = mesh.point(nbrs[best]).xy();
            const int c = cmp_dist2(apex.x, apex.y, a.x, a.y, apex.x, apex.y, b.x, b.y);
            if (c < 0 || (c == 0 && nbrs[i] < nbrs[best])) best = static_cast<long>(i);
        }
        if (best >= 0) {
            out.mark[nbrs[best]] = ProtectionMark::Middle;
            out.middle_pos = best;
        }
    }
    for (std::size_t i = 0; i < nbrs.size(); ++i)
        if (!out.mark.count(nbrs[i])) {
            out.unmarked.push_back(nbrs[i]);
            out.unmarked_pos.push_back(static_cast<long>(i));
        }
    return out;
}

}  // namespace

std::map<VertexId, std::optional<ProtectionMark>> classify_cone_edges(
    const TriangulationMesh& mesh, const ConeSystem& cones, VertexId u, int cone) {
    mesh.check_vertex(u);
    const auto nbrs = mesh.neighbors_cw(u, cones, cone);
    const ConeMarks cm = classify_run(mesh, u, nbrs);
    std::map<VertexId, std::optional<ProtectionMark>> out;
    for (VertexId v : nbrs) {
        auto it = cm.mark.find(v);
        out[v] = (it == cm.mark.end()) ? std::nullopt : std::optional(it->second);
    }
    return out;
}

MarkedGraph MarkedGraph::build(const TriangulationMesh& mesh, double theta) {
    MarkedGraph g;
    g.mesh_ = &mesh;
    g.cones_ = ConeSystem::from_theta(theta);
    const std::size_t n = mesh.size();

    std::vector<std::unordered_map<VertexId, ProtectionMark>> marks(n);
    g.semi_.assign(n, {});

    for (VertexId u = 0; u < n; ++u) {
        for (const ConeRun& run : cone_runs(mesh, g.cones_, u)) {
            ConeMarks cm = classify_run(mesh, u, run.members);
            for (const auto& [v, mk] : cm.mark) marks[u].emplace(v, mk);
            // every chord left unmarked at u survives only as a record at
            // its far endpoint, tagged with the side of u's middle edge
            for (std::size_t i = 0; i < cm.unmarked.size(); ++i) {
                if (cm.middle_pos < 0) throw Error("dropped chord without a middle edge");
                g.semi_[cm.unmarked[i]].push_back(
                    {u, cm.unmarked_pos[i] > cm.middle_pos ? 1 : 0});
            }
        }
    }

    g.marked_.assign(n, {});
    for (VertexId u = 0; u < n; ++u) {
        for (VertexId v : mesh.ring_cw(u)) {
            auto mu = marks[u].find(v);
            if (mu == marks[u].end()) continue;
            if (!marks[v].count(u)) continue;
            g.marked_[u].push_back({v, mu->second});
            g.edges_.insert(edge_key(u, v));
        }
    }

    // a dropped edge must be protected at the endpoint holding its record
    for (VertexId v = 0; v < n; ++v)
        for (const auto& rec : g.semi_[v])
            if (!marks[v].count(rec.other))
                throw Error("edge unprotected at both endpoints");
    for (auto& list : g.semi_)
        std::sort(list.begin(), list.end(),
                  [](const SemiProtectedRecord& a, const SemiProtectedRecord& b) {
                      return a.other < b.other;
                  });
    return g;
}

MarkedGraph MarkedGraph::from_parts(const TriangulationMesh& mesh, double theta,
                                    std::vector<std::vector<MarkedEdge>> marked,
                                    std::vector<std::vector<SemiProtectedRecord>> semi) {
    MarkedGraph g;
    g.mesh_ = &mesh;
    g.cones_ = ConeSystem::from_theta(theta);
    g.marked_ = std::move(marked);
    g.semi_ = std::move(semi);
    for (auto& list : g.semi_)
        std::sort(list.begin(), list.end(),
                  [](const SemiProtectedRecord& a, const SemiProtectedRecord& b) {
                      return a.other < b.other;
                  });
    for (VertexId u = 0; u < g.marked_.size(); ++u)
        for (const auto& e : g.marked_[u]) g.edges_.insert(edge_key(u, e.to));
    return g;
}

std::vector<std::pair<VertexId, VertexId>> MarkedGraph::edges() const {
    std::vector<std::pair<VertexId, VertexId>> out;
    out.reserve(edges_.size());
    for (auto k : edges_)
        out.emplace_back(static_cast<VertexId>(k >> 32), static_cast<VertexId>(k & 0xffffffffu));
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<ProtectionMark> MarkedGraph::mark_at(VertexId v, VertexId to) const {
    for (const auto& e : marked_.at(v))
        if (e.to == to) return e.mark;
    return std::nullopt;
}

std::size_t MarkedGraph::max_degree() const {
    std::size_t d = 0;
    for (const auto& l : marked_) d = std::max(d, l.size());
    return d;
}

LocalView MarkedGraph::view(VertexId v) const {
    if (v >= marked_.size()) throw UnknownVertex("view: vertex id out of range");
    std::vector<ViewEdge> edges;
    edges.reserve(marked_[v].size());
    for (const auto& e : marked_[v])
        edges.push_back({e.to, mesh_->point(e.to).xy(), e.mark, true});
    std::vector<ViewSemi> semi;
    semi.reserve(semi_[v].size());
    for (const auto& r : semi_[v])
        semi.push_back({r.other, mesh_->point(r.other).xy(), r.side_bit});
    return LocalView(v, mesh_->point(v).xy(), std::move(edges), std::move(semi), {});
}

const ViewEdge* LocalView::find_edge(VertexId to) const {
    for (const auto& e : edges_)
        if (e.to == to) return &e;
    return nullptr;
}

const ViewSemi* LocalView::find_semi(VertexId other) const {
    for (const auto& r : semi_)
        if (r.other == other) return &r;
    return nullptr;
}

const ViewExcluded* LocalView::find_excluded(VertexId other) const {
    for (const auto& r : excluded_)
        if (r.other == other) return &r;
    return nullptr;
}

XY LocalView::coords_of(VertexId v) const {
    if (v == id_) return at_;
    if (const auto* e = find_edge(v)) return e->to_xy;
    if (const auto* r = find_semi(v)) return r->other_xy;
    if (const auto* r = find_excluded(v)) return r->other_xy;
    throw UnknownVertex("vertex not visible through this view");
}

std::size_t LocalView::word_count() const {
    return 3 + edges_.size() + semi_.size() + excluded_.size();
}

}  // namespace spanroute
