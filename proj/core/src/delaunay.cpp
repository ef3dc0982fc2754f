#include "spanroute/delaunay.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <map>
#include <numeric>
#include <unordered_map>

namespace spanroute {

namespace {

constexpr VertexId kGhostV = std::numeric_limits<VertexId>::max();

struct BTri {
    std::array<VertexId, 3> v;
    std::array<TriId, 3> nbr;  // nbr[i] across the edge opposite v[i]
    bool alive = true;
    bool is_ghost() const { return v[2] == kGhostV; }
};

// 21-bit Morton code per axis; insertion in this order keeps the located
// triangle close to the previous insertion.
std::uint64_t morton(double nx, double ny) {
    auto spread = [](std::uint64_t w) {
        w &= 0x1fffff;
        w = (w | (w << 32)) & 0x1f00000000ffffULL;
        w = (w | (w << 16)) & 0x1f0000ff0000ffULL;
        w = (w | (w << 8)) & 0x100f00f00f00f00fULL;
        w = (w | (w << 4)) & 0x10c30c30c30c30c3ULL;
        w = (w | (w << 2)) & 0x1249249249249249ULL;
        return w;
    };
    const double scale = 2097151.0;  // 2^21 - 1
    auto sx = static_cast<std::uint64_t>(std::clamp(nx, 0.0, 1.0) * scale);
    auto sy = static_cast<std::uint64_t>(std::clamp(ny, 0.0, 1.0) * scale);
    return spread(sx) | (spread(sy) << 1);
}

class Builder {
public:
    explicit Builder(const std::vector<Point>& pts) : pts_(pts) {}

    void run() {
        check_duplicates();
        const auto order = insertion_order();
        seed(order);
        std::vector<bool> inserted(pts_.size(), false);
        inserted[seed_ids_[0]] = inserted[seed_ids_[1]] = inserted[seed_ids_[2]] = true;
        for (VertexId vid : order) {
            if (inserted[vid]) continue;
            insert(vid);
            inserted[vid] = true;
        }
    }

    const std::vector<BTri>& tris() const { return tris_; }

private:
    const std::vector<Point>& pts_;
    std::vector<BTri> tris_;
    std::vector<TriId> free_;
    std::array<VertexId, 3> seed_ids_{};
    TriId last_ = 0;

    XY at(VertexId v) const { return pts_[v].xy(); }

    void check_duplicates() {
        std::vector<VertexId> idx(pts_.size());
        std::iota(idx.begin(), idx.end(), 0u);
        std::sort(idx.begin(), idx.end(), [&](VertexId a, VertexId b) {
            if (pts_[a].x != pts_[b].x) return pts_[a].x < pts_[b].x;
            if (pts_[a].y != pts_[b].y) return pts_[a].y < pts_[b].y;
            return a < b;
        });
        std::vector<std::uint32_t> dups;
        for (std::size_t i = 1; i < idx.size(); ++i) {
            if (pts_[idx[i]].x == pts_[idx[i - 1]].x && pts_[idx[i]].y == pts_[idx[i - 1]].y) {
                dups.push_back(idx[i - 1]);
                dups.push_back(idx[i]);
            }
        }
        if (!dups.empty()) throw DuplicatePoints("duplicate coordinates in input", dups);
    }

    std::vector<VertexId> insertion_order() const {
        double minx = pts_[0].x, maxx = minx, miny = pts_[0].y, maxy = miny;
        for (const auto& p : pts_) {
            minx = std::min(minx, p.x);
            maxx = std::max(maxx, p.x);
            miny = std::min(miny, p.y);
            maxy = std::max(maxy, p.y);
        }
        const double ex = std::max(maxx - minx, 1e-300), ey = std::max(maxy - miny, 1e-300);
        std::vector<std::pair<std::uint64_t, VertexId>> keyed(pts_.size());
        for (std::size_t i = 0; i < pts_.size(); ++i)
            keyed[i] = {morton((pts_[i].x - minx) / ex, (pts_[i].y - miny) / ey),
                        static_cast<VertexId>(i)};
        std::sort(keyed.begin(), keyed.end());
        std::vector<VertexId> order(pts_.size());
        for (std::size_t i = 0; i < pts_.size(); ++i) order[i] = keyed[i].second;
        return order;
    }

    TriId fresh() {
        if (!free_.empty()) {
            TriId t = free_.back();
            free_.pop_back();
            tris_[t].alive = true;
            return t;
        }
        tris_.push_back(BTri{});
        return static_cast<TriId>(tris_.size() - 1);
    }

    void seed(const std::vector<VertexId>& order) {
        const VertexId a = order[0], b = order[1];
        std::size_t k = 2;
        while (k < order.size() && orient_sign(at(a), at(b), at(order[k])) == 0) ++k;
        if (k == order.size()) throw AllCollinear("all input points are collinear");
        VertexId c = order[k];
        VertexId v0 = a, v1 = b;
        if (orient_sign(at(a), at(b), at(c)) < 0) std::swap(v0, v1);
        seed_ids_ = {v0, v1, c};

        const TriId t = fresh(), g0 = fresh(), g1 = fresh(), g2 = fresh();
        tris_[t] = {{v0, v1, c}, {g0, g1, g2}, true};
        // ghost (a, b, kGhostV) owns hull edge {a, b} with the outside to the
        // left of a -> b; nbr[2] (across the hull edge) is the inner triangle
        tris_[g0] = {{c, v1, kGhostV}, {g2, g1, t}, true};   // opposite v0
        tris_[g1] = {{v0, c, kGhostV}, {g0, g2, t}, true};   // opposite v1
        tris_[g2] = {{v1, v0, kGhostV}, {g1, g0, t}, true};  // opposite c
        last_ = t;
    }

    bool in_circum(const BTri& t, XY p) const {
        if (t.is_ghost()) {
            // open half plane outside the hull edge; a collinear point only
            // counts when it projects onto the edge span, otherwise it pairs
            // with a hull edge into a degenerate triangle
            const XY a = at(t.v[0]), b = at(t.v[1]);
            const int o = orient_sign(a, b, p);
            if (o != 0) return o > 0;
            return dot_sign(a.x, a.y, b.x, b.y, p.x, p.y) >= 0 &&
                   dot_sign(b.x, b.y, a.x, a.y, p.x, p.y) >= 0;
        }
        return incircle_sign(at(t.v[0]).x, at(t.v[0]).y, at(t.v[1]).x, at(t.v[1]).y,
                             at(t.v[2]).x, at(t.v[2]).y, p.x, p.y) > 0;
    }

    TriId locate(XY p) const {
        TriId cur = last_;
        if (!tris_[cur].alive) {
            for (TriId i = 0; i < tris_.size(); ++i)
                if (tris_[i].alive && !tris_[i].is_ghost()) { cur = i; break; }
        }
        TriId prev = kNoTri;
        std::size_t steps = 0;
        const std::size_t cap = 4 * tris_.size() + 64;
        while (true) {
            if (++steps > cap) break;  // fall back to exhaustive scan
            const BTri& t = tris_[cur];
            if (t.is_ghost()) {
                if (in_circum(t, p)) return cur;
                // hop along the ghost ring; it is a cycle, so this terminates
                TriId nxt = t.nbr[0];
                if (nxt == prev) nxt = t.nbr[1];
                prev = cur;
                cur = nxt;
                continue;
            }
            int crossed = -1;
            for (int e = 0; e < 3; ++e) {
                const VertexId x = t.v[(e + 1) % 3], y = t.v[(e + 2) % 3];
                if (orient_sign(at(x), at(y), p) < 0 && t.nbr[e] != prev) {
                    crossed = e;
                    break;
                }
            }
            if (crossed < 0) {
                for (int e = 0; e < 3; ++e) {
                    const VertexId x = t.v[(e + 1) % 3], y = t.v[(e + 2) % 3];
                    if (orient_sign(at(x), at(y), p) < 0) { crossed = e; break; }
                }
            }
            if (crossed < 0) return cur;
            prev = cur;
            cur = t.nbr[crossed];
        }
        for (TriId i = 0; i < tris_.size(); ++i)
            if (tris_[i].alive && in_circum(tris_[i], p)) return i;
        throw Error("point location failed");
    }

    void insert(VertexId vid) {
        const XY p = at(vid);
        TriId seed_tri = locate(p);
        if (!in_circum(tris_[seed_tri], p)) {
            // walk landed on a triangle containing p on an edge/boundary case;
            // scan its neighbors first, then everything
            bool found = false;
            for (int e = 0; e < 3 && !found; ++e) {
                TriId n = tris_[seed_tri].nbr[e];
                if (n != kNoTri && in_circum(tris_[n], p)) {
                    seed_tri = n;
                    found = true;
                }
            }
            if (!found) {
                for (TriId i = 0; i < tris_.size() && !found; ++i)
                    if (tris_[i].alive && in_circum(tris_[i], p)) {
                        seed_tri = i;
                        found = true;
                    }
            }
            if (!found) throw Error("insertion cavity is empty");
        }

        // flood the cavity
        std::vector<TriId> cavity;
        std::vector<TriId> stack{seed_tri};
        std::unordered_map<TriId, bool> mark;
        mark[seed_tri] = true;
        while (!stack.empty()) {
            TriId t = stack.back();
            stack.pop_back();
            cavity.push_back(t);
            for (int e = 0; e < 3; ++e) {
                TriId n = tris_[t].nbr[e];
                if (n == kNoTri || mark.count(n)) continue;
                if (in_circum(tris_[n], p)) {
                    mark[n] = true;
                    stack.push_back(n);
                } else {
                    mark[n] = false;
                }
            }
        }

        // boundary edges, directed as they appear in the dying triangles
        struct Bedge {
            VertexId x, y;
            TriId outer;
        };
        std::vector<Bedge> boundary;
        for (TriId t : cavity) {
            for (int e = 0; e < 3; ++e) {
                TriId n = tris_[t].nbr[e];
                const bool in_cavity = (n != kNoTri) && mark.count(n) && mark[n];
                if (!in_cavity)
                    boundary.push_back({tris_[t].v[(e + 1) % 3], tris_[t].v[(e + 2) % 3], n});
            }
        }
        for (TriId t : cavity) {
            tris_[t].alive = false;
            free_.push_back(t);
        }

        // star the new vertex to every boundary edge
        std::unordered_map<VertexId, TriId> by_start;
        std::unordered_map<VertexId, TriId> by_end;
        std::vector<TriId> fresh_ids;
        fresh_ids.reserve(boundary.size());
        for (const Bedge& be : boundary) {
            TriId t = fresh();
            std::array<VertexId, 3> tv{be.x, be.y, vid};
            // keep the ghost sentinel in slot 2
            while (tv[2] != kGhostV &&
                   (tv[0] == kGhostV || tv[1] == kGhostV)) {
                std::rotate(tv.begin(), tv.begin() + 1, tv.end());
            }
            tris_[t].v = tv;
            tris_[t].nbr = {kNoTri, kNoTri, kNoTri};
            // outer neighbor sits across the edge {be.x, be.y}
            int slot = 0;
            while (tris_[t].v[slot] == be.x || tris_[t].v[slot] == be.y) ++slot;
            tris_[t].nbr[slot] = be.outer;
            if (be.outer != kNoTri) {
                BTri& o = tris_[be.outer];
                for (int e = 0; e < 3; ++e)
                    if (o.v[e] != be.x && o.v[e] != be.y) {
                        o.nbr[e] = t;
                        break;
                    }
            }
            if (!by_start.emplace(be.x, t).second || !by_end.emplace(be.y, t).second)
                throw Error("cavity boundary is not a simple cycle");
            fresh_ids.push_back(t);
        }
        // link the fan: the triangle built on (x, y) meets the one built on
        // (y, *) across {y, vid} and the one built on (*, x) across {vid, x}
        for (std::size_t i = 0; i < boundary.size(); ++i) {
            const Bedge& be = boundary[i];
            BTri& bt = tris_[fresh_ids[i]];
            for (int e = 0; e < 3; ++e) {
                if (bt.v[e] == be.x) bt.nbr[e] = by_start.at(be.y);
                if (bt.v[e] == be.y) bt.nbr[e] = by_end.at(be.x);
            }
        }
        last_ = fresh_ids.empty() ? last_ : fresh_ids.front();
        for (TriId t : fresh_ids)
            if (!tris_[t].is_ghost()) {
                last_ = t;
                break;
            }
    }
};

}  // namespace

TriangulationMesh TriangulationMesh::build(std::vector<Point> points) {
    if (points.size() < 3) throw Error("need at least 3 points");
    for (std::size_t i = 0; i < points.size(); ++i) {
        points[i].id = static_cast<VertexId>(i);
        if (!std::isfinite(points[i].x) || !std::isfinite(points[i].y))
            throw Error("coordinates must be finite");
    }

    Builder b(points);
    b.run();

    TriangulationMesh m;
    m.points_ = std::move(points);
    const std::size_t n = m.points_.size();

    // compact the finite triangles
    std::vector<TriId> remap(b.tris().size(), kNoTri);
    for (TriId i = 0; i < b.tris().size(); ++i) {
        const BTri& t = b.tris()[i];
        if (t.alive && !t.is_ghost()) {
            remap[i] = static_cast<TriId>(m.tris_.size());
            m.tris_.push_back(Triangle{t.v, {kNoTri, kNoTri, kNoTri}});
        }
    }
    for (TriId i = 0; i < b.tris().size(); ++i) {
        if (remap[i] == kNoTri) continue;
        const BTri& t = b.tris()[i];
        for (int e = 0; e < 3; ++e) {
            TriId nb = t.nbr[e];
            m.tris_[remap[i]].nbr[e] = (nb != kNoTri) ? remap[nb] : kNoTri;
        }
    }

    // hull: each live ghost (a, b, ghost) owns the ccw hull edge b -> a
    std::unordered_map<VertexId, VertexId> succ;
    for (const BTri& t : b.tris())
        if (t.alive && t.is_ghost()) succ[t.v[1]] = t.v[0];
    m.on_hull_.assign(n, false);
    if (!succ.empty()) {
        VertexId start = succ.begin()->first;
        for (const auto& [k, v] : succ)
            if (m.points_[k].x < m.points_[start].x ||
                (m.points_[k].x == m.points_[start].x && m.points_[k].y < m.points_[start].y))
                start = k;
        VertexId cur = start;
        do {
            m.hull_.push_back(cur);
            m.on_hull_[cur] = true;
            cur = succ.at(cur);
        } while (cur != start && m.hull_.size() <= n);
        if (m.hull_.size() > n) throw Error("hull walk did not close");
    }

    // per-vertex incident triangle and edge set
    std::vector<TriId> vtri(n, kNoTri);
    for (TriId i = 0; i < m.tris_.size(); ++i)
        for (int e = 0; e < 3; ++e) {
            vtri[m.tris_[i].v[e]] = i;
            VertexId a = m.tris_[i].v[e], c = m.tris_[i].v[(e + 1) % 3];
            m.edges_.insert(edge_key(a, c));
        }

    // neighbor rings: rotate counterclockwise around each vertex, then store
    // the reversed (clockwise) sequence
    m.rings_.assign(n, {});
    for (VertexId u = 0; u < n; ++u) {
        TriId t0 = vtri[u];
        if (t0 == kNoTri) throw Error("vertex with no incident triangle");
        auto idx_of = [&](TriId t) {
            for (int e = 0; e < 3; ++e)
                if (m.tris_[t].v[e] == u) return e;
            throw Error("adjacency corrupted");
        };
        // rotate clockwise first so hull vertices start the ccw walk at a
        // hull edge
        TriId t = t0;
        while (true) {
            int i = idx_of(t);
            TriId prv = m.tris_[t].nbr[(i + 2) % 3];  // across edge {u, v[i+1]}
            if (prv == kNoTri || prv == t0) break;
            t = prv;
        }
        const TriId first = t;
        std::vector<VertexId> ccw;
        while (true) {
            int i = idx_of(t);
            ccw.push_back(m.tris_[t].v[(i + 1) % 3]);
            TriId nxt = m.tris_[t].nbr[(i + 1) % 3];  // across edge {u, v[i+2]}
            if (nxt == kNoTri) {
                ccw.push_back(m.tris_[t].v[(i + 2) % 3]);
                break;
            }
            if (nxt == first) break;
            t = nxt;
        }
        std::reverse(ccw.begin(), ccw.end());
        if (!m.on_hull_[u]) {
            // canonical cyclic start: smallest neighbor id first
            auto mn = std::min_element(ccw.begin(), ccw.end());
            std::rotate(ccw.begin(), mn, ccw.end());
        }
        m.rings_[u] = std::move(ccw);
    }
    return m;
}

void TriangulationMesh::check_vertex(VertexId v) const {
    if (v >= points_.size()) throw UnknownVertex("vertex id out of range");
}

bool TriangulationMesh::has_edge(VertexId u, VertexId v) const {
    return edges_.count(edge_key(u, v)) != 0;
}

std::vector<std::pair<VertexId, VertexId>> TriangulationMesh::edges() const {
    std::vector<std::pair<VertexId, VertexId>> out;
    out.reserve(edges_.size());
    for (auto k : edges_)
        out.emplace_back(static_cast<VertexId>(k >> 32),
                         static_cast<VertexId>(k & 0xffffffffu));
    std::sort(out.begin(), out.end());
    return out;
}

const std::vector<VertexId>& TriangulationMesh::ring_cw(VertexId u) const {
    check_vertex(u);
    return rings_[u];
}

std::vector<VertexId> TriangulationMesh::neighbors_cw(VertexId u) const {
    return ring_cw(u);
}

std::vector<VertexId> TriangulationMesh::neighbors_cw(VertexId u, const ConeSystem& cones,
                                                      int cone) const {
    const auto& ring = ring_cw(u);
    const XY apex = point(u).xy();
    std::vector<bool> member(ring.size());
    for (std::size_t i = 0; i < ring.size(); ++i)
        member[i] = cone_index(cones, apex, point(ring[i]).xy()) == cone;
    std::vector<VertexId> out;
    if (on_hull(u)) {
        for (std::size_t i = 0; i < ring.size(); ++i)
            if (member[i]) out.push_back(ring[i]);
        return out;
    }
    // cyclic ring: the cone members form one contiguous run; start just
    // after a gap
    std::size_t start = 0;
    while (start < ring.size() && member[start]) ++start;
    if (start == ring.size()) return ring;  // everything in one cone (tiny rings)
    for (std::size_t k = 0; k < ring.size(); ++k) {
        std::size_t i = (start + 1 + k) % ring.size();
        if (member[i]) out.push_back(ring[i]);
    }
    return out;
}

std::vector<std::array<VertexId, 3>> TriangulationMesh::incident_triangles(VertexId v) const {
    const auto& ring = ring_cw(v);
    std::vector<std::array<VertexId, 3>> out;
    const std::size_t pairs = on_hull(v) ? (ring.empty() ? 0 : ring.size() - 1) : ring.size();
    for (std::size_t i = 0; i < pairs; ++i) {
        VertexId a = ring[i], b = ring[(i + 1) % ring.size()];
        if (!has_edge(a, b)) continue;  // hull pinch through the outer face
        out.push_back({v, b, a});       // (v, b, a) is counterclockwise
    }
    return out;
}

std::array<VertexId, 3> TriangulationMesh::rightmost_intersecting_triangle(VertexId v, XY s,
                                                                           XY t) const {
    check_vertex(v);
    // clip [s, t] (parametrised over [0, 1]) against each incident triangle
    auto interval = [&](const std::array<VertexId, 3>& tri, double& lo, double& hi) {
        lo = 0.0;
        hi = 1.0;
        for (int e = 0; e < 3 && lo <= hi; ++e) {
            const XY a = point(tri[e]).xy(), b = point(tri[(e + 1) % 3]).xy();
            const double fa = cross(b - a, s - a);  // >= 0 means left of a->b
            const double fb = cross(b - a, t - a);
            if (fa < 0.0 && fb < 0.0) {
                lo = 1.0;
                hi = 0.0;
                return false;
            }
            if (fa >= 0.0 && fb >= 0.0) continue;
            const double tcross = fa / (fa - fb);
            if (fa < 0.0)
                lo = std::max(lo, tcross);
            else
                hi = std::min(hi, tcross);
        }
        return lo <= hi;
    };
    bool found = false;
    double best_lo = 0, best_hi = -1;
    std::array<VertexId, 3> best{};
    for (auto tri : incident_triangles(v)) {
        double lo, hi;
        if (!interval(tri, lo, hi)) continue;
        if (!found || hi > best_hi || (hi == best_hi && lo > best_lo)) {
            found = true;
            best_hi = hi;
            best_lo = lo;
            best = tri;
        }
    }
    if (!found) throw NoIntersectingTriangle("no incident triangle meets the segment");
    return best;
}

}  // namespace spanroute
