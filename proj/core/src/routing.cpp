#include "spanroute/routing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

namespace spanroute {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kInf = std::numeric_limits<double>::infinity();

double polar(XY v) {
    double a = std::atan2(v.y, v.x);
    return a < 0.0 ? a + kTwoPi : a;
}

double cw_arc_span(const Circle& c, XY from, XY to) {
    double d = polar(from - c.center) - polar(to - c.center);
    if (d < 0.0) d += kTwoPi;
    return d;
}

// The query segment with the degeneracy rule baked in: a point exactly on
// the carrier line counts as lying above it.
struct Seg {
    XY s, t;

    int side(XY p) const { return orient_sign(s, t, p) >= 0 ? +1 : -1; }

    bool crosses(XY a, XY b) const {
        if (side(a) == side(b)) return false;
        const int o1 = orient_sign(a, b, s);
        const int o2 = orient_sign(a, b, t);
        return o1 * o2 <= 0;  // crossing point within the closed segment
    }

    double param(XY p) const { return dot(p - s, t - s) / norm2(t - s); }

    double cross_param(XY a, XY b) const {
        const XY e = b - a;
        return cross(a - s, e) / cross(t - s, e);
    }
};

// Parameter interval of [seg] inside the (closed) triangle. A triangle that
// only touches the segment at a vertex yields a point interval; the slack
// absorbs the rounding of the two clip parameters meeting there.
std::optional<std::pair<double, double>> tri_interval(const Seg& seg, XY a, XY b, XY c) {
    if (orient_sign(a, b, c) < 0) std::swap(b, c);
    constexpr double kSlack = 1e-9;
    double lo = 0.0, hi = 1.0;
    const XY corners[3] = {a, b, c};
    for (int e = 0; e < 3; ++e) {
        const XY x = corners[e], y = corners[(e + 1) % 3];
        const double fs = cross(y - x, seg.s - x);
        const double ft = cross(y - x, seg.t - x);
        if (fs < 0.0 && ft < 0.0) return std::nullopt;
        if (fs >= 0.0 && ft >= 0.0) continue;
        const double tc = fs / (fs - ft);
        if (fs < 0.0)
            lo = std::max(lo, tc);
        else
            hi = std::min(hi, tc);
        if (lo > hi + kSlack) return std::nullopt;
    }
    if (lo > hi) lo = hi = 0.5 * (lo + hi);
    return std::make_pair(lo, hi);
}

// Circular order of directions around `apex`, counterclockwise from the ray
// toward `toward`, with on-line directions perturbed upward: exactly-forward
// sorts first within the upper half, exactly-backward last in it.
struct RayOrder {
    XY apex, toward;

    int cls(XY p) const {
        const int o = orient_sign(apex, toward, p);
        if (o > 0) return 1;
        if (o < 0) return 3;
        return dot_sign(apex.x, apex.y, toward.x, toward.y, p.x, p.y) > 0 ? 0 : 2;
    }

    // class order 0 < 1 < 2 < 3 realizes the on-line-goes-up perturbation:
    // exactly-forward sorts before everything above the line, exactly-
    // backward after it
    bool before(XY p, XY q) const {
        const int cp = cls(p), cq = cls(q);
        if (cp != cq) return cp < cq;
        if (cp == 0 || cp == 2) return false;  // identical perturbed directions
        return orient_sign(apex, p, q) > 0;
    }
};

}  // namespace

std::size_t RoutingHeader::words_in_use() const {
    std::size_t w = 6;  // endpoints with ids
    if (prev_triangle) w += 9;
    w += 1;  // walk mode
    if (walk_target) w += 1;
    if (walk_prev) w += 1;
    w += 1;  // walk orientation bit
    if (pass_before_stop) w += 1;
    if (detour_target) w += 2;  // target and orientation
    return w;
}

StepDecision step_decision(const TriangleRef& tri, VertexId vi, XY s, XY t) {
    if (tri.ids[0] != vi) throw Error("step_decision: decision vertex must come first");
    const XY vxy = tri.xy[0], pxy = tri.xy[1], qxy = tri.xy[2];
    const Circle c = circumcircle(vxy, pxy, qxy);
    const double L = dist(s, t);
    if (L <= 0.0) throw Error("step_decision: degenerate segment");
    const XY u{(t.x - s.x) / L, (t.y - s.y) / L};
    const XY leftmost = c.center - c.radius * u;

    const auto hits = circle_segment_intersections(c, s, t);
    if (hits.empty())
        throw NoSegmentIntersection("decision circle does not meet the segment");
    const XY r = hits.back();

    const bool cw = on_cw_arc(c, leftmost, r, vxy);
    const double span = cw ? cw_arc_span(c, vxy, r) : cw_arc_span(c, r, vxy);
    const double dp = cw ? cw_arc_span(c, vxy, pxy) : cw_arc_span(c, pxy, vxy);
    const double dq = cw ? cw_arc_span(c, vxy, qxy) : cw_arc_span(c, qxy, vxy);
    const double slack = 1e-9;

    StepDecision out{0, cw ? StepChoice::CW : StepChoice::CCW, c, leftmost, r};
    const bool p_on = dp <= span + slack;
    const bool q_on = dq <= span + slack;
    if (p_on && (!q_on || dp <= dq))
        out.next = tri.ids[1];
    else if (q_on)
        out.next = tri.ids[2];
    else
        throw RoutingInvariantViolation("neither triangle vertex lies on the decision arc");
    return out;
}

// ---------------------------------------------------------------------------
// full-knowledge routing on the triangulation

namespace {

struct MeshRing {
    const std::vector<VertexId>& ring;
    bool hull;

    MeshRing(const TriangulationMesh& m, VertexId u) : ring(m.ring_cw(u)), hull(m.on_hull(u)) {}

    // visit ring-consecutive pairs walking away from neighbor `f`;
    // sense > 0 rotates counterclockwise (decreasing clockwise-ring index)
    template <typename Fn>
    void scan_from(VertexId f, int sense, Fn&& fn) const {
        const auto it = std::find(ring.begin(), ring.end(), f);
        if (it == ring.end()) throw RoutingInvariantViolation("pivot is not a neighbor");
        const std::size_t k = ring.size();
        std::size_t idx = static_cast<std::size_t>(it - ring.begin());
        for (std::size_t steps = 1; steps < k; ++steps) {
            std::size_t j;
            if (sense > 0) {
                if (hull && idx == 0) return;
                j = (idx + k - 1) % k;
            } else {
                if (hull && idx + 1 == k) return;
                j = (idx + 1) % k;
            }
            if (!fn(ring[idx], ring[j])) return;
            idx = j;
        }
    }
};

std::pair<VertexId, VertexId> start_wedge_pair(const TriangulationMesh& mesh, VertexId s,
                                               VertexId t) {
    const RayOrder ord{mesh.point(s).xy(), mesh.point(t).xy()};
    const auto& ring = mesh.ring_cw(s);
    VertexId lo = ring.front(), hi = ring.front();
    for (VertexId w : ring) {
        const XY wxy = mesh.point(w).xy();
        if (ord.before(wxy, mesh.point(lo).xy())) lo = w;
        if (ord.before(mesh.point(hi).xy(), wxy)) hi = w;
    }
    // lo is the first neighbor counterclockwise of the ray toward t, hi the
    // first clockwise; they bound the triangle the ray leaves through
    if (!mesh.has_edge(lo, hi))
        throw RoutingInvariantViolation("start wedge is not a triangle face");
    return {hi, lo};  // (crossing side, clear side)
}

}  // namespace

RouteResult delaunay_route(const TriangulationMesh& mesh, VertexId s, VertexId t) {
    mesh.check_vertex(s);
    mesh.check_vertex(t);
    if (s == t) throw Error("route endpoints must differ");

    const Seg seg{mesh.point(s).xy(), mesh.point(t).xy()};
    RouteResult res;
    res.path.push_back(s);

    auto arrive = [&](VertexId v) {
        res.length += dist(mesh.point(res.path.back()).xy(), mesh.point(v).xy());
        res.path.push_back(v);
    };

    auto make_tri = [&](VertexId a, VertexId b, VertexId c) {
        return TriangleRef{{a, b, c},
                           {mesh.point(a).xy(), mesh.point(b).xy(), mesh.point(c).xy()}};
    };

    // a neighbor lying exactly on [st] ahead of cur is perfect progress;
    // hop to the farthest one and restart the triangle machinery there
    auto online_hop = [&](VertexId cur) -> std::optional<VertexId> {
        const double pcur = seg.param(mesh.point(cur).xy());
        std::optional<VertexId> best;
        double best_param = pcur;
        for (VertexId w : mesh.ring_cw(cur)) {
            const XY wxy = mesh.point(w).xy();
            if (orient_sign(seg.s, seg.t, wxy) != 0) continue;
            const double pw = seg.param(wxy);
            if (pw > best_param && pw <= 1.0 + 1e-12) {
                best_param = pw;
                best = w;
            }
        }
        return best;
    };

    VertexId cur = s;
    std::optional<TriangleRef> tri;
    double prev_exit = 0.0;

    const std::size_t guard = 8 * mesh.size() + 64;
    for (std::size_t step = 0; step < guard; ++step) {
        if (cur == t) return res;
        if (mesh.has_edge(cur, t)) {
            arrive(t);
            return res;
        }
        if (const auto hop = online_hop(cur)) {
            arrive(*hop);
            cur = *hop;
            tri.reset();
            continue;
        }

        if (!tri) {
            const auto [q0, p0] = start_wedge_pair(mesh, cur, t);
            tri = make_tri(cur, q0, p0);
        } else {
            // pivot: rightmost segment-crossing edge of the old triangle
            // incident to the new vertex
            VertexId f = cur;
            double best = -kInf;
            for (int e = 0; e < 3; ++e) {
                const VertexId x = tri->ids[e], y = tri->ids[(e + 1) % 3];
                if (x != cur && y != cur) continue;
                if (!seg.crosses(tri->xy[e], tri->xy[(e + 1) % 3])) continue;
                const double cp = seg.cross_param(tri->xy[e], tri->xy[(e + 1) % 3]);
                if (cp > best) {
                    best = cp;
                    f = (x == cur) ? y : x;
                }
            }
            if (f == cur)
                throw RoutingInvariantViolation("no crossing pivot edge at the new vertex");

            // sweep the ring on t's side of the pivot; the unique
            // crossing -> non-crossing transition bounds the next triangle
            const int sense = seg.side(mesh.point(cur).xy());
            const MeshRing ring(mesh, cur);
            std::optional<std::pair<VertexId, VertexId>> pair;
            VertexId prior = f;
            ring.scan_from(f, sense, [&](VertexId, VertexId nxt) {
                if (!seg.crosses(mesh.point(cur).xy(), mesh.point(nxt).xy())) {
                    pair = {prior, nxt};
                    return false;
                }
                prior = nxt;
                return true;
            });
            if (!pair) throw RoutingInvariantViolation("ring sweep found no transition");
            if (!seg.crosses(mesh.point(cur).xy(), mesh.point(pair->first).xy()))
                throw RoutingInvariantViolation("transition pair lost the crossing edge");
            tri = make_tri(cur, pair->first, pair->second);
        }

        const auto ival = tri_interval(seg, tri->xy[0], tri->xy[1], tri->xy[2]);
        if (!ival) throw RoutingInvariantViolation("decision triangle misses the segment");
        if (ival->second < prev_exit - 1e-9)
            throw RoutingInvariantViolation("decision triangle moved backwards");

        const StepDecision dec = step_decision(*tri, cur, seg.s, seg.t);
        res.decision_vertices.push_back(cur);
        res.trace.push_back({*tri, cur, dec.next, dec.walk, ival->first, ival->second});
        prev_exit = ival->second;

        arrive(dec.next);
        cur = dec.next;
    }
    throw RoutingInvariantViolation("routing did not terminate");
}

// ---------------------------------------------------------------------------
// 1-local simulation on the marked / light graphs

namespace {

struct ProtItem {
    VertexId id;
    XY xy;
    bool full = false;     // surviving (fully protected) edge
    bool middle = false;   // marked Middle at the current vertex
};

class Engine {
public:
    Engine(const ViewProvider& views, VertexId s, VertexId t, XY s_xy, XY t_xy, bool light)
        : views_(views), light_(light), s_(s), t_(t), sxy_(s_xy), txy_(t_xy) {
        guard_ = 64 + 32 * views.vertex_count();
        seg_ = Seg{sxy_, txy_};
    }

    RouteResult run();

private:
    const ViewProvider& views_;
    bool light_;
    VertexId s_, t_;
    XY sxy_{}, txy_{};
    Seg seg_{};
    RoutingHeader hdr_;
    RouteResult res_;
    VertexId cur_ = 0;
    XY cur_xy_{};
    bool done_ = false;
    std::size_t guard_ = 0;
    bool in_detour_ = false;

    void burn() {
        if (guard_-- == 0) throw WalkDidNotTerminate("routing step budget exhausted");
    }

    LocalView here() {
        LocalView v = views_.view(cur_);
        if (v.id() != cur_) ++res_.locality_violations;
        note_header();
        return v;
    }

    void note_header() {
        res_.max_header_words = std::max(res_.max_header_words, hdr_.words_in_use());
        if (hdr_.words_in_use() > RoutingHeader::capacity_words)
            throw RoutingInvariantViolation("header capacity exceeded");
    }

    void step_to(VertexId to, XY to_xy) {
        res_.length += dist(cur_xy_, to_xy);
        res_.path.push_back(to);
        cur_ = to;
        cur_xy_ = to_xy;
        if (cur_ == t_) done_ = true;
    }

    // physical move along a surviving edge; on the light layer an excluded
    // edge is crossed by walking the recorded face path
    void move_along(const LocalView& at, VertexId to) {
        const ViewEdge* e = at.find_edge(to);
        if (!e) throw RoutingInvariantViolation("move requested on a non-edge");
        if (!light_ || e->included) {
            step_to(to, e->to_xy);
            return;
        }
        if (in_detour_) throw NestedDetour("detour requested while already detouring");
        const ViewExcluded* rec = at.find_excluded(to);
        if (!rec) throw RoutingInvariantViolation("excluded edge has no record");
        in_detour_ = true;
        hdr_.detour_target = to;
        hdr_.detour_orientation = rec->dir_bit;
        note_header();

        const int sense = rec->dir_bit ? -1 : +1;
        XY ref = rec->other_xy;
        while (!done_ && cur_ != to) {
            burn();
            const LocalView v = here();
            const AngularOrder ord{v.at(), ref, sense};
            const ViewEdge* pick = nullptr;
            bool pick_back = false;
            for (const auto& cand : v.edges()) {
                if (!cand.included) continue;
                const bool back = ord.half(cand.to_xy) == 0;
                if (!pick || (pick_back && !back) ||
                    (!back && !pick_back && ord.before(cand.to_xy, pick->to_xy))) {
                    pick = &cand;
                    pick_back = back;
                }
            }
            if (!pick) throw BrokenRecord("detour stranded without an included edge");
            const XY apex = v.at();
            step_to(pick->to, pick->to_xy);
            ref = apex;
        }
        in_detour_ = false;
        hdr_.detour_target.reset();
    }

    // all edges protected at the current vertex: surviving ones plus the
    // recorded chords
    static std::vector<ProtItem> protected_items(const LocalView& v) {
        std::vector<ProtItem> items;
        items.reserve(v.edges().size() + v.semi_records().size());
        for (const auto& e : v.edges())
            items.push_back({e.to, e.to_xy, true, e.mark == ProtectionMark::Middle});
        for (const auto& r : v.semi_records()) items.push_back({r.other, r.other_xy, false, false});
        return items;
    }

    // first surviving edge rotating `sense` from the back direction
    VertexId next_face_vertex(const LocalView& v, XY back_xy, int sense) const {
        const AngularOrder ord{v.at(), back_xy, sense};
        const ViewEdge* pick = nullptr;
        bool pick_back = false;
        for (const auto& cand : v.edges()) {
            const bool back = ord.half(cand.to_xy) == 0;
            if (!pick || (pick_back && !back) ||
                (!back && !pick_back && ord.before(cand.to_xy, pick->to_xy))) {
                pick = &cand;
                pick_back = back;
            }
        }
        if (!pick) throw WalkDidNotTerminate("face walk stranded");
        return pick->to;
    }

    // guided walk: each face vertex holds its own record toward the target
    void guided_to(VertexId target) {
        hdr_.walk_mode = WalkMode::Guided;
        hdr_.walk_target = target;
        note_header();
        while (!done_ && cur_ != target) {
            burn();
            const LocalView v = here();
            if (const ViewEdge* direct = v.find_edge(target)) {
                move_along(v, direct->to);
                break;
            }
            const ViewSemi* rec = v.find_semi(target);
            if (!rec) throw TargetUnreachable("guided walk lost its record trail");
            hdr_.walk_orientation = rec->side_bit;
            const int sense = rec->side_bit ? -1 : +1;
            const AngularOrder ord{v.at(), rec->other_xy, sense};
            const ViewEdge* pick = nullptr;
            for (const auto& cand : v.edges()) {
                if (ord.half(cand.to_xy) == 0) continue;  // the chord itself
                if (!pick || ord.before(cand.to_xy, pick->to_xy)) pick = &cand;
            }
            if (!pick) throw TargetUnreachable("guided walk stranded");
            move_along(v, pick->to);
        }
        hdr_.walk_mode = WalkMode::None;
        hdr_.walk_target.reset();
    }

    struct WalkStop {
        VertexId p, q;  // q's edge from the apex crosses the segment, p's does not
        XY p_xy, q_xy;
    };

    // unguided walk over a face of the apex; stops at the straddling pair,
    // or ends the route if t is reached on the way
    std::optional<WalkStop> unguided_walk(XY apex, VertexId first, int rotate_sense,
                                          bool descending, std::optional<VertexId> pass_first) {
        hdr_.walk_mode = WalkMode::Unguided;
        hdr_.pass_before_stop = pass_first;
        note_header();
        bool armed = !pass_first.has_value();

        XY prev_xy = apex;
        {
            const LocalView v = here();
            hdr_.walk_prev = cur_;
            move_along(v, first);
        }
        while (!done_) {
            burn();
            const LocalView v = here();
            if (!armed && cur_ == *pass_first) armed = true;
            const VertexId nxt = next_face_vertex(v, prev_xy, rotate_sense);
            const XY nxt_xy = v.coords_of(nxt);
            if (armed) {
                const bool cur_cross = seg_.crosses(apex, v.at());
                const bool nxt_cross = seg_.crosses(apex, nxt_xy);
                if (descending && !cur_cross && nxt_cross) {
                    hdr_.walk_mode = WalkMode::None;
                    hdr_.walk_prev.reset();
                    hdr_.pass_before_stop.reset();
                    return WalkStop{cur_, nxt, v.at(), nxt_xy};
                }
                if (!descending && cur_cross && !nxt_cross) {
                    hdr_.walk_mode = WalkMode::None;
                    hdr_.walk_prev.reset();
                    hdr_.pass_before_stop.reset();
                    return WalkStop{nxt, cur_, nxt_xy, v.at()};
                }
            }
            prev_xy = v.at();
            hdr_.walk_prev = cur_;
            move_along(v, nxt);
        }
        hdr_.walk_mode = WalkMode::None;
        hdr_.walk_prev.reset();
        hdr_.pass_before_stop.reset();
        return std::nullopt;  // reached t mid-walk
    }

    void record_decision(const TriangleRef& tri, VertexId at, VertexId chosen, StepChoice walk) {
        res_.decision_vertices.push_back(at);
        DecisionTrace tr{tri, at, chosen, walk, 0.0, 0.0};
        if (const auto ival = tri_interval(seg_, tri.xy[0], tri.xy[1], tri.xy[2])) {
            tr.entry = ival->first;
            tr.exit = ival->second;
        }
        res_.trace.push_back(tr);
    }

    // route to a protected edge's far endpoint: directly when the edge
    // survives, by guided walk when it exists only as a record
    void follow_protected(const ProtItem& item) {
        if (item.full) {
            const LocalView v = here();
            move_along(v, item.id);
        } else {
            guided_to(item.id);
        }
    }

    bool handle_target_shortcut(const LocalView& v) {
        if (const ViewEdge* e = v.find_edge(t_)) {
            move_along(v, e->to);
            return true;
        }
        if (v.find_semi(t_)) {
            guided_to(t_);
            return true;
        }
        return false;
    }

    // When the current vertex lies exactly on [st], a protected edge to a
    // vertex further along the carrier is straight-line progress; hop there
    // and re-anchor the decision machinery. This resolves runs of the
    // segment along collinear vertex chains, where the on-line-goes-up
    // rule would otherwise push the triangles outside the hull.
    bool handle_online_hop(const LocalView& v) {
        if (orient_sign(sxy_, txy_, cur_xy_) != 0) return false;
        const double pcur = seg_.param(cur_xy_);
        std::optional<VertexId> best;
        bool best_full = false;
        double best_param = pcur;
        auto consider = [&](VertexId id, XY xy, bool full) {
            if (orient_sign(sxy_, txy_, xy) != 0) return;
            const double pw = seg_.param(xy);
            if (pw > best_param && pw <= 1.0 + 1e-12) {
                best_param = pw;
                best = id;
                best_full = full;
            }
        };
        for (const auto& e : v.edges()) consider(e.to, e.to_xy, true);
        for (const auto& r : v.semi_records()) consider(r.other, r.other_xy, false);
        if (!best) return false;
        if (best_full)
            move_along(v, *best);
        else
            guided_to(*best);
        hdr_.prev_triangle.reset();
        note_header();
        return true;
    }

    void decide_and_go(const ProtItem& crossing, const ProtItem& clear) {
        const TriangleRef tri{{cur_, crossing.id, clear.id}, {cur_xy_, crossing.xy, clear.xy}};
        const StepDecision dec = step_decision(tri, cur_, sxy_, txy_);
        record_decision(tri, cur_, dec.next, dec.walk);
        hdr_.prev_triangle = tri;
        note_header();
        follow_protected(dec.next == crossing.id ? crossing : clear);
    }

    // walk the face bounded by u1 (counterclockwise bound, non-crossing
    // side) and um (clockwise bound), then decide on the straddling pair
    void walk_and_decide(const ProtItem& u1, const ProtItem& um, int sgn,
                         std::optional<VertexId> pass_first) {
        const int c = cmp_dist2(cur_xy_.x, cur_xy_.y, u1.xy.x, u1.xy.y, cur_xy_.x, cur_xy_.y,
                                um.xy.x, um.xy.y);
        const bool from_u1 = (c < 0) || (c == 0 && u1.id <= um.id);
        const ProtItem& first = from_u1 ? u1 : um;
        if (!first.full)
            throw RoutingInvariantViolation("face walk must start on a surviving edge");
        // starting at the counterclockwise bound walks the face clockwise
        // through the ring and vice versa; only the crossing-side start
        // needs to get past the pivot before stopping
        const int rotate_sense = from_u1 ? sgn : -sgn;
        const bool descending = from_u1;
        if (from_u1) pass_first.reset();
        const VertexId apex_id = cur_;
        const XY apex = cur_xy_;

        const auto stop = unguided_walk(apex, first.id, rotate_sense, descending, pass_first);
        if (!stop) return;  // reached t mid-walk

        const TriangleRef tri{{apex_id, stop->q, stop->p}, {apex, stop->q_xy, stop->p_xy}};
        const StepDecision dec = step_decision(tri, apex_id, sxy_, txy_);
        record_decision(tri, apex_id, dec.next, dec.walk);
        hdr_.prev_triangle = tri;
        note_header();
        if (dec.next != cur_) {
            const LocalView v = here();
            move_along(v, dec.next);
        }
    }

    void anchor_step();
    void simulation_step();
};

// anchor at a vertex with no usable previous triangle: s itself, or any
// on-line vertex the route re-anchored at
void Engine::anchor_step() {
    const LocalView v = here();
    cur_xy_ = v.at();

    if (handle_target_shortcut(v)) return;
    if (handle_online_hop(v)) return;

    auto items = protected_items(v);
    if (items.size() < 2)
        throw RoutingInvariantViolation("anchor has fewer than two protected edges");
    const RayOrder ord{cur_xy_, txy_};
    std::sort(items.begin(), items.end(), [&](const ProtItem& a, const ProtItem& b) {
        if (ord.before(a.xy, b.xy)) return true;
        if (ord.before(b.xy, a.xy)) return false;
        return a.id < b.id;
    });
    const ProtItem u1 = items.front();  // first counterclockwise of the ray toward t
    const ProtItem um = items.back();   // first clockwise

    if (!u1.middle && !um.middle) {
        decide_and_go(um, u1);
        return;
    }
    if (!(u1.full && um.full))
        throw RoutingInvariantViolation("gap bounds must both survive the pruning");
    walk_and_decide(u1, um, seg_.side(cur_xy_), std::nullopt);
}

void Engine::simulation_step() {
    const LocalView v = here();
    if (handle_target_shortcut(v)) return;
    if (handle_online_hop(v)) return;

    if (!hdr_.prev_triangle) throw RoutingInvariantViolation("missing previous triangle");
    const TriangleRef prev = *hdr_.prev_triangle;

    // pivot: rightmost segment-crossing edge of the stored triangle at cur
    VertexId f = cur_;
    XY f_xy{};
    double best = -kInf;
    for (int e = 0; e < 3; ++e) {
        const VertexId x = prev.ids[e], y = prev.ids[(e + 1) % 3];
        if (x != cur_ && y != cur_) continue;
        const XY xx = prev.xy[e], yy = prev.xy[(e + 1) % 3];
        if (!seg_.crosses(xx, yy)) continue;
        const double cp = seg_.cross_param(xx, yy);
        if (cp > best) {
            best = cp;
            f = (x == cur_) ? y : x;
            f_xy = (x == cur_) ? yy : xx;
        }
    }
    if (f == cur_)
        throw RoutingInvariantViolation("previous triangle has no crossing edge here");

    const int sgn = seg_.side(cur_xy_);
    auto items = protected_items(v);
    if (items.empty()) throw RoutingInvariantViolation("no protected edges at the router");
    const AngularOrder ord{cur_xy_, f_xy, sgn};
    std::sort(items.begin(), items.end(), [&](const ProtItem& a, const ProtItem& b) {
        if (ord.before(a.xy, b.xy)) return true;
        if (ord.before(b.xy, a.xy)) return false;
        return a.id < b.id;
    });

    // the sweep covers the half turn on t's side of the pivot line
    long u1_at = -1, last_half = -1;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (ord.half(items[i].xy) != 1) continue;
        last_half = static_cast<long>(i);
        if (u1_at < 0 && !seg_.crosses(cur_xy_, items[i].xy)) u1_at = static_cast<long>(i);
    }

    if (u1_at >= 0) {
        const ProtItem u1 = items[u1_at];
        const ProtItem um = items[(u1_at + items.size() - 1) % items.size()];
        // the stored triangle sits inside the u1..um wedge exactly when the
        // pivot chord was dropped at this vertex and lives in that gap
        const AngularOrder wedge{cur_xy_, um.xy, sgn};
        const bool pivot_inside = um.id != f && u1.id != f && wedge.half(f_xy) != 0 &&
                                  wedge.before(f_xy, u1.xy);
        if (!pivot_inside) {
            if (!u1.middle && !um.middle) {
                decide_and_go(um, u1);
                return;
            }
            if (!(u1.full && um.full))
                throw RoutingInvariantViolation("gap bounds must both survive the pruning");
            walk_and_decide(u1, um, sgn, std::nullopt);
            return;
        }
        if (!(u1.middle || um.middle))
            throw RoutingInvariantViolation("pivot gap lacks a middle bound");
        if (!(u1.full && um.full))
            throw RoutingInvariantViolation("gap bounds must both survive the pruning");
        walk_and_decide(u1, um, sgn, f);
        return;
    }

    // every protected edge on t's side crosses the segment
    if (last_half < 0)
        throw RoutingInvariantViolation("no protected edge on the target side");
    const ProtItem um = items[last_half];
    const ProtItem u1 = items[(last_half + 1) % items.size()];
    {
        // the stored triangle can never land in this wedge: its pivot would
        // make the bounding edge a hull edge, impossible with s and t on
        // opposite sides of it
        const AngularOrder wedge{cur_xy_, um.xy, sgn};
        if (um.id != f && u1.id != f && wedge.half(f_xy) != 0 && wedge.before(f_xy, u1.xy))
            throw RoutingInvariantViolation("stored triangle inside the far wedge");
    }
    if (!u1.middle && !um.middle) {
        decide_and_go(um, u1);
        return;
    }
    if (!(u1.full && um.full))
        throw RoutingInvariantViolation("gap bounds must both survive the pruning");
    walk_and_decide(u1, um, sgn, std::nullopt);
}

RouteResult Engine::run() {
    if (s_ == t_) throw Error("route endpoints must differ");
    cur_ = s_;
    cur_xy_ = sxy_;
    res_.path.push_back(s_);
    hdr_.s = sxy_;
    hdr_.s_id = s_;
    hdr_.t = txy_;
    hdr_.t_id = t_;
    note_header();
    while (!done_) {
        burn();
        if (!hdr_.prev_triangle)
            anchor_step();
        else
            simulation_step();
    }
    return res_;
}

}  // namespace

RouteResult mbdg_route(const MarkedGraph& g, VertexId s, VertexId t) {
    g.mesh().check_vertex(s);
    g.mesh().check_vertex(t);
    Engine e(g, s, t, g.mesh().point(s).xy(), g.mesh().point(t).xy(), false);
    return e.run();
}

RouteResult lmbdg_route(const LightGraph& lg, VertexId s, VertexId t) {
    const auto& mesh = lg.base().mesh();
    mesh.check_vertex(s);
    mesh.check_vertex(t);
    Engine e(lg, s, t, mesh.point(s).xy(), mesh.point(t).xy(), true);
    return e.run();
}

RouteResult simulate_route(const ViewProvider& views, VertexId s, VertexId t, XY s_xy, XY t_xy,
                           bool light_layer) {
    Engine e(views, s, t, s_xy, t_xy, light_layer);
    return e.run();
}

// ---------------------------------------------------------------------------
// standalone face walks

std::vector<VertexId> unguided_face_walk(
    const ViewProvider& views, VertexId v, VertexId first_edge,
    const std::function<bool(const LocalView&, VertexId, VertexId)>& stop) {
    LocalView view = views.view(v);
    const ViewEdge* first = view.find_edge(first_edge);
    if (!first) throw RoutingInvariantViolation("walk must start along a surviving edge");

    std::vector<VertexId> path{v};
    XY prev_xy = view.at();
    VertexId cur = first_edge;
    XY cur_xy = first->to_xy;
    const std::size_t guard = 4 * views.vertex_count() + 16;
    for (std::size_t i = 0; i < guard; ++i) {
        path.push_back(cur);
        const LocalView vc = views.view(cur);
        const AngularOrder ord{cur_xy, prev_xy, +1};
        const ViewEdge* pick = nullptr;
        bool pick_back = false;
        for (const auto& cand : vc.edges()) {
            const bool back = ord.half(cand.to_xy) == 0;
            if (!pick || (pick_back && !back) ||
                (!back && !pick_back && ord.before(cand.to_xy, pick->to_xy))) {
                pick = &cand;
                pick_back = back;
            }
        }
        if (!pick) throw WalkDidNotTerminate("face walk stranded");
        if (stop(vc, cur, pick->to)) return path;
        prev_xy = cur_xy;
        cur = pick->to;
        cur_xy = pick->to_xy;
    }
    throw WalkDidNotTerminate("stop predicate never fired");
}

std::vector<VertexId> guided_face_walk(const ViewProvider& views, VertexId v, VertexId target) {
    std::vector<VertexId> path{v};
    VertexId cur = v;
    const std::size_t guard = 4 * views.vertex_count() + 16;
    for (std::size_t i = 0; i < guard && cur != target; ++i) {
        const LocalView vc = views.view(cur);
        if (const ViewEdge* direct = vc.find_edge(target)) {
            path.push_back(direct->to);
            cur = target;
            break;
        }
        const ViewSemi* rec = vc.find_semi(target);
        if (!rec) throw TargetUnreachable("no record toward the target");
        const int sense = rec->side_bit ? -1 : +1;
        const AngularOrder ord{vc.at(), rec->other_xy, sense};
        const ViewEdge* pick = nullptr;
        for (const auto& cand : vc.edges()) {
            if (ord.half(cand.to_xy) == 0) continue;
            if (!pick || ord.before(cand.to_xy, pick->to_xy)) pick = &cand;
        }
        if (!pick) throw TargetUnreachable("guided walk stranded");
        path.push_back(pick->to);
        cur = pick->to;
    }
    if (cur != target) throw TargetUnreachable("guided walk did not reach its target");
    return path;
}

// ---------------------------------------------------------------------------
// worst-case circle classifier

WorstCaseCircleClass classify_worst_case_circle(const Circle& tri_circum, XY vi, XY vnext,
                                                XY s, XY t, StepChoice decision) {
    const double tol = 1e-9 * tri_circum.radius;
    for (XY p : {vi, vnext})
        if (std::abs(dist(p, tri_circum.center) - tri_circum.radius) > tol)
            throw NotOnCircle("classify: vertex not on the circumcircle");

    // work in the frame where [st] is the positive x axis
    const double L = dist(s, t);
    const XY ux{(t.x - s.x) / L, (t.y - s.y) / L};
    const XY uy{-ux.y, ux.x};
    auto to_frame = [&](XY p) {
        const XY d = p - s;
        return XY{dot(d, ux), cross(ux, d)};
    };
    const XY v = to_frame(vi), w = to_frame(vnext);
    const XY O = to_frame(tri_circum.center);
    const double r0 = tri_circum.radius;

    // Slide direction along the bisector of [v, w]: the leftmost point must
    // drift toward v. On a clockwise decision v sits on the clockwise arc
    // between the leftmost point and the right line intersection, so its
    // direction from the moving center has to rotate counterclockwise
    // (toward the half turn); a counterclockwise decision mirrors this.
    XY bis{-(w.y - v.y), w.x - v.x};
    const double bn = norm(bis);
    bis = {bis.x / bn, bis.y / bn};
    // the direction v - O' rotates counterclockwise when cross(v - O, bis) < 0
    const double rot = cross(v - O, bis);
    const int want = (decision == StepChoice::CW) ? -1 : +1;
    if (rot != 0.0 && (rot < 0.0 ? -1 : +1) != want) bis = {-bis.x, -bis.y};

    // events along O' = O + tau * bis: the segment line becomes tangent when
    // r(tau)^2 - O'_y(tau)^2 vanishes; v becomes leftmost when O'_y = v_y
    // with the center on v's right
    const double a = bis.x * bis.x;
    const double b = -2.0 * (dot(bis, v - O) + O.y * bis.y);
    const double c = r0 * r0 - O.y * O.y;
    double tau_tan = kInf;
    if (a > 1e-30) {
        const double disc = b * b - 4.0 * a * c;
        if (disc >= 0.0) {
            const double root = std::sqrt(disc);
            for (double cand : {(-b - root) / (2.0 * a), (-b + root) / (2.0 * a)})
                if (cand >= -1e-12) tau_tan = std::min(tau_tan, std::max(cand, 0.0));
        }
    } else if (std::abs(b) > 1e-30) {
        const double cand = -c / b;
        if (cand >= -1e-12) tau_tan = std::max(cand, 0.0);
    }
    double tau_left = kInf;
    if (std::abs(bis.y) > 1e-30) {
        const double cand = (v.y - O.y) / bis.y;
        if (cand >= -1e-12) {
            const double ox = O.x + std::max(cand, 0.0) * bis.x;
            if (ox >= v.x - 1e-9 * r0) tau_left = std::max(cand, 0.0);
        }
    } else if (std::abs(v.y - O.y) <= 1e-9 * r0 && O.x >= v.x) {
        tau_left = 0.0;
    }

    const Seg fseg{XY{0.0, 0.0}, XY{L, 0.0}};
    const bool crossing = fseg.crosses(v, w);
    if (tau_left == kInf && tau_tan == kInf)
        throw RoutingInvariantViolation("worst-case circle slide has no stopping event");

    const double tau = std::min(tau_left, tau_tan);
    const XY oc{O.x + tau * bis.x, O.y + tau * bis.y};
    const double rr = dist(oc, v);
    const Circle out_circle{XY{s.x + oc.x * ux.x + oc.y * uy.x, s.y + oc.x * ux.y + oc.y * uy.y},
                            rr};

    if (tau_left <= tau_tan) return {crossing ? WorstCaseKind::Y : WorstCaseKind::X2, out_circle};
    if (crossing)
        throw RoutingInvariantViolation("tangency fired first on a crossing step");
    return {WorstCaseKind::X1, out_circle};
}

// ---------------------------------------------------------------------------
// trace validation against the modified routing scheme

std::string validate_route_trace(const TriangulationMesh& mesh, VertexId s, VertexId t,
                                 const std::vector<DecisionTrace>& trace) {
    std::set<std::array<VertexId, 3>> faces;
    for (const auto& tr : mesh.triangles()) {
        std::array<VertexId, 3> key = tr.v;
        std::sort(key.begin(), key.end());
        faces.insert(key);
    }
    const Seg seg{mesh.point(s).xy(), mesh.point(t).xy()};
    std::ostringstream err;
    double prev_exit = 0.0;
    VertexId expect_at = s;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const auto& d = trace[i];
        std::array<VertexId, 3> key = d.triangle.ids;
        std::sort(key.begin(), key.end());
        if (!faces.count(key)) {
            err << "step " << i << ": triangle is not a face of the triangulation";
            return err.str();
        }
        if (d.at != d.triangle.ids[0] ||
            (d.chosen != d.triangle.ids[1] && d.chosen != d.triangle.ids[2])) {
            err << "step " << i << ": decision vertices are not on the triangle";
            return err.str();
        }
        // decisions anchor at the source, at the previous step's choice, or
        // at an on-line vertex the route hopped to along the carrier
        const bool online_anchor = orient_sign(seg.s, seg.t, mesh.point(d.at).xy()) == 0;
        if (i == 0 && d.at != s && !online_anchor) {
            err << "first decision is not at the source";
            return err.str();
        }
        if (i > 0 && d.at != expect_at && !online_anchor) {
            err << "step " << i << ": decision vertex does not follow the previous choice";
            return err.str();
        }
        const auto ival = tri_interval(seg, d.triangle.xy[0], d.triangle.xy[1], d.triangle.xy[2]);
        if (!ival) {
            err << "step " << i << ": triangle misses the segment";
            return err.str();
        }
        if (ival->second < prev_exit - 1e-9) {
            err << "step " << i << ": triangle interval moved backwards";
            return err.str();
        }
        prev_exit = std::max(prev_exit, ival->second);
        const StepDecision dec = step_decision(d.triangle, d.at, seg.s, seg.t);
        if (dec.next != d.chosen) {
            err << "step " << i << ": choice disagrees with the circle rule";
            return err.str();
        }
        expect_at = d.chosen;
    }
    return {};
}

}  // namespace spanroute
