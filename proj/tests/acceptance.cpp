// Acceptance suite: every bound the construction and the routers promise,
// evaluated against brute-force oracles on fixed fixtures. One line per
// criterion; exit code 0 only if all hard criteria hold.
//
// Fixtures: 200 uniform points (seed 7) and twenty smaller instances at
// n in {20, 50, 100} (seeds 1..20), all with theta = pi/4 and r = 2, plus
// one crafted fan instance that forces dropped chords and face walks.

#include <chrono>
#include <cstdio>
#include <memory>
#include <optional>
#include <vector>

#include "fixtures.hpp"
#include "spanroute/document.hpp"
#include "spanroute/oracle.hpp"
#include "spanroute/pointset.hpp"
#include "spanroute/routing.hpp"
#include "spanroute/verify.hpp"

using namespace spanroute;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTheta = kPi / 4.0;
constexpr double kR = 2.0;

struct Line {
    std::string name;
    bool pass;
    double observed;
    double bound;
    bool soft = false;
};

std::vector<Line> lines;
bool add(const std::string& name, bool pass, double observed, double bound, bool soft = false) {
    lines.push_back({name, pass, observed, bound, soft});
    return pass;
}
void add_max(const std::string& name, double observed, double bound, bool soft = false) {
    add(name, observed <= bound, observed, bound, soft);
}

// graphs keep references into the mesh, so a fixture must never relocate
struct Fixture {
    std::string label;
    std::vector<Point> pts;
    TriangulationMesh mesh;
    MarkedGraph marked;
    LightGraph light;

    Fixture(std::string lbl, std::vector<Point> p)
        : label(std::move(lbl)),
          pts(std::move(p)),
          mesh(TriangulationMesh::build(pts)),
          marked(MarkedGraph::build(mesh, kTheta)),
          light(LightGraph::build(marked, kR)) {}
    Fixture(const Fixture&) = delete;
    Fixture& operator=(const Fixture&) = delete;
};

double now_s() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

}  // namespace

int main() {
    const double t_start = now_s();
    std::vector<std::unique_ptr<Fixture>> fixture_store;
    fixture_store.push_back(std::make_unique<Fixture>(
        "u200s7", generate_points(200, PointDistribution::Uniform, 7)));
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const std::size_t n = seed % 3 == 1 ? 20 : (seed % 3 == 2 ? 50 : 100);
        fixture_store.push_back(std::make_unique<Fixture>(
            "u" + std::to_string(n) + "s" + std::to_string(seed),
            generate_points(n, PointDistribution::Uniform, seed)));
    }
    fixture_store.push_back(
        std::make_unique<Fixture>("fan", testfix::sunflower_points(6, 8, 1, kTheta)));
    std::vector<const Fixture*> fixtures;
    for (const auto& f : fixture_store) fixtures.push_back(f.get());

    // ---- criterion 1: the triangulation is Delaunay ------------------------
    {
        bool pass = true;
        for (const Fixture* fp : fixtures) {
            const Fixture& f = *fp;
            if (f.pts.size() <= 50) {
                const auto bf = delaunay_bruteforce_check(f.mesh);
                pass = pass && bf.pass;
            }
            for (const auto& tr : f.mesh.triangles()) {
                const XY a = f.pts[tr.v[0]].xy(), b = f.pts[tr.v[1]].xy(),
                         c = f.pts[tr.v[2]].xy();
                for (VertexId d = 0; d < f.mesh.size() && pass; ++d) {
                    if (d == tr.v[0] || d == tr.v[1] || d == tr.v[2]) continue;
                    pass = in_circle(a, b, c, f.pts[d].xy()) != CirclePosition::Inside;
                }
            }
            const std::size_t n = f.mesh.size(), h = f.mesh.hull_ccw().size();
            pass = pass && f.mesh.triangles().size() == 2 * n - h - 2 &&
                   f.mesh.edge_count() == 3 * n - h - 3;
        }
        add("1 delaunay: brute-force edges, empty circumcircles, euler counts", pass,
            pass ? 0 : 1, 0);
    }

    // ---- criterion 2: bounded degree ---------------------------------------
    {
        std::size_t worst = 0;
        for (const Fixture* f : fixtures) worst = std::max(worst, f->marked.max_degree());
        add_max("2 degree: max marked degree", static_cast<double>(worst),
                static_cast<double>(bounds::degree_bound(kTheta)));
    }

    // ---- criterion 3: pruned graph spans the triangulation ------------------
    {
        double worst = 0.0;
        for (const Fixture* fp : fixtures) {
            const Fixture& f = *fp;
            const auto g = EdgeListGraph::from_points(f.pts, f.marked.edges());
            for (VertexId u = 0; u < f.mesh.size(); ++u) {
                const auto d = shortest_paths(g, u);
                for (VertexId v : f.mesh.ring_cw(u)) {
                    if (v < u) continue;
                    worst = std::max(worst, d[v] / dist(f.pts[u].xy(), f.pts[v].xy()));
                }
            }
        }
        add_max("3 stretch: marked graph over delaunay edges", worst,
                bounds::face_path_stretch(kTheta) + 1e-9);
    }

    // ---- criterion 4: lightness against the euclidean spanning tree --------
    {
        double worst_tau = 0.0, worst_small = 0.0;
        for (const Fixture* fp : fixtures) {
            const Fixture& f = *fp;
            const double mst_w = tree_weight(f.pts, euclidean_mst(f.pts));
            const double w = f.light.total_weight();
            worst_tau = std::max(worst_tau, w / ((2 * kR + 1) * bounds::spanner_stretch(kTheta) * mst_w));
            worst_small = std::max(worst_small, w / ((2 * kR + 1) * mst_w));
        }
        add_max("4a weight <= (2r+1)*tau*mst", worst_tau, 1.0 + 1e-9);
        add_max("4b weight <= (2r+1)*mst (theta < pi/3)", worst_small, 1.0 + 1e-9);
    }

    // ---- criterion 5: light graph spans the marked graph -------------------
    {
        double worst = 0.0;
        for (const Fixture* fp : fixtures) {
            const Fixture& f = *fp;
            const auto gm = EdgeListGraph::from_points(f.pts, f.marked.edges());
            const auto gl = EdgeListGraph::from_points(f.pts, f.light.included_edges());
            const auto rep = stretch_factor(gl, f.pts, StretchReference::BaseGraphDistances, &gm);
            worst = std::max(worst, rep.max_ratio);
        }
        add_max("5 stretch: light over marked, all pairs", worst, 1.0 + 1.0 / kR + 1e-9);
    }

    // ---- criterion 6: excluded edges recover over their faces --------------
    {
        bool pass = true;
        double worst_excess = -1.0;
        std::size_t records = 0;
        for (const Fixture* fp : fixtures) {
            const Fixture& f = *fp;
            for (VertexId u = 0; u < f.light.vertex_count(); ++u) {
                for (const auto& rec : f.light.excluded_records(u)) {
                    if (u > rec.other) continue;
                    ++records;
                    try {
                        const auto path = recover_face_path(f.light, u, rec);
                        double len = 0.0;
                        for (std::size_t i = 0; i + 1 < path.size(); ++i)
                            len += dist(f.pts[path[i]].xy(), f.pts[path[i + 1]].xy());
                        const double lim =
                            (1.0 + 1.0 / kR) * dist(f.pts[u].xy(), f.pts[rec.other].xy()) + 1e-9;
                        worst_excess = std::max(worst_excess, len - lim);
                        pass = pass && len <= lim;
                    } catch (const Error&) {
                        pass = false;
                    }
                }
            }
        }
        add("6 face-path recovery within (1+1/r)|uv| (" + std::to_string(records) + " records)",
            pass, worst_excess, 0.0);
    }

    // ---- criteria 7-10: routing sweeps --------------------------------------
    {
        double worst_dt = 0.0, worst_mb = 0.0, worst_lm = 0.0;
        bool traces_ok = true, obs3_ok = true, wcc_ok = true;
        bool locality_ok = true, header_ok = true, nested_ok = true;
        std::size_t wcc_n = 0;

        for (const Fixture* fp : fixtures) {
            const Fixture& f = *fp;
            const auto pairs = f.pts.size() <= 100
                                   ? all_pairs(f.pts.size())
                                   : sample_pairs(f.pts.size(), 1000, 7);
            for (auto [s, t] : pairs) {
                const auto rd = delaunay_route(f.mesh, s, t);
                worst_dt = std::max(worst_dt, rd.length / dist(f.pts[s].xy(), f.pts[t].xy()));
                if (traces_ok) traces_ok = validate_route_trace(f.mesh, s, t, rd.trace).empty();

                for (const auto& d : rd.trace) {
                    const Circle c =
                        circumcircle(d.triangle.xy[0], d.triangle.xy[1], d.triangle.xy[2]);
                    const auto dec =
                        step_decision(d.triangle, d.at, f.pts[s].xy(), f.pts[t].xy());
                    const bool p_cw =
                        on_cw_arc(c, d.triangle.xy[0], dec.rightmost_on_segment, d.triangle.xy[1]);
                    const bool q_cw =
                        on_cw_arc(c, d.triangle.xy[0], dec.rightmost_on_segment, d.triangle.xy[2]);
                    if (p_cw == q_cw && dec.rightmost_on_segment != d.triangle.xy[1] &&
                        dec.rightmost_on_segment != d.triangle.xy[2])
                        obs3_ok = false;
                    XY nxt{};
                    for (int i = 1; i < 3; ++i)
                        if (d.triangle.ids[i] == d.chosen) nxt = d.triangle.xy[i];
                    try {
                        ++wcc_n;
                        classify_worst_case_circle(c, d.triangle.xy[0], nxt, f.pts[s].xy(),
                                                   f.pts[t].xy(), d.walk);
                    } catch (const Error&) {
                        wcc_ok = false;
                    }
                }

                const auto rm = mbdg_route(f.marked, s, t);
                worst_mb = std::max(worst_mb, rm.length / dist(f.pts[s].xy(), f.pts[t].xy()));
                locality_ok = locality_ok && rm.locality_violations == 0;
                header_ok = header_ok && rm.max_header_words <= RoutingHeader::capacity_words;
                if (traces_ok) traces_ok = validate_route_trace(f.mesh, s, t, rm.trace).empty();

                try {
                    const auto rl = lmbdg_route(f.light, s, t);
                    worst_lm = std::max(worst_lm, rl.length / dist(f.pts[s].xy(), f.pts[t].xy()));
                    locality_ok = locality_ok && rl.locality_violations == 0;
                    header_ok = header_ok && rl.max_header_words <= RoutingHeader::capacity_words;
                } catch (const NestedDetour&) {
                    nested_ok = false;
                }
            }
        }
        add_max("7 routing ratio on the triangulation", worst_dt, bounds::kDelaunayRoutingRatio);
        // regression pin: the fixtures are deterministic and historically
        // peak near 1.91; a jump past 2.1 means the router got worse even
        // though the proof bound still holds
        add_max("7b observed ratio regression pin", worst_dt, 2.1);
        add_max("8a routing ratio on the marked graph", worst_mb,
                bounds::marked_routing_ratio(kTheta));
        add("8b locality: all accesses at the current vertex", locality_ok, locality_ok ? 0 : 1, 0);
        add("8c header stays within its fixed capacity", header_ok, header_ok ? 0 : 1, 0);
        add_max("9a routing ratio on the light graph", worst_lm,
                bounds::light_routing_ratio(kTheta, kR));
        add("9b no nested detours", nested_ok, nested_ok ? 0 : 1, 0);
        add("10a decision traces replay the circle rule", traces_ok, traces_ok ? 0 : 1, 0);
        add("10b decision arcs hold exactly one candidate", obs3_ok, obs3_ok ? 0 : 1, 0);
        add("10c worst-case circles classify totally (" + std::to_string(wcc_n) + ")", wcc_ok,
            wcc_ok ? 0 : 1, 0);
    }

    // ---- criterion 10 (protection structure via the verify module) ----------
    {
        bool pass = true;
        for (const Fixture* f : {fixtures.front(), fixtures.back()}) {
            const auto pipe = Pipeline::build(f->pts, kTheta, kR);
            const auto rep = run_verify(pipe, {Check::Structure, Check::MstContainment}, 300, 7);
            pass = pass && rep.all_pass();
        }
        add("10d protection structure, angle bound, tree containment", pass, pass ? 0 : 1,
            0);
    }

    // ---- criterion 11 (soft): construction scales like n log n --------------
    {
        const auto p10k = generate_points(10000, PointDistribution::Uniform, 7);
        const auto p100k = generate_points(100000, PointDistribution::Uniform, 7);
        const double t0 = now_s();
        const auto m10k = TriangulationMesh::build(p10k);
        const auto g10k = MarkedGraph::build(m10k, kTheta);
        const double t1 = now_s();
        const auto m100k = TriangulationMesh::build(p100k);
        const auto g100k = MarkedGraph::build(m100k, kTheta);
        const double t2 = now_s();
        (void)g10k;
        (void)g100k;
        const double ratio = (t2 - t1) / std::max(t1 - t0, 1e-9);
        add_max("11 (soft) build time 100k / 10k", ratio, 30.0, true);
    }

    bool all = true;
    for (const auto& l : lines) {
        std::printf("%s  %-58s observed=%.9g bound=%.9g%s\n", l.pass ? "PASS" : "FAIL",
                    l.name.c_str(), l.observed, l.bound, l.soft ? "  [soft]" : "");
        if (!l.soft) all = all && l.pass;
    }
    std::printf("%s (%zu criteria, %.1fs)\n", all ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED",
                lines.size(), now_s() - t_start);
    return all ? 0 : 1;
}
