#include "spanroute/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "spanroute/oracle.hpp"
#include "spanroute/routing.hpp"

namespace spanroute {

namespace bounds {

double face_path_stretch(double theta) {
    return std::max(1.5707963267948966, 3.14159265358979323846 * std::sin(theta / 2.0) + 1.0);
}

double spanner_stretch(double theta) { return kDelaunayStretch * face_path_stretch(theta); }

int degree_bound(double theta) { return 5 * ConeSystem::from_theta(theta).kappa; }

double marked_routing_ratio(double theta) {
    return kDelaunayRoutingRatio * face_path_stretch(theta);
}

double light_routing_ratio(double theta, double r) {
    return marked_routing_ratio(theta) * (1.0 + 1.0 / r);
}

}  // namespace bounds

bool VerifyReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::string VerifyReport::to_text() const {
    std::ostringstream out;
    for (const auto& c : checks) {
        out << (c.pass ? "PASS" : "FAIL") << "  " << c.name << "  observed=" << c.observed
            << " bound=" << c.bound;
        if (!c.witness.empty()) out << "  [" << c.witness << "]";
        out << "\n";
    }
    return out.str();
}

std::string VerifyReport::to_json() const {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& c : checks)
        j.push_back({{"name", c.name},
                     {"pass", c.pass},
                     {"observed", c.observed},
                     {"bound", c.bound},
                     {"witness", c.witness}});
    return j.dump(2) + "\n";
}

std::vector<Check> parse_checks(const std::string& csv) {
    if (csv.empty() || csv == "all")
        return {Check::Delaunay, Check::Degree, Check::Stretch,       Check::Weight,
                Check::Routing,  Check::Locality, Check::MstContainment, Check::Structure};
    std::vector<Check> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok == "delaunay") out.push_back(Check::Delaunay);
        else if (tok == "degree") out.push_back(Check::Degree);
        else if (tok == "stretch") out.push_back(Check::Stretch);
        else if (tok == "weight") out.push_back(Check::Weight);
        else if (tok == "routing") out.push_back(Check::Routing);
        else if (tok == "locality") out.push_back(Check::Locality);
        else if (tok == "mst_containment") out.push_back(Check::MstContainment);
        else if (tok == "structure") out.push_back(Check::Structure);
        else throw ParseError("unknown check: " + tok);
    }
    return out;
}

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string pair_str(VertexId u, VertexId v) {
    return std::to_string(u) + "-" + std::to_string(v);
}

CheckResult bounded(const std::string& name, double observed, double bound,
                    const std::string& witness = {}) {
    return {name, observed <= bound, observed, bound, witness};
}

void check_delaunay(const Pipeline& pipe, VerifyReport& rep) {
    const auto& mesh = pipe.mesh();
    const std::size_t n = mesh.size();
    if (n <= 60) {
        const auto bf = delaunay_bruteforce_check(mesh);
        rep.checks.push_back({"delaunay.bruteforce", bf.pass, 0.0, 0.0,
                              bf.pass ? "" : pair_str(bf.witness.first, bf.witness.second) +
                                                 " " + bf.message});
    }
    // exact empty circumcircle over every triangle
    bool empty_ok = true;
    std::string witness;
    for (const auto& tr : mesh.triangles()) {
        const XY a = mesh.point(tr.v[0]).xy(), b = mesh.point(tr.v[1]).xy(),
                 c = mesh.point(tr.v[2]).xy();
        for (VertexId d = 0; d < n && empty_ok; ++d) {
            if (d == tr.v[0] || d == tr.v[1] || d == tr.v[2]) continue;
            if (in_circle(a, b, c, mesh.point(d).xy()) == CirclePosition::Inside) {
                empty_ok = false;
                witness = "triangle " + std::to_string(tr.v[0]) + "," + std::to_string(tr.v[1]) +
                          "," + std::to_string(tr.v[2]) + " contains " + std::to_string(d);
            }
        }
        if (!empty_ok) break;
    }
    rep.checks.push_back({"delaunay.empty_circumcircle", empty_ok, 0.0, 0.0, witness});

    const std::size_t h = mesh.hull_ccw().size();
    const bool euler = mesh.triangles().size() == 2 * n - h - 2 &&
                       mesh.edge_count() == 3 * n - h - 3;
    rep.checks.push_back({"delaunay.euler_counts", euler,
                          static_cast<double>(mesh.triangles().size()),
                          static_cast<double>(2 * n - h - 2), ""});
}

void check_degree(const Pipeline& pipe, VerifyReport& rep) {
    rep.checks.push_back(bounded("degree.max", static_cast<double>(pipe.marked().max_degree()),
                                 static_cast<double>(bounds::degree_bound(pipe.marked().theta()))));
}

void check_stretch(const Pipeline& pipe, VerifyReport& rep) {
    const auto& mesh = pipe.mesh();
    const auto& pts = mesh.points();
    const auto marked = EdgeListGraph::from_points(pts, pipe.marked().edges());
    const double bound = bounds::face_path_stretch(pipe.marked().theta()) + 1e-9;

    // every dropped Delaunay edge must have a short replacement path
    double worst = 0.0;
    std::pair<VertexId, VertexId> wit{0, 0};
    for (VertexId u = 0; u < pts.size(); ++u) {
        const auto d = shortest_paths(marked, u);
        for (VertexId v : mesh.ring_cw(u)) {
            if (v < u) continue;
            const double ratio = d[v] / dist(pts[u].xy(), pts[v].xy());
            if (ratio > worst) {
                worst = ratio;
                wit = {u, v};
            }
        }
    }
    rep.checks.push_back(
        bounded("stretch.marked_over_delaunay_edges", worst, bound, pair_str(wit.first, wit.second)));

    // light graph versus marked graph, all pairs
    const auto light = EdgeListGraph::from_points(pts, pipe.light().included_edges());
    double worst2 = 0.0;
    std::pair<VertexId, VertexId> wit2{0, 0};
    for (VertexId u = 0; u < pts.size(); ++u) {
        const auto dl = shortest_paths(light, u);
        const auto dm = shortest_paths(marked, u);
        for (VertexId v = 0; v < pts.size(); ++v) {
            if (v == u) continue;
            const double ratio = dl[v] / dm[v];
            if (ratio > worst2) {
                worst2 = ratio;
                wit2 = {u, v};
            }
        }
    }
    rep.checks.push_back(bounded("stretch.light_over_marked", worst2,
                                 1.0 + 1.0 / pipe.light().r() + 1e-9,
                                 pair_str(wit2.first, wit2.second)));
}

void check_weight(const Pipeline& pipe, VerifyReport& rep) {
    const auto& pts = pipe.mesh().points();
    const double mst_v = tree_weight(pts, euclidean_mst(pts));
    const double w = pipe.light().total_weight();
    const double r = pipe.light().r();
    const double theta = pipe.marked().theta();
    const double tau = bounds::spanner_stretch(theta);
    rep.checks.push_back(
        bounded("weight.light_vs_mst", w, (2.0 * r + 1.0) * tau * mst_v * (1.0 + 1e-9)));
    if (theta < kPi / 3.0)
        rep.checks.push_back(
            bounded("weight.light_vs_mst_small_theta", w, (2.0 * r + 1.0) * mst_v * (1.0 + 1e-9)));

    // every excluded edge recovers over its face at the recorded cost
    double worst = 0.0;
    bool ok = true;
    std::string witness;
    std::size_t count = 0;
    for (VertexId u = 0; u < pipe.light().vertex_count(); ++u) {
        for (const auto& rec : pipe.light().excluded_records(u)) {
            if (u > rec.other) continue;
            ++count;
            try {
                const auto path = recover_face_path(pipe.light(), u, rec);
                double len = 0.0;
                for (std::size_t i = 0; i + 1 < path.size(); ++i)
                    len += dist(pts[path[i]].xy(), pts[path[i + 1]].xy());
                const double lim =
                    (1.0 + 1.0 / r) * dist(pts[u].xy(), pts[rec.other].xy()) + 1e-9;
                worst = std::max(worst, len - lim);
                if (len > lim) {
                    ok = false;
                    witness = pair_str(u, rec.other);
                }
            } catch (const Error& e) {
                ok = false;
                witness = pair_str(u, rec.other) + " " + e.what();
            }
        }
    }
    rep.checks.push_back({"weight.face_path_recovery", ok, worst, 0.0,
                          witness.empty() ? std::to_string(count) + " records" : witness});
}

std::vector<std::pair<VertexId, VertexId>> routing_pairs(std::size_t n, std::size_t trials,
                                                         std::uint64_t seed) {
    if (n * (n - 1) <= trials) return all_pairs(n);
    return sample_pairs(n, trials, seed);
}

void check_routing(const Pipeline& pipe, VerifyReport& rep, std::size_t trials,
                   std::uint64_t seed) {
    const auto& mesh = pipe.mesh();
    const auto& pts = mesh.points();
    const double theta = pipe.marked().theta();
    const double r = pipe.light().r();
    const auto pairs = routing_pairs(pts.size(), trials, seed);

    bool traces_ok = true;
    std::string trace_witness;
    const auto dt_report = empirical_routing_ratio(
        [&](VertexId s, VertexId t) {
            const auto res = delaunay_route(mesh, s, t);
            if (traces_ok) {
                const auto err = validate_route_trace(mesh, s, t, res.trace);
                if (!err.empty()) {
                    traces_ok = false;
                    trace_witness = pair_str(s, t) + ": " + err;
                }
            }
            return res.length;
        },
        pts, pairs);
    rep.checks.push_back(bounded("routing.delaunay_ratio", dt_report.max_ratio,
                                 bounds::kDelaunayRoutingRatio,
                                 pair_str(dt_report.witness.first, dt_report.witness.second)));
    rep.checks.push_back({"routing.delaunay_traces_valid", traces_ok, 0.0, 0.0, trace_witness});

    bool mbdg_traces_ok = true;
    std::string mbdg_trace_witness;
    const auto mb_report = empirical_routing_ratio(
        [&](VertexId s, VertexId t) {
            const auto res = mbdg_route(pipe.marked(), s, t);
            if (mbdg_traces_ok) {
                const auto err = validate_route_trace(mesh, s, t, res.trace);
                if (!err.empty()) {
                    mbdg_traces_ok = false;
                    mbdg_trace_witness = pair_str(s, t) + ": " + err;
                }
            }
            return res.length;
        },
        pts, pairs);
    rep.checks.push_back(bounded("routing.marked_ratio", mb_report.max_ratio,
                                 bounds::marked_routing_ratio(theta),
                                 pair_str(mb_report.witness.first, mb_report.witness.second)));
    rep.checks.push_back(
        {"routing.marked_traces_valid", mbdg_traces_ok, 0.0, 0.0, mbdg_trace_witness});

    const auto lm_report = empirical_routing_ratio(
        [&](VertexId s, VertexId t) { return lmbdg_route(pipe.light(), s, t).length; }, pts,
        pairs);
    rep.checks.push_back(bounded("routing.light_ratio", lm_report.max_ratio,
                                 bounds::light_routing_ratio(theta, r),
                                 pair_str(lm_report.witness.first, lm_report.witness.second)));
}

void check_locality(const Pipeline& pipe, VerifyReport& rep, std::size_t trials,
                    std::uint64_t seed) {
    const auto pairs = routing_pairs(pipe.mesh().size(), std::min<std::size_t>(trials, 400), seed);
    std::size_t violations = 0;
    std::size_t header_max = 0;
    for (auto [s, t] : pairs) {
        const auto r1 = mbdg_route(pipe.marked(), s, t);
        const auto r2 = lmbdg_route(pipe.light(), s, t);
        violations += r1.locality_violations + r2.locality_violations;
        header_max = std::max({header_max, r1.max_header_words, r2.max_header_words});
    }
    rep.checks.push_back({"locality.violations", violations == 0,
                          static_cast<double>(violations), 0.0, ""});
    rep.checks.push_back(bounded("locality.header_words", static_cast<double>(header_max),
                                 static_cast<double>(RoutingHeader::capacity_words)));
}

void check_mst_containment(const Pipeline& pipe, VerifyReport& rep) {
    const double theta = pipe.marked().theta();
    if (theta >= kPi / 3.0) {
        rep.checks.push_back({"mst_containment.skipped_theta_too_large", true, theta, kPi / 3.0, ""});
        return;
    }
    const auto& pts = pipe.mesh().points();
    const double full = tree_weight(pts, euclidean_mst(pts));
    const double marked = tree_weight(pts, marked_graph_mst(pipe.marked()));
    const double rel = std::abs(full - marked) / std::max(full, 1e-300);
    rep.checks.push_back(bounded("mst_containment.weight_match", rel, 1e-12,
                                 "mst=" + std::to_string(full)));
}

void check_structure(const Pipeline& pipe, VerifyReport& rep, std::size_t trials,
                  std::uint64_t seed) {
    const auto& mesh = pipe.mesh();
    const auto& g = pipe.marked();
    const auto& cones = g.cones();
    const double theta = g.theta();

    // consecutive cone neighbors subtend a wide angle (the pruning keeps
    // the face paths short because of this); the angle is the interior one
    // of the quadrilateral (u, v_l, v, v_r), reflex corners included
    double min_angle = 2.0 * kPi;
    for (VertexId u = 0; u < mesh.size(); ++u) {
        for (int c = 0; c < cones.kappa; ++c) {
            const auto nbrs = mesh.neighbors_cw(u, cones, c);
            for (std::size_t i = 0; i + 2 < nbrs.size(); ++i) {
                const XY a = mesh.point(nbrs[i]).xy(), b = mesh.point(nbrs[i + 1]).xy(),
                         d = mesh.point(nbrs[i + 2]).xy();
                double ang =
                    std::acos(std::clamp(dot(a - b, d - b) / (dist(a, b) * dist(d, b)), -1.0, 1.0));
                if (orient_sign(a, b, d) > 0) ang = 2.0 * kPi - ang;
                min_angle = std::min(min_angle, ang);
            }
        }
    }
    rep.checks.push_back({"structure.consecutive_angle", min_angle >= kPi - theta - 1e-9, min_angle,
                          kPi - theta, ""});

    // an edge penultimate or middle anywhere must survive
    bool pen_ok = true;
    std::string pen_wit;
    for (VertexId u = 0; u < mesh.size() && pen_ok; ++u) {
        for (int c = 0; c < cones.kappa && pen_ok; ++c) {
            for (const auto& [v, mk] : classify_cone_edges(mesh, cones, u, c)) {
                if (!mk) continue;
                if ((*mk == ProtectionMark::Penultimate || *mk == ProtectionMark::Middle) &&
                    !g.has_edge(u, v)) {
                    pen_ok = false;
                    pen_wit = pair_str(u, v);
                }
            }
        }
    }
    rep.checks.push_back({"structure.penultimate_middle_survive", pen_ok, 0.0, 0.0, pen_wit});

    // the hull path between the penultimate neighbors survives
    bool path_ok = true;
    std::string path_wit;
    for (VertexId u = 0; u < mesh.size() && path_ok; ++u) {
        for (int c = 0; c < cones.kappa && path_ok; ++c) {
            const auto nbrs = mesh.neighbors_cw(u, cones, c);
            if (nbrs.size() < 4) continue;
            for (std::size_t i = 1; i + 2 < nbrs.size(); ++i) {
                if (!g.has_edge(nbrs[i], nbrs[i + 1])) {
                    path_ok = false;
                    path_wit = pair_str(nbrs[i], nbrs[i + 1]) + " at " + std::to_string(u);
                    break;
                }
            }
        }
    }
    rep.checks.push_back({"structure.cone_path_survives", path_ok, 0.0, 0.0, path_wit});

    // every Delaunay edge is protected somewhere: dropped edges must carry a
    // record at exactly one endpoint
    bool prot_ok = true;
    std::string prot_wit;
    std::unordered_set<std::uint64_t> semi_keys;
    for (VertexId v = 0; v < g.size(); ++v)
        for (const auto& rec : g.semi_records(v)) semi_keys.insert(edge_key(v, rec.other));
    for (auto [u, v] : mesh.edges()) {
        if (g.has_edge(u, v)) continue;
        if (!semi_keys.count(edge_key(u, v))) {
            prot_ok = false;
            prot_wit = pair_str(u, v);
            break;
        }
    }
    rep.checks.push_back({"structure.every_edge_protected", prot_ok, 0.0, 0.0, prot_wit});

    // records live at the protected endpoint and are extreme there
    bool rec_ok = true;
    std::string rec_wit;
    for (VertexId v = 0; v < g.size() && rec_ok; ++v) {
        for (const auto& rec : g.semi_records(v)) {
            const auto mk = g.mark_at(v, rec.other);
            const bool expect_extreme = [&] {
                const int c = cone_index(cones, mesh.point(v).xy(), mesh.point(rec.other).xy());
                const auto cls = classify_cone_edges(mesh, cones, v, c);
                const auto it = cls.find(rec.other);
                return it != cls.end() && it->second &&
                       *it->second == ProtectionMark::Extreme;
            }();
            (void)mk;
            if (!expect_extreme) {
                rec_ok = false;
                rec_wit = pair_str(v, rec.other);
            }
        }
    }
    rep.checks.push_back({"structure.records_extreme_at_holder", rec_ok, 0.0, 0.0, rec_wit});

    // decision-arc exclusivity and worst-case circle totality over a sweep
    const auto pairs = routing_pairs(mesh.size(), std::min<std::size_t>(trials, 500), seed);
    bool obs_ok = true;
    bool wcc_ok = true;
    std::size_t wcc_count = 0, x1 = 0, x2 = 0, yy = 0;
    std::string obs_wit, wcc_wit;
    for (auto [s, t] : pairs) {
        RouteResult res;
        try {
            res = delaunay_route(mesh, s, t);
        } catch (const Error& e) {
            obs_ok = false;
            obs_wit = pair_str(s, t) + " " + e.what();
            break;
        }
        for (const auto& d : res.trace) {
            // exactly one endpoint of the step lies on each walk arc
            const Circle c = circumcircle(d.triangle.xy[0], d.triangle.xy[1], d.triangle.xy[2]);
            const auto dec = step_decision(d.triangle, d.at, mesh.point(s).xy(), mesh.point(t).xy());
            const XY vxy = d.triangle.xy[0];
            const XY pxy = d.triangle.xy[1], qxy = d.triangle.xy[2];
            const bool p_cw = on_cw_arc(c, vxy, dec.rightmost_on_segment, pxy);
            const bool q_cw = on_cw_arc(c, vxy, dec.rightmost_on_segment, qxy);
            if (p_cw == q_cw && dec.rightmost_on_segment != pxy &&
                dec.rightmost_on_segment != qxy) {
                obs_ok = false;
                obs_wit = pair_str(s, t);
            }
            XY next_xy{};
            for (int i = 1; i < 3; ++i)
                if (d.triangle.ids[i] == d.chosen) next_xy = d.triangle.xy[i];
            try {
                ++wcc_count;
                const auto wcc = classify_worst_case_circle(c, vxy, next_xy, mesh.point(s).xy(),
                                                            mesh.point(t).xy(), d.walk);
                if (wcc.kind == WorstCaseKind::X1) ++x1;
                if (wcc.kind == WorstCaseKind::X2) ++x2;
                if (wcc.kind == WorstCaseKind::Y) ++yy;
            } catch (const Error& e) {
                wcc_ok = false;
                wcc_wit = pair_str(s, t) + " " + e.what();
            }
        }
    }
    rep.checks.push_back({"structure.decision_arc_exclusive", obs_ok, 0.0, 0.0, obs_wit});
    rep.checks.push_back({"structure.worst_case_circle_total", wcc_ok, static_cast<double>(wcc_count),
                          0.0,
                          wcc_ok ? "x1=" + std::to_string(x1) + " x2=" + std::to_string(x2) +
                                       " y=" + std::to_string(yy)
                                 : wcc_wit});
}

}  // namespace

VerifyReport run_verify(const Pipeline& pipe, const std::vector<Check>& checks,
                        std::size_t trials, std::uint64_t seed) {
    VerifyReport rep;
    for (Check c : checks) {
        switch (c) {
            case Check::Delaunay: check_delaunay(pipe, rep); break;
            case Check::Degree: check_degree(pipe, rep); break;
            case Check::Stretch: check_stretch(pipe, rep); break;
            case Check::Weight: check_weight(pipe, rep); break;
            case Check::Routing: check_routing(pipe, rep, trials, seed); break;
            case Check::Locality: check_locality(pipe, rep, trials, seed); break;
            case Check::MstContainment: check_mst_containment(pipe, rep); break;
            case Check::Structure: check_structure(pipe, rep, trials, seed); break;
        }
    }
    return rep;
}

}  // namespace spanroute
