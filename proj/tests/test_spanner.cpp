#include <doctest.h>

#include <cmath>

#include "spanroute/oracle.hpp"
#include "spanroute/pointset.hpp"
#include "spanroute/spanner.hpp"

using namespace spanroute;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTheta = kPi / 4.0;

std::vector<Point> pts_of(std::initializer_list<std::pair<double, double>> c) {
    std::vector<Point> out;
    for (auto [x, y] : c) out.push_back({x, y, static_cast<VertexId>(out.size())});
    return out;
}

// a fan of neighbors around apex 0 inside one cone, clockwise, with chosen
// radii; the fan edges are Delaunay because the apex is the only other point
std::vector<Point> fan_points(const std::vector<double>& radii) {
    std::vector<Point> pts = pts_of({{0, 0}});
    const double lo = 0.1, hi = kTheta - 0.1;
    const std::size_t m = radii.size();
    for (std::size_t i = 0; i < m; ++i) {
        // clockwise means descending angle
        const double a = hi - (hi - lo) * static_cast<double>(i) / static_cast<double>(m - 1);
        pts.push_back({radii[i] * std::cos(a), radii[i] * std::sin(a),
                       static_cast<VertexId>(pts.size())});
    }
    return pts;
}

}  // namespace

TEST_CASE("cone classification: single neighbor is extreme") {
    const auto pts = pts_of({{0, 0}, {4, 0}, {0, 3}});
    const auto mesh = TriangulationMesh::build(pts);
    const auto cones = ConeSystem::from_theta(kPi / 8.0);
    const int cone = cone_index(cones, pts[0].xy(), pts[1].xy());
    const auto marks = classify_cone_edges(mesh, cones, 0, cone);
    REQUIRE(marks.size() == 1);
    CHECK(*marks.at(1) == ProtectionMark::Extreme);
}

TEST_CASE("cone classification: fan shapes") {
    // 6 neighbors with |uv_3| shortest among the inner two: v_3 is the
    // middle edge; radii stay near-equal so every spoke is Delaunay
    const auto pts6 = fan_points({6.00, 6.01, 5.99, 5.98, 6.01, 6.00});
    const auto mesh6 = TriangulationMesh::build(pts6);
    const auto cones = ConeSystem::from_theta(kTheta);
    REQUIRE(mesh6.ring_cw(0).size() == 6);
    const int cone = cone_index(cones, pts6[0].xy(), pts6[1].xy());
    const auto nbrs = mesh6.neighbors_cw(0, cones, cone);
    REQUIRE(nbrs.size() == 6);
    const auto marks = classify_cone_edges(mesh6, cones, 0, cone);
    CHECK(*marks.at(nbrs[0]) == ProtectionMark::Extreme);
    CHECK(*marks.at(nbrs[5]) == ProtectionMark::Extreme);
    CHECK(*marks.at(nbrs[1]) == ProtectionMark::Penultimate);
    CHECK(*marks.at(nbrs[4]) == ProtectionMark::Penultimate);
    CHECK(*marks.at(nbrs[3]) == ProtectionMark::Middle);  // the shorter of the two
    CHECK_FALSE(marks.at(nbrs[2]).has_value());

    // 4 neighbors: extremes and penultimates only, no middle
    const auto pts4 = fan_points({6.00, 5.99, 5.99, 6.00});
    const auto mesh4 = TriangulationMesh::build(pts4);
    REQUIRE(mesh4.ring_cw(0).size() == 4);
    const auto nbrs4 = mesh4.neighbors_cw(0, cones, cone);
    const auto marks4 = classify_cone_edges(mesh4, cones, 0, cone);
    CHECK(*marks4.at(nbrs4[0]) == ProtectionMark::Extreme);
    CHECK(*marks4.at(nbrs4[3]) == ProtectionMark::Extreme);
    CHECK(*marks4.at(nbrs4[1]) == ProtectionMark::Penultimate);
    CHECK(*marks4.at(nbrs4[2]) == ProtectionMark::Penultimate);
    for (const auto& [v, mk] : marks4) CHECK(*mk != ProtectionMark::Middle);
}

TEST_CASE("marked graph keeps everything when cones are sparse") {
    const auto pts = pts_of({{0, 0}, {4, 0}, {0, 3}});
    const auto mesh = TriangulationMesh::build(pts);
    const auto g = MarkedGraph::build(mesh, kTheta);
    CHECK(g.edges().size() == 3);
    for (VertexId v = 0; v < 3; ++v) CHECK(g.semi_records(v).empty());
    CHECK_THROWS_AS(MarkedGraph::build(mesh, 2.0), ThetaOutOfRange);
}

TEST_CASE("marked graph on random instances: degree and protection structure") {
    for (std::uint64_t seed : {7u, 19u, 35u}) {
        const auto pts = generate_points(200, PointDistribution::Uniform, seed);
        const auto mesh = TriangulationMesh::build(pts);
        const auto g = MarkedGraph::build(mesh, kTheta);
        const auto& cones = g.cones();

        CHECK(g.max_degree() <= 5 * static_cast<std::size_t>(cones.kappa));

        // subgraph of the triangulation
        for (auto [u, v] : g.edges()) CHECK(mesh.has_edge(u, v));

        // an edge marked penultimate or middle anywhere survives; the cone
        // path between the penultimates survives
        for (VertexId u = 0; u < mesh.size(); ++u) {
            for (int c = 0; c < cones.kappa; ++c) {
                const auto marks = classify_cone_edges(mesh, cones, u, c);
                for (const auto& [v, mk] : marks) {
                    if (!mk) continue;
                    if (*mk == ProtectionMark::Penultimate || *mk == ProtectionMark::Middle)
                        CHECK(g.has_edge(u, v));
                }
                const auto nbrs = mesh.neighbors_cw(u, cones, c);
                for (std::size_t i = 1; i + 2 < nbrs.size(); ++i)
                    CHECK(g.has_edge(nbrs[i], nbrs[i + 1]));
            }
        }

        // every dropped edge carries a record at its protected endpoint,
        // where it is extreme; at most two records per cone
        std::unordered_set<std::uint64_t> recorded;
        for (VertexId v = 0; v < g.size(); ++v) {
            CHECK(g.semi_records(v).size() <= 2 * static_cast<std::size_t>(cones.kappa));
            for (const auto& rec : g.semi_records(v)) {
                CHECK_FALSE(g.has_edge(v, rec.other));
                CHECK(mesh.has_edge(v, rec.other));
                recorded.insert(edge_key(v, rec.other));
                const int c = cone_index(cones, pts[v].xy(), pts[rec.other].xy());
                const auto marks = classify_cone_edges(mesh, cones, v, c);
                REQUIRE(marks.at(rec.other).has_value());
                CHECK(*marks.at(rec.other) == ProtectionMark::Extreme);
            }
        }
        for (auto [u, v] : mesh.edges())
            if (!g.has_edge(u, v)) CHECK(recorded.count(edge_key(u, v)) == 1);
    }
}

TEST_CASE("consecutive cone neighbors subtend a wide angle") {
    const auto pts = generate_points(150, PointDistribution::Uniform, 3);
    const auto mesh = TriangulationMesh::build(pts);
    const auto cones = ConeSystem::from_theta(kTheta);
    for (VertexId u = 0; u < mesh.size(); ++u) {
        for (int c = 0; c < cones.kappa; ++c) {
            const auto nbrs = mesh.neighbors_cw(u, cones, c);
            for (std::size_t i = 0; i + 2 < nbrs.size(); ++i) {
                const XY a = pts[nbrs[i]].xy(), b = pts[nbrs[i + 1]].xy(),
                         d = pts[nbrs[i + 2]].xy();
                // interior angle of the quadrilateral (u, v_l, v, v_r) at v:
                // a counterclockwise turn means the corner is reflex there
                double ang =
                    std::acos(std::clamp(dot(a - b, d - b) / (dist(a, b) * dist(d, b)), -1.0, 1.0));
                if (orient_sign(a, b, d) > 0) ang = 2.0 * kPi - ang;
                CHECK(ang >= kPi - kTheta - 1e-9);
            }
        }
    }
}

TEST_CASE("marked graph spans the triangulation within the face-path bound") {
    const double bound = std::max(kPi / 2.0, kPi * std::sin(kTheta / 2.0) + 1.0);
    for (std::uint64_t seed : {7u, 12u}) {
        const auto pts = generate_points(200, PointDistribution::Uniform, seed);
        const auto mesh = TriangulationMesh::build(pts);
        const auto g = MarkedGraph::build(mesh, kTheta);
        const auto graph = EdgeListGraph::from_points(pts, g.edges());
        for (VertexId u = 0; u < mesh.size(); ++u) {
            const auto d = shortest_paths(graph, u);
            for (VertexId v : mesh.ring_cw(u)) {
                if (v < u) continue;
                CHECK(d[v] <= bound * dist(pts[u].xy(), pts[v].xy()) + 1e-9);
            }
        }
    }
}

TEST_CASE("local views expose exactly the permitted data") {
    const auto pts = generate_points(200, PointDistribution::Uniform, 7);
    const auto mesh = TriangulationMesh::build(pts);
    const auto g = MarkedGraph::build(mesh, kTheta);
    const auto kappa = static_cast<std::size_t>(g.cones().kappa);

    for (VertexId v = 0; v < g.size(); ++v) {
        const auto view = local_view(g, v);
        CHECK(view.id() == v);
        CHECK(view.edges().size() == g.marked_edges(v).size());
        CHECK(view.semi_records().size() == g.semi_records(v).size());
        CHECK(view.word_count() <= 7 * kappa + 3);
        for (const auto& e : view.edges()) CHECK(view.coords_of(e.to) == pts[e.to].xy());
    }

    // a vertex that is neither a neighbor nor a record target is invisible
    const auto view0 = local_view(g, 0);
    for (VertexId w = 0; w < g.size(); ++w) {
        const bool visible = w == 0 || view0.find_edge(w) || view0.find_semi(w);
        if (!visible) {
            CHECK_THROWS_AS(view0.coords_of(w), UnknownVertex);
            break;
        }
    }
    CHECK_THROWS_AS(g.view(9999), UnknownVertex);
}
