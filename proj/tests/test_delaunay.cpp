#include <doctest.h>

#include <algorithm>
#include <set>

#include "spanroute/delaunay.hpp"
#include "spanroute/oracle.hpp"
#include "spanroute/pointset.hpp"

using namespace spanroute;

namespace {

std::vector<Point> pts_of(std::initializer_list<std::pair<double, double>> c) {
    std::vector<Point> out;
    for (auto [x, y] : c) out.push_back({x, y, static_cast<VertexId>(out.size())});
    return out;
}

std::set<std::pair<VertexId, VertexId>> edge_set(const TriangulationMesh& m) {
    const auto e = m.edges();
    return {e.begin(), e.end()};
}

}  // namespace

TEST_CASE("single triangle") {
    const auto m = TriangulationMesh::build(pts_of({{0, 0}, {4, 0}, {0, 3}}));
    CHECK(edge_set(m) == std::set<std::pair<VertexId, VertexId>>{{0, 1}, {0, 2}, {1, 2}});
    CHECK(m.triangles().size() == 1);
    CHECK(m.hull_ccw().size() == 3);
}

TEST_CASE("interior point fan") {
    const auto m = TriangulationMesh::build(pts_of({{0, 0}, {6, 0}, {3, 6}, {3, 2}}));
    CHECK(edge_set(m) == std::set<std::pair<VertexId, VertexId>>{
                             {0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}, {2, 3}});
    CHECK(m.triangles().size() == 3);
    CHECK_FALSE(m.on_hull(3));
    CHECK(m.on_hull(0));
}

TEST_CASE("invalid inputs") {
    CHECK_THROWS_AS(TriangulationMesh::build(pts_of({{0, 0}, {1, 1}, {1, 1}})), DuplicatePoints);
    CHECK_THROWS_AS(TriangulationMesh::build(pts_of({{0, 0}, {1, 1}, {2, 2}, {3, 3}})),
                    AllCollinear);
    CHECK_THROWS_AS(TriangulationMesh::build(pts_of({{0, 0}, {1, 1}})), Error);
}

TEST_CASE("matches the brute-force empty-circle oracle") {
    for (std::uint64_t seed : {42u, 7u, 99u}) {
        const auto pts = generate_points(50, PointDistribution::Uniform, seed);
        const auto m = TriangulationMesh::build(pts);
        const auto check = delaunay_bruteforce_check(m);
        CHECK_MESSAGE(check.pass, "seed ", seed, ": ", check.message, " at ",
                      check.witness.first, "-", check.witness.second);
    }
}

TEST_CASE("euler counts and ring consistency on random instances") {
    for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
        const auto pts = generate_points(120, PointDistribution::Uniform, seed);
        const auto m = TriangulationMesh::build(pts);
        const std::size_t n = m.size(), h = m.hull_ccw().size();
        CHECK(m.triangles().size() == 2 * n - h - 2);
        CHECK(m.edge_count() == 3 * n - h - 3);

        // rings are mutually consistent and clockwise
        for (VertexId u = 0; u < n; ++u) {
            const auto& ring = m.ring_cw(u);
            for (VertexId v : ring) {
                CHECK(m.has_edge(u, v));
                const auto& other = m.ring_cw(v);
                CHECK(std::find(other.begin(), other.end(), u) != other.end());
            }
            // clockwise order: every consecutive wedge is a triangle's
            // interior angle, so each cyclic step turns clockwise
            if (!m.on_hull(u)) {
                for (std::size_t i = 0; i < ring.size(); ++i) {
                    const XY a = m.point(ring[i]).xy();
                    const XY b = m.point(ring[(i + 1) % ring.size()]).xy();
                    CHECK(orient_sign(m.point(u).xy(), a, b) < 0);
                }
            }
        }
    }
}

TEST_CASE("determinism") {
    const auto pts = generate_points(80, PointDistribution::Clustered, 5);
    const auto m1 = TriangulationMesh::build(pts);
    const auto m2 = TriangulationMesh::build(pts);
    CHECK(m1.edges() == m2.edges());
    for (VertexId u = 0; u < m1.size(); ++u) CHECK(m1.ring_cw(u) == m2.ring_cw(u));
}

TEST_CASE("cocircular grid input still satisfies the empty-disk invariant") {
    std::vector<Point> pts;
    for (int x = 0; x < 5; ++x)
        for (int y = 0; y < 5; ++y)
            pts.push_back({static_cast<double>(x), static_cast<double>(y),
                           static_cast<VertexId>(pts.size())});
    const auto m = TriangulationMesh::build(pts);
    for (const auto& tr : m.triangles()) {
        const XY a = m.point(tr.v[0]).xy(), b = m.point(tr.v[1]).xy(), c = m.point(tr.v[2]).xy();
        for (VertexId d = 0; d < m.size(); ++d) {
            if (d == tr.v[0] || d == tr.v[1] || d == tr.v[2]) continue;
            CHECK(in_circle(a, b, c, m.point(d).xy()) != CirclePosition::Inside);
        }
    }
    const std::size_t n = m.size(), h = m.hull_ccw().size();
    CHECK(m.triangles().size() == 2 * n - h - 2);
}

TEST_CASE("cone-restricted neighbor queries") {
    const auto m = TriangulationMesh::build(pts_of({{0, 0}, {6, 0}, {3, 6}, {3, 2}}));
    // narrow cones so the sector around vertex 1's direction holds nothing else
    const auto cs = ConeSystem::from_theta(0.39269908169872414);

    // interior vertex sees all three corners across its ring
    const auto all = m.neighbors_cw(3);
    CHECK(all.size() == 3);

    // restricting to the cone holding vertex 1 keeps only vertex 1
    const int cone1 = cone_index(cs, m.point(0).xy(), m.point(1).xy());
    const auto restricted = m.neighbors_cw(0, cs, cone1);
    CHECK(restricted == std::vector<VertexId>{1});

    // reversing the clockwise ring gives the counterclockwise order
    auto rev = all;
    std::reverse(rev.begin(), rev.end());
    for (std::size_t i = 0; i < all.size(); ++i) {
        const XY u = m.point(3).xy();
        const XY a = m.point(rev[i]).xy(), b = m.point(rev[(i + 1) % rev.size()]).xy();
        if (i + 1 < rev.size()) CHECK(orient_sign(u, a, b) >= 0);
    }
    CHECK_THROWS_AS(m.neighbors_cw(99), UnknownVertex);
}

TEST_CASE("rightmost intersecting triangle") {
    const auto single = TriangulationMesh::build(pts_of({{0, 0}, {4, 0}, {0, 3}}));
    const auto tri = single.rightmost_intersecting_triangle(2, XY{0, 1}, XY{3, 1});
    std::array<VertexId, 3> sorted = tri;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == std::array<VertexId, 3>{0, 1, 2});

    const auto m = TriangulationMesh::build(pts_of({{0, 0}, {6, 0}, {3, 6}, {3, 2}}));
    // both triangles at vertex 0 meet the segment; (0,1,3) owns the region
    // below the interior point and reaches further right
    const auto best = m.rightmost_intersecting_triangle(0, XY{0, 1}, XY{6, 1});
    std::array<VertexId, 3> key = best;
    std::sort(key.begin(), key.end());
    CHECK(key == std::array<VertexId, 3>{0, 1, 3});

    CHECK_THROWS_AS(m.rightmost_intersecting_triangle(2, XY{0, -5}, XY{6, -5}),
                    NoIntersectingTriangle);
}
