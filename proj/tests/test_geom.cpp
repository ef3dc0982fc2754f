#include <doctest.h>

#include <cmath>
#include <random>

#include "spanroute/geom.hpp"

using namespace spanroute;

namespace {

// independent circumcenter oracle: solve the two perpendicular-bisector
// equations with Cramer's rule
XY bisector_center(XY a, XY b, XY c) {
    const double a1 = b.x - a.x, b1 = b.y - a.y;
    const double c1 = 0.5 * (b.x * b.x - a.x * a.x + b.y * b.y - a.y * a.y);
    const double a2 = c.x - a.x, b2 = c.y - a.y;
    const double c2 = 0.5 * (c.x * c.x - a.x * a.x + c.y * c.y - a.y * a.y);
    const double det = a1 * b2 - a2 * b1;
    return {(c1 * b2 - c2 * b1) / det, (a1 * c2 - a2 * c1) / det};
}

std::mt19937_64 rng(20240811);

double coord() {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 100.0 - 50.0;
}

XY rand_on_circle(const Circle& c) {
    const double a = static_cast<double>(rng() >> 11) * 0x1.0p-53 * 6.283185307179586;
    return {c.center.x + c.radius * std::cos(a), c.center.y + c.radius * std::sin(a)};
}

}  // namespace

TEST_CASE("orientation signs") {
    CHECK(orientation(XY{0, 0}, XY{1, 0}, XY{0, 1}) == Orientation::CounterClockwise);
    CHECK(orientation(XY{0, 0}, XY{1, 1}, XY{2, 2}) == Orientation::Collinear);
    CHECK(orientation(XY{0, 0}, XY{0, 1}, XY{1, 0}) == Orientation::Clockwise);
}

TEST_CASE("orientation is antisymmetric under swaps") {
    for (int i = 0; i < 2000; ++i) {
        const XY p{coord(), coord()}, q{coord(), coord()}, r{coord(), coord()};
        const int o = orient_sign(p, q, r);
        CHECK(orient_sign(q, p, r) == -o);
        CHECK(orient_sign(p, r, q) == -o);
        CHECK(orient_sign(r, q, p) == -o);
    }
}

TEST_CASE("orientation exactness near degeneracy") {
    // collinear points with coordinates that stress the floating filter
    const double base = 1e-30;
    for (int i = 1; i < 50; ++i) {
        const XY a{base, base}, b{2 * base, 2 * base}, c{3 * base, 3 * base};
        CHECK(orient_sign(a, b, c) == 0);
        const XY d{3 * base, std::nextafter(3 * base, 1.0)};
        CHECK(orient_sign(a, b, d) != 0);
    }
}

TEST_CASE("in_circle basic positions") {
    const XY a{0, 0}, b{2, 0}, c{0, 2};
    CHECK(in_circle(a, b, c, XY{1, 1}) == CirclePosition::Inside);
    CHECK(in_circle(a, b, c, XY{2, 2}) == CirclePosition::OnBoundary);
    CHECK(in_circle(a, b, c, XY{5, 5}) == CirclePosition::Outside);
    CHECK_THROWS_AS(in_circle(a, XY{1, 1}, XY{2, 2}, b), CollinearDefiningPoints);
}

TEST_CASE("in_circle is invariant under even permutations and orientation flips") {
    for (int i = 0; i < 500; ++i) {
        const XY a{coord(), coord()}, b{coord(), coord()}, c{coord(), coord()},
            d{coord(), coord()};
        if (orient_sign(a, b, c) == 0) continue;
        const auto r = in_circle(a, b, c, d);
        CHECK(in_circle(b, c, a, d) == r);
        CHECK(in_circle(c, a, b, d) == r);
        CHECK(in_circle(a, c, b, d) == r);  // odd permutation, orientation-corrected
    }
}

TEST_CASE("circumcircle matches the bisector oracle") {
    const Circle right = circumcircle(XY{0, 0}, XY{2, 0}, XY{0, 2});
    CHECK(right.center.x == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(right.center.y == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(right.radius == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

    const Circle c2 = circumcircle(XY{0, 0}, XY{3, 2}, XY{4, -1});
    const XY oracle = bisector_center(XY{0, 0}, XY{3, 2}, XY{4, -1});
    CHECK(c2.center.x == doctest::Approx(oracle.x).epsilon(1e-12));
    CHECK(c2.center.y == doctest::Approx(oracle.y).epsilon(1e-12));
    CHECK(c2.center.x == doctest::Approx(2.13636).epsilon(1e-5));
    CHECK(c2.center.y == doctest::Approx(0.04545).epsilon(1e-3));
    CHECK(c2.radius == doctest::Approx(2.136847).epsilon(1e-5));

    const Circle unit = circumcircle(XY{-1, 0}, XY{1, 0}, XY{0, 1});
    CHECK(unit.center.x == doctest::Approx(0.0));
    CHECK(unit.center.y == doctest::Approx(0.0));
    CHECK(unit.radius == doctest::Approx(1.0));

    CHECK_THROWS_AS(circumcircle(XY{0, 0}, XY{1, 1}, XY{2, 2}), CollinearDefiningPoints);
}

TEST_CASE("circumcircle residuals stay within tolerance on random triples") {
    for (int i = 0; i < 2000; ++i) {
        const XY a{coord(), coord()}, b{coord(), coord()}, c{coord(), coord()};
        if (orient_sign(a, b, c) == 0) continue;
        const Circle cc = circumcircle(a, b, c);
        for (XY p : {a, b, c})
            CHECK(std::abs(dist(cc.center, p) - cc.radius) <= 1e-12 * cc.radius);
    }
}

TEST_CASE("cone_index buckets and boundary convention") {
    const ConeSystem four{1.0, 4, 6.283185307179586 / 4.0};
    CHECK(cone_index(four, XY{0, 0}, XY{1, 1}) == 0);
    CHECK(cone_index(four, XY{0, 0}, XY{-1, 0}) == 2);
    CHECK(cone_index(four, XY{0, 0}, XY{1, 0}) == 0);  // half-open lower boundary
    CHECK_THROWS_AS(cone_index(four, XY{1, 1}, XY{1, 1}), DegenerateDirection);
}

TEST_CASE("cone system from theta") {
    const auto cs = ConeSystem::from_theta(0.7853981633974483);  // pi/4
    CHECK(cs.kappa == 8);
    CHECK(cs.cone_angle == doctest::Approx(0.7853981633974483));
    CHECK_THROWS_AS(ConeSystem::from_theta(0.0), ThetaOutOfRange);
    CHECK_THROWS_AS(ConeSystem::from_theta(1.6), ThetaOutOfRange);

    // partition property: every direction lands in exactly one cone
    for (int i = 0; i < 1000; ++i) {
        const XY apex{coord(), coord()};
        const XY tgt{coord(), coord()};
        if (apex == tgt) continue;
        const int idx = cone_index(cs, apex, tgt);
        CHECK(idx >= 0);
        CHECK(idx < cs.kappa);
    }
}

TEST_CASE("circle segment intersections") {
    const Circle unit{{0, 0}, 1.0};
    const auto diam = circle_segment_intersections(unit, XY{-2, 0}, XY{2, 0});
    REQUIRE(diam.size() == 2);
    CHECK(diam[0].x == doctest::Approx(-1.0));
    CHECK(diam[1].x == doctest::Approx(1.0));

    const auto tang = circle_segment_intersections(unit, XY{-2, 1}, XY{2, 1});
    REQUIRE(tang.size() == 1);
    CHECK(tang[0].x == doctest::Approx(0.0));
    CHECK(tang[0].y == doctest::Approx(1.0));

    CHECK(circle_segment_intersections(unit, XY{5, 5}, XY{6, 6}).empty());
}

TEST_CASE("on_cw_arc endpoints and sides") {
    const Circle unit{{0, 0}, 1.0};
    CHECK(on_cw_arc(unit, XY{-1, 0}, XY{1, 0}, XY{0, 1}));
    CHECK_FALSE(on_cw_arc(unit, XY{-1, 0}, XY{1, 0}, XY{0, -1}));
    CHECK(on_cw_arc(unit, XY{-1, 0}, XY{-1, 0}, XY{-1, 0}));
    CHECK_THROWS_AS(on_cw_arc(unit, XY{-1, 0}, XY{1, 0}, XY{5, 5}), NotOnCircle);
}

TEST_CASE("on_cw_arc splits the circle with its reverse") {
    const Circle c{{3, -2}, 2.5};
    for (int i = 0; i < 2000; ++i) {
        const XY f = rand_on_circle(c), t = rand_on_circle(c), q = rand_on_circle(c);
        if (dist(f, t) < 1e-9 || dist(f, q) < 1e-9 || dist(t, q) < 1e-9) continue;
        const bool fwd = on_cw_arc(c, f, t, q);
        const bool rev = on_cw_arc(c, t, f, q);
        CHECK(fwd != rev);
    }
}
