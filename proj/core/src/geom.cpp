#include "spanroute/geom.hpp"

#include <algorithm>
#include <cmath>

namespace spanroute {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

double polar_angle(XY v) {
    double a = std::atan2(v.y, v.x);
    if (a < 0.0) a += kTwoPi;
    return a;
}
}  // namespace

Orientation orientation(XY p, XY q, XY r) {
    switch (orient_sign(p, q, r)) {
        case 1: return Orientation::CounterClockwise;
        case -1: return Orientation::Clockwise;
        default: return Orientation::Collinear;
    }
}

CirclePosition in_circle(XY a, XY b, XY c, XY d) {
    int o = orient_sign(a, b, c);
    if (o == 0) throw CollinearDefiningPoints("in_circle: defining points are collinear");
    int s = incircle_sign(a.x, a.y, b.x, b.y, c.x, c.y, d.x, d.y) * o;
    if (s > 0) return CirclePosition::Inside;
    if (s < 0) return CirclePosition::Outside;
    return CirclePosition::OnBoundary;
}

Circle circumcircle(XY a, XY b, XY c) {
    if (orient_sign(a, b, c) == 0)
        throw CollinearDefiningPoints("circumcircle: defining points are collinear");
    const XY ab = b - a, ac = c - a;
    const double d = 2.0 * cross(ab, ac);
    const double ab2 = norm2(ab), ac2 = norm2(ac);
    const XY rel{(ac.y * ab2 - ab.y * ac2) / d, (ab.x * ac2 - ac.x * ab2) / d};
    Circle out;
    out.center = a + rel;
    // averaging the three vertex distances spreads the rounding error evenly
    out.radius = (dist(out.center, a) + dist(out.center, b) + dist(out.center, c)) / 3.0;
    return out;
}

ConeSystem ConeSystem::from_theta(double theta) {
    if (!(theta > 0.0) || !(theta < 1.5707963267948966))
        throw ThetaOutOfRange("theta must lie strictly between 0 and pi/2");
    ConeSystem cs;
    cs.theta = theta;
    // nudge below the ratio so exact divisors (e.g. theta = pi/4) are not
    // pushed to the next integer by the division rounding up
    cs.kappa = static_cast<int>(std::ceil(kTwoPi / theta - 1e-9));
    cs.cone_angle = kTwoPi / cs.kappa;
    return cs;
}

int cone_index(const ConeSystem& cones, XY apex, XY target) {
    if (apex == target) throw DegenerateDirection("cone_index: apex equals target");
    const double a = polar_angle(target - apex);
    int idx = static_cast<int>(a / cones.cone_angle);
    if (idx >= cones.kappa) idx = cones.kappa - 1;  // a == 2*pi rounding
    return idx;
}

std::vector<XY> circle_segment_intersections(const Circle& c, XY a, XY b) {
    if (a == b) throw DegenerateDirection("circle_segment_intersections: degenerate segment");
    const XY d = b - a;
    const XY f = a - c.center;
    const double qa = norm2(d);
    const double qb = 2.0 * dot(f, d);
    const double qc = norm2(f) - c.radius * c.radius;
    double disc = qb * qb - 4.0 * qa * qc;
    const double tol = 1e-12 * (qb * qb + std::abs(4.0 * qa * qc));
    std::vector<XY> out;
    if (disc < -tol) return out;
    if (disc < 0.0) disc = 0.0;
    const double root = std::sqrt(disc);
    double t0 = (-qb - root) / (2.0 * qa);
    double t1 = (-qb + root) / (2.0 * qa);
    const double eps = 1e-12;
    if (t0 >= -eps && t0 <= 1.0 + eps) out.push_back(a + std::clamp(t0, 0.0, 1.0) * d);
    if (root > eps * std::abs(qb) + eps && t1 >= -eps && t1 <= 1.0 + eps)
        out.push_back(a + std::clamp(t1, 0.0, 1.0) * d);
    return out;
}

bool on_cw_arc(const Circle& c, XY from, XY to, XY query) {
    const double tol = 1e-9 * c.radius;
    for (XY p : {from, to, query}) {
        if (std::abs(dist(p, c.center) - c.radius) > tol)
            throw NotOnCircle("on_cw_arc: point not on circle boundary");
    }
    const double af = polar_angle(from - c.center);
    const double at = polar_angle(to - c.center);
    const double aq = polar_angle(query - c.center);
    auto cw_from = [&](double target) {
        double d = af - target;
        if (d < 0.0) d += kTwoPi;
        return d;  // clockwise travel from `from` down to `target`
    };
    return cw_from(aq) <= cw_from(at) + 1e-15;
}

int AngularOrder::half(XY p) const {
    int cr = orient_sign(apex, ref, p) * sense;
    if (cr > 0) return 1;
    if (cr < 0) return 3;
    return dot_sign(apex.x, apex.y, ref.x, ref.y, p.x, p.y) > 0 ? 0 : 2;
}

bool AngularOrder::before(XY p, XY q) const {
    const int hp = half(p), hq = half(q);
    if (hp != hq) return hp < hq;
    int cr = orient_sign(apex, p, q) * sense;
    if (cr != 0) return cr > 0;
    return false;  // same direction: not strictly before
}

}  // namespace spanroute
