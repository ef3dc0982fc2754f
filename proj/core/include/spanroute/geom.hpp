#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "spanroute/errors.hpp"
#include "spanroute/predicates.hpp"

namespace spanroute {

using VertexId = std::uint32_t;

struct XY {
    double x = 0.0;
    double y = 0.0;

    friend XY operator+(XY a, XY b) { return {a.x + b.x, a.y + b.y}; }
    friend XY operator-(XY a, XY b) { return {a.x - b.x, a.y - b.y}; }
    friend XY operator*(double s, XY a) { return {s * a.x, s * a.y}; }
    friend bool operator==(XY a, XY b) { return a.x == b.x && a.y == b.y; }
};

inline double dot(XY a, XY b) { return a.x * b.x + a.y * b.y; }
inline double cross(XY a, XY b) { return a.x * b.y - a.y * b.x; }
inline double norm2(XY a) { return dot(a, a); }
inline double norm(XY a) { return std::sqrt(norm2(a)); }
inline double dist(XY a, XY b) { return norm(b - a); }

struct Point {
    double x = 0.0;
    double y = 0.0;
    VertexId id = 0;

    XY xy() const { return {x, y}; }
};

enum class Orientation { Clockwise = -1, Collinear = 0, CounterClockwise = 1 };
enum class CirclePosition { Inside, Outside, OnBoundary };

inline int orient_sign(XY a, XY b, XY c) {
    return orient2d_sign(a.x, a.y, b.x, b.y, c.x, c.y);
}

Orientation orientation(XY p, XY q, XY r);
inline Orientation orientation(const Point& p, const Point& q, const Point& r) {
    return orientation(p.xy(), q.xy(), r.xy());
}

// Position of d relative to the circumcircle of (a, b, c).
// Requires a, b, c non-collinear; they may be given in either orientation.
CirclePosition in_circle(XY a, XY b, XY c, XY d);

struct Circle {
    XY center;
    double radius = 0.0;
};

Circle circumcircle(XY a, XY b, XY c);

// kappa equal half-open sectors of angle 2*pi/kappa each, sector 0 starting
// at the positive x axis and advancing counterclockwise.
struct ConeSystem {
    double theta = 0.0;
    int kappa = 0;
    double cone_angle = 0.0;

    // theta must lie in (0, pi/2)
    static ConeSystem from_theta(double theta);
};

int cone_index(const ConeSystem& cones, XY apex, XY target);

// Intersections of the closed segment [a, b] with the circle boundary,
// ordered by parameter along a -> b. Tangency yields a single point.
std::vector<XY> circle_segment_intersections(const Circle& c, XY a, XY b);

// True when `query` lies on the clockwise arc from `from` to `to`, endpoints
// included. Clockwise means decreasing polar angle around the center. All
// three points must lie on the boundary within 1e-9 * radius.
bool on_cw_arc(const Circle& c, XY from, XY to, XY query);

// --- angular sweep helpers -------------------------------------------------
//
// Directions around an apex are ordered counterclockwise starting at a
// reference ray. Comparisons use exact predicates; a direction exactly on
// the reference ray sorts first, exactly opposite sorts at the half-turn.

struct AngularOrder {
    XY apex;
    XY ref;   // a point defining the reference ray apex -> ref
    int sense = +1;  // +1 counterclockwise sweep, -1 clockwise (mirrored)

    // strict half-plane class of p: 0 on-ray, 1 in (0, pi), 2 opposite ray,
    // 3 in (pi, 2 pi); classes are relative to the sweep sense.
    int half(XY p) const;
    // true when p comes strictly before q in the sweep
    bool before(XY p, XY q) const;
    // true when the ray apex->p lies strictly inside the open half turn
    // (0, pi) relative to the reference, in sweep order
    bool in_open_half_turn(XY p) const { return half(p) == 1; }
};

}  // namespace spanroute
