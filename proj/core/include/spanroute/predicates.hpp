#pragma once

// Robust planar predicates. Each sign is first evaluated in double precision
// behind a forward error bound; inputs that land inside the uncertainty
// interval are re-evaluated in exact rational arithmetic, so the returned
// sign is always the true sign.

namespace spanroute {

// Sign of the signed area of triangle (a, b, c):
// +1 counterclockwise, -1 clockwise, 0 collinear.
int orient2d_sign(double ax, double ay, double bx, double by, double cx, double cy);

// Sign of the in-circle determinant for the circumcircle of (a, b, c) given
// counterclockwise: +1 when d is strictly inside, -1 strictly outside,
// 0 cocircular. For clockwise (a, b, c) the sign flips.
int incircle_sign(double ax, double ay, double bx, double by, double cx, double cy,
                  double dx, double dy);

// Sign of (b - a) . (c - a).
int dot_sign(double ax, double ay, double bx, double by, double cx, double cy);

// Sign of |b - a|^2 - |d - c|^2 (compares two segment lengths exactly).
int cmp_dist2(double ax, double ay, double bx, double by,
              double cx, double cy, double dx, double dy);

}  // namespace spanroute
