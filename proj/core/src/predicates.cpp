#include "spanroute/predicates.hpp"

#include <cmath>

#include <gmpxx.h>

namespace spanroute {
namespace {

// forward error bound coefficients for the double-precision estimates
// (standard bounds for the 2d orientation / in-circle determinants)
constexpr double kEps = 1.1102230246251565e-16;  // 2^-53
constexpr double kOrientBound = (3.0 + 16.0 * kEps) * kEps;
constexpr double kIncircleBound = (10.0 + 96.0 * kEps) * kEps;
constexpr double kDotBound = 8.0 * kEps;

inline int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

int orient2d_exact(double ax, double ay, double bx, double by, double cx, double cy) {
    const mpq_class qax(ax), qay(ay), qbx(bx), qby(by), qcx(cx), qcy(cy);
    const mpq_class det = (qax - qcx) * (qby - qcy) - (qay - qcy) * (qbx - qcx);
    return sgn(det);
}

int incircle_exact(double ax, double ay, double bx, double by, double cx, double cy,
                   double dx, double dy) {
    const mpq_class qdx(dx), qdy(dy);
    const mpq_class adx = mpq_class(ax) - qdx, ady = mpq_class(ay) - qdy;
    const mpq_class bdx = mpq_class(bx) - qdx, bdy = mpq_class(by) - qdy;
    const mpq_class cdx = mpq_class(cx) - qdx, cdy = mpq_class(cy) - qdy;
    const mpq_class alift = adx * adx + ady * ady;
    const mpq_class blift = bdx * bdx + bdy * bdy;
    const mpq_class clift = cdx * cdx + cdy * cdy;
    const mpq_class det = alift * (bdx * cdy - cdx * bdy) +
                          blift * (cdx * ady - adx * cdy) +
                          clift * (adx * bdy - bdx * ady);
    return sgn(det);
}

int dot_exact(double ax, double ay, double bx, double by, double cx, double cy) {
    const mpq_class qax(ax), qay(ay);
    const mpq_class det = (mpq_class(bx) - qax) * (mpq_class(cx) - qax) +
                          (mpq_class(by) - qay) * (mpq_class(cy) - qay);
    return sgn(det);
}

int dist2_exact(double ax, double ay, double bx, double by,
                double cx, double cy, double dx, double dy) {
    const mpq_class abx = mpq_class(bx) - mpq_class(ax), aby = mpq_class(by) - mpq_class(ay);
    const mpq_class cdx2 = mpq_class(dx) - mpq_class(cx), cdy2 = mpq_class(dy) - mpq_class(cy);
    const mpq_class det = abx * abx + aby * aby - cdx2 * cdx2 - cdy2 * cdy2;
    return sgn(det);
}

}  // namespace

int orient2d_sign(double ax, double ay, double bx, double by, double cx, double cy) {
    const double detleft = (ax - cx) * (by - cy);
    const double detright = (ay - cy) * (bx - cx);
    const double det = detleft - detright;
    double detsum;
    if (detleft > 0.0) {
        if (detright <= 0.0) return sign_of(det);
        detsum = detleft + detright;
    } else if (detleft < 0.0) {
        if (detright >= 0.0) return sign_of(det);
        detsum = -detleft - detright;
    } else {
        return sign_of(-detright);
    }
    if (std::abs(det) >= kOrientBound * detsum) return sign_of(det);
    return orient2d_exact(ax, ay, bx, by, cx, cy);
}

int incircle_sign(double ax, double ay, double bx, double by, double cx, double cy,
                  double dx, double dy) {
    const double adx = ax - dx, ady = ay - dy;
    const double bdx = bx - dx, bdy = by - dy;
    const double cdx = cx - dx, cdy = cy - dy;

    const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
    const double cdxady = cdx * ady, adxcdy = adx * cdy;
    const double adxbdy = adx * bdy, bdxady = bdx * ady;
    const double alift = adx * adx + ady * ady;
    const double blift = bdx * bdx + bdy * bdy;
    const double clift = cdx * cdx + cdy * cdy;

    const double det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) +
                       clift * (adxbdy - bdxady);
    const double permanent = (std::abs(bdxcdy) + std::abs(cdxbdy)) * alift +
                             (std::abs(cdxady) + std::abs(adxcdy)) * blift +
                             (std::abs(adxbdy) + std::abs(bdxady)) * clift;
    if (std::abs(det) >= kIncircleBound * permanent) return sign_of(det);
    return incircle_exact(ax, ay, bx, by, cx, cy, dx, dy);
}

int dot_sign(double ax, double ay, double bx, double by, double cx, double cy) {
    const double t1 = (bx - ax) * (cx - ax);
    const double t2 = (by - ay) * (cy - ay);
    const double det = t1 + t2;
    const double magnitude = std::abs(t1) + std::abs(t2);
    if (std::abs(det) >= kDotBound * magnitude) return sign_of(det);
    return dot_exact(ax, ay, bx, by, cx, cy);
}

int cmp_dist2(double ax, double ay, double bx, double by,
              double cx, double cy, double dx, double dy) {
    const double t1 = (bx - ax) * (bx - ax) + (by - ay) * (by - ay);
    const double t2 = (dx - cx) * (dx - cx) + (dy - cy) * (dy - cy);
    const double det = t1 - t2;
    if (std::abs(det) >= kDotBound * (t1 + t2)) return sign_of(det);
    return dist2_exact(ax, ay, bx, by, cx, cy, dx, dy);
}

}  // namespace spanroute
