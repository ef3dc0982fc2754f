#pragma once

// Adversarial fixtures: uniform random instances rarely put six or more
// Delaunay neighbors into one cone, so the pruning machinery (dropped
// chords, records, face walks) would stay cold without crafted inputs.

#include <cmath>
#include <random>
#include <vector>

#include "spanroute/geom.hpp"

namespace spanroute::testfix {

// A "fan": an apex with `arc` near-equidistant neighbors packed into a
// single cone, which the pruning must cut down to five.
inline void add_fan(std::vector<Point>& pts, std::mt19937_64& rng, XY apex, double radius,
                    std::size_t arc, int cone, double cone_angle) {
    auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    pts.push_back({apex.x, apex.y, 0});
    const double lo = cone * cone_angle + 0.08 * cone_angle;
    const double hi = (cone + 1) * cone_angle - 0.08 * cone_angle;
    for (std::size_t i = 0; i < arc; ++i) {
        const double a = hi - (hi - lo) * static_cast<double>(i) / static_cast<double>(arc - 1);
        const double r = radius * (1.0 + 0.002 * unit());
        pts.push_back({apex.x + r * std::cos(a), apex.y + r * std::sin(a), 0});
    }
}

// several fans surrounded by a loose ring of padding points
inline std::vector<Point> sunflower_points(std::size_t fans, std::size_t arc,
                                           std::uint64_t seed, double cone_angle) {
    std::mt19937_64 rng(seed);
    auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    std::vector<Point> pts;
    const int kappa = static_cast<int>(std::round(6.283185307179586 / cone_angle));
    for (std::size_t f = 0; f < fans; ++f) {
        const XY apex{130.0 * static_cast<double>(f % 3), 130.0 * static_cast<double>(f / 3)};
        add_fan(pts, rng, apex, 10.0 + 3.0 * unit(), arc, static_cast<int>(rng() % kappa),
                cone_angle);
    }
    // padding ring far outside the fans
    const XY mid{130.0, 65.0};
    for (int i = 0; i < 24; ++i) {
        const double a = 6.283185307179586 * i / 24.0 + 0.1 * unit();
        const double r = 320.0 + 40.0 * unit();
        pts.push_back({mid.x + r * std::cos(a), mid.y + r * std::sin(a), 0});
    }
    // a few scattered mid-field points
    for (int i = 0; i < 30; ++i)
        pts.push_back({-60.0 + 380.0 * unit(), -60.0 + 250.0 * unit(), 0});
    for (VertexId i = 0; i < pts.size(); ++i) pts[i].id = i;
    return pts;
}

}  // namespace spanroute::testfix
