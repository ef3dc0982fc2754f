#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <unordered_set>
#include <vector>

#include "spanroute/geom.hpp"

namespace spanroute {

using TriId = std::uint32_t;
constexpr TriId kNoTri = std::numeric_limits<TriId>::max();

struct Triangle {
    std::array<VertexId, 3> v;    // counterclockwise
    std::array<TriId, 3> nbr;     // nbr[i] faces v[i] across the opposite edge; kNoTri on the hull
};

// Delaunay triangulation of a planar point set.
//
// Immutable once built; all queries are safe to run concurrently. Cocircular
// degeneracies are completed deterministically (boundary counts as empty,
// insertion order fixed by index), so `build` is total on duplicate-free,
// non-collinear input.
class TriangulationMesh {
public:
    static TriangulationMesh build(std::vector<Point> points);

    std::size_t size() const { return points_.size(); }
    const Point& point(VertexId v) const { return points_.at(v); }
    const std::vector<Point>& points() const { return points_; }
    const std::vector<Triangle>& triangles() const { return tris_; }

    bool on_hull(VertexId v) const { return on_hull_.at(v); }
    // hull cycle in counterclockwise order, starting at the lexicographically
    // smallest boundary vertex
    const std::vector<VertexId>& hull_ccw() const { return hull_; }

    bool has_edge(VertexId u, VertexId v) const;
    std::size_t edge_count() const { return edges_.size(); }
    // every undirected edge once, u < v, sorted
    std::vector<std::pair<VertexId, VertexId>> edges() const;

    // Neighbors of u in clockwise angular order. Interior vertices get the
    // full ring (cyclic, cut at the smallest neighbor id); hull vertices get
    // the open sequence running from one hull edge to the other.
    const std::vector<VertexId>& ring_cw(VertexId u) const;

    // Ring restricted to one cone, clockwise order preserved.
    std::vector<VertexId> neighbors_cw(VertexId u) const;
    std::vector<VertexId> neighbors_cw(VertexId u, const ConeSystem& cones, int cone) const;

    // Among triangles incident to v that intersect the closed segment [st],
    // the one whose intersection interval reaches furthest toward t
    // (ties: larger interval start, then lexicographically smallest vertex
    // triple). Throws NoIntersectingTriangle when none qualifies.
    std::array<VertexId, 3> rightmost_intersecting_triangle(VertexId v, XY s, XY t) const;

    // triangles incident to v as consecutive clockwise ring pairs
    std::vector<std::array<VertexId, 3>> incident_triangles(VertexId v) const;

    void check_vertex(VertexId v) const;

private:
    TriangulationMesh() = default;

    std::vector<Point> points_;
    std::vector<Triangle> tris_;
    std::vector<std::vector<VertexId>> rings_;
    std::vector<bool> on_hull_;
    std::vector<VertexId> hull_;
    std::unordered_set<std::uint64_t> edges_;
};

inline std::uint64_t edge_key(VertexId u, VertexId v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | v;
}

}  // namespace spanroute
