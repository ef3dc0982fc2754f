#pragma once

#include <map>
#include <optional>
#include <vector>

#include "spanroute/delaunay.hpp"

namespace spanroute {

enum class ProtectionMark : std::uint8_t { Extreme, Penultimate, Middle };

// A dropped Delaunay edge, kept only at its protected endpoint. `side_bit`
// says on which side of the unprotected endpoint's middle edge the chord
// lies: 1 when clockwise of it, 0 otherwise. The guided face walk follows
// that side.
struct SemiProtectedRecord {
    VertexId other = 0;
    int side_bit = 0;
};

struct MarkedEdge {
    VertexId to = 0;
    ProtectionMark mark = ProtectionMark::Extreme;  // mark at the owning vertex
};

// What a vertex is allowed to see during 1-local routing: its own
// coordinates, its surviving edges with marks and neighbor coordinates, its
// semi-protected records, and (on the light graph) its excluded-edge
// records. Nothing else is reachable through a view.
struct ViewEdge {
    VertexId to = 0;
    XY to_xy;
    ProtectionMark mark = ProtectionMark::Extreme;
    bool included = true;  // light-graph membership; always true on the marked graph
};

struct ViewSemi {
    VertexId other = 0;
    XY other_xy;
    int side_bit = 0;
};

struct ViewExcluded {
    VertexId other = 0;
    XY other_xy;
    int dir_bit = 0;       // 1: recovery path starts clockwise of the chord
    double weight = 0.0;   // length of the recorded replacement path
};

class LocalView {
public:
    LocalView(VertexId id, XY at, std::vector<ViewEdge> edges, std::vector<ViewSemi> semi,
              std::vector<ViewExcluded> excluded)
        : id_(id), at_(at), edges_(std::move(edges)), semi_(std::move(semi)),
          excluded_(std::move(excluded)) {}

    VertexId id() const { return id_; }
    XY at() const { return at_; }
    const std::vector<ViewEdge>& edges() const { return edges_; }
    const std::vector<ViewSemi>& semi_records() const { return semi_; }
    const std::vector<ViewExcluded>& excluded_records() const { return excluded_; }

    const ViewEdge* find_edge(VertexId to) const;
    const ViewSemi* find_semi(VertexId other) const;
    const ViewExcluded* find_excluded(VertexId other) const;

    // Coordinates of a vertex visible through this view. Throws
    // UnknownVertex for anything that is not the owner, a marked neighbor,
    // or a recorded far endpoint.
    XY coords_of(VertexId v) const;

    std::size_t word_count() const;

private:
    VertexId id_;
    XY at_;
    std::vector<ViewEdge> edges_;
    std::vector<ViewSemi> semi_;
    std::vector<ViewExcluded> excluded_;
};

// Source of local views; routing reaches the graph only through one of
// these, which makes 1-locality checkable.
class ViewProvider {
public:
    virtual ~ViewProvider() = default;
    virtual LocalView view(VertexId v) const = 0;
    virtual std::size_t vertex_count() const = 0;
};

// The pruned bounded-degree subgraph of a Delaunay triangulation, with
// per-endpoint protection marks and semi-protected records. Immutable and
// concurrently queryable once built.
class MarkedGraph : public ViewProvider {
public:
    static MarkedGraph build(const TriangulationMesh& mesh, double theta);

    const TriangulationMesh& mesh() const { return *mesh_; }
    const ConeSystem& cones() const { return cones_; }
    double theta() const { return cones_.theta; }
    std::size_t size() const { return marked_.size(); }

    bool has_edge(VertexId u, VertexId v) const { return edges_.count(edge_key(u, v)) != 0; }
    std::vector<std::pair<VertexId, VertexId>> edges() const;
    const std::vector<MarkedEdge>& marked_edges(VertexId v) const { return marked_.at(v); }
    const std::vector<SemiProtectedRecord>& semi_records(VertexId v) const {
        return semi_.at(v);
    }
    std::optional<ProtectionMark> mark_at(VertexId v, VertexId to) const;
    std::size_t degree(VertexId v) const { return marked_.at(v).size(); }
    std::size_t max_degree() const;

    LocalView view(VertexId v) const override;
    std::size_t vertex_count() const override { return marked_.size(); }

    // construction hook for deserialisation
    static MarkedGraph from_parts(const TriangulationMesh& mesh, double theta,
                                  std::vector<std::vector<MarkedEdge>> marked,
                                  std::vector<std::vector<SemiProtectedRecord>> semi);

private:
    MarkedGraph() = default;

    const TriangulationMesh* mesh_ = nullptr;
    ConeSystem cones_;
    std::vector<std::vector<MarkedEdge>> marked_;          // clockwise ring order
    std::vector<std::vector<SemiProtectedRecord>> semi_;
    std::unordered_set<std::uint64_t> edges_;
};

// Per-cone classification of the clockwise-ordered neighbors of u: the two
// angular extremes, the two penultimates when at least three neighbors are
// present, and the shortest remaining edge when at least five are.
std::map<VertexId, std::optional<ProtectionMark>> classify_cone_edges(
    const TriangulationMesh& mesh, const ConeSystem& cones, VertexId u, int cone);

inline LocalView local_view(const MarkedGraph& g, VertexId v) { return g.view(v); }

}  // namespace spanroute
