#pragma once

#include <unordered_map>
#include <vector>

#include "spanroute/spanner.hpp"

namespace spanroute {

// Closed boundary walk of the expanding region: vertex sequence (repeats
// allowed) plus one settled weight per boundary step.
struct TourPolygon {
    std::vector<VertexId> boundary;     // cyclic, step i runs boundary[i] -> boundary[i+1]
    std::vector<double> step_weight;    // same length as boundary
};

// Euler tour around a spanning tree, each tree edge traversed twice. The
// walk leaves a vertex through the counterclockwise successor of the edge
// it arrived on, which orients the degenerate polygon counterclockwise.
TourPolygon euler_tour_polygon(const std::vector<Point>& points,
                               const std::vector<std::pair<VertexId, VertexId>>& mst_edges);

enum class IncludeDecision { Include, Exclude };

// An edge survives the pruning exactly when the boundary detour is longer
// than (1 + 1/r) times the edge.
IncludeDecision include_decision(double boundary_weight_sum, double edge_length, double r);

struct ExcludedEdgeRecord {
    VertexId other = 0;
    int dir_bit = 0;      // 1: recovery path starts clockwise of the chord
    double weight = 0.0;  // settled weight = length of the replacement path
};

// Subgraph of a MarkedGraph with bounded total weight. Keeps the marked
// graph's marks and semi-protected records; excluded edges leave one record
// at each endpoint. Immutable once built.
class LightGraph : public ViewProvider {
public:
    static LightGraph build(const MarkedGraph& g, double r);

    const MarkedGraph& base() const { return *base_; }
    double r() const { return r_; }

    bool includes(VertexId u, VertexId v) const { return included_.count(edge_key(u, v)) != 0; }
    std::vector<std::pair<VertexId, VertexId>> included_edges() const;
    const std::vector<ExcludedEdgeRecord>& excluded_records(VertexId v) const {
        return excluded_.at(v);
    }
    double total_weight() const;
    double settled_weight(VertexId u, VertexId v) const;  // weight assigned at settlement

    LocalView view(VertexId v) const override;
    std::size_t vertex_count() const override { return excluded_.size(); }

    static LightGraph from_parts(const MarkedGraph& g, double r,
                                 std::vector<std::pair<VertexId, VertexId>> included,
                                 std::vector<std::vector<ExcludedEdgeRecord>> excluded);

private:
    LightGraph() = default;

    const MarkedGraph* base_ = nullptr;
    double r_ = 0.0;
    std::unordered_set<std::uint64_t> included_;
    std::vector<std::vector<ExcludedEdgeRecord>> excluded_;
    std::unordered_map<std::uint64_t, double> settled_weight_;
};

// Replacement path for an excluded edge: the walk around the light graph
// face that has the chord u -> rec.other, following the recorded side.
std::vector<VertexId> recover_face_path(const LightGraph& lg, VertexId u,
                                        const ExcludedEdgeRecord& rec);

// Minimum spanning tree over the marked graph's edges (Euclidean weights,
// ties by endpoint ids).
std::vector<std::pair<VertexId, VertexId>> marked_graph_mst(const MarkedGraph& g);

}  // namespace spanroute
