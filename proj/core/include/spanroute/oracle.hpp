#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "spanroute/delaunay.hpp"

namespace spanroute {

// Brute-force ground truth used by the verification suites. Everything here
// is independent of the construction code it checks.

struct WeightedEdge {
    VertexId u, v;
    double w;
};

constexpr double kInfDist = std::numeric_limits<double>::infinity();

class EdgeListGraph {
public:
    EdgeListGraph(std::size_t n, std::vector<WeightedEdge> edges);
    static EdgeListGraph from_points(const std::vector<Point>& pts,
                                     const std::vector<std::pair<VertexId, VertexId>>& edges);

    std::size_t size() const { return n_; }
    const std::vector<WeightedEdge>& edges() const { return edges_; }
    const std::vector<std::pair<VertexId, double>>& adjacent(VertexId v) const {
        return adj_.at(v);
    }

private:
    std::size_t n_;
    std::vector<WeightedEdge> edges_;
    std::vector<std::vector<std::pair<VertexId, double>>> adj_;
};

// single-source Dijkstra; unreachable vertices get +infinity
std::vector<double> shortest_paths(const EdgeListGraph& g, VertexId source);

struct StretchReport {
    double max_ratio = 0.0;
    std::pair<VertexId, VertexId> witness{0, 0};
    std::vector<double> ratios;  // filled on demand
};

enum class StretchReference { EuclideanAllPairs, BaseGraphDistances };

// max over vertex pairs of d_graph(u, v) / reference(u, v); the reference is
// the straight-line distance or the distance in `base`.
StretchReport stretch_factor(const EdgeListGraph& g, const std::vector<Point>& pts,
                             StretchReference ref, const EdgeListGraph* base = nullptr);

// minimum spanning tree, Euclidean weights, ties by edge id
std::vector<std::pair<VertexId, VertexId>> euclidean_mst(const std::vector<Point>& pts);
std::vector<std::pair<VertexId, VertexId>> graph_mst(const EdgeListGraph& g);
double tree_weight(const std::vector<Point>& pts,
                   const std::vector<std::pair<VertexId, VertexId>>& edges);

// max over the given source/target pairs of routed length / |st|
using RouterFn = std::function<double(VertexId, VertexId)>;
StretchReport empirical_routing_ratio(const RouterFn& route, const std::vector<Point>& pts,
                                      const std::vector<std::pair<VertexId, VertexId>>& pairs);

struct BruteForceCheck {
    bool pass = true;
    std::pair<VertexId, VertexId> witness{0, 0};
    std::string message;
};

// Exact empty-circle characterisation of the Delaunay edge set; O(n^4),
// guarded at n <= 60.
BruteForceCheck delaunay_bruteforce_check(const TriangulationMesh& mesh);

// all source/target pairs (ordered, s != t)
std::vector<std::pair<VertexId, VertexId>> all_pairs(std::size_t n);
// deterministic sample of distinct ordered pairs
std::vector<std::pair<VertexId, VertexId>> sample_pairs(std::size_t n, std::size_t count,
                                                        std::uint64_t seed);

}  // namespace spanroute
