#pragma once

#include <memory>
#include <optional>
#include <string>

#include "spanroute/lightness.hpp"
#include "spanroute/routing.hpp"

namespace spanroute {

// Self-describing snapshot of the full pipeline (points, pruned graph with
// marks, light subgraph with records). Serialises to a single JSON file and
// round-trips losslessly.
struct GraphDocument {
    static constexpr int schema_version = 1;

    double theta = 0.0;
    double r = 0.0;
    std::vector<Point> points;

    struct Edge {
        VertexId u, v;
        ProtectionMark mark_at_u, mark_at_v;
        bool included_in_light;
        double weight;  // settled weight
    };
    std::vector<Edge> edges;

    struct Semi {
        VertexId store_at, other;
        int side_bit;
    };
    std::vector<Semi> semi_protected;

    struct Excluded {
        VertexId u, v;
        int dir_bit_at_u;  // the bit stored at v is the complement
        double weight;
    };
    std::vector<Excluded> excluded;

    struct Metrics {
        std::size_t degree_max = 0;
        double weight = 0.0;      // total light-graph weight
        double mst_weight = 0.0;  // weight of the marked graph's spanning tree
        double mesh_ms = 0.0;
        double mbdg_ms = 0.0;
        double lmbdg_ms = 0.0;
    };
    Metrics metrics;
};

// Rebuilt in-memory pipeline for a parsed document. The mesh is
// reconstructed from the points (construction is deterministic); graphs are
// restored from the stored records, not recomputed.
class Pipeline {
public:
    static Pipeline build(std::vector<Point> points, double theta, double r);
    static Pipeline restore(const GraphDocument& doc);

    const TriangulationMesh& mesh() const { return *mesh_; }
    const MarkedGraph& marked() const { return *marked_; }
    const LightGraph& light() const { return *light_; }
    const GraphDocument::Metrics& metrics() const { return metrics_; }

    GraphDocument to_document() const;

private:
    Pipeline() = default;
    std::unique_ptr<TriangulationMesh> mesh_;
    std::unique_ptr<MarkedGraph> marked_;
    std::unique_ptr<LightGraph> light_;
    double theta_ = 0.0, r_ = 0.0;
    GraphDocument::Metrics metrics_;
};

std::string serialize_document(const GraphDocument& doc);
GraphDocument parse_document(const std::string& json_text);
void write_document_file(const std::string& path, const GraphDocument& doc);
GraphDocument read_document_file(const std::string& path);

}  // namespace spanroute
