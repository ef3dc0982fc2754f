#include "spanroute/document.hpp"

#include <chrono>
#include <fstream>

#include <nlohmann/json.hpp>

#include "spanroute/lightness.hpp"
#include "spanroute/oracle.hpp"

namespace spanroute {

namespace {

using nlohmann::json;

const char* mark_name(ProtectionMark m) {
    switch (m) {
        case ProtectionMark::Extreme: return "extreme";
        case ProtectionMark::Penultimate: return "penultimate";
        default: return "middle";
    }
}

ProtectionMark mark_from(const std::string& s) {
    if (s == "extreme") return ProtectionMark::Extreme;
    if (s == "penultimate") return ProtectionMark::Penultimate;
    if (s == "middle") return ProtectionMark::Middle;
    throw ParseError("unknown protection mark: " + s);
}

double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

}  // namespace

Pipeline Pipeline::build(std::vector<Point> points, double theta, double r) {
    Pipeline p;
    p.theta_ = theta;
    p.r_ = r;
    const double t0 = now_ms();
    p.mesh_ = std::make_unique<TriangulationMesh>(TriangulationMesh::build(std::move(points)));
    const double t1 = now_ms();
    p.marked_ = std::make_unique<MarkedGraph>(MarkedGraph::build(*p.mesh_, theta));
    const double t2 = now_ms();
    p.light_ = std::make_unique<LightGraph>(LightGraph::build(*p.marked_, r));
    const double t3 = now_ms();

    p.metrics_.degree_max = p.marked_->max_degree();
    p.metrics_.weight = p.light_->total_weight();
    p.metrics_.mst_weight = tree_weight(p.mesh_->points(), marked_graph_mst(*p.marked_));
    p.metrics_.mesh_ms = t1 - t0;
    p.metrics_.mbdg_ms = t2 - t1;
    p.metrics_.lmbdg_ms = t3 - t2;
    return p;
}

GraphDocument Pipeline::to_document() const {
    GraphDocument doc;
    doc.theta = theta_;
    doc.r = r_;
    doc.points = mesh_->points();
    doc.metrics = metrics_;

    for (auto [u, v] : marked_->edges()) {
        GraphDocument::Edge e{};
        e.u = u;
        e.v = v;
        e.mark_at_u = *marked_->mark_at(u, v);
        e.mark_at_v = *marked_->mark_at(v, u);
        e.included_in_light = light_->includes(u, v);
        e.weight = light_->settled_weight(u, v);
        doc.edges.push_back(e);
    }
    for (VertexId v = 0; v < marked_->size(); ++v)
        for (const auto& rec : marked_->semi_records(v))
            doc.semi_protected.push_back({v, rec.other, rec.side_bit});
    for (VertexId u = 0; u < marked_->size(); ++u)
        for (const auto& rec : light_->excluded_records(u)) {
            if (u > rec.other) continue;  // one row per edge, bit as stored at u
            doc.excluded.push_back({u, rec.other, rec.dir_bit, rec.weight});
        }
    return doc;
}

Pipeline Pipeline::restore(const GraphDocument& doc) {
    Pipeline p;
    p.theta_ = doc.theta;
    p.r_ = doc.r;
    p.metrics_ = doc.metrics;
    p.mesh_ = std::make_unique<TriangulationMesh>(TriangulationMesh::build(doc.points));

    const std::size_t n = p.mesh_->size();
    std::vector<std::vector<MarkedEdge>> marked(n);
    std::vector<std::vector<SemiProtectedRecord>> semi(n);
    for (const auto& e : doc.edges) {
        marked[e.u].push_back({e.v, e.mark_at_u});
        marked[e.v].push_back({e.u, e.mark_at_v});
    }
    for (const auto& sp : doc.semi_protected) semi[sp.store_at].push_back({sp.other, sp.side_bit});
    p.marked_ = std::make_unique<MarkedGraph>(
        MarkedGraph::from_parts(*p.mesh_, doc.theta, std::move(marked), std::move(semi)));

    std::vector<std::pair<VertexId, VertexId>> included;
    for (const auto& e : doc.edges)
        if (e.included_in_light) included.emplace_back(e.u, e.v);
    std::vector<std::vector<ExcludedEdgeRecord>> excluded(n);
    for (const auto& x : doc.excluded) {
        excluded[x.u].push_back({x.v, x.dir_bit_at_u, x.weight});
        excluded[x.v].push_back({x.u, 1 - x.dir_bit_at_u, x.weight});
    }
    p.light_ = std::make_unique<LightGraph>(
        LightGraph::from_parts(*p.marked_, doc.r, std::move(included), std::move(excluded)));
    return p;
}

std::string serialize_document(const GraphDocument& doc) {
    json j;
    j["schema_version"] = GraphDocument::schema_version;
    j["theta"] = doc.theta;
    j["r"] = doc.r;
    json pts = json::array();
    for (const auto& p : doc.points) pts.push_back({{"id", p.id}, {"x", p.x}, {"y", p.y}});
    j["points"] = std::move(pts);
    json edges = json::array();
    for (const auto& e : doc.edges)
        edges.push_back({{"u", e.u},
                         {"v", e.v},
                         {"mark_at_u", mark_name(e.mark_at_u)},
                         {"mark_at_v", mark_name(e.mark_at_v)},
                         {"included_in_light", e.included_in_light},
                         {"weight", e.weight}});
    j["edges"] = std::move(edges);
    json semi = json::array();
    for (const auto& s : doc.semi_protected)
        semi.push_back({{"store_at", s.store_at}, {"other", s.other}, {"side_bit", s.side_bit}});
    j["semi_protected"] = std::move(semi);
    json exc = json::array();
    for (const auto& x : doc.excluded)
        exc.push_back({{"u", x.u}, {"v", x.v}, {"dir_bit_at_u", x.dir_bit_at_u}, {"weight", x.weight}});
    j["excluded"] = std::move(exc);
    j["metrics"] = {{"degree_max", doc.metrics.degree_max},
                    {"weight", doc.metrics.weight},
                    {"mst_weight", doc.metrics.mst_weight},
                    {"mesh_ms", doc.metrics.mesh_ms},
                    {"mbdg_ms", doc.metrics.mbdg_ms},
                    {"lmbdg_ms", doc.metrics.lmbdg_ms}};
    return j.dump(2) + "\n";
}

GraphDocument parse_document(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad document: ") + e.what());
    }
    try {
        if (j.at("schema_version").get<int>() != GraphDocument::schema_version)
            throw ParseError("unsupported schema version");
        GraphDocument doc;
        doc.theta = j.at("theta").get<double>();
        doc.r = j.at("r").get<double>();
        for (const auto& p : j.at("points"))
            doc.points.push_back(
                {p.at("x").get<double>(), p.at("y").get<double>(), p.at("id").get<VertexId>()});
        for (const auto& e : j.at("edges"))
            doc.edges.push_back({e.at("u").get<VertexId>(), e.at("v").get<VertexId>(),
                                 mark_from(e.at("mark_at_u").get<std::string>()),
                                 mark_from(e.at("mark_at_v").get<std::string>()),
                                 e.at("included_in_light").get<bool>(),
                                 e.at("weight").get<double>()});
        for (const auto& s : j.at("semi_protected"))
            doc.semi_protected.push_back({s.at("store_at").get<VertexId>(),
                                          s.at("other").get<VertexId>(),
                                          s.at("side_bit").get<int>()});
        for (const auto& x : j.at("excluded"))
            doc.excluded.push_back({x.at("u").get<VertexId>(), x.at("v").get<VertexId>(),
                                    x.at("dir_bit_at_u").get<int>(), x.at("weight").get<double>()});
        if (j.contains("metrics")) {
            const auto& m = j.at("metrics");
            doc.metrics.degree_max = m.at("degree_max").get<std::size_t>();
            doc.metrics.weight = m.at("weight").get<double>();
            doc.metrics.mst_weight = m.at("mst_weight").get<double>();
            doc.metrics.mesh_ms = m.at("mesh_ms").get<double>();
            doc.metrics.mbdg_ms = m.at("mbdg_ms").get<double>();
            doc.metrics.lmbdg_ms = m.at("lmbdg_ms").get<double>();
        }
        return doc;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad document: ") + e.what());
    }
}

void write_document_file(const std::string& path, const GraphDocument& doc) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open output file: " + path);
    out << serialize_document(doc);
}

GraphDocument read_document_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open document: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_document(text);
}

}  // namespace spanroute
