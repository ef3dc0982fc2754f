// Command line surface: point generation, graph building, routing queries,
// verification and SVG rendering. Exit codes: 0 success, 1 verification
// failure, 2 usage or parse errors.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "spanroute/document.hpp"
#include "spanroute/pointset.hpp"
#include "spanroute/routing.hpp"
#include "spanroute/svg.hpp"
#include "spanroute/verify.hpp"

namespace {

using namespace spanroute;

int cmd_gen(std::size_t n, const std::string& dist, std::uint64_t seed, const std::string& out) {
    const auto pts = generate_points(n, parse_distribution(dist), seed);
    write_points_file(out, pts);
    std::cout << "wrote " << pts.size() << " points to " << out << "\n";
    return 0;
}

int cmd_build(const std::string& points_path, double theta, double r, const std::string& out) {
    auto pts = read_points_file(points_path);
    const Pipeline pipe = Pipeline::build(std::move(pts), theta, r);
    write_document_file(out, pipe.to_document());
    const auto& m = pipe.metrics();
    std::cout << "points=" << pipe.mesh().size() << " edges_mesh=" << pipe.mesh().edge_count()
              << " edges_marked=" << pipe.marked().edges().size()
              << " edges_light=" << pipe.light().included_edges().size() << "\n";
    std::cout << "degree_max=" << m.degree_max << " weight=" << m.weight
              << " mst_weight=" << m.mst_weight << "\n";
    std::cout << "mesh_ms=" << m.mesh_ms << " mbdg_ms=" << m.mbdg_ms << " lmbdg_ms=" << m.lmbdg_ms
              << "\n";
    return 0;
}

int cmd_route(const std::string& graph_path, VertexId s, VertexId t, const std::string& layer,
              bool trace) {
    const Pipeline pipe = Pipeline::restore(read_document_file(graph_path));
    RouteResult res;
    if (layer == "dt")
        res = delaunay_route(pipe.mesh(), s, t);
    else if (layer == "mbdg")
        res = mbdg_route(pipe.marked(), s, t);
    else if (layer == "lmbdg")
        res = lmbdg_route(pipe.light(), s, t);
    else
        throw ParseError("unknown layer: " + layer);

    const double direct = dist(pipe.mesh().point(s).xy(), pipe.mesh().point(t).xy());
    std::cout << "path:";
    for (VertexId v : res.path) std::cout << ' ' << v;
    std::cout << "\nlength=" << res.length << " direct=" << direct
              << " ratio=" << res.length / direct << " hops=" << res.path.size() - 1 << "\n";
    if (trace) {
        for (const auto& d : res.trace)
            std::cout << "decision at " << d.at << ": triangle " << d.triangle.ids[0] << ","
                      << d.triangle.ids[1] << "," << d.triangle.ids[2] << " -> " << d.chosen
                      << (d.walk == StepChoice::CW ? " (cw)" : " (ccw)") << " interval ["
                      << d.entry << ", " << d.exit << "]\n";
    }
    return 0;
}

int cmd_verify(const std::string& graph_path, const std::string& checks, std::size_t trials,
               std::uint64_t seed, bool json) {
    const Pipeline pipe = Pipeline::restore(read_document_file(graph_path));
    const VerifyReport rep = run_verify(pipe, parse_checks(checks), trials, seed);
    std::cout << (json ? rep.to_json() : rep.to_text());
    return rep.all_pass() ? 0 : 1;
}

int cmd_render(const std::string& graph_path, const std::string& layers, const std::string& out,
               const std::string& route, int cones_at) {
    const Pipeline pipe = Pipeline::restore(read_document_file(graph_path));
    RenderOptions opts;
    std::stringstream ss(layers);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok == "mesh") opts.layer_mesh = true;
        else if (tok == "mbdg") opts.layer_mbdg = true;
        else if (tok == "lmbdg") opts.layer_lmbdg = true;
        else if (!tok.empty()) throw ParseError("unknown layer: " + tok);
    }
    if (!route.empty()) {
        const auto dash = route.find(':');
        if (dash == std::string::npos) throw ParseError("route must be s:t");
        opts.route = {static_cast<VertexId>(std::stoul(route.substr(0, dash))),
                      static_cast<VertexId>(std::stoul(route.substr(dash + 1)))};
    }
    if (cones_at >= 0) opts.cones_at = static_cast<VertexId>(cones_at);
    std::ofstream f(out);
    if (!f) throw ParseError("cannot open output file: " + out);
    f << render_svg(pipe, opts);
    std::cout << "wrote " << out << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bounded-degree lightweight planar spanners with local routing"};
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("gen", "generate a point file");
    std::size_t gen_n = 100;
    std::string gen_dist = "uniform";
    std::uint64_t gen_seed = 1;
    std::string gen_out = "points.txt";
    gen->add_option("--n", gen_n, "number of points")->required();
    gen->add_option("--dist", gen_dist, "uniform | clustered | grid_jitter");
    gen->add_option("--seed", gen_seed, "rng seed");
    gen->add_option("--out", gen_out, "output file")->required();

    auto* build = app.add_subcommand("build", "build mesh, pruned graph and light graph");
    std::string build_points;
    double build_theta = 0.7853981633974483;
    double build_r = 2.0;
    std::string build_out = "graph.json";
    build->add_option("--points", build_points, "point file")->required();
    build->add_option("--theta", build_theta, "cone angle parameter, in (0, pi/2)");
    build->add_option("--r", build_r, "lightness trade-off parameter, > 0");
    build->add_option("--out", build_out, "output document")->required();

    auto* route = app.add_subcommand("route", "route between two vertices");
    std::string route_graph, route_layer = "lmbdg";
    VertexId route_s = 0, route_t = 0;
    bool route_trace = false;
    route->add_option("--graph", route_graph, "graph document")->required();
    route->add_option("--source", route_s, "source vertex id")->required();
    route->add_option("--target", route_t, "target vertex id")->required();
    route->add_option("--layer", route_layer, "dt | mbdg | lmbdg");
    route->add_flag("--trace", route_trace, "print the decision trace");

    auto* verify = app.add_subcommand("verify", "verify bounds against brute-force oracles");
    std::string verify_graph, verify_checks = "all";
    std::size_t verify_trials = 1000;
    std::uint64_t verify_seed = 1;
    bool verify_json = false;
    verify->add_option("--graph", verify_graph, "graph document")->required();
    verify->add_option("--checks", verify_checks,
                       "comma list: delaunay,degree,stretch,weight,routing,locality,"
                       "mst_containment,structure (default all)");
    verify->add_option("--trials", verify_trials, "routing pair budget");
    verify->add_option("--seed", verify_seed, "sampling seed");
    verify->add_flag("--json", verify_json, "machine-readable report");

    auto* render = app.add_subcommand("render", "render layers to svg");
    std::string render_graph, render_layers = "lmbdg", render_out = "graph.svg", render_route;
    int render_cones = -1;
    render->add_option("--graph", render_graph, "graph document")->required();
    render->add_option("--layers", render_layers, "comma list: mesh,mbdg,lmbdg");
    render->add_option("--out", render_out, "output svg")->required();
    render->add_option("--route", render_route, "overlay a route, s:t");
    render->add_option("--cones", render_cones, "draw cone boundaries at a vertex");

    try {
        app.parse(argc, argv);
        if (gen->parsed()) return cmd_gen(gen_n, gen_dist, gen_seed, gen_out);
        if (build->parsed()) return cmd_build(build_points, build_theta, build_r, build_out);
        if (route->parsed())
            return cmd_route(route_graph, route_s, route_t, route_layer, route_trace);
        if (verify->parsed())
            return cmd_verify(verify_graph, verify_checks, verify_trials, verify_seed, verify_json);
        if (render->parsed())
            return cmd_render(render_graph, render_layers, render_out, render_route, render_cones);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const spanroute::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const spanroute::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
