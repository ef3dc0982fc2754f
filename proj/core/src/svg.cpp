#include "spanroute/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace spanroute {

namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

struct Mapper {
    double minx, miny, scale, height;
    XY operator()(XY p) const {
        return {(p.x - minx) * scale + 10.0, height - ((p.y - miny) * scale + 10.0)};
    }
};

const char* mark_color(ProtectionMark m) {
    switch (m) {
        case ProtectionMark::Extreme: return "#1f77b4";
        case ProtectionMark::Penultimate: return "#2ca02c";
        default: return "#d62728";
    }
}

}  // namespace

std::string render_svg(const Pipeline& pipe, const RenderOptions& opts) {
    const auto& mesh = pipe.mesh();
    const auto& pts = mesh.points();
    double minx = pts[0].x, maxx = minx, miny = pts[0].y, maxy = miny;
    for (const auto& p : pts) {
        minx = std::min(minx, p.x);
        maxx = std::max(maxx, p.x);
        miny = std::min(miny, p.y);
        maxy = std::max(maxy, p.y);
    }
    const double ext = std::max({maxx - minx, maxy - miny, 1e-9});
    const double scale = (opts.width - 20.0) / ext;
    const double height = (maxy - miny) * scale + 20.0;
    const Mapper map{minx, miny, scale, height};

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(opts.width)
        << "\" height=\"" << num(height) << "\" viewBox=\"0 0 " << num(opts.width) << ' '
        << num(height) << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    auto line = [&](XY a, XY b, const std::string& style) {
        const XY pa = map(a), pb = map(b);
        svg << "<line x1=\"" << num(pa.x) << "\" y1=\"" << num(pa.y) << "\" x2=\"" << num(pb.x)
            << "\" y2=\"" << num(pb.y) << "\" " << style << "/>\n";
    };

    if (opts.layer_mesh) {
        for (auto [u, v] : mesh.edges())
            line(pts[u].xy(), pts[v].xy(), "stroke=\"#dddddd\" stroke-width=\"0.6\"");
    }
    if (opts.layer_mbdg) {
        for (auto [u, v] : pipe.marked().edges()) {
            const auto mu = *pipe.marked().mark_at(u, v);
            line(pts[u].xy(), pts[v].xy(),
                 std::string("stroke=\"") + mark_color(mu) + "\" stroke-width=\"1.0\"");
        }
    }
    if (opts.layer_lmbdg) {
        for (auto [u, v] : pipe.marked().edges()) {
            if (pipe.light().includes(u, v))
                line(pts[u].xy(), pts[v].xy(), "stroke=\"#333333\" stroke-width=\"1.4\"");
            else
                line(pts[u].xy(), pts[v].xy(),
                     "stroke=\"#999999\" stroke-width=\"0.9\" stroke-dasharray=\"4 3\"");
        }
    }
    if (opts.cones_at) {
        const XY c = pts[*opts.cones_at].xy();
        const auto& cones = pipe.marked().cones();
        const double rad = ext * 0.15;
        for (int k = 0; k < cones.kappa; ++k) {
            const double a = cones.cone_angle * k;
            line(c, {c.x + rad * std::cos(a), c.y + rad * std::sin(a)},
                 "stroke=\"#ff7f0e\" stroke-width=\"0.8\" stroke-dasharray=\"2 2\"");
        }
    }
    if (opts.route) {
        const auto res = lmbdg_route(pipe.light(), opts.route->first, opts.route->second);
        for (std::size_t i = 0; i + 1 < res.path.size(); ++i)
            line(pts[res.path[i]].xy(), pts[res.path[i + 1]].xy(),
                 "stroke=\"#9467bd\" stroke-width=\"2.2\" stroke-opacity=\"0.8\"");
    }

    for (const auto& p : pts) {
        const XY m = map(p.xy());
        svg << "<circle cx=\"" << num(m.x) << "\" cy=\"" << num(m.y)
            << "\" r=\"1.8\" fill=\"#111111\"/>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace spanroute
