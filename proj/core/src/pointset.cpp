#include "spanroute/pointset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "spanroute/errors.hpp"

namespace spanroute {

PointDistribution parse_distribution(const std::string& name) {
    if (name == "uniform") return PointDistribution::Uniform;
    if (name == "clustered") return PointDistribution::Clustered;
    if (name == "grid_jitter") return PointDistribution::GridJitter;
    throw ParseError("unknown distribution: " + name);
}

namespace {

// bit-stable uniforms: identical streams on every platform
double unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

XY gauss_pair(std::mt19937_64& rng, double sigma) {
    double u1 = unit(rng);
    while (u1 <= 0.0) u1 = unit(rng);
    const double u2 = unit(rng);
    const double m = sigma * std::sqrt(-2.0 * std::log(u1));
    return {m * std::cos(2.0 * 3.14159265358979323846 * u2),
            m * std::sin(2.0 * 3.14159265358979323846 * u2)};
}

}  // namespace

std::vector<Point> generate_points(std::size_t n, PointDistribution dist, std::uint64_t seed) {
    if (n < 3) throw BadCount("need at least 3 points");
    std::mt19937_64 rng(seed);
    std::set<std::pair<double, double>> used;
    std::vector<Point> pts;
    pts.reserve(n);

    auto emit = [&](XY p) {
        if (!used.insert({p.x, p.y}).second) return false;
        pts.push_back({p.x, p.y, static_cast<VertexId>(pts.size())});
        return true;
    };

    const double extent = 1000.0;
    switch (dist) {
        case PointDistribution::Uniform:
            while (pts.size() < n) emit({unit(rng) * extent, unit(rng) * extent});
            break;
        case PointDistribution::Clustered: {
            const std::size_t k = std::max<std::size_t>(1, n / 50);
            std::vector<XY> centers;
            for (std::size_t i = 0; i < k; ++i)
                centers.push_back({unit(rng) * extent, unit(rng) * extent});
            while (pts.size() < n) {
                const XY c = centers[rng() % centers.size()];
                emit(c + gauss_pair(rng, extent / 60.0));
            }
            break;
        }
        case PointDistribution::GridJitter: {
            const auto g = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
            const double cell = extent / static_cast<double>(g);
            for (std::size_t i = 0; i < g * g && pts.size() < n; ++i) {
                const double cx = (static_cast<double>(i % g) + 0.5) * cell;
                const double cy = (static_cast<double>(i / g) + 0.5) * cell;
                while (!emit({cx + (unit(rng) - 0.5) * 0.7 * cell,
                              cy + (unit(rng) - 0.5) * 0.7 * cell})) {
                }
            }
            break;
        }
    }
    return pts;
}

std::vector<Point> read_points(std::istream& in) {
    std::vector<Point> pts;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        double x, y;
        if (ls >> x >> y) {
            if (!std::isfinite(x) || !std::isfinite(y))
                throw ParseError("non-finite coordinate on line " + std::to_string(lineno));
            pts.push_back({x, y, static_cast<VertexId>(pts.size())});
            std::string rest;
            if (ls >> rest) throw ParseError("trailing tokens on line " + std::to_string(lineno));
        } else if (!line.empty() && line.find_first_not_of(" \t\r") != std::string::npos) {
            throw ParseError("malformed point on line " + std::to_string(lineno));
        }
    }
    return pts;
}

std::vector<Point> read_points_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open point file: " + path);
    return read_points(in);
}

namespace {
std::string fmt_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}
}  // namespace

void write_points(std::ostream& out, const std::vector<Point>& pts) {
    out << "# " << pts.size() << " points, one 'x y' pair per line\n";
    for (const auto& p : pts) out << fmt_double(p.x) << ' ' << fmt_double(p.y) << '\n';
}

void write_points_file(const std::string& path, const std::vector<Point>& pts) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open output file: " + path);
    write_points(out, pts);
}

}  // namespace spanroute
