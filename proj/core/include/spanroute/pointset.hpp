#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "spanroute/geom.hpp"

namespace spanroute {

enum class PointDistribution { Uniform, Clustered, GridJitter };

PointDistribution parse_distribution(const std::string& name);

// Deterministic for a fixed (n, distribution, seed); never emits duplicate
// coordinates.
std::vector<Point> generate_points(std::size_t n, PointDistribution dist, std::uint64_t seed);

// plain text, one "x y" pair per line, '#' starts a comment
std::vector<Point> read_points(std::istream& in);
std::vector<Point> read_points_file(const std::string& path);
void write_points(std::ostream& out, const std::vector<Point>& pts);
void write_points_file(const std::string& path, const std::vector<Point>& pts);

}  // namespace spanroute
