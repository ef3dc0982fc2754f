#pragma once

#include <string>
#include <vector>

#include "spanroute/document.hpp"

namespace spanroute {

// Named bounds used across construction and verification.
namespace bounds {

// empirical stretch of a Delaunay triangulation over the Euclidean metric
inline constexpr double kDelaunayStretch = 1.998;
// routing ratio of the circle-rule scheme on a Delaunay triangulation
inline const double kDelaunayRoutingRatio = 1.185043874 + 3.0 * 1.5707963267948966;

// detour cost of replacing a dropped Delaunay edge by its face path
double face_path_stretch(double theta);                 // max(pi/2, pi sin(theta/2) + 1)
double spanner_stretch(double theta);                   // kDelaunayStretch * face_path_stretch
int degree_bound(double theta);                         // 5 * ceil(2 pi / theta)
double marked_routing_ratio(double theta);              // kDelaunayRoutingRatio * face_path_stretch
double light_routing_ratio(double theta, double r);     // marked * (1 + 1/r)

}  // namespace bounds

struct CheckResult {
    std::string name;
    bool pass = true;
    double observed = 0.0;
    double bound = 0.0;
    std::string witness;
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    bool all_pass() const;
    std::string to_text() const;
    std::string to_json() const;
};

// Verification checks runnable on a pipeline. `trials` bounds the number of
// sampled routing pairs on large instances; sampling is seeded.
enum class Check {
    Delaunay,
    Degree,
    Stretch,
    Weight,
    Routing,
    Locality,
    MstContainment,
    Structure,
};

std::vector<Check> parse_checks(const std::string& csv);  // "delaunay,degree,..." or "all"

VerifyReport run_verify(const Pipeline& pipe, const std::vector<Check>& checks,
                        std::size_t trials, std::uint64_t seed);

}  // namespace spanroute
