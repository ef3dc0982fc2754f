#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace spanroute {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// geometry kernel
struct CollinearDefiningPoints : Error { using Error::Error; };
struct DegenerateDirection : Error { using Error::Error; };
struct NotOnCircle : Error { using Error::Error; };

// triangulation
struct DuplicatePoints : Error {
    DuplicatePoints(std::string msg, std::vector<std::uint32_t> offenders)
        : Error(std::move(msg)), ids(std::move(offenders)) {}
    std::vector<std::uint32_t> ids;
};
struct AllCollinear : Error { using Error::Error; };
struct UnknownVertex : Error { using Error::Error; };
struct NoIntersectingTriangle : Error { using Error::Error; };

// pruning / lightness
struct ThetaOutOfRange : Error { using Error::Error; };
struct BadR : Error { using Error::Error; };
struct NotATree : Error { using Error::Error; };
struct Disconnected : Error { using Error::Error; };
struct BrokenRecord : Error { using Error::Error; };

// routing
struct NoSegmentIntersection : Error { using Error::Error; };
struct WalkDidNotTerminate : Error { using Error::Error; };
struct TargetUnreachable : Error { using Error::Error; };
struct NestedDetour : Error { using Error::Error; };
struct RoutingInvariantViolation : Error { using Error::Error; };

// oracle / io
struct TooLarge : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct BadCount : Error { using Error::Error; };

}  // namespace spanroute
