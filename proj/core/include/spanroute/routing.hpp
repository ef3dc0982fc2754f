#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "spanroute/lightness.hpp"

namespace spanroute {

enum class WalkMode : std::uint8_t { None, Unguided, Guided, LightDetour };

struct TriangleRef {
    std::array<VertexId, 3> ids{};  // decision vertex first
    std::array<XY, 3> xy{};
};

// The constant-size message header: endpoints, the previous decision
// triangle, the state of the face walk in progress, and the state of a
// detour around an excluded edge (the two can be active together).
struct RoutingHeader {
    XY s, t;
    VertexId s_id = 0, t_id = 0;
    std::optional<TriangleRef> prev_triangle;
    WalkMode walk_mode = WalkMode::None;
    std::optional<VertexId> walk_target;
    std::optional<VertexId> walk_prev;
    int walk_orientation = 0;
    std::optional<VertexId> pass_before_stop;  // suppress the stop test until this vertex passed
    std::optional<VertexId> detour_target;
    int detour_orientation = 0;

    std::size_t words_in_use() const;
    static constexpr std::size_t capacity_words = 24;
};

enum class StepChoice : std::uint8_t { CW, CCW };

struct DecisionTrace {
    TriangleRef triangle;     // (v_i, p, q)
    VertexId at = 0;          // v_i
    VertexId chosen = 0;      // p or q
    StepChoice walk = StepChoice::CW;
    double entry = 0.0, exit = 0.0;  // intersection interval of the triangle with [st]
};

struct RouteResult {
    std::vector<VertexId> path;             // s .. t, consecutive entries are graph edges
    double length = 0.0;
    std::vector<VertexId> decision_vertices;
    std::vector<DecisionTrace> trace;       // one entry per decision
    std::size_t locality_violations = 0;
    std::size_t max_header_words = 0;
};

// One step of the circle rule: on the circumcircle of tri = (v, p, q), the
// walk direction is clockwise exactly when v lies on the clockwise arc from
// the circle's leftmost point (in the s->t frame) to the rightmost
// intersection of the circle with [st]; the chosen vertex is the first of
// p, q met on that walk from v.
struct StepDecision {
    VertexId next;
    StepChoice walk;
    Circle circle;
    XY leftmost;
    XY rightmost_on_segment;
};
StepDecision step_decision(const TriangleRef& tri, VertexId vi, XY s, XY t);

// Routing on the Delaunay triangulation with full knowledge of the mesh.
RouteResult delaunay_route(const TriangulationMesh& mesh, VertexId s, VertexId t);

// 1-local simulation over local views of the marked graph.
RouteResult mbdg_route(const MarkedGraph& g, VertexId s, VertexId t);

// 1-local routing on the light graph; excluded edges are crossed in a
// detour mode that walks the face recorded at the endpoints.
RouteResult lmbdg_route(const LightGraph& lg, VertexId s, VertexId t);

// Instrumented variant used by tests: routes through an arbitrary provider
// (typically a counting wrapper); s and t coordinates are supplied by the
// caller the way a real query would.
RouteResult simulate_route(const ViewProvider& views, VertexId s, VertexId t, XY s_xy, XY t_xy,
                           bool light_layer);

// --- face walks --------------------------------------------------------------

// Walk a face of the surviving graph starting along the edge v ->
// first_edge, testing `stop` with (view at current, current, next) before
// every step. Returns the vertices visited, ending at the vertex where
// `stop` fired.
std::vector<VertexId> unguided_face_walk(
    const ViewProvider& views, VertexId v, VertexId first_edge,
    const std::function<bool(const LocalView&, VertexId, VertexId)>& stop);

// Follow the semi-protected record stored at v until `target` is reached,
// taking a direct edge the moment one exists.
std::vector<VertexId> guided_face_walk(const ViewProvider& views, VertexId v, VertexId target);

// --- diagnostics --------------------------------------------------------------

enum class WorstCaseKind : std::uint8_t { X1, X2, Y };

struct WorstCaseCircleClass {
    WorstCaseKind kind;
    Circle circle;
};

// Slide the circumcenter along the bisector of [v_i, v_next] toward the
// decision arc until the segment line becomes tangent or v_i becomes the
// leftmost point, whichever happens first.
WorstCaseCircleClass classify_worst_case_circle(const Circle& tri_circum, XY vi, XY vnext,
                                                XY s, XY t, StepChoice decision);

// Check that a decision trace is a valid run of the modified routing scheme
// on the mesh: real faces, intervals that advance toward t, choices that
// reproduce the circle rule. Returns an empty string on success.
std::string validate_route_trace(const TriangulationMesh& mesh, VertexId s, VertexId t,
                                 const std::vector<DecisionTrace>& trace);

}  // namespace spanroute
