#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spanroute/document.hpp"

namespace spanroute {

struct RenderOptions {
    bool layer_mesh = false;
    bool layer_mbdg = false;
    bool layer_lmbdg = false;
    std::optional<std::pair<VertexId, VertexId>> route;  // drawn on the lmbdg layer
    std::optional<VertexId> cones_at;
    double width = 800.0;
};

// Deterministic SVG: same document and options, byte-identical output.
// Excluded edges dashed, marks color-coded, the route overlaid on top.
std::string render_svg(const Pipeline& pipe, const RenderOptions& opts);

}  // namespace spanroute
