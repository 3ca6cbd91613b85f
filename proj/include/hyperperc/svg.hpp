#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hyperperc/graph.hpp"

namespace hyperperc {

struct Point {
    double x = 0;
    double y = 0;
};

// Positions in the unit disk: BFS layer d from `root` sits at radius
// tanh(0.3 d) and each vertex gets an angular sector proportional to the size
// of its BFS subtree. Vertices unreachable from root are placed at the rim.
std::vector<Point> disk_layout(const RotationGraph& g, Vertex root = 0);

struct SvgOverlay {
    std::vector<std::pair<Vertex, Vertex>> edges;
    std::vector<Vertex> vertices;
    std::string color = "#d62728";
    double stroke_width = 2.0;
    double vertex_radius = 3.0;
};

struct SvgOptions {
    int size = 800;
    std::string title;
    std::string caption;  // printed under the figure, e.g. the config hash
    std::string base_color = "#b0b0b0";
};

// Base graph in gray with the overlays drawn on top in order.
std::string render_svg(const RotationGraph& g, const std::vector<SvgOverlay>& overlays, const SvgOptions& options,
                       Vertex root = 0);

}  // namespace hyperperc
