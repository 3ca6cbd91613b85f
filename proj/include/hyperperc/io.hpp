#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hyperperc/graph.hpp"

namespace hyperperc {

// On-disk graph document:
//   {"format": "hyperperc-graph", "version": 1, "vertex_count": n,
//    "rotation": [[...], ...], "boundary": [0|1, ...],
//    "star_edges": [[u, w], ...]   (optional),
//    "meta": {...}                 (optional, free-form)}
// Serialization is canonical, so write(read(write(g))) == write(g) byte for byte.
struct GraphDocument {
    RotationGraph graph;
    std::vector<std::pair<Vertex, Vertex>> star_edges;
    bool has_star_edges = false;
    nlohmann::json meta = nlohmann::json::object();
};

nlohmann::json to_json(const GraphDocument& doc);
GraphDocument graph_from_json(const nlohmann::json& j);

std::string write_graph_string(const GraphDocument& doc);
GraphDocument read_graph_string(const std::string& text);

void write_graph_file(const std::string& path, const GraphDocument& doc);
GraphDocument read_graph_file(const std::string& path);

}  // namespace hyperperc
