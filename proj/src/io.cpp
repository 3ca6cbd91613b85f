#include "hyperperc/io.hpp"

#include <fstream>
#include <sstream>

#include "hyperperc/errors.hpp"

namespace hyperperc {

using nlohmann::json;

json to_json(const GraphDocument& doc)
{
    const auto& g = doc.graph;
    json j;
    j["format"] = "hyperperc-graph";
    j["version"] = 1;
    j["vertex_count"] = g.vertex_count();
    json rot = json::array();
    json bnd = json::array();
    for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v) {
        auto nb = g.neighbors(v);
        rot.push_back(json(std::vector<Vertex>(nb.begin(), nb.end())));
        bnd.push_back(g.is_boundary(v) ? 1 : 0);
    }
    j["rotation"] = std::move(rot);
    j["boundary"] = std::move(bnd);
    if (doc.has_star_edges) {
        json se = json::array();
        for (auto [a, b] : doc.star_edges) se.push_back(json::array({a, b}));
        j["star_edges"] = std::move(se);
    }
    if (!doc.meta.empty()) j["meta"] = doc.meta;
    return j;
}

GraphDocument graph_from_json(const json& j)
{
    try {
        if (!j.is_object() || j.value("format", "") != "hyperperc-graph")
            throw StructuralError("not a hyperperc-graph document");
        if (j.at("version").get<int>() != 1) throw StructuralError("unsupported graph document version");
        const auto n = j.at("vertex_count").get<std::size_t>();
        const auto& rot = j.at("rotation");
        const auto& bnd = j.at("boundary");
        if (rot.size() != n || bnd.size() != n) throw StructuralError("rotation/boundary length differs from vertex_count");
        std::vector<std::size_t> offsets{0};
        std::vector<Vertex> adjacency;
        std::vector<std::uint8_t> boundary;
        offsets.reserve(n + 1);
        boundary.reserve(n);
        for (std::size_t v = 0; v < n; ++v) {
            for (const auto& w : rot[v]) adjacency.push_back(w.get<Vertex>());
            offsets.push_back(adjacency.size());
            const int b = bnd[v].get<int>();
            if (b != 0 && b != 1) throw StructuralError("boundary flags must be 0 or 1");
            boundary.push_back(static_cast<std::uint8_t>(b));
        }
        GraphDocument doc;
        doc.graph = RotationGraph(std::move(offsets), std::move(adjacency), std::move(boundary));
        if (j.contains("star_edges")) {
            doc.has_star_edges = true;
            for (const auto& e : j["star_edges"]) {
                if (e.size() != 2) throw StructuralError("star edge must have two endpoints");
                doc.star_edges.emplace_back(e[0].get<Vertex>(), e[1].get<Vertex>());
            }
        }
        if (j.contains("meta")) doc.meta = j["meta"];
        return doc;
    } catch (const json::exception& e) {
        throw StructuralError(std::string("malformed graph document: ") + e.what());
    }
}

std::string write_graph_string(const GraphDocument& doc) { return to_json(doc).dump() + "\n"; }

GraphDocument read_graph_string(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw StructuralError(std::string("graph document is not valid JSON: ") + e.what());
    }
    return graph_from_json(j);
}

void write_graph_file(const std::string& path, const GraphDocument& doc)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw PreconditionError("cannot open " + path + " for writing");
    out << write_graph_string(doc);
}

GraphDocument read_graph_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw PreconditionError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return read_graph_string(ss.str());
}

}  // namespace hyperperc
