#include "hyperperc/matching.hpp"

#include <algorithm>

namespace hyperperc {

AdjacencyView view(const RotationGraph& g)
{
    return AdjacencyView{g.offsets(), g.adjacency(), g.boundary_flags(), AdjacencyMode::graph};
}

MatchingGraph::MatchingGraph(const RotationGraph& g) : base_(&g)
{
    const auto n = g.vertex_count();
    const auto& faces = g.faces();
    partial_.assign(n, 0);
    for (std::size_t v = 0; v < n; ++v) partial_[v] = g.is_boundary(static_cast<Vertex>(v)) ? 1 : 0;
    for (FaceId f = 0; f < static_cast<FaceId>(faces.size()); ++f) {
        auto w = faces.walk(f);
        if (!faces.finite(f)) {
            for (Vertex x : w) partial_[x] = 1;
            continue;
        }
        for (std::size_t i = 0; i < w.size(); ++i)
            for (std::size_t j = i + 1; j < w.size(); ++j) {
                Vertex a = std::min(w[i], w[j]);
                Vertex b = std::max(w[i], w[j]);
                if (a != b && !g.adjacent(a, b)) star_edges_.emplace_back(a, b);
            }
    }
    std::sort(star_edges_.begin(), star_edges_.end());
    star_edges_.erase(std::unique(star_edges_.begin(), star_edges_.end()), star_edges_.end());

    std::vector<std::vector<Vertex>> extra(n);
    for (auto [a, b] : star_edges_) {
        extra[a].push_back(b);
        extra[b].push_back(a);
    }
    offsets_.assign(1, 0);
    offsets_.reserve(n + 1);
    adjacency_.reserve(g.half_edge_count() + 2 * star_edges_.size());
    for (std::size_t v = 0; v < n; ++v) {
        auto nb = g.neighbors(static_cast<Vertex>(v));
        adjacency_.insert(adjacency_.end(), nb.begin(), nb.end());
        std::sort(extra[v].begin(), extra[v].end());
        adjacency_.insert(adjacency_.end(), extra[v].begin(), extra[v].end());
        offsets_.push_back(adjacency_.size());
    }
}

bool MatchingGraph::adjacent(Vertex u, Vertex w) const
{
    auto nb = neighbors(u);
    return std::find(nb.begin(), nb.end(), w) != nb.end();
}

AdjacencyView MatchingGraph::view() const
{
    return AdjacencyView{offsets_, adjacency_, base_->boundary_flags(), AdjacencyMode::star};
}

StarNeighborhood star_neighborhood(const MatchingGraph& mg, Vertex v)
{
    auto nb = mg.neighbors(v);
    StarNeighborhood out{{nb.begin(), nb.end()}, mg.partial(v)};
    std::sort(out.vertices.begin(), out.vertices.end());
    return out;
}

}  // namespace hyperperc
