#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "hyperperc/graph.hpp"

namespace hyperperc {

enum class AdjacencyMode { graph, star };

// Non-owning CSR view used by the cluster algorithms. Both RotationGraph and
// MatchingGraph hand one out; the viewed object must outlive it.
struct AdjacencyView {
    std::span<const std::size_t> offsets;
    std::span<const Vertex> adjacency;
    std::span<const std::uint8_t> boundary;
    AdjacencyMode mode = AdjacencyMode::graph;

    std::size_t vertex_count() const { return boundary.size(); }
    std::span<const Vertex> neighbors(Vertex v) const
    {
        return adjacency.subspan(offsets[v], offsets[v + 1] - offsets[v]);
    }
    bool is_boundary(Vertex v) const { return boundary[v] != 0; }
};

AdjacencyView view(const RotationGraph& g);

// G* of a patch: G plus an edge between every non-adjacent pair of vertices
// on a common finite face. Holds a reference to the base graph.
class MatchingGraph {
  public:
    explicit MatchingGraph(const RotationGraph& g);

    const RotationGraph& base() const { return *base_; }
    std::size_t vertex_count() const { return base_->vertex_count(); }
    // Graph neighbours in rotation order, then star neighbours ascending.
    std::span<const Vertex> neighbors(Vertex v) const
    {
        return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
    }
    int degree(Vertex v) const { return static_cast<int>(offsets_[v + 1] - offsets_[v]); }
    bool adjacent(Vertex u, Vertex w) const;
    bool is_boundary(Vertex v) const { return base_->is_boundary(v); }
    // Boundary-flagged or on a truncation face: star adjacency may be missing.
    bool partial(Vertex v) const { return partial_[v] != 0; }

    // Pairs (u, w), u < w, sorted.
    const std::vector<std::pair<Vertex, Vertex>>& star_edges() const { return star_edges_; }

    AdjacencyView view() const;

  private:
    const RotationGraph* base_;
    std::vector<std::size_t> offsets_;
    std::vector<Vertex> adjacency_;
    std::vector<std::uint8_t> partial_;
    std::vector<std::pair<Vertex, Vertex>> star_edges_;
};

struct StarNeighborhood {
    std::vector<Vertex> vertices;  // ascending
    bool partial = false;
};

StarNeighborhood star_neighborhood(const MatchingGraph& mg, Vertex v);

}  // namespace hyperperc
