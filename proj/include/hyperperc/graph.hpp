#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hyperperc {

using Vertex = std::int32_t;
using FaceId = std::int32_t;

inline constexpr Vertex kNoVertex = -1;

struct DirectedEdge {
    Vertex from = kNoVertex;
    Vertex to = kNoVertex;

    friend bool operator==(const DirectedEdge&, const DirectedEdge&) = default;
};

// Owning copy of one face.
struct FaceRecord {
    std::vector<Vertex> boundary_walk;  // closed walk, first vertex not repeated
    int degree = 0;
    bool finite = true;
};

class RotationGraph;

// Faces of a rotation system stored flat. Face ids are dense [0, size()).
class FaceTable {
  public:
    std::size_t size() const { return start_.empty() ? 0 : start_.size() - 1; }
    std::span<const Vertex> walk(FaceId f) const;
    int degree(FaceId f) const { return static_cast<int>(start_[f + 1] - start_[f]); }
    bool finite(FaceId f) const { return finite_[f] != 0; }
    FaceRecord record(FaceId f) const;
    std::vector<FaceRecord> records() const;

    // Face on the left of the half-edge with the given id (see RotationGraph).
    FaceId face_of_half_edge(std::size_t half_edge) const { return half_edge_face_[half_edge]; }

  private:
    friend FaceTable trace_faces(const RotationGraph& g);

    std::vector<std::size_t> start_;
    std::vector<Vertex> vertices_;
    std::vector<std::uint8_t> finite_;
    std::vector<FaceId> half_edge_face_;
};

// A finite planar patch given as a rotation system.
//
// neighbors(v) lists the neighbours of v in counterclockwise order. The slot i
// of v names the half-edge v -> neighbors(v)[i]; the wedge between slots i and
// i+1 (mod degree) is the corner at v of the face on the left of that
// half-edge. For a boundary-flagged vertex the list is a linear CCW order and
// the closing wedge (last slot back to slot 0) lies outside the patch: any face
// walk passing through such a wedge is a truncation face and is not finite.
//
// Immutable after construction; faces and the BFS vertex order are computed
// once by the constructor.
class RotationGraph {
  public:
    RotationGraph() = default;

    // Throws StructuralError on asymmetric adjacency, self-loops, repeated
    // neighbours or out-of-range ids.
    RotationGraph(const std::vector<std::vector<Vertex>>& rotation, const std::vector<bool>& boundary);

    // CSR form: neighbours of v are adjacency[offsets[v] .. offsets[v+1]).
    RotationGraph(std::vector<std::size_t> offsets, std::vector<Vertex> adjacency,
                  std::vector<std::uint8_t> boundary);

    std::size_t vertex_count() const { return boundary_.size(); }
    std::size_t edge_count() const { return adjacency_.size() / 2; }
    std::size_t half_edge_count() const { return adjacency_.size(); }

    int degree(Vertex v) const { return static_cast<int>(offsets_[v + 1] - offsets_[v]); }
    std::span<const Vertex> neighbors(Vertex v) const
    {
        return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
    }
    // Neighbour at slot (taken modulo the degree, negative slots allowed).
    Vertex neighbor(Vertex v, int slot) const;
    // Slot of w in the rotation of v, or -1.
    int slot_of(Vertex v, Vertex w) const;
    bool adjacent(Vertex u, Vertex w) const { return slot_of(u, w) >= 0; }
    bool is_boundary(Vertex v) const { return boundary_[v] != 0; }

    std::size_t half_edge_id(Vertex v, int slot) const { return offsets_[v] + static_cast<std::size_t>(slot); }

    const FaceTable& faces() const { return faces_; }
    // Face owning the wedge between slots `slot` and `slot + 1` at v.
    FaceId face_at(Vertex v, int slot) const;
    bool is_cut_wedge(Vertex v, int slot) const { return is_boundary(v) && slot == degree(v) - 1; }

    // Fixed total order on vertices: BFS from vertex 0 (further components
    // follow in id order). rank(v) is the position of v in that order.
    std::span<const Vertex> vertex_order() const { return order_; }
    std::int32_t rank(Vertex v) const { return rank_[v]; }

    const std::vector<std::size_t>& offsets() const { return offsets_; }
    const std::vector<Vertex>& adjacency() const { return adjacency_; }
    const std::vector<std::uint8_t>& boundary_flags() const { return boundary_; }

  private:
    void validate() const;
    void finish();

    std::vector<std::size_t> offsets_{0};
    std::vector<Vertex> adjacency_;
    std::vector<std::uint8_t> boundary_;
    FaceTable faces_;
    std::vector<Vertex> order_;
    std::vector<std::int32_t> rank_;
};

// Standard face tracing of a rotation system: every half-edge lies on exactly
// one returned face walk. Faces through a cut wedge are marked finite=false.
FaceTable trace_faces(const RotationGraph& g);

// Breadth-first distances from a set of sources; unreachable vertices get -1.
std::vector<int> bfs_distances(const RotationGraph& g, std::span<const Vertex> sources);
inline std::vector<int> bfs_distances(const RotationGraph& g, Vertex source)
{
    return bfs_distances(g, std::span<const Vertex>(&source, 1));
}

// One shortest path from `from` to `to` (inclusive); empty if unreachable.
std::vector<Vertex> shortest_path(const RotationGraph& g, Vertex from, Vertex to);

}  // namespace hyperperc
