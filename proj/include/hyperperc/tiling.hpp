#pragma once

#include <cstddef>

#include "hyperperc/graph.hpp"

namespace hyperperc {

inline constexpr std::size_t kDefaultVertexBudget = 2'000'000;

struct TilingSpec {
    int p = 3;  // face degree
    int q = 7;  // vertex degree
    int radius = 0;
    // Permits {p,q} outside the supported regime (q >= 7, or q >= 5 with p >= 4),
    // e.g. the flat {4,4} control. Spherical {p,q} are always rejected.
    bool allow_unsupported = false;
};

bool in_supported_regime(int p, int q);

// Ball of radius R around vertex 0 in the {p,q} tiling. Vertices closer than R
// to the root are complete (degree q, all incident faces p-gons); the rest of
// the patch boundary is flagged. Vertex ids follow BFS order from the root.
// Throws PreconditionError for invalid specs and ResourceError when the patch
// would exceed `budget` vertices.
RotationGraph build_ball(const TilingSpec& spec, std::size_t budget = kDefaultVertexBudget);

// Rooted tree: the root has n children, every other internal vertex has n+1.
// Leaves at `depth` are boundary-flagged.
RotationGraph build_reference_tree(int root_degree, int depth, std::size_t budget = kDefaultVertexBudget);

namespace fixtures {

// All fixture vertices that lie on the outer face are boundary-flagged, so the
// outer face is reported as a truncation face.
RotationGraph cycle(int n);
inline RotationGraph triangle() { return cycle(3); }
inline RotationGraph square() { return cycle(4); }
RotationGraph path(int n);   // vertices 0..n-1, only the two ends flagged
RotationGraph star(int k);   // centre 0, leaves 1..k

}  // namespace fixtures

}  // namespace hyperperc
