#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "hyperperc/graph.hpp"

namespace hyperperc {

// An angle expressed as an exact rational multiple of pi.
using PiMultiple = boost::rational<std::int64_t>;

double to_radians(const PiMultiple& a);

// Combinatorial interior angle of a face of degree d, in units of pi.
inline PiMultiple face_angle(int degree) { return PiMultiple(degree - 2, degree); }

// kappa(v) = 2pi - sum over the wedges at v of (|f|-2)/|f| pi.
// Throws PreconditionError for boundary-flagged vertices or vertices with a
// truncation face among their wedges.
PiMultiple curvature(const RotationGraph& g, Vertex v);

// Region of the plane bounded by a simple cycle of the patch.
struct CyclePatch {
    std::vector<Vertex> cycle;
    std::vector<Vertex> interior_vertices;              // s of them
    std::vector<std::pair<Vertex, Vertex>> interior_edges;  // t of them, u < w
    std::vector<FaceId> enclosed_faces;                 // m of them
};

// Determines the bounded side of `cycle` by flooding faces from each side of
// it; the side that never meets a truncation face is the enclosed one.
// Throws PreconditionError if the cycle is not simple or not a cycle of g.
CyclePatch make_cycle_patch(const RotationGraph& g, std::vector<Vertex> cycle);

struct EulerCheck {
    std::int64_t s = 0;
    std::int64_t m = 0;
    std::int64_t t = 0;
    bool holds = false;  // s + m - t == 1
};

EulerCheck euler_patch_check(const CyclePatch& patch);

// sum_{z in C} sum_{f enclosed, f ~ z} (|f|-2)/|f| - (n-2), in units of pi.
// Faces are counted once per wedge. Throws PreconditionError naming the
// vertex if some interior vertex has positive curvature.
PiMultiple gauss_bonnet_deficit(const RotationGraph& g, const CyclePatch& patch);

// sum of kappa over interior vertices; equals the deficit for every patch.
PiMultiple interior_curvature_sum(const RotationGraph& g, const CyclePatch& patch);

}  // namespace hyperperc
