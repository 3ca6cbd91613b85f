#pragma once

#include <string>
#include <vector>

#include "hyperperc/curvature.hpp"
#include "hyperperc/graph.hpp"

namespace hyperperc {

enum class Side { left, right };

Side opposite(Side s);
std::string to_string(Side s);

// Next-edge rule for a turn walk. Arriving at v from the neighbour in slot a,
// label_shift(k) leaves through slot a + k (mod deg v). Leaving through slot
// a + k puts k wedges (face incidences) on the right and deg v - k on the
// left, so label_shift(+k) and faces_on_side(right, k) are the same walk, as
// are label_shift(-k) and faces_on_side(left, k).
struct WalkRule {
    enum class Mode { label_shift, faces_on_side };

    Mode mode = Mode::label_shift;
    int shift = 3;
    Side side = Side::right;
    int count = 3;

    static WalkRule label(int k) { return {Mode::label_shift, k, Side::right, 0}; }
    static WalkRule faces(Side s, int c) { return {Mode::faces_on_side, 0, s, c}; }

    // Parses "+3", "-3", "+2", "left:3", "right:2".
    static WalkRule parse(const std::string& text);
    std::string str() const;
};

struct WalkResult {
    std::vector<Vertex> path;
    bool truncated = false;  // stopped at a boundary-flagged vertex
};

// Follows `rule` from the directed edge start.from -> start.to for at most
// max_steps edges. Stops early (truncated) on reaching a boundary-flagged
// vertex. Throws PreconditionError naming the vertex when the rule's
// curvature condition fails there, InvariantViolation on a repeated vertex.
WalkResult turn_walk(const RotationGraph& g, DirectedEdge start, const WalkRule& rule, int max_steps);

// Face incidences at v strictly between in_edge (u -> v) and out_edge
// (v -> w) on the given side, counted with multiplicity.
int faces_between(const RotationGraph& g, Vertex v, DirectedEdge in_edge, DirectedEdge out_edge, Side side);

// Sum of combinatorial angles (units of pi) of the wedges at v on `side` of
// the transition in_slot -> out_slot. Throws PreconditionError if one of them
// is the truncation wedge.
PiMultiple side_angle(const RotationGraph& g, Vertex v, int in_slot, int out_slot, Side side);

// Both side sums are at least pi at v for the transition in_slot -> out_slot.
bool satisfies_gep(const RotationGraph& g, Vertex v, int in_slot, int out_slot);

}  // namespace hyperperc
