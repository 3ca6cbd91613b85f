#include "hyperperc/walks.hpp"

#include <unordered_set>

#include "hyperperc/errors.hpp"

namespace hyperperc {

namespace {

int mod(int a, int m)
{
    int r = a % m;
    return r < 0 ? r + m : r;
}

// Signed slot offset of the rule.
int rule_offset(const WalkRule& rule)
{
    if (rule.mode == WalkRule::Mode::label_shift) return rule.shift;
    return rule.side == Side::right ? rule.count : -rule.count;
}

std::string vertex_msg(Vertex v) { return "vertex " + std::to_string(v); }

void check_rule_at(const RotationGraph& g, const WalkRule& rule, Vertex v, int in_slot, int out_slot)
{
    const int d = g.degree(v);
    const auto& faces = g.faces();
    if (rule.mode == WalkRule::Mode::label_shift && (rule.shift == 3 || rule.shift == -3)) {
        if (d < 6) throw PreconditionError("label shift 3 needs degree >= 6 at " + vertex_msg(v));
        return;
    }
    if (rule.mode == WalkRule::Mode::label_shift && (rule.shift == 2 || rule.shift == -2)) {
        if (d < 4) throw PreconditionError("label shift 2 needs degree >= 4 at " + vertex_msg(v));
        for (int s = 0; s < d; ++s) {
            FaceId f = g.face_at(v, s);
            if (!faces.finite(f))
                throw PreconditionError("label shift 2 needs all faces known at " + vertex_msg(v));
            if (faces.degree(f) < 4) throw PreconditionError("label shift 2 needs face degrees >= 4 at " + vertex_msg(v));
        }
        return;
    }
    if (!satisfies_gep(g, v, in_slot, out_slot))
        throw PreconditionError("side angle sums below pi at " + vertex_msg(v));
}

}  // namespace

Side opposite(Side s) { return s == Side::left ? Side::right : Side::left; }

std::string to_string(Side s) { return s == Side::left ? "left" : "right"; }

WalkRule WalkRule::parse(const std::string& text)
{
    auto colon = text.find(':');
    try {
        if (colon != std::string::npos) {
            auto side = text.substr(0, colon);
            int c = std::stoi(text.substr(colon + 1));
            if (c <= 0) throw PreconditionError("face count must be positive");
            if (side == "left") return faces(Side::left, c);
            if (side == "right") return faces(Side::right, c);
            throw PreconditionError("unknown side '" + side + "'");
        }
        std::size_t used = 0;
        int k = std::stoi(text, &used);
        if (used != text.size() || k == 0) throw PreconditionError("bad label shift '" + text + "'");
        return label(k);
    } catch (const std::logic_error&) {
        throw PreconditionError("cannot parse walk rule '" + text + "'");
    }
}

std::string WalkRule::str() const
{
    if (mode == Mode::label_shift) return (shift > 0 ? "+" : "") + std::to_string(shift);
    return to_string(side) + ":" + std::to_string(count);
}

WalkResult turn_walk(const RotationGraph& g, DirectedEdge start, const WalkRule& rule, int max_steps)
{
    if (start.from < 0 || start.from >= static_cast<Vertex>(g.vertex_count()) || !g.adjacent(start.from, start.to))
        throw PreconditionError("start edge is not an edge of the graph");
    WalkResult out;
    out.path.push_back(start.from);
    if (max_steps <= 0) return out;
    std::unordered_set<Vertex> seen{start.from};
    Vertex prev = start.from;
    Vertex cur = start.to;
    for (int step = 1;; ++step) {
        if (!seen.insert(cur).second)
            throw InvariantViolation("turn walk revisited " + vertex_msg(cur) + " after " + std::to_string(step) +
                                     " steps");
        out.path.push_back(cur);
        if (g.is_boundary(cur)) {
            out.truncated = true;
            break;
        }
        if (step == max_steps) break;
        const int d = g.degree(cur);
        const int in_slot = g.slot_of(cur, prev);
        const int out_slot = mod(in_slot + rule_offset(rule), d);
        check_rule_at(g, rule, cur, in_slot, out_slot);
        prev = cur;
        cur = g.neighbor(cur, out_slot);
    }
    return out;
}

int faces_between(const RotationGraph& g, Vertex v, DirectedEdge in_edge, DirectedEdge out_edge, Side side)
{
    if (in_edge.to != v || out_edge.from != v) throw PreconditionError("edges do not meet at " + vertex_msg(v));
    const int a = g.slot_of(v, in_edge.from);
    const int b = g.slot_of(v, out_edge.to);
    if (a < 0 || b < 0) throw PreconditionError("edges are not incident to " + vertex_msg(v));
    const int d = g.degree(v);
    const int right = mod(b - a, d);
    const int n = side == Side::right ? right : d - right;
    // The truncation wedge is not a face of the patch.
    if (g.is_boundary(v)) {
        const int cut = d - 1;
        const int first = side == Side::right ? a : b;
        if (mod(cut - first, d) < n) throw PreconditionError("faces beyond truncation at " + vertex_msg(v));
    }
    return n;
}

PiMultiple side_angle(const RotationGraph& g, Vertex v, int in_slot, int out_slot, Side side)
{
    const int d = g.degree(v);
    const int right = mod(out_slot - in_slot, d);
    const int first = side == Side::right ? in_slot : out_slot;
    const int n = side == Side::right ? right : d - right;
    const auto& faces = g.faces();
    PiMultiple sum(0);
    for (int i = 0; i < n; ++i) {
        const int s = mod(first + i, d);
        if (g.is_cut_wedge(v, s)) throw PreconditionError("faces beyond truncation at " + vertex_msg(v));
        FaceId f = g.face_at(v, s);
        if (!faces.finite(f)) throw PreconditionError("faces beyond truncation at " + vertex_msg(v));
        sum += face_angle(faces.degree(f));
    }
    return sum;
}

bool satisfies_gep(const RotationGraph& g, Vertex v, int in_slot, int out_slot)
{
    return side_angle(g, v, in_slot, out_slot, Side::right) >= 1 &&
           side_angle(g, v, in_slot, out_slot, Side::left) >= 1;
}

}  // namespace hyperperc
