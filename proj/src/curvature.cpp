#include "hyperperc/curvature.hpp"

#include <algorithm>
#include <numbers>
#include <string>
#include <unordered_set>

#include "hyperperc/errors.hpp"

namespace hyperperc {

namespace {

std::uint64_t edge_key(Vertex a, Vertex b)
{
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
}

// Face on the right of the half-edge a -> b, i.e. on the left of b -> a.
FaceId face_left_of(const RotationGraph& g, Vertex a, Vertex b) { return g.face_at(a, g.slot_of(a, b)); }

// Floods faces from `seeds` without crossing cycle edges. Returns false as soon
// as a truncation face is reached.
bool flood(const RotationGraph& g, const std::unordered_set<std::uint64_t>& cut, std::vector<FaceId> seeds,
           std::vector<char>& in_region)
{
    const auto& faces = g.faces();
    std::vector<FaceId> stack;
    for (FaceId f : seeds) {
        if (in_region[f]) continue;
        in_region[f] = 1;
        stack.push_back(f);
    }
    while (!stack.empty()) {
        FaceId f = stack.back();
        stack.pop_back();
        if (!faces.finite(f)) return false;
        auto w = faces.walk(f);
        for (std::size_t j = 0; j < w.size(); ++j) {
            Vertex a = w[j];
            Vertex b = w[(j + 1) % w.size()];
            if (cut.count(edge_key(a, b))) continue;
            FaceId other = face_left_of(g, b, a);
            if (!in_region[other]) {
                in_region[other] = 1;
                stack.push_back(other);
            }
        }
    }
    return true;
}

}  // namespace

double to_radians(const PiMultiple& a)
{
    return std::numbers::pi * static_cast<double>(a.numerator()) / static_cast<double>(a.denominator());
}

PiMultiple curvature(const RotationGraph& g, Vertex v)
{
    if (g.is_boundary(v))
        throw PreconditionError("curvature undefined at truncation boundary (vertex " + std::to_string(v) + ")");
    PiMultiple total(2);
    const auto& faces = g.faces();
    for (int s = 0; s < g.degree(v); ++s) {
        FaceId f = g.face_at(v, s);
        if (!faces.finite(f))
            throw PreconditionError("curvature undefined at truncation boundary (vertex " + std::to_string(v) +
                                    " lies on a truncation face)");
        total -= face_angle(faces.degree(f));
    }
    return total;
}

CyclePatch make_cycle_patch(const RotationGraph& g, std::vector<Vertex> cycle)
{
    const std::size_t n = cycle.size();
    if (n < 3) throw PreconditionError("cycle needs at least 3 vertices");
    {
        auto sorted = cycle;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw PreconditionError("cycle is not simple");
    }
    std::unordered_set<std::uint64_t> cut;
    std::vector<FaceId> left;
    std::vector<FaceId> right;
    for (std::size_t i = 0; i < n; ++i) {
        Vertex a = cycle[i];
        Vertex b = cycle[(i + 1) % n];
        if (a < 0 || b < 0 || a >= static_cast<Vertex>(g.vertex_count()) || !g.adjacent(a, b))
            throw PreconditionError("consecutive cycle vertices " + std::to_string(a) + ", " + std::to_string(b) +
                                    " are not adjacent");
        cut.insert(edge_key(a, b));
        left.push_back(face_left_of(g, a, b));
        right.push_back(face_left_of(g, b, a));
    }

    const auto& faces = g.faces();
    std::vector<char> region(faces.size(), 0);
    if (!flood(g, cut, left, region)) {
        std::fill(region.begin(), region.end(), 0);
        if (!flood(g, cut, right, region))
            throw PreconditionError("cycle does not bound a region of finite faces");
    }

    CyclePatch patch;
    std::unordered_set<Vertex> on_cycle(cycle.begin(), cycle.end());
    std::unordered_set<Vertex> interior;
    std::unordered_set<std::uint64_t> edges;
    for (std::size_t f = 0; f < faces.size(); ++f) {
        if (!region[f]) continue;
        patch.enclosed_faces.push_back(static_cast<FaceId>(f));
        auto w = faces.walk(static_cast<FaceId>(f));
        for (std::size_t j = 0; j < w.size(); ++j) {
            Vertex a = w[j];
            Vertex b = w[(j + 1) % w.size()];
            if (!on_cycle.count(a)) interior.insert(a);
            auto key = edge_key(a, b);
            if (!cut.count(key) && edges.insert(key).second) patch.interior_edges.emplace_back(std::min(a, b), std::max(a, b));
        }
    }
    patch.interior_vertices.assign(interior.begin(), interior.end());
    std::sort(patch.interior_vertices.begin(), patch.interior_vertices.end());
    std::sort(patch.interior_edges.begin(), patch.interior_edges.end());
    patch.cycle = std::move(cycle);
    return patch;
}

EulerCheck euler_patch_check(const CyclePatch& patch)
{
    EulerCheck c;
    c.s = static_cast<std::int64_t>(patch.interior_vertices.size());
    c.m = static_cast<std::int64_t>(patch.enclosed_faces.size());
    c.t = static_cast<std::int64_t>(patch.interior_edges.size());
    c.holds = c.s + c.m - c.t == 1;
    return c;
}

PiMultiple gauss_bonnet_deficit(const RotationGraph& g, const CyclePatch& patch)
{
    for (Vertex z : patch.interior_vertices) {
        if (curvature(g, z) > PiMultiple(0))
            throw PreconditionError("interior vertex " + std::to_string(z) + " has positive curvature");
    }
    const auto& faces = g.faces();
    std::unordered_set<FaceId> enclosed(patch.enclosed_faces.begin(), patch.enclosed_faces.end());
    PiMultiple sum(0);
    for (Vertex z : patch.cycle) {
        for (int s = 0; s < g.degree(z); ++s) {
            FaceId f = g.face_at(z, s);
            if (enclosed.count(f)) sum += face_angle(faces.degree(f));
        }
    }
    return sum - PiMultiple(static_cast<std::int64_t>(patch.cycle.size()) - 2);
}

PiMultiple interior_curvature_sum(const RotationGraph& g, const CyclePatch& patch)
{
    PiMultiple sum(0);
    for (Vertex z : patch.interior_vertices) sum += curvature(g, z);
    return sum;
}

}  // namespace hyperperc
