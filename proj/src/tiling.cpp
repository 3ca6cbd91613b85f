#include "hyperperc/tiling.hpp"

#include <string>
#include <vector>

#include "hyperperc/errors.hpp"

namespace hyperperc {

namespace {

// Growing disc. Every vertex on the disc boundary keeps its rotation as a
// linear CCW order [next, interior..., prev], where next/prev are its
// neighbours along the boundary cycle (CCW) and the open wedge prev -> next
// lies outside the disc. Rotations live in fixed q-slot ring buffers.
class DiscBuilder {
  public:
    DiscBuilder(int p, int q, std::size_t budget) : p_(p), q_(q), budget_(budget) {}

    Vertex add_vertex(int distance)
    {
        if (dist_.size() >= budget_)
            throw ResourceError("tiling patch exceeds the vertex budget of " + std::to_string(budget_));
        dist_.push_back(distance);
        start_.push_back(0);
        count_.push_back(0);
        closed_.push_back(0);
        ring_.resize(ring_.size() + static_cast<std::size_t>(q_), kNoVertex);
        return static_cast<Vertex>(dist_.size() - 1);
    }

    int degree(Vertex v) const { return count_[v]; }
    Vertex at(Vertex v, int i) const { return ring_[slot_index(v, i)]; }
    Vertex next(Vertex v) const { return at(v, 0); }
    Vertex prev(Vertex v) const { return at(v, count_[v] - 1); }
    int remaining(Vertex v) const { return q_ - (count_[v] - 1); }
    bool closed(Vertex v) const { return closed_[v] != 0; }
    int distance(Vertex v) const { return dist_[v]; }
    std::size_t size() const { return dist_.size(); }

    void push_front(Vertex v, Vertex w)
    {
        check_room(v);
        start_[v] = static_cast<std::uint8_t>((start_[v] + q_ - 1) % q_);
        ++count_[v];
        ring_[slot_index(v, 0)] = w;
    }

    void push_back(Vertex v, Vertex w)
    {
        check_room(v);
        ++count_[v];
        ring_[slot_index(v, count_[v] - 1)] = w;
    }

    bool adjacent(Vertex a, Vertex b) const
    {
        for (int i = 0; i < count_[a]; ++i)
            if (at(a, i) == b) return true;
        return false;
    }

    void seed_face()
    {
        for (int i = 0; i < p_; ++i) add_vertex(std::min(i, p_ - i));
        for (int i = 0; i < p_; ++i) {
            push_back(i, (i + 1) % p_);
            push_back(i, (i + p_ - 1) % p_);
        }
    }

    // Adds faces in the open wedge of v until v is complete.
    void complete(Vertex v)
    {
        while (!closed(v)) add_face_at(v);
    }

    void mark_closed(Vertex v) { closed_[v] = 1; }

  private:
    std::size_t slot_index(Vertex v, int i) const
    {
        return static_cast<std::size_t>(v) * static_cast<std::size_t>(q_) +
               static_cast<std::size_t>((start_[v] + i) % q_);
    }

    void check_room(Vertex v) const
    {
        if (count_[v] >= q_)
            throw InvariantViolation("tiling construction exceeded degree " + std::to_string(q_) + " at vertex " +
                                     std::to_string(v));
    }

    // New face outside the boundary edge (prev(v), v).
    void add_face_at(Vertex v)
    {
        std::vector<Vertex> path{prev(v), v};
        while (remaining(path.front()) == 1) {
            path.insert(path.begin(), prev(path.front()));
            if (static_cast<int>(path.size()) > p_) break;
        }
        if (remaining(v) == 1) {
            path.push_back(next(v));
            while (static_cast<int>(path.size()) <= p_ && remaining(path.back()) == 1) path.push_back(next(path.back()));
        }
        const int m = static_cast<int>(path.size()) - 1;
        const int r = p_ - (m + 1);
        const Vertex a0 = path.front();
        const Vertex am = path.back();
        if (r < 0 || a0 == am)
            throw InvariantViolation("tiling construction: face at vertex " + std::to_string(v) +
                                     " would need more than " + std::to_string(p_) + " boundary vertices");
        if (r == 0) {
            if (adjacent(a0, am))
                throw InvariantViolation("tiling construction closed the disc (spherical configuration)");
            push_front(a0, am);
            push_back(am, a0);
        } else {
            std::vector<Vertex> fresh;
            fresh.reserve(static_cast<std::size_t>(r));
            for (int i = 1; i <= r; ++i)
                fresh.push_back(add_vertex(std::min(distance(a0) + i, distance(am) + r + 1 - i)));
            for (int i = 0; i < r; ++i) {
                Vertex nxt = i + 1 < r ? fresh[i + 1] : am;
                Vertex prv = i > 0 ? fresh[i - 1] : a0;
                push_back(fresh[i], nxt);
                push_back(fresh[i], prv);
            }
            push_front(a0, fresh.front());
            push_back(am, fresh.back());
        }
        for (int i = 1; i < m; ++i) {
            if (degree(path[i]) != q_)
                throw InvariantViolation("tiling construction closed vertex " + std::to_string(path[i]) +
                                         " with wrong degree");
            mark_closed(path[i]);
        }
    }

    int p_;
    int q_;
    std::size_t budget_;
    std::vector<int> dist_;
    std::vector<std::uint8_t> start_;
    std::vector<std::uint8_t> count_;
    std::vector<std::uint8_t> closed_;
    std::vector<Vertex> ring_;

  public:
    // BFS relabelling from vertex 0 into a RotationGraph.
    RotationGraph finish() const
    {
        const std::size_t n = size();
        std::vector<Vertex> id(n, kNoVertex);
        std::vector<Vertex> order;
        order.reserve(n);
        id[0] = 0;
        order.push_back(0);
        for (std::size_t head = 0; head < order.size(); ++head) {
            Vertex v = order[head];
            for (int i = 0; i < degree(v); ++i) {
                Vertex w = at(v, i);
                if (id[w] != kNoVertex) continue;
                id[w] = static_cast<Vertex>(order.size());
                order.push_back(w);
            }
        }
        std::vector<std::size_t> offsets{0};
        offsets.reserve(n + 1);
        std::vector<Vertex> adjacency;
        std::vector<std::uint8_t> boundary;
        boundary.reserve(n);
        for (Vertex v : order) {
            for (int i = 0; i < degree(v); ++i) adjacency.push_back(id[at(v, i)]);
            offsets.push_back(adjacency.size());
            boundary.push_back(closed(v) ? 0 : 1);
        }
        return RotationGraph(std::move(offsets), std::move(adjacency), std::move(boundary));
    }
};

}  // namespace

bool in_supported_regime(int p, int q) { return (q >= 7 && p >= 3) || (q >= 5 && p >= 4); }

RotationGraph build_ball(const TilingSpec& spec, std::size_t budget)
{
    const int p = spec.p;
    const int q = spec.q;
    if (p < 3 || q < 3) throw PreconditionError("tiling needs p >= 3 and q >= 3");
    if (q > 255) throw PreconditionError("vertex degree q must be at most 255");
    if (spec.radius < 0) throw PreconditionError("radius must be nonnegative");
    // 1/p + 1/q > 1/2  <=>  2(p + q) > pq
    if (2 * (p + q) > p * q)
        throw PreconditionError("{" + std::to_string(p) + "," + std::to_string(q) + "} is spherical");
    if (!in_supported_regime(p, q) && !spec.allow_unsupported)
        throw PreconditionError("{" + std::to_string(p) + "," + std::to_string(q) +
                                "} is outside the supported regime; pass the unsupported-regime flag to build it");
    if (budget == 0) throw ResourceError("vertex budget is zero");

    DiscBuilder disc(p, q, budget);
    if (spec.radius == 0) {
        disc.add_vertex(0);
        return disc.finish();
    }
    disc.seed_face();
    std::vector<std::vector<Vertex>> layers(static_cast<std::size_t>(spec.radius));
    for (Vertex w = 0; w < p; ++w)
        if (disc.distance(w) < spec.radius) layers[disc.distance(w)].push_back(w);
    for (int d = 0; d < spec.radius; ++d) {
        // Completing a vertex never creates vertices at distance <= d, so
        // deeper layers fill up in creation order while layer d is processed.
        for (std::size_t i = 0; i < layers[d].size(); ++i) {
            const auto before = static_cast<Vertex>(disc.size());
            disc.complete(layers[d][i]);
            for (Vertex w = before; w < static_cast<Vertex>(disc.size()); ++w)
                if (disc.distance(w) < spec.radius) layers[disc.distance(w)].push_back(w);
        }
    }
    return disc.finish();
}

RotationGraph build_reference_tree(int root_degree, int depth, std::size_t budget)
{
    if (root_degree < 1) throw PreconditionError("root degree must be at least 1");
    if (depth < 0) throw PreconditionError("depth must be nonnegative");
    std::vector<std::vector<Vertex>> rot(1);
    std::vector<bool> boundary(1, depth == 0);
    std::vector<Vertex> level{0};
    for (int d = 0; d < depth; ++d) {
        std::vector<Vertex> next_level;
        for (Vertex v : level) {
            const int children = v == 0 ? root_degree : root_degree + 1;
            for (int c = 0; c < children; ++c) {
                if (rot.size() >= budget)
                    throw ResourceError("reference tree exceeds the vertex budget of " + std::to_string(budget));
                auto w = static_cast<Vertex>(rot.size());
                rot.push_back({v});
                boundary.push_back(d + 1 == depth);
                rot[v].push_back(w);
                next_level.push_back(w);
            }
        }
        level = std::move(next_level);
    }
    return RotationGraph(rot, boundary);
}

namespace fixtures {

RotationGraph cycle(int n)
{
    if (n < 3) throw PreconditionError("cycle needs at least 3 vertices");
    std::vector<std::vector<Vertex>> rot(n);
    for (int i = 0; i < n; ++i) rot[i] = {(i + 1) % n, (i + n - 1) % n};
    return RotationGraph(rot, std::vector<bool>(n, true));
}

RotationGraph path(int n)
{
    if (n < 1) throw PreconditionError("path needs at least 1 vertex");
    std::vector<std::vector<Vertex>> rot(n);
    for (int i = 0; i < n; ++i) {
        if (i + 1 < n) rot[i].push_back(i + 1);
        if (i > 0) rot[i].push_back(i - 1);
    }
    std::vector<bool> ends(n, false);
    ends.front() = ends.back() = true;
    return RotationGraph(rot, ends);
}

RotationGraph star(int k)
{
    if (k < 1) throw PreconditionError("star needs at least 1 leaf");
    std::vector<std::vector<Vertex>> rot(k + 1);
    std::vector<bool> boundary(k + 1, true);
    boundary[0] = false;
    for (int i = 1; i <= k; ++i) {
        rot[0].push_back(i);
        rot[i].push_back(0);
    }
    return RotationGraph(rot, boundary);
}

}  // namespace fixtures

}  // namespace hyperperc
