#include "hyperperc/graph.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "hyperperc/errors.hpp"

namespace hyperperc {

std::span<const Vertex> FaceTable::walk(FaceId f) const
{
    return {vertices_.data() + start_[f], vertices_.data() + start_[f + 1]};
}

FaceRecord FaceTable::record(FaceId f) const
{
    auto w = walk(f);
    return FaceRecord{std::vector<Vertex>(w.begin(), w.end()), degree(f), finite(f)};
}

std::vector<FaceRecord> FaceTable::records() const
{
    std::vector<FaceRecord> out;
    out.reserve(size());
    for (std::size_t f = 0; f < size(); ++f) out.push_back(record(static_cast<FaceId>(f)));
    return out;
}

RotationGraph::RotationGraph(const std::vector<std::vector<Vertex>>& rotation, const std::vector<bool>& boundary)
{
    if (rotation.size() != boundary.size())
        throw StructuralError("rotation and boundary lists differ in length");
    offsets_.assign(1, 0);
    offsets_.reserve(rotation.size() + 1);
    for (const auto& r : rotation) {
        adjacency_.insert(adjacency_.end(), r.begin(), r.end());
        offsets_.push_back(adjacency_.size());
    }
    boundary_.assign(boundary.begin(), boundary.end());
    finish();
}

RotationGraph::RotationGraph(std::vector<std::size_t> offsets, std::vector<Vertex> adjacency,
                             std::vector<std::uint8_t> boundary)
    : offsets_(std::move(offsets)), adjacency_(std::move(adjacency)), boundary_(std::move(boundary))
{
    if (offsets_.size() != boundary_.size() + 1 || offsets_.front() != 0 || offsets_.back() != adjacency_.size())
        throw StructuralError("inconsistent CSR offsets");
    finish();
}

void RotationGraph::finish()
{
    validate();
    faces_ = trace_faces(*this);

    const auto n = vertex_count();
    rank_.assign(n, -1);
    order_.clear();
    order_.reserve(n);
    std::deque<Vertex> queue;
    for (std::size_t s = 0; s < n; ++s) {
        if (rank_[s] >= 0) continue;
        rank_[s] = static_cast<std::int32_t>(order_.size());
        order_.push_back(static_cast<Vertex>(s));
        queue.push_back(static_cast<Vertex>(s));
        while (!queue.empty()) {
            Vertex v = queue.front();
            queue.pop_front();
            for (Vertex w : neighbors(v)) {
                if (rank_[w] >= 0) continue;
                rank_[w] = static_cast<std::int32_t>(order_.size());
                order_.push_back(w);
                queue.push_back(w);
            }
        }
    }
}

void RotationGraph::validate() const
{
    const auto n = static_cast<Vertex>(vertex_count());
    for (Vertex v = 0; v < n; ++v) {
        auto nb = neighbors(v);
        for (std::size_t i = 0; i < nb.size(); ++i) {
            Vertex w = nb[i];
            if (w < 0 || w >= n)
                throw StructuralError("vertex " + std::to_string(v) + " lists out-of-range neighbour " +
                                      std::to_string(w));
            if (w == v) throw StructuralError("self-loop at vertex " + std::to_string(v));
            for (std::size_t j = i + 1; j < nb.size(); ++j)
                if (nb[j] == w)
                    throw StructuralError("vertex " + std::to_string(v) + " lists neighbour " + std::to_string(w) +
                                          " twice");
            if (slot_of(w, v) < 0)
                throw StructuralError("asymmetric adjacency: " + std::to_string(v) + " -> " + std::to_string(w));
        }
    }
}

Vertex RotationGraph::neighbor(Vertex v, int slot) const
{
    const int d = degree(v);
    int s = slot % d;
    if (s < 0) s += d;
    return adjacency_[offsets_[v] + static_cast<std::size_t>(s)];
}

int RotationGraph::slot_of(Vertex v, Vertex w) const
{
    auto nb = neighbors(v);
    for (std::size_t i = 0; i < nb.size(); ++i)
        if (nb[i] == w) return static_cast<int>(i);
    return -1;
}

FaceId RotationGraph::face_at(Vertex v, int slot) const
{
    const int d = degree(v);
    int s = slot % d;
    if (s < 0) s += d;
    return faces_.face_of_half_edge(half_edge_id(v, s));
}

FaceTable trace_faces(const RotationGraph& g)
{
    FaceTable t;
    const std::size_t halves = g.half_edge_count();
    t.half_edge_face_.assign(halves, -1);
    t.start_.assign(1, 0);
    t.vertices_.reserve(halves);

    const auto n = static_cast<Vertex>(g.vertex_count());
    for (Vertex v0 = 0; v0 < n; ++v0) {
        for (int s0 = 0; s0 < g.degree(v0); ++s0) {
            if (t.half_edge_face_[g.half_edge_id(v0, s0)] >= 0) continue;
            const auto face = static_cast<FaceId>(t.finite_.size());
            bool finite = true;
            Vertex v = v0;
            int s = s0;
            do {
                auto id = g.half_edge_id(v, s);
                if (t.half_edge_face_[id] >= 0) throw StructuralError("face tracing revisited a half-edge");
                t.half_edge_face_[id] = face;
                t.vertices_.push_back(v);
                if (g.is_cut_wedge(v, s)) finite = false;
                Vertex w = g.neighbor(v, s);
                s = g.slot_of(w, v) - 1;
                if (s < 0) s += g.degree(w);
                v = w;
            } while (v != v0 || s != s0);
            t.finite_.push_back(finite ? 1 : 0);
            t.start_.push_back(t.vertices_.size());
        }
    }
    return t;
}

std::vector<int> bfs_distances(const RotationGraph& g, std::span<const Vertex> sources)
{
    std::vector<int> dist(g.vertex_count(), -1);
    std::vector<Vertex> frontier;
    for (Vertex s : sources) {
        if (dist[s] < 0) {
            dist[s] = 0;
            frontier.push_back(s);
        }
    }
    std::size_t head = 0;
    while (head < frontier.size()) {
        Vertex v = frontier[head++];
        for (Vertex w : g.neighbors(v)) {
            if (dist[w] >= 0) continue;
            dist[w] = dist[v] + 1;
            frontier.push_back(w);
        }
    }
    return dist;
}

std::vector<Vertex> shortest_path(const RotationGraph& g, Vertex from, Vertex to)
{
    std::vector<Vertex> parent(g.vertex_count(), kNoVertex);
    std::vector<Vertex> queue{from};
    parent[from] = from;
    for (std::size_t head = 0; head < queue.size() && parent[to] == kNoVertex; ++head) {
        Vertex v = queue[head];
        for (Vertex w : g.neighbors(v)) {
            if (parent[w] != kNoVertex) continue;
            parent[w] = v;
            queue.push_back(w);
        }
    }
    if (parent[to] == kNoVertex) return {};
    std::vector<Vertex> path{to};
    while (path.back() != from) path.push_back(parent[path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace hyperperc
