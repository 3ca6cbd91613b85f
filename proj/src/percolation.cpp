#include "hyperperc/percolation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <numeric>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "hyperperc/errors.hpp"
#include "hyperperc/parallel.hpp"

namespace hyperperc {

std::size_t Configuration::open_count() const
{
    return static_cast<std::size_t>(std::count(states.begin(), states.end(), std::uint8_t{1}));
}

Configuration sample(std::size_t vertex_count, double p, std::uint64_t seed, std::uint64_t index)
{
    if (!(p >= 0.0 && p <= 1.0)) throw PreconditionError("p must lie in [0, 1]");
    Configuration c;
    c.p = p;
    c.seed = seed;
    c.sample_index = index;
    c.states.resize(vertex_count);
    const CounterRng rng(seed, index);
    for (std::size_t v = 0; v < vertex_count; ++v) c.states[v] = site_open(rng, p, static_cast<Vertex>(v)) ? 1 : 0;
    return c;
}

namespace {

struct UnionFind {
    std::vector<std::int32_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::int32_t find(std::int32_t x)
    {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::int32_t a, std::int32_t b)
    {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a > b) std::swap(a, b);
        parent[b] = a;
    }
};

}  // namespace

ClusterLabeling label_clusters(const AdjacencyView& adj, const Configuration& config)
{
    const std::size_t n = adj.vertex_count();
    if (config.states.size() != n) throw PreconditionError("configuration size does not match the graph");
    UnionFind uf(n);
    for (std::size_t v = 0; v < n; ++v)
        for (Vertex w : adj.neighbors(static_cast<Vertex>(v)))
            if (static_cast<std::size_t>(w) > v && config.states[v] == config.states[w])
                uf.unite(static_cast<std::int32_t>(v), w);

    ClusterLabeling lab;
    lab.mode = adj.mode;
    lab.label.assign(n, -1);
    std::vector<std::int32_t> id_of_root(n, -1);
    for (std::size_t v = 0; v < n; ++v) {
        const auto r = uf.find(static_cast<std::int32_t>(v));
        if (id_of_root[r] < 0) {
            id_of_root[r] = static_cast<std::int32_t>(lab.clusters.size());
            ClusterInfo info;
            info.state = config.states[v];
            info.first_vertex = static_cast<Vertex>(v);
            lab.clusters.push_back(info);
        }
        const auto id = id_of_root[r];
        lab.label[v] = id;
        auto& c = lab.clusters[id];
        ++c.size;
        if (adj.is_boundary(static_cast<Vertex>(v))) c.touches_boundary = true;
    }
    return lab;
}

std::vector<Vertex> ClusterLabeling::members(std::int32_t cluster) const
{
    std::vector<Vertex> out;
    for (std::size_t v = 0; v < label.size(); ++v)
        if (label[v] == cluster) out.push_back(static_cast<Vertex>(v));
    return out;
}

std::int64_t ClusterLabeling::largest(std::uint8_t state) const
{
    std::int64_t best = 0;
    for (const auto& c : clusters)
        if (c.state == state) best = std::max(best, c.size);
    return best;
}

int boundary_cluster_count(const ClusterLabeling& lab, std::span<const Vertex> core, std::uint8_t state)
{
    std::unordered_set<std::int32_t> seen;
    for (Vertex v : core) {
        const auto id = lab.label[v];
        const auto& c = lab.clusters[id];
        if (c.state == state && c.touches_boundary) seen.insert(id);
    }
    return static_cast<int>(seen.size());
}

int boundary_cluster_count(const RotationGraph& g, const ClusterLabeling& lab, int core_radius, std::uint8_t state)
{
    if (g.vertex_count() == 0) return 0;
    auto dist = bfs_distances(g, Vertex{0});
    std::vector<Vertex> core;
    for (std::size_t v = 0; v < dist.size(); ++v)
        if (dist[v] >= 0 && dist[v] <= core_radius) core.push_back(static_cast<Vertex>(v));
    return boundary_cluster_count(lab, core, state);
}

ClusterExplorer::ClusterExplorer(const AdjacencyView& adj, double p, std::uint64_t seed)
    : adj_(adj), p_(p), seed_(seed), mark_(adj.vertex_count(), 0)
{
    if (!(p >= 0.0 && p <= 1.0)) throw PreconditionError("p must lie in [0, 1]");
}

void ClusterExplorer::begin(std::uint64_t sample_index)
{
    rng_ = CounterRng(seed_, sample_index);
    if (++stamp_ == 0) {
        std::fill(mark_.begin(), mark_.end(), 0);
        stamp_ = 1;
    }
    queue_.clear();
}

void ClusterExplorer::explore(std::span<const Vertex> sources, const std::vector<std::uint8_t>* allowed)
{
    auto enter = [&](Vertex v) {
        if (mark_[v] == stamp_) return;
        if (allowed && !(*allowed)[v]) return;
        if (!open(v)) return;
        mark_[v] = stamp_;
        queue_.push_back(v);
    };
    std::size_t head = queue_.size();
    for (Vertex s : sources) enter(s);
    while (head < queue_.size()) {
        const Vertex v = queue_[head++];
        for (Vertex w : adj_.neighbors(v)) enter(w);
    }
}

bool ClusterExplorer::reached_any(std::span<const Vertex> vs) const
{
    return std::any_of(vs.begin(), vs.end(), [&](Vertex v) { return reached(v); });
}

Estimate two_point_sets(const AdjacencyView& adj, double p, std::span<const Vertex> a, std::span<const Vertex> b,
                        std::int64_t n_samples, std::uint64_t seed, int threads)
{
    if (n_samples <= 0) throw PreconditionError("need at least one sample");
    if (a.empty() || b.empty()) throw PreconditionError("endpoint sets must be non-empty");
    for (auto set : {a, b})
        for (Vertex v : set)
            if (v < 0 || static_cast<std::size_t>(v) >= adj.vertex_count())
                throw PreconditionError("vertex " + std::to_string(v) + " out of range");

    std::vector<std::int64_t> hits(static_cast<std::size_t>(std::max(1, threads)), 0);
    parallel_blocks(n_samples, threads, [&](int block, std::int64_t begin, std::int64_t end) {
        ClusterExplorer ex(adj, p, seed);
        std::int64_t h = 0;
        for (std::int64_t i = begin; i < end; ++i) {
            ex.begin(static_cast<std::uint64_t>(i));
            ex.explore(a);
            if (ex.reached_any(b)) ++h;
        }
        hits[block] = h;
    });
    Estimate e;
    e.samples = n_samples;
    e.hits = std::accumulate(hits.begin(), hits.end(), std::int64_t{0});
    e.mean = static_cast<double>(e.hits) / static_cast<double>(n_samples);
    e.std_error = std::sqrt(e.mean * (1.0 - e.mean) / static_cast<double>(n_samples));
    return e;
}

BernsteinCounts exact_connection_poly(const AdjacencyView& adj, Vertex source, std::span<const Vertex> targets,
                                      std::span<const Vertex> pinned_open)
{
    const std::size_t n = adj.vertex_count();
    if (n > 64) throw ResourceError("exact enumeration supports at most 64 vertices, got " + std::to_string(n));
    if (source < 0 || static_cast<std::size_t>(source) >= n) throw PreconditionError("source out of range");

    std::vector<std::uint64_t> nbr(n, 0);
    for (std::size_t v = 0; v < n; ++v)
        for (Vertex w : adj.neighbors(static_cast<Vertex>(v))) nbr[v] |= std::uint64_t{1} << w;
    std::uint64_t target_mask = 0;
    for (Vertex t : targets) {
        if (t < 0 || static_cast<std::size_t>(t) >= n) throw PreconditionError("target out of range");
        target_mask |= std::uint64_t{1} << t;
    }
    std::uint64_t pinned = 0;
    for (Vertex v : pinned_open) {
        if (v < 0 || static_cast<std::size_t>(v) >= n) throw PreconditionError("pinned vertex out of range");
        pinned |= std::uint64_t{1} << v;
    }
    std::vector<int> free_bits;
    for (std::size_t v = 0; v < n; ++v)
        if (!(pinned >> v & 1)) free_bits.push_back(static_cast<int>(v));
    const int k = static_cast<int>(free_bits.size());
    if (k > kMaxEnumerationVertices)
        throw ResourceError("exact enumeration over " + std::to_string(k) + " free vertices exceeds the limit of " +
                            std::to_string(kMaxEnumerationVertices));

    std::vector<std::int64_t> counts(static_cast<std::size_t>(k) + 1, 0);
    const std::uint64_t source_bit = std::uint64_t{1} << source;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << k); ++m) {
        std::uint64_t open = pinned;
        for (int i = 0; i < k; ++i)
            if (m >> i & 1) open |= std::uint64_t{1} << free_bits[i];
        if (!(open & source_bit)) continue;
        std::uint64_t reached = source_bit;
        std::uint64_t frontier = source_bit;
        while (frontier && !(reached & target_mask)) {
            std::uint64_t next = 0;
            for (std::uint64_t f = frontier; f; f &= f - 1) next |= nbr[std::countr_zero(f)];
            next &= open & ~reached;
            reached |= next;
            frontier = next;
        }
        if (reached & target_mask) ++counts[std::popcount(m)];
    }
    BernsteinCounts out;
    out.counts.assign(counts.begin(), counts.end());
    return out;
}

namespace {

// Face on the left of b -> a, i.e. across the edge from the face left of a -> b.
FaceId face_across(const RotationGraph& g, Vertex a, Vertex b) { return g.face_at(b, g.slot_of(b, a)); }

template <class Fn>
void for_each_across(const RotationGraph& g, FaceId f, Fn&& fn)
{
    auto w = g.faces().walk(f);
    for (std::size_t j = 0; j < w.size(); ++j) fn(face_across(g, w[j], w[(j + 1) % w.size()]));
}

struct Flood {
    std::deque<FaceId> queue;
    bool out = false;
    bool exhausted = false;
    bool resolved() const { return out || exhausted; }
};

}  // namespace

OuterBoundary outer_boundary(const MatchingGraph& mg, const Configuration& config, std::span<const Vertex> xi)
{
    const RotationGraph& g = mg.base();
    const auto& faces = g.faces();
    const std::size_t n = g.vertex_count();
    if (config.states.size() != n) throw PreconditionError("configuration size does not match the graph");
    if (xi.empty()) throw PreconditionError("cluster is empty");

    std::vector<std::uint8_t> in_xi(n, 0);
    for (Vertex v : xi) {
        if (v < 0 || static_cast<std::size_t>(v) >= n) throw PreconditionError("vertex out of range");
        if (config.states[v] != 0) throw PreconditionError("vertex " + std::to_string(v) + " is open");
        if (mg.partial(v))
            throw PreconditionError("cluster touches the truncation boundary at vertex " + std::to_string(v));
        in_xi[v] = 1;
    }
    {
        // xi must be exactly one closed *-cluster.
        std::vector<Vertex> stack{xi.front()};
        std::vector<std::uint8_t> seen(n, 0);
        seen[xi.front()] = 1;
        std::size_t count = 1;
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            for (Vertex w : mg.neighbors(v)) {
                if (config.states[w] != 0 || seen[w]) continue;
                if (!in_xi[w]) throw PreconditionError("vertex set is not a maximal closed *-cluster");
                seen[w] = 1;
                ++count;
                stack.push_back(w);
            }
        }
        std::unordered_set<Vertex> distinct(xi.begin(), xi.end());
        if (count != distinct.size()) throw PreconditionError("vertex set is not *-connected");
    }

    std::unordered_set<FaceId> region;
    for (Vertex v : xi)
        for (int s = 0; s < g.degree(v); ++s) region.insert(g.face_at(v, s));

    // Complement components adjacent to the region, grown in lockstep so that
    // small holes are resolved without exploring the unbounded side.
    std::vector<Flood> floods;
    std::vector<int> parent;
    std::unordered_map<FaceId, int> owner;
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<FaceId> region_sorted(region.begin(), region.end());
    std::sort(region_sorted.begin(), region_sorted.end());
    for (FaceId f : region_sorted)
        for_each_across(g, f, [&](FaceId h) {
            if (region.count(h) || owner.count(h)) return;
            owner[h] = static_cast<int>(floods.size());
            parent.push_back(static_cast<int>(floods.size()));
            floods.emplace_back().queue.push_back(h);
        });

    for (;;) {
        std::vector<int> open_floods;
        bool have_out = false;
        for (std::size_t k = 0; k < floods.size(); ++k) {
            if (find(static_cast<int>(k)) != static_cast<int>(k)) continue;
            if (floods[k].out) have_out = true;
            if (!floods[k].resolved()) open_floods.push_back(static_cast<int>(k));
        }
        if (open_floods.empty()) break;
        if (open_floods.size() == 1 && !have_out) {
            floods[open_floods[0]].out = true;
            break;
        }
        for (int k : open_floods) {
            if (find(k) != k || floods[k].resolved()) continue;
            auto& fl = floods[k];
            if (fl.queue.empty()) {
                fl.exhausted = true;
                continue;
            }
            const FaceId f = fl.queue.front();
            fl.queue.pop_front();
            if (!faces.finite(f)) {
                fl.out = true;
                continue;
            }
            for_each_across(g, f, [&](FaceId h) {
                if (region.count(h)) return;
                auto it = owner.find(h);
                if (it == owner.end()) {
                    owner[h] = k;
                    floods[k].queue.push_back(h);
                    return;
                }
                const int j = find(it->second);
                if (j == k) return;
                parent[j] = k;
                auto& dst = floods[k];
                auto& src = floods[j];
                dst.queue.insert(dst.queue.end(), src.queue.begin(), src.queue.end());
                src.queue.clear();
                dst.out = dst.out || src.out;
                dst.exhausted = false;
            });
        }
    }

    auto inside = [&](FaceId f) {
        if (region.count(f)) return true;
        auto it = owner.find(f);
        return it != owner.end() && !floods[find(it->second)].out;
    };

    OuterBoundary result;
    result.enclosed_faces = static_cast<std::int64_t>(region.size());
    for (const auto& [f, k] : owner)
        if (!floods[find(k)].out) ++result.enclosed_faces;

    // Boundary half-edges a -> b have an inside face on the left and an
    // outside face on the right.
    std::size_t boundary_halves = 0;
    Vertex start = kNoVertex;
    int start_slot = -1;
    auto consider = [&](FaceId f) {
        auto w = faces.walk(f);
        for (std::size_t j = 0; j < w.size(); ++j) {
            const Vertex a = w[j];
            const Vertex b = w[(j + 1) % w.size()];
            if (inside(face_across(g, a, b))) continue;
            ++boundary_halves;
            const int s = g.slot_of(a, b);
            if (start == kNoVertex || g.rank(a) < g.rank(start) || (a == start && s < start_slot)) {
                start = a;
                start_slot = s;
            }
        }
    };
    for (FaceId f : region_sorted) consider(f);
    for (const auto& [f, k] : owner)
        if (!floods[find(k)].out) consider(f);
    if (start == kNoVertex) throw InvariantViolation("filled region has no boundary");

    Vertex a = start;
    Vertex b = g.neighbor(start, start_slot);
    std::size_t steps = 0;
    do {
        result.walk.push_back(a);
        if (++steps > boundary_halves) throw InvariantViolation("outer boundary trace does not close");
        const int d = g.degree(b);
        int j = g.slot_of(b, a) - 1;
        for (int guard = 0; inside(g.face_at(b, j - 1)); --j)
            if (++guard > d) throw InvariantViolation("outer boundary trace circled a vertex");
        const Vertex c = g.neighbor(b, j);
        a = b;
        b = c;
    } while (a != start || b != g.neighbor(start, start_slot));
    if (steps != boundary_halves)
        throw InvariantViolation("filled region boundary is not a single closed walk (" + std::to_string(steps) +
                                 " of " + std::to_string(boundary_halves) + " half-edges)");
    for (Vertex v : result.walk)
        if (config.states[v] != 1)
            throw InvariantViolation("outer boundary vertex " + std::to_string(v) + " is not open");
    return result;
}

}  // namespace hyperperc
