#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hyperperc/graph.hpp"
#include "hyperperc/matching.hpp"
#include "hyperperc/polynomial.hpp"
#include "hyperperc/rng.hpp"

namespace hyperperc {

// One Bernoulli(p) site configuration. Vertex v is open iff
// CounterRng(seed, sample_index).uniform(v) < p, so configurations at
// different p built from the same (seed, sample_index) are monotonically
// coupled.
struct Configuration {
    std::vector<std::uint8_t> states;  // 1 = open
    double p = 0;
    std::uint64_t seed = 0;
    std::uint64_t sample_index = 0;

    std::size_t open_count() const;
};

inline bool site_open(const CounterRng& rng, double p, Vertex v) { return rng.uniform(static_cast<std::uint64_t>(v)) < p; }

Configuration sample(std::size_t vertex_count, double p, std::uint64_t seed, std::uint64_t index);
inline Configuration sample(const RotationGraph& g, double p, std::uint64_t seed, std::uint64_t index)
{
    return sample(g.vertex_count(), p, seed, index);
}

struct ClusterInfo {
    std::uint8_t state = 0;
    std::int64_t size = 0;
    bool touches_boundary = false;
    Vertex first_vertex = kNoVertex;  // smallest vertex id in the cluster
};

// Same-state clusters of every vertex under the view's adjacency. Cluster ids
// are assigned in order of each cluster's smallest vertex id.
struct ClusterLabeling {
    AdjacencyMode mode = AdjacencyMode::graph;
    std::vector<std::int32_t> label;
    std::vector<ClusterInfo> clusters;

    std::vector<Vertex> members(std::int32_t cluster) const;
    std::int64_t largest(std::uint8_t state) const;
};

ClusterLabeling label_clusters(const AdjacencyView& adj, const Configuration& config);

// Distinct `state` clusters meeting both `core` and the boundary.
int boundary_cluster_count(const ClusterLabeling& lab, std::span<const Vertex> core, std::uint8_t state);
// Same with core = B(0, core_radius) in g.
int boundary_cluster_count(const RotationGraph& g, const ClusterLabeling& lab, int core_radius, std::uint8_t state);

// Explores open clusters of one sample without materialising the
// configuration: states are drawn on demand from the counter generator.
class ClusterExplorer {
  public:
    ClusterExplorer(const AdjacencyView& adj, double p, std::uint64_t seed);

    void begin(std::uint64_t sample_index);
    bool open(Vertex v) const { return site_open(rng_, p_, v); }
    // Marks the union of the open clusters of the open sources. With
    // `allowed`, only vertices v with allowed[v] != 0 are entered.
    void explore(std::span<const Vertex> sources, const std::vector<std::uint8_t>* allowed = nullptr);
    bool reached(Vertex v) const { return mark_[v] == stamp_; }
    bool reached_any(std::span<const Vertex> vs) const;
    std::span<const Vertex> cluster() const { return queue_; }

  private:
    AdjacencyView adj_;
    double p_;
    std::uint64_t seed_;
    CounterRng rng_{0, 0};
    std::vector<std::uint32_t> mark_;
    std::uint32_t stamp_ = 0;
    std::vector<Vertex> queue_;
};

struct Estimate {
    double mean = 0;
    double std_error = 0;
    std::int64_t hits = 0;
    std::int64_t samples = 0;
};

// P_p(A <-> B): some open vertex of A and some open vertex of B lie in one
// open cluster. Samples 0..n-1 of `seed`; the result does not depend on
// `threads`.
Estimate two_point_sets(const AdjacencyView& adj, double p, std::span<const Vertex> a, std::span<const Vertex> b,
                        std::int64_t n_samples, std::uint64_t seed, int threads = 1);
inline Estimate two_point(const AdjacencyView& adj, double p, Vertex u, Vertex v, std::int64_t n_samples,
                          std::uint64_t seed, int threads = 1)
{
    return two_point_sets(adj, p, std::span<const Vertex>(&u, 1), std::span<const Vertex>(&v, 1), n_samples, seed,
                          threads);
}

inline constexpr int kMaxEnumerationVertices = 24;

// Exact P_p(source <-> targets) by enumerating all states of the free
// vertices; vertices in `pinned_open` are held open. Throws ResourceError for
// more than kMaxEnumerationVertices free vertices or more than 64 vertices.
BernsteinCounts exact_connection_poly(const AdjacencyView& adj, Vertex source, std::span<const Vertex> targets,
                                      std::span<const Vertex> pinned_open = {});

// Outer boundary of a finite closed star-cluster xi: the closed walk of open vertices around the
// union of faces incident to xi with its holes filled, traversed with xi on
// the left and starting at the vertex of smallest BFS rank. The closing edge
// back to walk.front() is implicit.
struct OuterBoundary {
    std::vector<Vertex> walk;
    std::int64_t enclosed_faces = 0;
};

OuterBoundary outer_boundary(const MatchingGraph& mg, const Configuration& config, std::span<const Vertex> xi);

}  // namespace hyperperc
