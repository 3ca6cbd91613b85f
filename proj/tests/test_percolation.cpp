#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "hyperperc/errors.hpp"
#include "hyperperc/matching.hpp"
#include "hyperperc/percolation.hpp"
#include "hyperperc/tiling.hpp"
#include "oracles.hpp"

using namespace hyperperc;

namespace {

// Component of v among vertices of the same state, by plain DFS.
std::set<Vertex> same_state_component(const AdjacencyView& adj, const Configuration& c, Vertex v)
{
    std::set<Vertex> seen{v};
    std::vector<Vertex> stack{v};
    while (!stack.empty()) {
        Vertex x = stack.back();
        stack.pop_back();
        for (Vertex w : adj.neighbors(x))
            if (c.states[w] == c.states[v] && seen.insert(w).second) stack.push_back(w);
    }
    return seen;
}

// P(source <-> target) as a double by summing configuration weights.
double brute_connection(const RotationGraph& g, Vertex s, Vertex t, double p)
{
    const auto n = g.vertex_count();
    double total = 0;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
        if (!(m >> s & 1) || !(m >> t & 1)) continue;
        std::vector<int> d(n, -1);
        std::vector<Vertex> q{s};
        d[s] = 0;
        for (std::size_t h = 0; h < q.size(); ++h)
            for (Vertex w : g.neighbors(q[h]))
                if ((m >> w & 1) && d[w] < 0) {
                    d[w] = 0;
                    q.push_back(w);
                }
        if (d[t] < 0) continue;
        double w = 1;
        for (std::size_t v = 0; v < n; ++v) w *= (m >> v & 1) ? p : 1 - p;
        total += w;
    }
    return total;
}

}  // namespace

TEST_CASE("samples are reproducible and monotonically coupled in p")
{
    auto a = sample(1000, 0.3, 7, 5);
    auto b = sample(1000, 0.3, 7, 5);
    CHECK(a.states == b.states);
    auto c = sample(1000, 0.6, 7, 5);
    for (std::size_t v = 0; v < 1000; ++v) CHECK(a.states[v] <= c.states[v]);
    auto other = sample(1000, 0.3, 7, 6);
    CHECK(a.states != other.states);
    CHECK(sample(50, 0.0, 1, 1).open_count() == 0);
    CHECK(sample(50, 1.0, 1, 1).open_count() == 50);
    CHECK_THROWS_AS(sample(5, 1.5, 1, 1), PreconditionError);
}

TEST_CASE("cluster labels match a DFS oracle in both adjacencies")
{
    auto g = build_ball({4, 5, 4});
    MatchingGraph mg(g);
    for (std::uint64_t i = 0; i < 3; ++i) {
        auto conf = sample(g, 0.45, 11, i);
        for (AdjacencyView adj : {view(g), mg.view()}) {
            auto lab = label_clusters(adj, conf);
            std::int64_t total = 0;
            for (const auto& c : lab.clusters) total += c.size;
            CHECK(total == static_cast<std::int64_t>(g.vertex_count()));
            for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); v += 7) {
                auto comp = same_state_component(adj, conf, v);
                auto members = lab.members(lab.label[v]);
                CHECK(std::set<Vertex>(members.begin(), members.end()) == comp);
                const auto& info = lab.clusters[lab.label[v]];
                CHECK(info.first_vertex == *comp.begin());
                CHECK(info.state == conf.states[v]);
                bool touches = std::any_of(comp.begin(), comp.end(), [&](Vertex x) { return g.is_boundary(x); });
                CHECK(info.touches_boundary == touches);
            }
        }
    }
}

TEST_CASE("star clusters are unions of graph clusters")
{
    auto g = build_ball({5, 4, 3, true});
    MatchingGraph mg(g);
    auto conf = sample(g, 0.5, 3, 0);
    auto lg = label_clusters(view(g), conf);
    auto ls = label_clusters(mg.view(), conf);
    CHECK(ls.clusters.size() <= lg.clusters.size());
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        for (Vertex w : g.neighbors(static_cast<Vertex>(v)))
            if (lg.label[v] == lg.label[w]) CHECK(ls.label[v] == ls.label[w]);
}

TEST_CASE("explorer agrees with the materialised configuration")
{
    auto g = build_ball({3, 7, 5});
    auto adj = view(g);
    ClusterExplorer ex(adj, 0.4, 99);
    for (std::uint64_t i = 0; i < 5; ++i) {
        auto conf = sample(g, 0.4, 99, i);
        auto lab = label_clusters(adj, conf);
        ex.begin(i);
        Vertex src = 0;
        ex.explore(std::span<const Vertex>(&src, 1));
        if (!conf.states[0]) {
            CHECK(ex.cluster().empty());
            continue;
        }
        CHECK(static_cast<std::int64_t>(ex.cluster().size()) == lab.clusters[lab.label[0]].size);
        for (Vertex v : ex.cluster()) CHECK(lab.label[v] == lab.label[0]);
    }
}

TEST_CASE("exact connection polynomial on small fixtures")
{
    SUBCASE("path: p^n")
    {
        for (int n = 2; n <= 8; ++n) {
            auto g = fixtures::path(n);
            Vertex t = n - 1;
            auto poly = exact_connection_poly(view(g), 0, std::span<const Vertex>(&t, 1)).to_polynomial();
            std::vector<BigInt> c(n + 1, 0);
            c[n] = 1;
            CHECK(poly == Polynomial(c));
        }
    }
    SUBCASE("cycle: two routes")
    {
        // C_6, 0 <-> 3: p^2 (1 - (1 - p^2)^2) = 2p^4 - p^6.
        auto g = fixtures::cycle(6);
        Vertex t = 3;
        auto poly = exact_connection_poly(view(g), 0, std::span<const Vertex>(&t, 1)).to_polynomial();
        CHECK(poly == Polynomial({0, 0, 0, 0, 2, 0, -1}));
    }
    SUBCASE("brute force on balls")
    {
        auto g = build_ball({4, 5, 1});
        REQUIRE(g.vertex_count() <= 24);
        const Vertex t = static_cast<Vertex>(g.vertex_count()) - 1;
        auto counts = exact_connection_poly(view(g), 0, std::span<const Vertex>(&t, 1));
        for (double p : {0.1, 0.37, 0.5, 0.9}) CHECK(counts(p) == doctest::Approx(brute_connection(g, 0, t, p)));
    }
    SUBCASE("pinned vertices are held open")
    {
        auto g = fixtures::path(4);
        Vertex t = 3;
        std::vector<Vertex> pinned{1, 2};
        auto poly = exact_connection_poly(view(g), 0, std::span<const Vertex>(&t, 1), pinned).to_polynomial();
        CHECK(poly == Polynomial({0, 0, 1}));
    }
    SUBCASE("enumeration limit")
    {
        auto g = fixtures::path(30);
        Vertex t = 29;
        CHECK_THROWS_AS(exact_connection_poly(view(g), 0, std::span<const Vertex>(&t, 1)), ResourceError);
    }
}

TEST_CASE("two-point estimate is independent of the thread count and consistent with exact values")
{
    auto g = fixtures::cycle(6);
    auto adj = view(g);
    Estimate one = two_point(adj, 0.7, 0, 3, 20000, 5, 1);
    Estimate three = two_point(adj, 0.7, 0, 3, 20000, 5, 3);
    CHECK(one.hits == three.hits);
    const double exact = 2 * std::pow(0.7, 4) - std::pow(0.7, 6);
    CHECK(std::abs(one.mean - exact) < 4 * one.std_error + 1e-12);
    CHECK(two_point(adj, 1.0, 0, 3, 10, 1).hits == 10);
    CHECK(two_point(adj, 0.0, 0, 3, 10, 1).hits == 0);
}

TEST_CASE("boundary cluster count")
{
    auto g = build_ball({4, 5, 3});
    auto all_closed = sample(g, 0.0, 1, 0);
    auto lab = label_clusters(view(g), all_closed);
    CHECK(boundary_cluster_count(g, lab, 1, 0) == 1);
    CHECK(boundary_cluster_count(g, lab, 1, 1) == 0);
}

TEST_CASE("outer boundary of a single closed vertex is its link")
{
    auto g = build_ball({3, 7, 4});
    MatchingGraph mg(g);
    auto conf = sample(g, 1.0, 0, 0);
    conf.states[0] = 0;
    Vertex xi = 0;
    auto ob = outer_boundary(mg, conf, std::span<const Vertex>(&xi, 1));
    auto nb = g.neighbors(0);
    std::vector<Vertex> expected(nb.begin(), nb.end());
    auto first = std::min_element(expected.begin(), expected.end(), [&](Vertex a, Vertex b) {
        return g.rank(a) < g.rank(b);
    });
    std::rotate(expected.begin(), first, expected.end());
    CHECK(ob.walk == expected);
    CHECK(ob.enclosed_faces == 7);
}

TEST_CASE("outer boundary fills holes")
{
    // Closed ring at distance 2, everything else open: the faces inside the
    // ring form a hole and the boundary walk runs along the third layer.
    auto g = build_ball({3, 7, 6});
    MatchingGraph mg(g);
    auto d = oracle::bfs(g, 0);
    auto conf = sample(g, 1.0, 0, 0);
    std::vector<Vertex> ring;
    for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v)
        if (d[v] == 2) {
            conf.states[v] = 0;
            ring.push_back(v);
        }
    auto ob = outer_boundary(mg, conf, ring);
    std::set<Vertex> layer3;
    for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v)
        if (d[v] == 3) layer3.insert(v);
    CHECK(ob.walk.size() == layer3.size());
    CHECK(std::set<Vertex>(ob.walk.begin(), ob.walk.end()) == layer3);
    for (std::size_t i = 0; i < ob.walk.size(); ++i)
        CHECK(g.adjacent(ob.walk[i], ob.walk[(i + 1) % ob.walk.size()]));

    std::int64_t inner = 0;
    for (const auto& f : oracle::faces(g)) {
        if (f.cut) continue;
        if (std::all_of(f.walk.begin(), f.walk.end(), [&](Vertex v) { return d[v] >= 0 && d[v] <= 3; })) ++inner;
    }
    CHECK(ob.enclosed_faces == inner);
}

TEST_CASE("outer boundary preconditions")
{
    auto g = build_ball({3, 7, 3});
    MatchingGraph mg(g);
    auto conf = sample(g, 1.0, 0, 0);
    Vertex v = 0;
    CHECK_THROWS_AS(outer_boundary(mg, conf, std::span<const Vertex>(&v, 1)), PreconditionError);
    conf.states[0] = 0;
    conf.states[1] = 0;
    CHECK_THROWS_AS(outer_boundary(mg, conf, std::span<const Vertex>(&v, 1)), PreconditionError);
    Vertex last = static_cast<Vertex>(g.vertex_count()) - 1;
    conf.states[last] = 0;
    CHECK_THROWS_AS(outer_boundary(mg, conf, std::span<const Vertex>(&last, 1)), PreconditionError);
}

TEST_CASE("outer boundary around a closed square diagonal in {4,5}")
{
    auto g = build_ball({4, 5, 4});
    MatchingGraph mg(g);
    auto w = g.faces().walk(g.face_at(0, 0));
    REQUIRE(w.size() == 4);
    const auto i0 = std::find(w.begin(), w.end(), Vertex{0}) - w.begin();
    const Vertex diag = w[(i0 + 2) % 4];
    REQUIRE_FALSE(g.adjacent(0, diag));
    auto conf = sample(g, 1.0, 0, 0);
    conf.states[0] = conf.states[diag] = 0;
    std::vector<Vertex> xi{0, diag};
    auto ob = outer_boundary(mg, conf, xi);
    CHECK(ob.walk.size() == 16);
    CHECK(std::set<Vertex>(ob.walk.begin(), ob.walk.end()).size() == 16);
    CHECK(ob.enclosed_faces == 9);
    for (Vertex v : ob.walk) CHECK((mg.adjacent(v, 0) || mg.adjacent(v, diag)));
}
