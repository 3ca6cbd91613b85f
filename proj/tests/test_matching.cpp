#include <doctest.h>

#include <set>

#include "hyperperc/matching.hpp"
#include "hyperperc/tiling.hpp"
#include "oracles.hpp"

using namespace hyperperc;

namespace {

// Pairs sharing a finite face, found by scanning every face of the oracle.
std::set<std::pair<Vertex, Vertex>> cofacial_pairs(const RotationGraph& g)
{
    std::set<std::pair<Vertex, Vertex>> out;
    for (const auto& f : oracle::faces(g)) {
        if (f.cut) continue;
        for (Vertex a : f.walk)
            for (Vertex b : f.walk)
                if (a < b) out.insert({a, b});
    }
    return out;
}

}  // namespace

TEST_CASE("triangulations gain no star edges")
{
    auto g = build_ball({3, 7, 4});
    MatchingGraph mg(g);
    CHECK(mg.star_edges().empty());
    for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v) CHECK(mg.degree(v) == g.degree(v));
}

TEST_CASE("square fixture gains both diagonals")
{
    auto g = fixtures::square();
    MatchingGraph mg(g);
    std::vector<std::pair<Vertex, Vertex>> expected{{0, 2}, {1, 3}};
    CHECK(mg.star_edges() == expected);
    CHECK(mg.adjacent(0, 2));
    CHECK(mg.adjacent(3, 1));
    for (Vertex v = 0; v < 4; ++v) CHECK(mg.partial(v));
}

TEST_CASE("interior star degree of {4,5} is 10")
{
    auto g = build_ball({4, 5, 4});
    MatchingGraph mg(g);
    int interior = 0;
    for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v) {
        if (mg.partial(v)) continue;
        ++interior;
        CHECK(mg.degree(v) == 10);
    }
    CHECK(interior > 0);
    CHECK(mg.degree(0) == 10);
}

TEST_CASE("star adjacency equals the brute-force cofacial relation")
{
    for (TilingSpec spec : {TilingSpec{4, 5, 3}, TilingSpec{5, 4, 3, true}, TilingSpec{6, 5, 2}, TilingSpec{3, 8, 3}}) {
        CAPTURE(spec.p);
        CAPTURE(spec.q);
        auto g = build_ball(spec);
        MatchingGraph mg(g);
        auto cof = cofacial_pairs(g);
        const auto n = static_cast<Vertex>(g.vertex_count());
        std::size_t star = 0;
        for (Vertex a = 0; a < n; ++a)
            for (Vertex b = a + 1; b < n; ++b) {
                const bool expect = g.adjacent(a, b) || cof.count({a, b});
                CHECK(mg.adjacent(a, b) == expect);
                CHECK(mg.adjacent(b, a) == expect);
                if (expect && !g.adjacent(a, b)) ++star;
            }
        CHECK(mg.star_edges().size() == star);
    }
}

TEST_CASE("star neighbourhood is sorted and flags partial vertices")
{
    auto g = build_ball({4, 5, 3});
    MatchingGraph mg(g);
    auto nb = star_neighborhood(mg, 0);
    CHECK(nb.vertices.size() == 10);
    CHECK(std::is_sorted(nb.vertices.begin(), nb.vertices.end()));
    CHECK_FALSE(nb.partial);
    Vertex last = static_cast<Vertex>(g.vertex_count()) - 1;
    CHECK(star_neighborhood(mg, last).partial);
}
