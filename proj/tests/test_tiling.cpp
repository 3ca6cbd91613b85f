#include <doctest.h>

#include "hyperperc/curvature.hpp"
#include "hyperperc/errors.hpp"
#include "hyperperc/tiling.hpp"
#include "oracles.hpp"

using namespace hyperperc;

namespace {

void check_ball(const RotationGraph& g, int p, int q, int radius)
{
    auto d = oracle::bfs(g, 0);
    const auto& f = g.faces();
    for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v) {
        REQUIRE(d[v] >= 0);
        if (d[v] < radius) {
            REQUIRE_FALSE(g.is_boundary(v));
            REQUIRE(g.degree(v) == q);
            for (int s = 0; s < q; ++s) {
                REQUIRE(f.finite(g.face_at(v, s)));
                REQUIRE(f.degree(g.face_at(v, s)) == p);
            }
        }
        // With q = 3 the faces around layer R-1 can already close a layer-R vertex.
        if (d[v] == radius && q > 3) REQUIRE(g.is_boundary(v));
    }
}

}  // namespace

TEST_CASE("build_ball: {3,7} radius 1 has 8 vertices and 7 triangles")
{
    auto g = build_ball({3, 7, 1});
    CHECK(g.vertex_count() == 8);
    int tri = 0;
    for (FaceId i = 0; i < static_cast<FaceId>(g.faces().size()); ++i) tri += g.faces().finite(i);
    CHECK(tri == 7);
}

TEST_CASE("build_ball: radius 0 is a single boundary vertex")
{
    auto g = build_ball({4, 5, 0});
    CHECK(g.vertex_count() == 1);
    CHECK(g.is_boundary(0));
    CHECK(g.faces().size() == 0);
}

TEST_CASE("build_ball: {3,7} layer sizes match the recurrence")
{
    const int R = 8;
    auto g = build_ball({3, 7, R});
    auto d = oracle::bfs(g, 0);
    auto expect = oracle::layers_3_7(R);
    std::vector<std::int64_t> got(R + 1, 0);
    for (int x : d) {
        REQUIRE(x <= R);
        ++got[x];
    }
    CHECK(got == expect);
}

TEST_CASE("build_ball: full scan of degrees and face sizes")
{
    for (auto [p, q, flat] : {std::tuple{3, 7, false}, {4, 5, false}, {3, 8, false}, {5, 4, false}, {4, 4, true},
                              {3, 6, true}, {6, 3, true}, {7, 3, true}}) {
        CAPTURE(p);
        CAPTURE(q);
        if (!in_supported_regime(p, q) && !flat) continue;
        for (int r = 1; r <= 6; ++r) check_ball(build_ball({p, q, r, flat}), p, q, r);
    }
}

TEST_CASE("build_ball: interior curvature is constant")
{
    auto g = build_ball({4, 5, 4});
    auto d = oracle::bfs(g, 0);
    for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v)
        if (d[v] < 4) CHECK(curvature(g, v) == PiMultiple(2) - 5 * PiMultiple(2, 4));
    auto flat = build_ball({4, 4, 3, true});
    CHECK(curvature(flat, 0) == PiMultiple(0));
}

TEST_CASE("build_ball: exponential growth witness")
{
    std::size_t prev = build_ball({3, 7, 2}).vertex_count();
    for (int r = 3; r <= 9; ++r) {
        std::size_t cur = build_ball({3, 7, r}).vertex_count();
        CHECK(static_cast<double>(cur) / static_cast<double>(prev) >= 1.5);
        prev = cur;
    }
}

TEST_CASE("build_ball: rejects invalid specs and enforces the budget")
{
    CHECK_THROWS_AS(build_ball({3, 5, 2}), PreconditionError);
    CHECK_THROWS_AS(build_ball({4, 4, 2}), PreconditionError);
    CHECK_THROWS_AS(build_ball({3, 6, 2}), PreconditionError);
    CHECK_THROWS_AS(build_ball({2, 7, 2}), PreconditionError);
    CHECK_THROWS_AS(build_ball({3, 7, -1}), PreconditionError);
    CHECK_THROWS_AS(build_ball({3, 7, 10}, 1000), ResourceError);
}

TEST_CASE("build_reference_tree")
{
    CHECK(build_reference_tree(2, 1).vertex_count() == 3);
    auto t = build_reference_tree(2, 2);
    CHECK(t.vertex_count() == 9);
    CHECK(t.degree(0) == 2);
    CHECK(t.degree(1) == 4);
    CHECK(t.is_boundary(8));
    CHECK(build_reference_tree(1, 3).vertex_count() == 1 + 1 + 2 + 4);
    CHECK_THROWS_AS(build_reference_tree(0, 2), PreconditionError);
    CHECK_THROWS_AS(build_reference_tree(3, 12, 100), ResourceError);
}

TEST_CASE("fixtures")
{
    CHECK(fixtures::path(5).edge_count() == 4);
    CHECK(fixtures::star(4).degree(0) == 4);
    CHECK(fixtures::cycle(6).edge_count() == 6);
}
