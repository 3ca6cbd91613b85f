#include <doctest.h>

#include <set>

#include "hyperperc/errors.hpp"
#include "hyperperc/tiling.hpp"
#include "hyperperc/walks.hpp"
#include "oracles.hpp"

using namespace hyperperc;

namespace {

bool distinct(const std::vector<Vertex>& path) { return std::set<Vertex>(path.begin(), path.end()).size() == path.size(); }

// Reference walk: at each vertex take the neighbour `k` places CCW from the
// one we came from, using plain rotation-list arithmetic.
std::vector<Vertex> naive_walk(const RotationGraph& g, Vertex a, Vertex b, int k, int steps)
{
    std::vector<Vertex> out{a, b};
    while (static_cast<int>(out.size()) <= steps && !g.is_boundary(out.back())) {
        auto nb = g.neighbors(out.back());
        auto d = static_cast<int>(nb.size());
        int in = static_cast<int>(std::find(nb.begin(), nb.end(), out[out.size() - 2]) - nb.begin());
        out.push_back(nb[((in + k) % d + d) % d]);
    }
    return out;
}

}  // namespace

TEST_CASE("turn_walk: +3 on {3,7} radius 10 is self-avoiding up to the boundary")
{
    // A +3 walk leaves the ball within about R steps, so every 50-step request
    // ends truncated at the boundary.
    auto g = build_ball({3, 7, 10}, 5'000'000);
    for (Vertex w0 : g.neighbors(0)) {
        auto w = turn_walk(g, {0, w0}, WalkRule::label(3), 50);
        CHECK(distinct(w.path));
        CHECK(w.truncated);
        CHECK(w.path.size() <= 51);
        CHECK(w.path == naive_walk(g, 0, w0, 3, 50));
    }
    auto big = build_ball({3, 7, 12}, 5'000'000);
    auto w = turn_walk(big, {0, big.neighbor(0, 0)}, WalkRule::label(3), 11);
    CHECK(w.path.size() == 12);
    CHECK(distinct(w.path));
    CHECK_FALSE(w.truncated);
}

TEST_CASE("turn_walk: zero steps returns the start vertex")
{
    auto g = build_ball({3, 7, 2});
    auto w = turn_walk(g, {0, g.neighbor(0, 0)}, WalkRule::label(3), 0);
    CHECK(w.path == std::vector<Vertex>{0});
}

TEST_CASE("turn_walk: +2 on {4,5} radius 10 is self-avoiding")
{
    auto g = build_ball({4, 5, 10});
    auto w = turn_walk(g, {0, g.neighbor(0, 2)}, WalkRule::label(2), 50);
    CHECK(w.path.size() >= 2);
    CHECK(distinct(w.path));
}

TEST_CASE("turn_walk: exhaustive self-avoidance on small balls")
{
    for (auto [p, q, ks] : {std::tuple{3, 7, std::vector<int>{3, -3}}, {4, 5, std::vector<int>{2}}}) {
        auto g = build_ball({p, q, 6});
        for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v)
            for (Vertex w : g.neighbors(v))
                for (int k : ks) {
                    auto r = turn_walk(g, {v, w}, WalkRule::label(k), 200);
                    REQUIRE(distinct(r.path));
                }
    }
}

TEST_CASE("turn_walk: label shifts equal face-count rules")
{
    auto g = build_ball({3, 7, 7});
    for (Vertex w : g.neighbors(0)) {
        CHECK(turn_walk(g, {0, w}, WalkRule::label(3), 100).path ==
              turn_walk(g, {0, w}, WalkRule::faces(Side::right, 3), 100).path);
        CHECK(turn_walk(g, {0, w}, WalkRule::label(-3), 100).path ==
              turn_walk(g, {0, w}, WalkRule::faces(Side::left, 3), 100).path);
    }
    auto h = build_ball({4, 5, 6});
    for (Vertex w : h.neighbors(0))
        CHECK(turn_walk(h, {0, w}, WalkRule::label(2), 100).path ==
              turn_walk(h, {0, w}, WalkRule::faces(Side::right, 2), 100).path);
}

TEST_CASE("turn_walk: stops at the boundary and reports truncation")
{
    auto g = build_ball({3, 7, 3});
    auto w = turn_walk(g, {0, g.neighbor(0, 0)}, WalkRule::label(3), 200);
    CHECK(w.truncated);
    CHECK(g.is_boundary(w.path.back()));
}

TEST_CASE("turn_walk: precondition failures name the vertex")
{
    auto flat = build_ball({4, 4, 5, true});
    CHECK_THROWS_AS(turn_walk(flat, {0, flat.neighbor(0, 0)}, WalkRule::label(3), 10), PreconditionError);
    auto tri = build_ball({3, 7, 4});
    CHECK_THROWS_AS(turn_walk(tri, {0, tri.neighbor(0, 0)}, WalkRule::label(2), 10), PreconditionError);
    // 1 face on the right at a degree-7 triangulated vertex: angle pi/3 < pi.
    CHECK_THROWS_AS(turn_walk(tri, {0, tri.neighbor(0, 0)}, WalkRule::faces(Side::right, 1), 10), PreconditionError);
    CHECK_THROWS_AS(turn_walk(tri, {0, 1000000}, WalkRule::label(3), 10), PreconditionError);
}

TEST_CASE("faces_between")
{
    auto g = build_ball({3, 7, 3});
    const Vertex v = 0;
    const Vertex u = g.neighbor(v, 0);
    CHECK(faces_between(g, v, {u, v}, {v, g.neighbor(v, 1)}, Side::right) == 1);
    CHECK(faces_between(g, v, {u, v}, {v, g.neighbor(v, 1)}, Side::left) == 6);
    CHECK(faces_between(g, v, {u, v}, {v, g.neighbor(v, 3)}, Side::right) == 3);
    auto h = build_ball({4, 5, 3});
    const Vertex x = h.neighbor(0, 0);
    CHECK(faces_between(h, 0, {x, 0}, {0, h.neighbor(0, 2)}, Side::right) == 2);
    CHECK_THROWS_AS(faces_between(g, v, {v, u}, {v, u}, Side::left), PreconditionError);
}

TEST_CASE("WalkRule parsing")
{
    CHECK(WalkRule::parse("+3").shift == 3);
    CHECK(WalkRule::parse("-3").shift == -3);
    CHECK(WalkRule::parse("left:3").side == Side::left);
    CHECK(WalkRule::parse("right:2").count == 2);
    CHECK(WalkRule::parse("+2").str() == "+2");
    CHECK_THROWS_AS(WalkRule::parse("up:3"), PreconditionError);
    CHECK_THROWS_AS(WalkRule::parse("x"), PreconditionError);
}
