#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "hyperperc/curvature.hpp"
#include "hyperperc/errors.hpp"
#include "hyperperc/io.hpp"
#include "hyperperc/tiling.hpp"
#include "oracles.hpp"

using namespace hyperperc;

namespace {

RotationGraph ball(int p, int q, int r, bool flat = false) { return build_ball({p, q, r, flat}); }

std::vector<Vertex> neighbours_of(const RotationGraph& g, Vertex v)
{
    auto nb = g.neighbors(v);
    return {nb.begin(), nb.end()};
}

}  // namespace

TEST_CASE("trace_faces: single triangle has one finite face and one outer face")
{
    auto g = fixtures::triangle();
    const auto& f = g.faces();
    REQUIRE(f.size() == 2);
    int finite = 0;
    for (FaceId i = 0; i < 2; ++i) {
        CHECK(f.degree(i) == 3);
        finite += f.finite(i);
    }
    CHECK(finite == 1);
}

TEST_CASE("trace_faces: square has one finite face of degree 4")
{
    auto g = fixtures::square();
    const auto& f = g.faces();
    int finite = 0;
    for (FaceId i = 0; i < static_cast<FaceId>(f.size()); ++i)
        if (f.finite(i)) {
            ++finite;
            CHECK(f.degree(i) == 4);
        }
    CHECK(finite == 1);
}

TEST_CASE("trace_faces: radius-1 ball of {3,7}")
{
    auto g = ball(3, 7, 1);
    CHECK(g.vertex_count() == 8);
    const auto& f = g.faces();
    int triangles = 0;
    int outer = 0;
    for (FaceId i = 0; i < static_cast<FaceId>(f.size()); ++i) {
        if (f.finite(i)) {
            CHECK(f.degree(i) == 3);
            ++triangles;
        } else {
            ++outer;
        }
    }
    CHECK(triangles == 7);
    CHECK(outer == 1);
}

TEST_CASE("trace_faces partitions half-edges and agrees with an independent trace")
{
    for (auto g : {ball(3, 7, 4), ball(4, 5, 4), ball(4, 4, 5, true), build_reference_tree(2, 3)}) {
        const auto& f = g.faces();
        std::size_t total = 0;
        for (FaceId i = 0; i < static_cast<FaceId>(f.size()); ++i) total += f.degree(i);
        CHECK(total == 2 * g.edge_count());

        auto ref = oracle::faces(g);
        REQUIRE(ref.size() == f.size());
        std::multiset<std::pair<std::vector<Vertex>, bool>> a;
        std::multiset<std::pair<std::vector<Vertex>, bool>> b;
        for (FaceId i = 0; i < static_cast<FaceId>(f.size()); ++i) {
            auto w = f.walk(i);
            std::vector<Vertex> s(w.begin(), w.end());
            std::sort(s.begin(), s.end());
            a.insert({s, f.finite(i)});
        }
        for (auto& r : ref) {
            std::sort(r.walk.begin(), r.walk.end());
            b.insert({r.walk, !r.cut});
        }
        CHECK(a == b);
    }
}

TEST_CASE("finite faces of a {3,7} ball are simple cycles")
{
    auto g = ball(3, 7, 5);
    const auto& f = g.faces();
    for (FaceId i = 0; i < static_cast<FaceId>(f.size()); ++i) {
        if (!f.finite(i)) continue;
        auto w = f.walk(i);
        std::set<Vertex> s(w.begin(), w.end());
        CHECK(s.size() == w.size());
    }
}

TEST_CASE("RotationGraph rejects malformed rotations")
{
    CHECK_THROWS_AS(RotationGraph({{1}, {}}, {false, false}), StructuralError);
    CHECK_THROWS_AS(RotationGraph({{0}}, {false}), StructuralError);
    CHECK_THROWS_AS(RotationGraph({{1, 1}, {0}}, {false, false}), StructuralError);
    CHECK_THROWS_AS(RotationGraph({{5}, {0}}, {false, false}), StructuralError);
}

TEST_CASE("curvature of interior vertices")
{
    CHECK(curvature(ball(4, 4, 3, true), 0) == PiMultiple(0));
    CHECK(curvature(ball(3, 7, 3), 0) == PiMultiple(-1, 3));
    CHECK(curvature(ball(4, 5, 3), 0) == PiMultiple(-1, 2));
    CHECK(to_radians(PiMultiple(-1, 3)) == doctest::Approx(-std::numbers::pi / 3));
}

TEST_CASE("curvature is undefined on the truncation boundary")
{
    auto g = ball(3, 7, 2);
    for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v)
        if (g.is_boundary(v)) {
            CHECK_THROWS_AS(curvature(g, v), PreconditionError);
            break;
        }
}

TEST_CASE("euler_patch_check and gauss_bonnet_deficit on hand examples")
{
    SUBCASE("single triangle")
    {
        auto g = ball(3, 7, 2);
        auto cyc = std::vector<Vertex>{0, g.neighbor(0, 0), g.neighbor(0, 1)};
        auto patch = make_cycle_patch(g, cyc);
        auto e = euler_patch_check(patch);
        CHECK(e.s == 0);
        CHECK(e.m == 1);
        CHECK(e.t == 0);
        CHECK(e.holds);
        CHECK(gauss_bonnet_deficit(g, patch) == PiMultiple(0));
    }
    SUBCASE("7-cycle around the {3,7} centre")
    {
        auto g = ball(3, 7, 2);
        auto patch = make_cycle_patch(g, neighbours_of(g, 0));
        auto e = euler_patch_check(patch);
        CHECK(e.s == 1);
        CHECK(e.m == 7);
        CHECK(e.t == 7);
        CHECK(e.holds);
        CHECK(gauss_bonnet_deficit(g, patch) == PiMultiple(-1, 3));
        CHECK(interior_curvature_sum(g, patch) == PiMultiple(-1, 3));
    }
    SUBCASE("single square in {4,5}")
    {
        auto g = ball(4, 5, 2);
        const auto& f = g.faces();
        auto w = f.walk(g.face_at(0, 0));
        auto patch = make_cycle_patch(g, {w.begin(), w.end()});
        auto e = euler_patch_check(patch);
        CHECK(e.s == 0);
        CHECK(e.m == 1);
        CHECK(e.t == 0);
        CHECK(gauss_bonnet_deficit(g, patch) == PiMultiple(0));
    }
    SUBCASE("square fixture")
    {
        auto g = fixtures::square();
        auto patch = make_cycle_patch(g, {0, 1, 2, 3});
        CHECK(euler_patch_check(patch).holds);
        CHECK(patch.enclosed_faces.size() == 1);
    }
}

TEST_CASE("make_cycle_patch rejects non-cycles")
{
    auto g = ball(3, 7, 2);
    CHECK_THROWS_AS(make_cycle_patch(g, {0, g.neighbor(0, 0)}), PreconditionError);
    CHECK_THROWS_AS(make_cycle_patch(g, {0, g.neighbor(0, 0), 0}), PreconditionError);
    CHECK_THROWS_AS(make_cycle_patch(g, {0, g.neighbor(0, 0), g.neighbor(0, 3)}), PreconditionError);
}

TEST_CASE("graph JSON round-trips byte for byte")
{
    GraphDocument doc;
    doc.graph = ball(4, 5, 3);
    doc.meta = {{"p", 4}, {"q", 5}, {"radius", 3}};
    doc.has_star_edges = true;
    doc.star_edges = {{0, 2}, {1, 3}};
    auto text = write_graph_string(doc);
    auto back = read_graph_string(text);
    CHECK(write_graph_string(back) == text);
    CHECK(back.graph.adjacency() == doc.graph.adjacency());
    CHECK(back.graph.boundary_flags() == doc.graph.boundary_flags());
    CHECK(back.star_edges == doc.star_edges);
    CHECK_THROWS_AS(read_graph_string("{\"format\": \"other\"}"), StructuralError);
    CHECK_THROWS_AS(read_graph_string("not json"), StructuralError);
}
