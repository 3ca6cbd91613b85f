#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "hyperperc/errors.hpp"
#include "hyperperc/tiling.hpp"
#include "hyperperc/tree.hpp"
#include "oracles.hpp"

using namespace hyperperc;

namespace {

// Level sizes from the label grammar alone: type-0 and type-1/2 nodes have
// children {0, 1}, type-1 nodes have {0, 1/2, 1}.
std::vector<std::int64_t> census(int levels)
{
    std::int64_t n0 = 1, nh = 0, n1 = 1;
    std::vector<std::int64_t> out;
    for (int k = 1; k <= levels; ++k) {
        out.push_back(n0 + nh + n1);
        std::int64_t s = n0 + nh + n1;
        nh = n1;
        n0 = s;
        n1 = s;
    }
    return out;
}

std::map<Vertex, int> tree_degrees(const TreeEmbedding& t)
{
    std::map<Vertex, int> deg;
    for (auto [a, b] : t.tree_edges()) {
        ++deg[a];
        ++deg[b];
    }
    return deg;
}

}  // namespace

TEST_CASE("labels")
{
    CHECK(is_legal_label("1h0"));
    CHECK_FALSE(is_legal_label("h"));
    CHECK_FALSE(is_legal_label("0h"));
    CHECK(display_label("1h") == "1,1/2");
    CHECK(child_digits("01") == std::vector<char>{'0', 'h', '1'});
}

TEST_CASE("grow_tree: level sizes on {3,7}")
{
    auto g = build_ball({3, 7, 10}, 5'000'000);
    auto t = grow_tree(g, 0, 0, 1, 6);
    CHECK_FALSE(t.truncated);
    auto sizes = t.level_sizes();
    REQUIRE(sizes.size() == 7);
    CHECK(sizes[0] == 2);
    CHECK(sizes[1] == 5);
    CHECK(sizes[2] == 12);
    CHECK(sizes == census(7));
    auto types = t.level_types();
    for (std::size_t k = 0; k + 1 < types.size(); ++k) {
        auto [n0, nh, n1] = types[k];
        auto s = n0 + nh + n1;
        CHECK(types[k + 1] == std::array<std::int64_t, 3>{s, n1, s});
    }
}

TEST_CASE("grow_tree: degree profile and legal labels")
{
    auto g = build_ball({3, 7, 10}, 5'000'000);
    for (int slot = 0; slot < 7; ++slot) {
        auto t = grow_tree(g, 0, slot, 1, 5);
        auto deg = tree_degrees(t);
        CHECK(deg[t.root] == 2);
        for (const auto& n : t.nodes) {
            CHECK(is_legal_label(n.label));
            CHECK(g.adjacent(n.vertex, n.parent >= 0 ? t.nodes[n.parent].vertex : g.neighbor(n.vertex, 0)));
            if (n.parent >= 0 && !n.children.empty()) CHECK((deg[n.vertex] == 3 || deg[n.vertex] == 4));
        }
        // a tree: |E| = |V| - 1 and all vertices distinct
        auto vs = t.vertices();
        CHECK(std::set<Vertex>(vs.begin(), vs.end()).size() == vs.size());
        CHECK(t.tree_edges().size() + 1 == vs.size());
    }
}

TEST_CASE("grow_tree: depth cap 0")
{
    auto g = build_ball({3, 7, 4});
    auto t = grow_tree(g, 0, 0, 1, 0);
    CHECK(t.nodes.size() == 3);
    CHECK(t.tree_edges().size() == 2);
    CHECK(*t.vertex_of("0") == g.neighbor(0, 0));
    CHECK(*t.vertex_of("1") == g.neighbor(0, 1));
}

TEST_CASE("grow_tree: paths pi_1, pi_10, pi_1h meet only at v_1")
{
    auto g = build_ball({3, 7, 11}, 5'000'000);
    auto t = grow_tree(g, 0, 0, 1, 7);
    const Vertex v1 = *t.vertex_of("1");
    auto p1 = t.path("1");
    auto p10 = t.path("10");
    auto p1h = t.path("1h");
    CHECK(p1.size() > 5);
    for (auto* a : {&p1, &p10, &p1h})
        for (auto* b : {&p1, &p10, &p1h}) {
            if (a == b) continue;
            std::set<Vertex> x(a->begin(), a->end());
            std::vector<Vertex> both;
            for (Vertex y : *b)
                if (x.count(y)) both.push_back(y);
            CHECK(both == std::vector<Vertex>{v1});
        }
}

TEST_CASE("grow_tree: condition 2 on {4,5}")
{
    auto g = build_ball({4, 5, 12}, 5'000'000);
    auto t = grow_tree(g, 0, 0, 2, 5);
    CHECK(t.level_sizes() == census(6));
    CHECK_THROWS_AS(grow_tree(g, 0, 0, 1, 3), PreconditionError);
    auto tri = build_ball({3, 7, 3});
    CHECK_THROWS_AS(grow_tree(tri, 0, 0, 2, 1), PreconditionError);
}

TEST_CASE("grow_tree: truncation at the boundary")
{
    auto g = build_ball({3, 7, 3});
    auto t = grow_tree(g, 0, 0, 1, 10);
    CHECK(t.truncated);
    for (const auto& n : t.nodes)
        if (n.truncated) CHECK(n.children.empty());
}

TEST_CASE("tree_pc matches power iteration and the closed-form chain")
{
    auto m = label_type_matrix();
    CHECK(m == TypeMatrix{{{1, 0, 1}, {1, 0, 1}, {1, 1, 1}}});
    auto r = tree_pc(m);
    std::vector<std::vector<double>> mm(3, std::vector<double>(3));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) mm[i][j] = m[i][j];
    const double lambda = oracle::perron_power_iteration(mm);
    CHECK(std::abs(r.pc - 1.0 / lambda) < 1e-12);
    CHECK(std::abs(r.pc - (std::sqrt(2.0) - 1.0)) < 1e-12);
    CHECK(r.pc <= r.closed_form_bound);
    CHECK(r.closed_form_bound == doctest::Approx(0.436790).epsilon(1e-6));
    CHECK(r.closed_form_bound < 0.5);

    auto g = build_ball({3, 7, 9}, 5'000'000);
    CHECK(observed_type_matrix(grow_tree(g, 0, 0, 1, 4)) == m);
}

TEST_CASE("build_chandelier")
{
    auto g = build_ball({3, 7, 10}, 5'000'000);
    for (Vertex root : {Vertex{0}, Vertex{5}, Vertex{30}}) {
        auto l = build_chandelier(g, root, Side::left, 4);
        auto r = build_chandelier(g, root, Side::right, 4);
        CHECK(l.v1 == r.v1);
        const int a = g.slot_of(l.v1, root);
        CHECK(l.v2 == g.neighbor(l.v1, a - 3));
        CHECK(r.v2 == g.neighbor(l.v1, a + 3));
        CHECK(faces_between(g, l.v1, {root, l.v1}, {l.v1, l.v2}, Side::left) == 3);
        CHECK(faces_between(g, r.v1, {root, r.v1}, {r.v1, r.v2}, Side::right) == 3);
        CHECK(l.l1.front() == l.v2);
        CHECK(l.l2.front() == l.v2);
    }
    auto c = build_chandelier(g, 0, Side::left, 0);
    CHECK(c.subtree.nodes.size() == 3);
    CHECK(c.vertices().size() == 5);

    auto small = build_ball({3, 7, 1});
    CHECK_THROWS_AS(build_chandelier(small, 0, Side::left, 2), ResourceError);
}

TEST_CASE("build_chandelier: left and right spines are mirror images")
{
    auto g = build_ball({3, 7, 8});
    std::vector<std::vector<Vertex>> rev(g.vertex_count());
    std::vector<bool> bnd(g.vertex_count());
    for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v) {
        auto nb = g.neighbors(v);
        rev[v].assign(nb.rbegin(), nb.rend());
        bnd[v] = g.is_boundary(v);
    }
    RotationGraph mirror(rev, bnd);
    for (Vertex root = 0; root < 20; ++root) {
        for (Vertex v1 : g.neighbors(root)) {
            auto l = build_chandelier(g, {root, v1}, Side::left, 3);
            auto r = build_chandelier(mirror, {root, v1}, Side::right, 3);
            CHECK(l.root == r.root);
            CHECK(l.v1 == r.v1);
            CHECK(l.v2 == r.v2);
        }
    }
}

TEST_CASE("chandelier_sequence")
{
    auto g = build_ball({3, 7, 12}, 5'000'000);
    auto dist = bfs_distances(g, 0);
    SUBCASE("length 1 gives nothing")
    {
        std::vector<Vertex> geo{0, g.neighbor(0, 0)};
        auto s = chandelier_sequence(g, geo, 3);
        CHECK(s.left.empty());
        CHECK(s.right.empty());
        CHECK(s.pair_count() == 0);
    }
    SUBCASE("random geodesics through the centre region")
    {
        std::mt19937_64 rng(7);
        int done = 0;
        while (done < 10) {
            Vertex a = static_cast<Vertex>(rng() % g.vertex_count());
            Vertex b = static_cast<Vertex>(rng() % g.vertex_count());
            if (dist[a] > 6 || dist[b] > 6) continue;
            auto geo = shortest_path(g, a, b);
            const int d = static_cast<int>(geo.size()) - 1;
            if (d < 6) continue;
            auto s = chandelier_sequence(g, geo, 3);
            CHECK(s.pair_count() >= d / 3 - 1);
            ++done;
        }
    }
    SUBCASE("rejects non-geodesics")
    {
        std::vector<Vertex> around{g.neighbor(0, 0), g.neighbor(0, 1), g.neighbor(0, 2), g.neighbor(0, 3)};
        CHECK_THROWS_AS(chandelier_sequence(g, around, 2), PreconditionError);
        std::vector<Vertex> broken{0, g.neighbor(0, 0), 0};
        CHECK_THROWS_AS(chandelier_sequence(g, broken, 2), PreconditionError);
    }
}
