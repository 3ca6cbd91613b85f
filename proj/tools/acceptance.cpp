// Acceptance run: one PASS/FAIL line per criterion, exit status 0 only if all pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <boost/rational.hpp>

#include "hyperperc/critical.hpp"
#include "hyperperc/curvature.hpp"
#include "hyperperc/errors.hpp"
#include "hyperperc/matching.hpp"
#include "hyperperc/percolation.hpp"
#include "hyperperc/tiling.hpp"
#include "hyperperc/tree.hpp"
#include "hyperperc/walks.hpp"

using namespace hyperperc;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::uint64_t edge_key(Vertex a, Vertex b)
{
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
}

FaceId face_across(const RotationGraph& g, Vertex a, Vertex b) { return g.face_at(b, g.slot_of(b, a)); }

// ------------------------------------------------------------------ 1

Outcome self_avoidance()
{
    struct Job {
        TilingSpec spec;
        std::vector<int> shifts;
    };
    std::int64_t walks = 0, bad = 0, longest = 0;
    std::string first_bad;
    for (const Job& job : {Job{{3, 7, 8}, {3, -3}}, Job{{4, 5, 8}, {2, -2}}}) {
        auto g = build_ball(job.spec);
        for (int shift : job.shifts) {
            const auto rule = WalkRule::label(shift);
            for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v) {
                if (g.is_boundary(v)) continue;
                for (Vertex w : g.neighbors(v)) {
                    ++walks;
                    bool ok = true;
                    try {
                        auto r = turn_walk(g, {v, w}, rule, 200);
                        std::unordered_set<Vertex> seen(r.path.begin(), r.path.end());
                        ok = seen.size() == r.path.size();
                        longest = std::max<std::int64_t>(longest, static_cast<std::int64_t>(r.path.size()) - 1);
                    } catch (const std::exception& e) {
                        ok = false;
                    }
                    if (!ok && bad++ == 0)
                        first_bad = fmt(" first failure {%d,%d} shift %d from %d->%d", job.spec.p, job.spec.q, shift,
                                        v, w);
                }
            }
        }
    }
    return {bad == 0, fmt("%lld walks, %lld with a repeated vertex, longest %lld steps (patch-limited)%s",
                          static_cast<long long>(walks), static_cast<long long>(bad),
                          static_cast<long long>(longest), first_bad.c_str())};
}

// ------------------------------------------------------------------ 2

using Q = boost::rational<std::int64_t>;

// Random edge-connected set of faces whose boundary is one simple cycle.
struct Animal {
    std::vector<FaceId> faces;
    std::vector<Vertex> cycle;
};

std::optional<Animal> grow_animal(const RotationGraph& g, const std::vector<char>& good, FaceId seed, int target,
                                  std::mt19937_64& rng)
{
    const auto& ft = g.faces();
    std::vector<FaceId> faces{seed};
    std::unordered_set<FaceId> in{seed};
    for (int tries = 0; static_cast<int>(faces.size()) < target && tries < 20 * target; ++tries) {
        FaceId f = faces[rng() % faces.size()];
        auto w = ft.walk(f);
        std::size_t j = rng() % w.size();
        FaceId h = face_across(g, w[j], w[(j + 1) % w.size()]);
        if (good[h] && in.insert(h).second) faces.push_back(h);
    }
    // Boundary edges, directed with the animal on the left.
    std::unordered_map<Vertex, std::vector<Vertex>> next;
    std::size_t boundary_edges = 0;
    for (FaceId f : faces) {
        auto w = ft.walk(f);
        for (std::size_t j = 0; j < w.size(); ++j) {
            Vertex a = w[j], b = w[(j + 1) % w.size()];
            if (in.count(face_across(g, a, b))) continue;
            next[a].push_back(b);
            ++boundary_edges;
        }
    }
    for (auto& [v, out] : next)
        if (out.size() != 1) return std::nullopt;
    Animal an;
    Vertex start = next.begin()->first, cur = start;
    do {
        an.cycle.push_back(cur);
        cur = next[cur][0];
    } while (cur != start && an.cycle.size() <= boundary_edges);
    if (an.cycle.size() != boundary_edges) return std::nullopt;
    an.faces = std::move(faces);
    return an;
}

Outcome gauss_bonnet()
{
    const int per_tiling = 10000;
    std::int64_t cycles = 0, failures = 0, single_face = 0, single_face_equal = 0, rejected = 0;
    std::mt19937_64 rng(20261017);
    std::string first_bad;
    for (TilingSpec spec : {TilingSpec{3, 7, 6}, TilingSpec{4, 5, 6}}) {
        auto g = build_ball(spec);
        const auto& ft = g.faces();
        auto dist = bfs_distances(g, Vertex{0});
        std::vector<char> good(ft.size(), 0);
        std::vector<FaceId> good_list;
        for (FaceId f = 0; f < static_cast<FaceId>(ft.size()); ++f) {
            if (!ft.finite(f)) continue;
            auto w = ft.walk(f);
            if (std::all_of(w.begin(), w.end(), [&](Vertex x) { return dist[x] <= spec.radius - 2; })) {
                good[f] = 1;
                good_list.push_back(f);
            }
        }
        int accepted = 0;
        while (accepted < per_tiling) {
            const int target = 1 + static_cast<int>(rng() % 40);
            auto an = grow_animal(g, good, good_list[rng() % good_list.size()], target, rng);
            if (!an) {
                ++rejected;
                continue;
            }
            ++accepted;
            ++cycles;
            bool ok = true;
            try {
                auto patch = make_cycle_patch(g, an->cycle);
                // Oracle counts straight from the animal.
                std::set<FaceId> mine(an->faces.begin(), an->faces.end());
                std::set<FaceId> theirs(patch.enclosed_faces.begin(), patch.enclosed_faces.end());
                std::unordered_set<Vertex> on_cycle(an->cycle.begin(), an->cycle.end());
                std::unordered_set<Vertex> inner;
                std::unordered_set<std::uint64_t> cycle_edges, inner_edges;
                for (std::size_t i = 0; i < an->cycle.size(); ++i)
                    cycle_edges.insert(edge_key(an->cycle[i], an->cycle[(i + 1) % an->cycle.size()]));
                for (FaceId f : an->faces) {
                    auto w = ft.walk(f);
                    for (std::size_t j = 0; j < w.size(); ++j) {
                        if (!on_cycle.count(w[j])) inner.insert(w[j]);
                        auto k = edge_key(w[j], w[(j + 1) % w.size()]);
                        if (!cycle_edges.count(k)) inner_edges.insert(k);
                    }
                }
                const auto s = static_cast<std::int64_t>(inner.size());
                const auto m = static_cast<std::int64_t>(an->faces.size());
                const auto t = static_cast<std::int64_t>(inner_edges.size());
                auto e = euler_patch_check(patch);
                ok = ok && mine == theirs && e.holds && e.s == s && e.m == m && e.t == t && s + m - t == 1;

                Q angle_sum = 0;
                for (Vertex z : an->cycle)
                    for (int k = 0; k < g.degree(z); ++k) {
                        FaceId f = g.face_at(z, k);
                        if (mine.count(f)) angle_sum += Q(ft.degree(f) - 2, ft.degree(f));
                    }
                const Q deficit = angle_sum - Q(static_cast<std::int64_t>(an->cycle.size()) - 2);
                Q curvature_sum = 0;
                for (Vertex z : inner) {
                    Q k = 2;
                    for (int j = 0; j < g.degree(z); ++j) {
                        const int d = ft.degree(g.face_at(z, j));
                        k -= Q(d - 2, d);
                    }
                    curvature_sum += k;
                }
                const auto lib = gauss_bonnet_deficit(g, patch);
                ok = ok && lib == deficit && deficit <= Q(0) && deficit == curvature_sum;
                if (m == 1) {
                    ++single_face;
                    if (lib == PiMultiple(0)) ++single_face_equal;
                    ok = ok && lib == PiMultiple(0);
                }
            } catch (const std::exception& e) {
                ok = false;
            }
            if (!ok && failures++ == 0) first_bad = fmt(" first failure on {%d,%d}", spec.p, spec.q);
        }
    }
    return {failures == 0 && single_face > 0 && single_face_equal == single_face,
            fmt("%lld cycles on {3,7} and {4,5}, %lld failures, equality on %lld/%lld single-face cycles, %lld "
                "non-disk draws rejected%s",
                static_cast<long long>(cycles), static_cast<long long>(failures),
                static_cast<long long>(single_face_equal), static_cast<long long>(single_face),
                static_cast<long long>(rejected), first_bad.c_str())};
}

// ------------------------------------------------------------------ 3

Outcome tree_structure()
{
    // Hand-written type transitions (0, 1/2, 1): 0 -> {0,1}, 1/2 -> {0,1}, 1 -> {0,1/2,1}.
    const std::array<std::array<int, 3>, 3> hand{{{1, 0, 1}, {1, 0, 1}, {1, 1, 1}}};
    auto census = [&](int levels) {
        std::vector<std::int64_t> sizes;
        std::array<std::int64_t, 3> cur{1, 0, 1};
        for (int k = 0; k < levels; ++k) {
            sizes.push_back(cur[0] + cur[1] + cur[2]);
            std::array<std::int64_t, 3> nxt{0, 0, 0};
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) nxt[j] += cur[i] * hand[i][j];
            cur = nxt;
        }
        return sizes;
    };

    auto g = build_ball({3, 7, 10});
    auto dist = bfs_distances(g, Vertex{0});
    int trees = 0, bad = 0;
    std::vector<std::int64_t> shown;
    for (Vertex root = 0; root < static_cast<Vertex>(g.vertex_count()) && dist[root] <= 1; ++root) {
        for (int slot = 0; slot < g.degree(root); ++slot) {
            ++trees;
            auto t = grow_tree(g, root, slot, 1, 6);
            auto sizes = t.level_sizes();
            auto expect = census(static_cast<int>(sizes.size()));
            bool ok = !t.truncated && sizes.size() == 7 && sizes == expect;
            std::unordered_set<Vertex> distinct;
            std::unordered_map<Vertex, int> deg;
            for (const auto& n : t.nodes) distinct.insert(n.vertex);
            ok = ok && distinct.size() == t.nodes.size();
            for (auto [a, b] : t.tree_edges()) {
                ok = ok && g.adjacent(a, b);
                ++deg[a];
                ++deg[b];
            }
            for (const auto& n : t.nodes) {
                const int d = deg[n.vertex];
                if (n.parent < 0) ok = ok && d == 2;
                else if (!n.children.empty()) ok = ok && (d == 3 || d == 4) && d == 1 + static_cast<int>(n.children.size());
                else ok = ok && d == 1;
            }
            auto obs = observed_type_matrix(t);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) ok = ok && obs[i][j] == hand[i][j];
            if (!ok) ++bad;
            if (shown.empty()) shown = sizes;
        }
    }

    // Power iteration oracle for the Perron root.
    std::array<double, 3> x{1, 1, 1};
    double lambda = 0;
    for (int it = 0; it < 2000; ++it) {
        std::array<double, 3> y{0, 0, 0};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) y[i] += hand[i][j] * x[j];
        const double norm = std::max({y[0], y[1], y[2]});
        lambda = norm;
        for (int i = 0; i < 3; ++i) x[i] = y[i] / norm;
    }
    const auto pc = tree_pc();
    const double bound = std::pow(2.0, -2.0 / 3.0) * std::pow(3.0, -1.0 / 3.0);
    const bool pc_ok = std::abs(pc.pc - 1.0 / lambda) <= 1e-12 && std::abs(pc.pc - (std::sqrt(2.0) - 1)) <= 1e-12 &&
                       pc.pc <= pc.closed_form_bound && std::abs(pc.closed_form_bound - bound) <= 1e-15 &&
                       pc.closed_form_bound < 0.5;
    std::ostringstream census_text;
    for (std::size_t i = 0; i < shown.size(); ++i) census_text << (i ? "," : "") << shown[i];
    return {bad == 0 && pc_ok,
            fmt("%d trees (roots in B(0,1), every start slot), %d bad; census %s; p_c(T) = %.15f, power iteration "
                "%.15f, bound %.5f",
                trees, bad, census_text.str().c_str(), pc.pc, 1.0 / lambda, pc.closed_form_bound)};
}

// ------------------------------------------------------------------ 4

Outcome coexistence()
{
    auto g = build_ball({3, 7, 8});
    const auto adj = view(g);
    const int n = 1000;
    int both = 0;
    for (int i = 0; i < n; ++i) {
        auto conf = sample(g, 0.5, 4, static_cast<std::uint64_t>(i));
        auto lab = label_clusters(adj, conf);
        if (boundary_cluster_count(g, lab, 2, 1) > 0 && boundary_cluster_count(g, lab, 2, 0) > 0) ++both;
    }
    const double frac = static_cast<double>(both) / n;
    return {frac >= 0.9, fmt("proxy: {3,7} R=8, p=1/2, %d samples; both states cross core(2)->boundary in %.4f "
                             "(threshold 0.9)",
                             n, frac)};
}

// ------------------------------------------------------------------ 5

Outcome decay()
{
    const std::int64_t n = 20000;
    auto g = build_ball({3, 7, 10});
    MatchingGraph mg(g);
    auto pairs = auto_pair_schedule(mg);
    std::string text = "proxy:";
    bool ok = true;
    for (auto variant : {DecayVariant::point_graph, DecayVariant::point_star, DecayVariant::boundary_star}) {
        auto fit = decay_fit(mg, 0.5, pairs, variant, n, 11, 1);
        const bool here = fit.slope < 0 && fit.ci_excludes_zero();
        ok = ok && here;
        text += fmt(" {3,7} %s slope %.4f CI [%.4f, %.4f];", to_string(variant).c_str(), fit.slope, fit.ci_low,
                    fit.ci_high);
    }
    TilingSpec flat{4, 4, 40};
    flat.allow_unsupported = true;
    auto h = build_ball(flat);
    MatchingGraph mh(h);
    auto control = decay_fit(mh, 0.7, auto_pair_schedule(mh), DecayVariant::point_graph, n, 11, 1);
    const bool control_ok = !control.ci_excludes_zero();
    text += fmt(" control {4,4} R=40 p=0.7 slope %.5f CI [%.5f, %.5f] %s", control.slope, control.ci_low,
                control.ci_high, control_ok ? "contains 0" : "excludes 0");
    return {ok && control_ok, text};
}

// ------------------------------------------------------------------ 6

Outcome phi_oracle()
{
    bool ok = true;
    int paths_ok = 0;
    for (int n = 1; n <= 10; ++n) {
        auto g = fixtures::path(2 * n + 3);
        auto f = phi_exact(g, ball_region(g, n + 1, n)).to_polynomial();
        std::vector<BigInt> c(n + 1, 0);
        c[n] = 2;
        if (f == Polynomial(c)) ++paths_ok;
    }
    ok = paths_ok == 10;

    auto g = build_ball({3, 7, 6});
    int mc_checks = 0, mc_ok = 0, mono_ok = 0, regions = 0;
    double worst = 0;
    for (Vertex v : {Vertex{0}, Vertex{1}}) {
        auto r = ball_region(g, v, 3);
        auto exact = phi_exact(g, r);
        ++regions;
        bool mono = true;
        Rational prev = -1;
        for (int k = 0; k <= 100; ++k) {
            Rational cur = exact(Rational(k, 100));
            mono = mono && cur >= prev;
            prev = cur;
        }
        if (mono) ++mono_ok;
        for (double p : {0.1, 0.3, 0.5}) {
            auto e = phi_monte_carlo(g, p, r, 20000, 5, 1);
            const double z = std::abs(e.mean - exact(p)) / e.std_error;
            worst = std::max(worst, z);
            ++mc_checks;
            if (z <= 3) ++mc_ok;
        }
    }
    ok = ok && mc_ok == mc_checks && mono_ok == regions;
    return {ok, fmt("2p^n on paths %d/10; MC within 3 sigma of exact %d/%d on {3,7} B(v,3) (|S°|=29, worst %.2f "
                    "sigma); monotone on k/100 grid %d/%d",
                    paths_ok, mc_ok, mc_checks, worst, mono_ok, regions)};
}

// ------------------------------------------------------------------ 7

std::vector<std::pair<std::string, RotationGraph>> russo_corpus()
{
    std::vector<std::pair<std::string, RotationGraph>> out;
    for (int n = 2; n <= 16; ++n) out.emplace_back("path" + std::to_string(n), fixtures::path(n));
    for (int n = 3; n <= 16; ++n) out.emplace_back("cycle" + std::to_string(n), fixtures::cycle(n));
    for (int k = 1; k <= 15; ++k) out.emplace_back("star" + std::to_string(k), fixtures::star(k));
    for (auto [p, q] : std::vector<std::pair<int, int>>{{3, 7}, {3, 8}, {4, 5}, {4, 6}, {5, 5}}) {
        auto g = build_ball({p, q, 1});
        if (g.vertex_count() <= 16) out.emplace_back(fmt("{%d,%d} R=1", p, q), std::move(g));
    }
    return out;
}

Outcome russo()
{
    std::int64_t cases = 0, failed = 0, exact_cases = 0, exact_failed = 0;
    double worst = 1e9;
    std::string worst_case;
    for (auto& [name, g] : russo_corpus()) {
        for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v) {
            auto dist = bfs_distances(g, v);
            std::set<std::vector<Vertex>> seen;
            for (int r = 0; r <= 3; ++r) {
                std::vector<Vertex> lambda;
                for (std::size_t x = 0; x < dist.size(); ++x)
                    if (dist[x] >= 0 && dist[x] <= r) lambda.push_back(static_cast<Vertex>(x));
                if (!seen.insert(lambda).second) continue;
                auto rep = russo_inequality_check(g, v, lambda);
                ++cases;
                if (!rep.all_hold) ++failed;
                if (rep.min_margin < worst) {
                    worst = rep.min_margin;
                    worst_case = fmt("%s v=%d Lambda=B(v,%d)", name.c_str(), v, r);
                }
                if (lambda.size() <= static_cast<std::size_t>(kMaxRussoSubsetLambda)) {
                    auto full = russo_inequality_check(g, v, lambda, {}, 3, RussoFamily::all_subsets);
                    ++exact_cases;
                    if (!full.all_hold) ++exact_failed;
                }
            }
        }
    }
    return {failed == 0,
            fmt("ball-restricted inf: %lld/%lld cases hold, worst margin %.4f at %s; exact inf over all S "
                "(|Lambda|<=12): %lld/%lld hold",
                static_cast<long long>(cases - failed), static_cast<long long>(cases), worst, worst_case.c_str(),
                static_cast<long long>(exact_cases - exact_failed), static_cast<long long>(exact_cases))};
}

// ------------------------------------------------------------------ 8

Outcome contour()
{
    auto g = build_ball({3, 7, 8});
    MatchingGraph mg(g);
    const auto& ft = g.faces();
    const int n = 1000;
    std::int64_t clusters = 0, bad = 0;
    std::string first_bad;
    std::vector<char> region(ft.size(), 0);
    std::vector<FaceId> touched;
    for (int i = 0; i < n; ++i) {
        auto conf = sample(g, 0.7, 8, static_cast<std::uint64_t>(i));
        auto lab = label_clusters(mg.view(), conf);
        std::vector<std::vector<Vertex>> members(lab.clusters.size());
        for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v) members[lab.label[v]].push_back(v);
        for (std::size_t k = 0; k < members.size(); ++k) {
            const auto& xi = members[k];
            if (lab.clusters[k].state != 0) continue;
            if (std::any_of(xi.begin(), xi.end(), [&](Vertex v) { return mg.partial(v); })) continue;
            ++clusters;
            bool ok = true;
            std::string why;
            try {
                auto ob = outer_boundary(mg, conf, xi);
                const auto& w = ob.walk;
                std::unordered_set<Vertex> in_xi(xi.begin(), xi.end());
                ok = !w.empty();
                for (std::size_t j = 0; ok && j < w.size(); ++j) {
                    const Vertex a = w[j], b = w[(j + 1) % w.size()];
                    bool star_adjacent = false;
                    for (Vertex x : mg.neighbors(a)) star_adjacent = star_adjacent || in_xi.count(x);
                    ok = conf.states[a] == 1 && star_adjacent && (w.size() == 1 || g.adjacent(a, b));
                    if (!ok) why = "walk vertex not open, not star-adjacent to xi, or step not an edge";
                }
                // Enclosure: flood faces from the left of the walk without crossing it.
                std::unordered_set<std::uint64_t> cut;
                for (std::size_t j = 0; j < w.size(); ++j) cut.insert(edge_key(w[j], w[(j + 1) % w.size()]));
                for (FaceId f : touched) region[f] = 0;
                touched.clear();
                std::vector<FaceId> stack;
                for (std::size_t j = 0; ok && j < w.size(); ++j) {
                    FaceId f = g.face_at(w[j], g.slot_of(w[j], w[(j + 1) % w.size()]));
                    if (!region[f]) {
                        region[f] = 1;
                        touched.push_back(f);
                        stack.push_back(f);
                    }
                }
                bool bounded = true;
                while (ok && !stack.empty()) {
                    FaceId f = stack.back();
                    stack.pop_back();
                    if (!ft.finite(f)) {
                        bounded = false;
                        break;
                    }
                    auto fw = ft.walk(f);
                    for (std::size_t j = 0; j < fw.size(); ++j) {
                        const Vertex a = fw[j], b = fw[(j + 1) % fw.size()];
                        if (cut.count(edge_key(a, b))) continue;
                        FaceId h = face_across(g, a, b);
                        if (!region[h]) {
                            region[h] = 1;
                            touched.push_back(h);
                            stack.push_back(h);
                        }
                    }
                }
                if (ok && !bounded) {
                    ok = false;
                    why = "left side of the walk is unbounded";
                }
                for (Vertex x : xi)
                    for (int s = 0; ok && s < g.degree(x); ++s)
                        if (!region[g.face_at(x, s)]) {
                            ok = false;
                            why = "a face at xi lies outside the walk";
                        }
                if (ok && static_cast<std::int64_t>(touched.size()) != ob.enclosed_faces) {
                    ok = false;
                    why = "enclosed face count disagrees with the flood";
                }
            } catch (const std::exception& e) {
                ok = false;
                why = e.what();
            }
            if (!ok && bad++ == 0) first_bad = fmt(" first failure sample %d: %s", i, why.c_str());
        }
    }
    return {bad == 0 && clusters > 0,
            fmt("proxy: {3,7} R=8, p=0.7, %d samples; %lld finite interior closed star-clusters, %lld failures%s", n,
                static_cast<long long>(clusters), static_cast<long long>(bad), first_bad.c_str())};
}

// ------------------------------------------------------------------ 9

Outcome chandeliers()
{
    auto g = build_ball({3, 7, 14}, 5'000'000);
    auto dist = bfs_distances(g, Vertex{0});
    std::vector<Vertex> inner;
    for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v)
        if (dist[v] <= 12) inner.push_back(v);
    std::mt19937_64 rng(14);
    int done = 0, bad = 0, min_slack = 1 << 30;
    std::int64_t built = 0, empty = 0, cross_shared = 0;
    std::string first_bad;
    while (done < 100) {
        Vertex a = inner[rng() % inner.size()], b = inner[rng() % inner.size()];
        auto geo = shortest_path(g, a, b);
        const int d = static_cast<int>(geo.size()) - 1;
        if (d < 15 || d > 25) continue;
        ++done;
        bool ok = true;
        std::string why;
        try {
            auto seq = chandelier_sequence(g, geo, 3);
            built += static_cast<std::int64_t>(seq.left.size() + seq.right.size());
            empty += seq.empty_left + seq.empty_right;
            auto disjoint = [](const Chandelier& x, const Chandelier& y) {
                auto a = x.vertices(), b = y.vertices();
                std::vector<Vertex> common;
                std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
                return common.empty();
            };
            for (const auto* side : {&seq.left, &seq.right})
                for (std::size_t i = 0; i < side->size(); ++i)
                    for (std::size_t j = i + 1; j < side->size(); ++j)
                        if (!disjoint((*side)[i], (*side)[j])) {
                            ok = false;
                            why = "same-side chandeliers intersect";
                        }
            // Opposite sides may share a geodesic vertex (a common root), nothing else.
            std::unordered_set<Vertex> on_geo(geo.begin(), geo.end());
            for (const auto& l : seq.left)
                for (const auto& r : seq.right) {
                    auto x = l.vertices(), y = r.vertices();
                    std::vector<Vertex> common;
                    std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(common));
                    if (!common.empty()) ++cross_shared;
                    for (Vertex c : common)
                        if (!on_geo.count(c)) {
                            ok = false;
                            why = "opposite-side chandeliers meet off the geodesic";
                        }
                }
            std::vector<const Chandelier*> family;
            for (auto [l, r] : seq.alternating) {
                family.push_back(&seq.left[l]);
                family.push_back(&seq.right[r]);
            }
            for (std::size_t i = 0; i < family.size(); ++i)
                for (std::size_t j = i + 1; j < family.size(); ++j)
                    if (!disjoint(*family[i], *family[j])) {
                        ok = false;
                        why = "alternating family intersects";
                    }
            const int slack = seq.pair_count() - (d / 3 - 1);
            min_slack = std::min(min_slack, slack);
            if (slack < 0) {
                ok = false;
                why = fmt("pair count %d < floor(%d/3) - 1", seq.pair_count(), d);
            }
        } catch (const std::exception& e) {
            ok = false;
            why = e.what();
        }
        if (!ok && bad++ == 0) first_bad = " first failure: " + why;
    }
    return {bad == 0, fmt("{3,7} R=14 (%zu vertices), 100 geodesics of length 15-25, %lld chandeliers built, %lld "
                          "ran off the patch, %d failures, min slack over floor(d/3)-1: %d, opposite-side pairs sharing only a "
                          "geodesic vertex: %lld%s",
                          g.vertex_count(), static_cast<long long>(built), static_cast<long long>(empty), bad,
                          min_slack, static_cast<long long>(cross_shared), first_bad.c_str())};
}

// ------------------------------------------------------------------ 10

Outcome matching_graph()
{
    bool ok = true;
    std::string text;
    // Oracle: u ~* w iff adjacent in G or on a common finite face.
    auto oracle_ok = [](const RotationGraph& g, const MatchingGraph& mg) {
        const auto& ft = g.faces();
        std::vector<std::set<Vertex>> nb(g.vertex_count());
        for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v)
            for (Vertex w : g.neighbors(v)) nb[v].insert(w);
        for (FaceId f = 0; f < static_cast<FaceId>(ft.size()); ++f) {
            if (!ft.finite(f)) continue;
            auto w = ft.walk(f);
            for (Vertex a : w)
                for (Vertex b : w)
                    if (a != b) nb[a].insert(b);
        }
        for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v) {
            auto list = mg.neighbors(v);
            std::set<Vertex> got(list.begin(), list.end());
            if (got.size() != list.size() || got.count(v) || got != nb[v]) return false;
            for (Vertex w : list)
                if (!mg.adjacent(w, v)) return false;
        }
        return true;
    };
    for (TilingSpec spec : {TilingSpec{3, 7, 7}, TilingSpec{3, 8, 6}}) {
        auto g = build_ball(spec);
        MatchingGraph mg(g);
        const bool here = mg.star_edges().empty() && oracle_ok(g, mg);
        ok = ok && here;
        text += fmt("{%d,%d}: G*=G %s; ", spec.p, spec.q, here ? "yes" : "NO");
    }
    for (TilingSpec spec : {TilingSpec{4, 5, 7}, TilingSpec{5, 4, 5, true}, TilingSpec{4, 6, 5}}) {
        auto g = build_ball(spec);
        MatchingGraph mg(g);
        std::map<int, std::int64_t> interior_degrees;
        for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v)
            if (!mg.partial(v)) ++interior_degrees[mg.degree(v)];
        const bool sym = oracle_ok(g, mg);
        bool degree_ok = true;
        if (spec.p == 4 && spec.q == 5) degree_ok = interior_degrees.size() == 1 && interior_degrees.count(10);
        ok = ok && sym && degree_ok && !interior_degrees.empty();
        std::string hist;
        for (auto [d, c] : interior_degrees) hist += fmt("%d:%lld ", d, static_cast<long long>(c));
        text += fmt("{%d,%d}: symmetric/simple/oracle %s, interior degrees %s; ", spec.p, spec.q, sym ? "yes" : "NO",
                    hist.c_str());
    }
    return {ok, text};
}

}  // namespace

int main()
{
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {"self-avoidance of turn walks", self_avoidance},
        {"Gauss-Bonnet on sampled cycles", gauss_bonnet},
        {"embedded tree census and p_c(T)", tree_structure},
        {"coexistence at p = 1/2", coexistence},
        {"exponential decay of connections", decay},
        {"phi oracle equivalence", phi_oracle},
        {"Russo-type inequality", russo},
        {"outer-boundary contours", contour},
        {"chandelier disjointness", chandeliers},
        {"matching graph structure", matching_graph},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!o.pass) ++failures;
        std::printf("%s  %2zu  %-34s %7.1fs  %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, secs,
                    o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
