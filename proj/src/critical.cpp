#include "hyperperc/critical.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_map>

#include <Eigen/Dense>

#include "hyperperc/errors.hpp"
#include "hyperperc/parallel.hpp"

namespace hyperperc {

bool PhiRegion::v_interior() const { return std::binary_search(interior.begin(), interior.end(), v); }

PhiRegion make_region(const RotationGraph& g, Vertex v, std::vector<Vertex> vertices, bool respect_boundary_flags)
{
    const auto n = g.vertex_count();
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    std::vector<std::uint8_t> in(n, 0);
    for (Vertex x : vertices) {
        if (x < 0 || static_cast<std::size_t>(x) >= n) throw PreconditionError("region vertex out of range");
        in[x] = 1;
    }
    if (v < 0 || static_cast<std::size_t>(v) >= n || !in[v]) throw PreconditionError("region must contain v");

    PhiRegion r;
    r.v = v;
    for (Vertex x : vertices) {
        auto nb = g.neighbors(x);
        const bool closed = std::all_of(nb.begin(), nb.end(), [&](Vertex w) { return in[w] != 0; });
        if (closed && !(respect_boundary_flags && g.is_boundary(x))) r.interior.push_back(x);
        else r.frontier.push_back(x);
    }
    r.vertices = std::move(vertices);
    return r;
}

PhiRegion ball_region(const RotationGraph& g, Vertex v, int radius, bool respect_boundary_flags)
{
    if (radius < 0) throw PreconditionError("radius must be nonnegative");
    auto d = bfs_distances(g, v);
    std::vector<Vertex> s;
    for (std::size_t x = 0; x < d.size(); ++x)
        if (d[x] >= 0 && d[x] <= radius) s.push_back(static_cast<Vertex>(x));
    auto r = make_region(g, v, std::move(s), respect_boundary_flags);
    r.radius = radius;
    return r;
}

BernsteinCounts phi_exact(const RotationGraph& g, const PhiRegion& region, std::int64_t node_budget)
{
    if (!region.v_interior()) return BernsteinCounts{{BigInt(1)}};
    const int k = static_cast<int>(region.interior.size());
    if (k > kMaxPhiExactVertices)
        throw ResourceError("exact phi over " + std::to_string(k) + " interior vertices exceeds the limit of " +
                            std::to_string(kMaxPhiExactVertices));

    std::unordered_map<Vertex, int> local;
    for (int i = 0; i < k; ++i) local[region.interior[i]] = i;
    std::vector<std::uint64_t> nbr(k, 0);
    for (int i = 0; i < k; ++i)
        for (Vertex w : g.neighbors(region.interior[i]))
            if (auto it = local.find(w); it != local.end()) nbr[i] |= std::uint64_t{1} << it->second;
    // For each frontier vertex, the interior vertices adjacent to it.
    std::vector<std::uint64_t> touch;
    for (Vertex y : region.frontier) {
        std::uint64_t m = 0;
        for (Vertex w : g.neighbors(y))
            if (auto it = local.find(w); it != local.end()) m |= std::uint64_t{1} << it->second;
        if (m) touch.push_back(m);
    }

    // Enumerate (cluster C of v, closed outer boundary of C in S°) by
    // branching on the lowest undecided neighbour of C.
    // hits[a][b]: sum of frontier hits over clusters with |C| = a, |closed| = b.
    std::vector<std::vector<std::int64_t>> hits(k + 1, std::vector<std::int64_t>(k + 1, 0));
    std::int64_t nodes = 0;
    struct Frame {
        std::uint64_t cluster, closed;
    };
    std::vector<Frame> stack{{std::uint64_t{1} << local.at(region.v), 0}};
    while (!stack.empty()) {
        auto [cluster, closed] = stack.back();
        stack.pop_back();
        if (++nodes > node_budget)
            throw ResourceError("exact phi needs more than " + std::to_string(node_budget) +
                                " enumeration steps");
        std::uint64_t reach = 0;
        for (std::uint64_t c = cluster; c; c &= c - 1) reach |= nbr[std::countr_zero(c)];
        const std::uint64_t undecided = reach & ~cluster & ~closed;
        if (undecided == 0) {
            std::int64_t h = 0;
            for (auto m : touch)
                if (m & cluster) ++h;
            hits[std::popcount(cluster)][std::popcount(closed)] += h;
            continue;
        }
        const std::uint64_t u = undecided & (~undecided + 1);
        stack.push_back({cluster, closed | u});
        stack.push_back({cluster | u, closed});
    }

    // p^a (1-p)^b times (p + 1 - p)^(k-a-b), in the Bernstein basis of degree k.
    BernsteinCounts out;
    out.counts.assign(static_cast<std::size_t>(k) + 1, BigInt(0));
    for (int a = 0; a <= k; ++a)
        for (int b = 0; a + b <= k; ++b) {
            if (hits[a][b] == 0) continue;
            const int rest = k - a - b;
            BigInt binom = 1;
            for (int j = 0; j <= rest; ++j) {
                out.counts[a + j] += binom * hits[a][b];
                binom = binom * (rest - j) / (j + 1);
            }
        }
    return out;
}

Estimate phi_monte_carlo(const RotationGraph& g, double p, const PhiRegion& region, std::int64_t n_samples,
                         std::uint64_t seed, int threads)
{
    if (n_samples <= 0) throw PreconditionError("need at least one sample");
    Estimate e;
    e.samples = n_samples;
    if (!region.v_interior()) {
        e.mean = 1;
        e.hits = n_samples;
        return e;
    }
    std::vector<std::uint8_t> allowed(g.vertex_count(), 0);
    for (Vertex x : region.interior) allowed[x] = 1;
    std::vector<std::vector<Vertex>> touch;
    for (Vertex y : region.frontier) {
        std::vector<Vertex> t;
        for (Vertex w : g.neighbors(y))
            if (allowed[w]) t.push_back(w);
        if (!t.empty()) touch.push_back(std::move(t));
    }

    const int blocks = std::max(1, threads);
    std::vector<std::int64_t> sum(blocks, 0), sum_sq(blocks, 0);
    const AdjacencyView adj = view(g);
    parallel_blocks(n_samples, threads, [&](int b, std::int64_t begin, std::int64_t end) {
        ClusterExplorer ex(adj, p, seed);
        for (std::int64_t i = begin; i < end; ++i) {
            ex.begin(static_cast<std::uint64_t>(i));
            ex.explore(std::span<const Vertex>(&region.v, 1), &allowed);
            std::int64_t x = 0;
            if (!ex.cluster().empty())
                for (const auto& t : touch)
                    if (ex.reached_any(t)) ++x;
            sum[b] += x;
            sum_sq[b] += x * x;
        }
    });
    const double n = static_cast<double>(n_samples);
    const double s = static_cast<double>(std::accumulate(sum.begin(), sum.end(), std::int64_t{0}));
    const double s2 = static_cast<double>(std::accumulate(sum_sq.begin(), sum_sq.end(), std::int64_t{0}));
    e.hits = static_cast<std::int64_t>(s);
    e.mean = s / n;
    const double var = n > 1 ? std::max(0.0, (s2 - s * s / n) / (n - 1)) : 0.0;
    e.std_error = std::sqrt(var / n);
    return e;
}

std::optional<Certificate> subcritical_certificate(const RotationGraph& g, double p, Vertex v, int max_radius,
                                                   const CertificateOptions& options)
{
    if (!(p >= 0.0 && p < 1.0)) throw PreconditionError("p must lie in [0, 1)");
    if (!(options.epsilon >= 0.0 && options.epsilon < 1.0)) throw PreconditionError("epsilon must lie in [0, 1)");
    for (int r = 0; r <= max_radius; ++r) {
        Certificate c;
        c.region = ball_region(g, v, r);
        if (static_cast<int>(c.region.interior.size()) <= kMaxPhiExactVertices) {
            try {
                c.phi = c.phi_upper = phi_exact(g, c.region, options.exact_node_budget)(p);
                c.exact = true;
            } catch (const ResourceError&) {
            }
        }
        if (!c.exact) {
            auto e = phi_monte_carlo(g, p, c.region, options.mc_samples, options.seed, options.threads);
            c.phi = e.mean;
            c.phi_upper = e.mean + 3 * e.std_error;
        }
        if (c.phi_upper <= 1.0 - options.epsilon) return c;
    }
    return std::nullopt;
}

double theta_lower_bound(double p, double p_tilde, double epsilon)
{
    if (!(p > p_tilde)) throw PreconditionError("theta lower bound needs p > p_tilde");
    if (!(p <= 1.0) || !(p_tilde >= 0.0)) throw PreconditionError("probabilities must lie in [0, 1]");
    if (!(epsilon >= 0.0 && epsilon < 1.0)) throw PreconditionError("epsilon must lie in [0, 1)");
    return 1.0 - std::pow((1.0 - p) / (1.0 - p_tilde), 1.0 - epsilon);
}

RussoReport russo_inequality_check(const RotationGraph& g, Vertex v, std::span<const Vertex> lambda,
                                   std::vector<Rational> grid, int max_radius, RussoFamily family)
{
    const auto n = g.vertex_count();
    if (n > kMaxRussoVertices)
        throw ResourceError("Russo check supports at most " + std::to_string(kMaxRussoVertices) + " vertices");
    std::vector<std::uint8_t> in(n, 0);
    for (Vertex x : lambda) {
        if (x < 0 || static_cast<std::size_t>(x) >= n) throw PreconditionError("Lambda vertex out of range");
        in[x] = 1;
    }
    if (v < 0 || static_cast<std::size_t>(v) >= n || !in[v]) throw PreconditionError("v must lie in Lambda");
    std::vector<Vertex> outside;
    for (std::size_t x = 0; x < n; ++x)
        if (!in[x]) outside.push_back(static_cast<Vertex>(x));

    if (grid.empty())
        for (int k = 1; k <= 99; ++k) grid.emplace_back(k, 100);

    RussoReport rep;
    rep.v = v;
    rep.lambda.assign(lambda.begin(), lambda.end());
    std::sort(rep.lambda.begin(), rep.lambda.end());
    rep.lambda.erase(std::unique(rep.lambda.begin(), rep.lambda.end()), rep.lambda.end());
    if (!outside.empty()) rep.connection = exact_connection_poly(view(g), v, outside, outside).to_polynomial();
    const Polynomial derivative = rep.connection.derivative();

    if (family == RussoFamily::balls) {
        auto dist = bfs_distances(g, v);
        for (int r = 0; r <= max_radius; ++r) {
            std::vector<Vertex> s;
            for (Vertex x : rep.lambda)
                if (dist[x] >= 0 && dist[x] <= r) s.push_back(x);
            auto region = make_region(g, v, s, false);
            if (!rep.regions.empty() && rep.regions.back().vertices == region.vertices) continue;
            region.radius = r;
            rep.phi.push_back(phi_exact(g, region).to_polynomial());
            rep.regions.push_back(std::move(region));
        }
    } else {
        if (rep.lambda.size() > kMaxRussoSubsetLambda)
            throw ResourceError("subset infimum supports |Lambda| <= " + std::to_string(kMaxRussoSubsetLambda));
        std::vector<Vertex> others;
        for (Vertex x : rep.lambda)
            if (x != v) others.push_back(x);
        for (std::uint32_t m = 0; m < (1u << others.size()); ++m) {
            std::vector<Vertex> s{v};
            for (std::size_t i = 0; i < others.size(); ++i)
                if (m >> i & 1) s.push_back(others[i]);
            auto region = make_region(g, v, s, false);
            rep.phi.push_back(phi_exact(g, region).to_polynomial());
            rep.regions.push_back(std::move(region));
        }
    }

    bool first = true;
    for (const auto& p : grid) {
        if (p <= 0 || p >= 1) throw PreconditionError("grid points must lie in (0, 1)");
        RussoPoint pt;
        pt.p = p;
        const Rational P = rep.connection(p);
        pt.lhs = (1 - p) * derivative(p);
        Rational inf_phi = rep.phi.front()(p);
        for (std::size_t i = 1; i < rep.phi.size(); ++i) {
            Rational f = rep.phi[i](p);
            if (f < inf_phi) {
                inf_phi = f;
                pt.best_region = static_cast<int>(i);
            }
        }
        pt.rhs = inf_phi * (1 - P);
        pt.holds = pt.lhs >= pt.rhs;
        rep.all_hold = rep.all_hold && pt.holds;
        const double margin = to_double(pt.lhs - pt.rhs);
        rep.min_margin = first ? margin : std::min(rep.min_margin, margin);
        first = false;
        rep.points.push_back(std::move(pt));
    }
    return rep;
}

std::string to_string(DecayVariant v)
{
    switch (v) {
    case DecayVariant::point_graph: return "point_graph";
    case DecayVariant::point_star: return "point_star";
    case DecayVariant::boundary_star: return "boundary_star";
    }
    return "?";
}

DecayVariant parse_decay_variant(const std::string& s)
{
    if (s == "point_graph" || s == "graph") return DecayVariant::point_graph;
    if (s == "point_star" || s == "star") return DecayVariant::point_star;
    if (s == "boundary_star") return DecayVariant::boundary_star;
    throw PreconditionError("unknown decay variant '" + s + "' (point_graph, point_star, boundary_star)");
}

std::vector<int> star_distances(const MatchingGraph& mg, std::span<const Vertex> sources)
{
    std::vector<int> d(mg.vertex_count(), -1);
    std::vector<Vertex> q;
    for (Vertex s : sources)
        if (d[s] < 0) {
            d[s] = 0;
            q.push_back(s);
        }
    for (std::size_t h = 0; h < q.size(); ++h)
        for (Vertex w : mg.neighbors(q[h]))
            if (d[w] < 0) {
                d[w] = d[q[h]] + 1;
                q.push_back(w);
            }
    return d;
}

namespace {

std::vector<int> distance_to_partial(const MatchingGraph& mg)
{
    std::vector<Vertex> partial;
    for (std::size_t v = 0; v < mg.vertex_count(); ++v)
        if (mg.partial(static_cast<Vertex>(v))) partial.push_back(static_cast<Vertex>(v));
    return star_distances(mg, partial);
}

int reach(const std::vector<int>& to_partial, Vertex v)
{
    return to_partial[v] < 0 ? std::numeric_limits<int>::max() : to_partial[v];
}

}  // namespace

std::vector<std::pair<Vertex, Vertex>> auto_pair_schedule(const MatchingGraph& mg, Vertex root)
{
    const auto n = mg.vertex_count();
    if (root < 0 || static_cast<std::size_t>(root) >= n) throw PreconditionError("root out of range");
    const auto to_partial = distance_to_partial(mg);
    const auto from_root = star_distances(mg, std::span<const Vertex>(&root, 1));

    Vertex target = kNoVertex;
    int best = 0;
    const RotationGraph& g = mg.base();
    for (std::size_t x = 0; x < n; ++x) {
        const Vertex v = static_cast<Vertex>(x);
        const int d = from_root[v];
        if (d <= 0 || reach(to_partial, v) < d || reach(to_partial, root) < d) continue;
        if (d > best || (d == best && g.rank(v) < g.rank(target))) {
            best = d;
            target = v;
        }
    }
    if (target == kNoVertex) throw PreconditionError("no admissible pair: the patch is too small around the root");

    // Walk back along decreasing distance, preferring the smallest rank.
    std::vector<Vertex> geodesic{target};
    while (from_root[geodesic.back()] > 0) {
        Vertex cur = geodesic.back();
        Vertex next = kNoVertex;
        for (Vertex w : mg.neighbors(cur))
            if (from_root[w] == from_root[cur] - 1 && (next == kNoVertex || g.rank(w) < g.rank(next))) next = w;
        geodesic.push_back(next);
    }
    std::reverse(geodesic.begin(), geodesic.end());

    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (int d = (best + 1) / 2; d <= best; ++d)
        if (d > 0) pairs.emplace_back(root, geodesic[d]);
    return pairs;
}

DecayFit decay_fit(const MatchingGraph& mg, double p, std::span<const std::pair<Vertex, Vertex>> pairs,
                   DecayVariant variant, std::int64_t n_samples, std::uint64_t seed, int threads)
{
    if (!(p >= 0.0 && p <= 1.0)) throw PreconditionError("p must lie in [0, 1]");
    if (n_samples < 2) throw PreconditionError("need at least two samples");
    const int k = static_cast<int>(pairs.size());
    if (k < 2) throw PreconditionError("need at least two pairs to fit a slope");
    const auto n = mg.vertex_count();
    const auto to_partial = distance_to_partial(mg);

    DecayFit fit;
    fit.p = p;
    fit.variant = variant;
    int last = -1;
    for (auto [u, v] : pairs) {
        if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n)
            throw PreconditionError("pair vertex out of range");
        const int d = star_distances(mg, std::span<const Vertex>(&u, 1))[v];
        if (d <= last) throw PreconditionError("pair distances must be strictly increasing");
        if (reach(to_partial, u) < d || reach(to_partial, v) < d)
            throw PreconditionError("pair (" + std::to_string(u) + ", " + std::to_string(v) +
                                    ") is closer to the boundary than to each other");
        last = d;
        DecayPoint pt;
        pt.distance = d;
        pt.u = u;
        pt.v = v;
        pt.samples = n_samples;
        fit.points.push_back(pt);
    }

    const AdjacencyView adj = variant == DecayVariant::point_graph ? view(mg.base()) : mg.view();
    auto endpoint_set = [&](Vertex x) {
        if (variant != DecayVariant::boundary_star) return std::vector<Vertex>{x};
        auto nb = mg.neighbors(x);
        return std::vector<Vertex>(nb.begin(), nb.end());
    };
    std::vector<std::vector<Vertex>> src(k), dst(k);
    for (int i = 0; i < k; ++i) {
        src[i] = endpoint_set(fit.points[i].u);
        dst[i] = endpoint_set(fit.points[i].v);
    }

    // joint[b][i*k+j] counts samples where pairs i and j are both connected.
    const int blocks = std::max(1, threads);
    std::vector<std::vector<std::int64_t>> joint(blocks, std::vector<std::int64_t>(static_cast<std::size_t>(k) * k, 0));
    parallel_blocks(n_samples, threads, [&](int b, std::int64_t begin, std::int64_t end) {
        ClusterExplorer ex(adj, p, seed);
        std::vector<std::uint8_t> hit(k);
        for (std::int64_t s = begin; s < end; ++s) {
            for (int i = 0; i < k; ++i) {
                if (i == 0 || src[i] != src[i - 1]) {
                    ex.begin(static_cast<std::uint64_t>(s));
                    ex.explore(src[i]);
                }
                hit[i] = ex.reached_any(dst[i]) ? 1 : 0;
            }
            for (int i = 0; i < k; ++i)
                if (hit[i])
                    for (int j = 0; j < k; ++j)
                        if (hit[j]) ++joint[b][static_cast<std::size_t>(i) * k + j];
        }
    });
    Eigen::MatrixXd both = Eigen::MatrixXd::Zero(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            std::int64_t t = 0;
            for (int b = 0; b < blocks; ++b) t += joint[b][static_cast<std::size_t>(i) * k + j];
            both(i, j) = static_cast<double>(t);
            if (i == j) fit.points[i].hits = t;
        }
    if (std::all_of(fit.points.begin(), fit.points.end(), [](const DecayPoint& pt) { return pt.hits == 0; }))
        throw ResourceError("decay too fast to resolve; increase samples");

    const double ns = static_cast<double>(n_samples);
    Eigen::VectorXd x(k), y(k), phat(k);
    for (int i = 0; i < k; ++i) {
        auto& pt = fit.points[i];
        pt.estimate = (static_cast<double>(pt.hits) + 0.5) / (ns + 1.0);
        pt.log_estimate = std::log(pt.estimate);
        x(i) = pt.distance;
        y(i) = pt.log_estimate;
        phat(i) = pt.estimate;
    }
    const Eigen::VectorXd xc = x.array() - x.mean();
    const double sxx = xc.squaredNorm();
    const Eigen::VectorXd c = xc / sxx;
    fit.slope = c.dot(y);
    fit.intercept = y.mean() - fit.slope * x.mean();
    const Eigen::VectorXd resid = y - (Eigen::VectorXd::Constant(k, fit.intercept) + fit.slope * x);
    const double syy = (y.array() - y.mean()).matrix().squaredNorm();
    fit.r_squared = syy > 0 ? 1.0 - resid.squaredNorm() / syy : 1.0;

    // Cov(log p_i, log p_j) ~ Cov(1_i, 1_j) / (n p_i p_j), with the indicator
    // covariance taken from the raw frequencies.
    Eigen::MatrixXd cov(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            const double fi = static_cast<double>(fit.points[i].hits) / ns;
            const double fj = static_cast<double>(fit.points[j].hits) / ns;
            cov(i, j) = (both(i, j) / ns - fi * fj) / (ns * phat(i) * phat(j));
        }
    fit.slope_std_error = std::sqrt(std::max(0.0, c.dot(cov * c)));
    fit.ci_low = fit.slope - 1.96 * fit.slope_std_error;
    fit.ci_high = fit.slope + 1.96 * fit.slope_std_error;
    return fit;
}

}  // namespace hyperperc
