#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hyperperc/graph.hpp"
#include "hyperperc/matching.hpp"
#include "hyperperc/percolation.hpp"
#include "hyperperc/polynomial.hpp"

namespace hyperperc {

// A finite vertex set S around v. A vertex is interior when all its
// neighbours lie in S, and on the frontier otherwise. With
// respect_boundary_flags, boundary-flagged vertices count as having
// neighbours outside S (those cut off by the truncation).
struct PhiRegion {
    Vertex v = kNoVertex;
    int radius = -1;                // r for S = B(v, r), -1 otherwise
    std::vector<Vertex> vertices;   // S, ascending
    std::vector<Vertex> interior;   // S°, ascending
    std::vector<Vertex> frontier;   // ascending

    bool v_interior() const;
};

PhiRegion make_region(const RotationGraph& g, Vertex v, std::vector<Vertex> vertices,
                      bool respect_boundary_flags = true);
PhiRegion ball_region(const RotationGraph& g, Vertex v, int radius, bool respect_boundary_flags = true);

// phi_p^v(S) = sum over frontier y of P_p(v connected to a neighbour of y by
// an open path inside S°), and 1 when v is not interior. The result is the
// exact polynomial in p, from enumerating the possible open clusters of v in
// S°. Throws ResourceError when |S°| > kMaxPhiExactVertices or the
// enumeration exceeds node_budget steps.
inline constexpr int kMaxPhiExactVertices = 64;
inline constexpr std::int64_t kDefaultPhiNodeBudget = 400'000'000;
BernsteinCounts phi_exact(const RotationGraph& g, const PhiRegion& region,
                          std::int64_t node_budget = kDefaultPhiNodeBudget);

Estimate phi_monte_carlo(const RotationGraph& g, double p, const PhiRegion& region, std::int64_t n_samples,
                         std::uint64_t seed, int threads = 1);

struct CertificateOptions {
    double epsilon = 0.05;
    std::int64_t mc_samples = 20000;
    std::int64_t exact_node_budget = 20'000'000;  // beyond this, fall back to Monte Carlo
    std::uint64_t seed = 1;
    int threads = 1;
};

struct Certificate {
    PhiRegion region;
    double phi = 0;          // exact value or Monte Carlo mean
    double phi_upper = 0;    // exact value or mean + 3 standard errors
    bool exact = false;
};

// First ball B(v, r), r = 0..max_radius, with phi <= 1 - epsilon (using the
// upper bound for Monte Carlo regions). None if no radius qualifies.
std::optional<Certificate> subcritical_certificate(const RotationGraph& g, double p, Vertex v, int max_radius,
                                                   const CertificateOptions& options = {});

// 1 - ((1-p)/(1-p_tilde))^(1-epsilon). Requires p_tilde < p <= 1 and
// 0 <= epsilon < 1.
double theta_lower_bound(double p, double p_tilde, double epsilon);

struct RussoPoint {
    Rational p;
    Rational lhs;    // (1-p) d/dp P_p(v <-> Lambda^c)
    Rational rhs;    // inf_S phi_p^v(S) (1 - P_p(v <-> Lambda^c))
    int best_region = 0;   // index into RussoReport::regions
    bool holds = false;
};

struct RussoReport {
    Vertex v = kNoVertex;
    std::vector<Vertex> lambda;
    Polynomial connection;                 // P_p(v <-> Lambda^c)
    std::vector<PhiRegion> regions;        // distinct candidate sets S
    std::vector<Polynomial> phi;           // one per region
    std::vector<RussoPoint> points;
    bool all_hold = true;
    double min_margin = 0;                 // min over the grid of lhs - rhs
};

inline constexpr std::size_t kMaxRussoVertices = 20;
inline constexpr std::size_t kMaxRussoSubsetLambda = 12;

// Sets S over which the infimum of phi is taken: balls B(v, r) ∩ Lambda for
// r <= max_radius, or every S with v in S ⊆ Lambda (|Lambda| <= 12).
enum class RussoFamily { balls, all_subsets };

// Checks (1-p) P'(p) >= inf_S phi_p^v(S) (1 - P(p)) at every grid point in
// exact arithmetic, with S ranging over the chosen family. g is treated as the whole graph (boundary flags are ignored). Vertices
// outside Lambda are held open, so v <-> Lambda^c means an open path from v
// inside Lambda to a neighbour of Lambda^c; for Lambda = V the probability is
// 0. The default grid is k/100, k = 1..99.
RussoReport russo_inequality_check(const RotationGraph& g, Vertex v, std::span<const Vertex> lambda,
                                   std::vector<Rational> grid = {}, int max_radius = 3,
                                   RussoFamily family = RussoFamily::balls);

enum class DecayVariant { point_graph, point_star, boundary_star };

std::string to_string(DecayVariant v);
DecayVariant parse_decay_variant(const std::string& s);

struct DecayPoint {
    int distance = 0;   // G* distance
    Vertex u = kNoVertex;
    Vertex v = kNoVertex;
    std::int64_t hits = 0;
    std::int64_t samples = 0;
    double estimate = 0;      // (hits + 1/2) / (samples + 1)
    double log_estimate = 0;
};

// Least-squares fit of log P against G* distance. The slope variance comes
// from the sample covariance of the connection indicators (all distances use
// the same samples) propagated through the log; a distance with 0 or n hits
// contributes no variance.
struct DecayFit {
    double p = 0;
    DecayVariant variant = DecayVariant::point_graph;
    std::vector<DecayPoint> points;
    double slope = 0;
    double intercept = 0;
    double slope_std_error = 0;
    double ci_low = 0;    // 95%
    double ci_high = 0;
    double r_squared = 0;

    double c_p() const { return -slope; }
    bool ci_excludes_zero() const { return ci_high < 0 || ci_low > 0; }
};

// Pairs (root, v_d) with v_d on one G* geodesic from root at G* distance d,
// for d in [ceil(D/2), D] where D is the largest d such that some vertex at
// distance d from root is at least d away from every partial vertex.
std::vector<std::pair<Vertex, Vertex>> auto_pair_schedule(const MatchingGraph& mg, Vertex root = 0);

// Throws PreconditionError unless the G* distances are strictly increasing and
// every endpoint is at least that far from the partial vertices; throws
// ResourceError when every count is zero.
DecayFit decay_fit(const MatchingGraph& mg, double p, std::span<const std::pair<Vertex, Vertex>> pairs,
                   DecayVariant variant, std::int64_t n_samples, std::uint64_t seed, int threads = 1);

std::vector<int> star_distances(const MatchingGraph& mg, std::span<const Vertex> sources);

}  // namespace hyperperc
