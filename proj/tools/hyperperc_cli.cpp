#include <charconv>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hyperperc/config.hpp"
#include "hyperperc/critical.hpp"
#include "hyperperc/errors.hpp"
#include "hyperperc/io.hpp"
#include "hyperperc/matching.hpp"
#include "hyperperc/percolation.hpp"
#include "hyperperc/svg.hpp"
#include "hyperperc/tiling.hpp"
#include "hyperperc/tree.hpp"
#include "hyperperc/walks.hpp"

using namespace hyperperc;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;
constexpr int kExitInvariant = 4;

class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class Kind { integer, real, reals, text, flag };

struct OptSpec {
    std::string name;  // config key; the flag is --name with '_' -> '-'
    Kind kind;
    std::string def;
    std::string help;
};

using Runner = std::function<void(const json&)>;

struct CommandSpec {
    std::string name;
    std::string help;
    std::vector<OptSpec> options;
    Runner run;
};

std::string flag_name(const std::string& key)
{
    std::string s = key;
    for (char& c : s)
        if (c == '_') c = '-';
    return "--" + s;
}

std::int64_t parse_int(const std::string& key, const std::string& text)
{
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw UsageError("option " + flag_name(key) + " expects an integer, got '" + text + "'");
    return v;
}

double parse_real(const std::string& key, const std::string& text)
{
    double v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw UsageError("option " + flag_name(key) + " expects a number, got '" + text + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    return out;
}

json typed_value(const OptSpec& o, const std::string& text)
{
    switch (o.kind) {
    case Kind::integer: return parse_int(o.name, text);
    case Kind::real: return parse_real(o.name, text);
    case Kind::reals: {
        json arr = json::array();
        for (const auto& part : split(text, ',')) arr.push_back(parse_real(o.name, part));
        if (arr.empty()) throw UsageError("option " + flag_name(o.name) + " needs at least one value");
        return arr;
    }
    case Kind::text: return text;
    case Kind::flag: return text == "true";
    }
    return nullptr;
}

// Accessors that turn missing or mistyped config entries into usage errors.
const json& field(const json& c, const std::string& key)
{
    auto it = c.find(key);
    if (it == c.end()) throw UsageError("config is missing '" + key + "'");
    return *it;
}
std::int64_t get_int(const json& c, const std::string& key)
{
    const auto& v = field(c, key);
    if (!v.is_number_integer()) throw UsageError("config entry '" + key + "' must be an integer");
    return v.get<std::int64_t>();
}
double get_real(const json& c, const std::string& key)
{
    const auto& v = field(c, key);
    if (!v.is_number()) throw UsageError("config entry '" + key + "' must be a number");
    return v.get<double>();
}
std::string get_text(const json& c, const std::string& key)
{
    const auto& v = field(c, key);
    if (!v.is_string()) throw UsageError("config entry '" + key + "' must be a string");
    return v.get<std::string>();
}
bool get_flag(const json& c, const std::string& key)
{
    const auto& v = field(c, key);
    if (!v.is_boolean()) throw UsageError("config entry '" + key + "' must be a boolean");
    return v.get<bool>();
}
std::vector<double> get_reals(const json& c, const std::string& key)
{
    const auto& v = field(c, key);
    if (!v.is_array()) throw UsageError("config entry '" + key + "' must be a list of numbers");
    std::vector<double> out;
    for (const auto& x : v) {
        if (!x.is_number()) throw UsageError("config entry '" + key + "' must be a list of numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

std::uint64_t seed_of(const json& c) { return static_cast<std::uint64_t>(get_int(c, "seed")); }
int threads_of(const json& c)
{
    const auto t = get_int(c, "threads");
    if (t < 1 || t > 256) throw UsageError("--threads must lie in [1, 256]");
    return static_cast<int>(t);
}
std::size_t budget_of(const json& c)
{
    const auto b = get_int(c, "budget");
    if (b <= 0) throw UsageError("--budget must be positive");
    return static_cast<std::size_t>(b);
}
std::int64_t positive(const json& c, const std::string& key)
{
    const auto v = get_int(c, key);
    if (v <= 0) throw UsageError(flag_name(key) + " must be positive");
    return v;
}
double probability(const json& c, const std::string& key)
{
    const double p = get_real(c, key);
    if (!(p >= 0.0 && p <= 1.0)) throw UsageError(flag_name(key) + " must lie in [0, 1]");
    return p;
}

void write_text(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot open '" + path + "' for writing");
    f << text;
    if (!f) throw UsageError("failed writing '" + path + "'");
}

// Primary JSON result: always carries the config and its hash.
void emit(const json& config, json result)
{
    result["config_hash"] = config_hash(config);
    result["config"] = config;
    write_text(get_text(config, "out"), result.dump(2) + "\n");
}

std::string caption(const json& config)
{
    return "hyperperc " + get_text(config, "command") + "  config " + config_hash(config);
}

std::vector<OptSpec> graph_source(const std::string& default_tiling)
{
    return {
        {"graph", Kind::text, "", "read the graph from a JSON file instead of building a tiling"},
        {"tiling", Kind::text, default_tiling, "p,q,radius of the tiling ball to build"},
        {"allow_unsupported", Kind::flag, "false", "allow {p,q} outside q >= 7 or (q >= 5, p >= 4)"},
    };
}

TilingSpec parse_tiling(const json& c)
{
    auto parts = split(get_text(c, "tiling"), ',');
    if (parts.size() != 3) throw UsageError("--tiling expects p,q,radius");
    TilingSpec s;
    s.p = static_cast<int>(parse_int("tiling", parts[0]));
    s.q = static_cast<int>(parse_int("tiling", parts[1]));
    s.radius = static_cast<int>(parse_int("tiling", parts[2]));
    s.allow_unsupported = get_flag(c, "allow_unsupported");
    return s;
}

RotationGraph load_graph(const json& c)
{
    const auto path = get_text(c, "graph");
    if (!path.empty()) return read_graph_file(path).graph;
    return build_ball(parse_tiling(c), budget_of(c));
}

Vertex vertex_arg(const RotationGraph& g, const json& c, const std::string& key)
{
    const auto v = get_int(c, key);
    if (v < 0 || static_cast<std::size_t>(v) >= g.vertex_count())
        throw UsageError(flag_name(key) + " " + std::to_string(v) + " is not a vertex (graph has " +
                         std::to_string(g.vertex_count()) + ")");
    return static_cast<Vertex>(v);
}

std::string format_real(double x)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

json tree_summary(const TreeEmbedding& t)
{
    json levels = json::array();
    auto sizes = t.level_sizes();
    auto types = t.level_types();
    for (std::size_t k = 0; k < sizes.size(); ++k)
        levels.push_back({{"length", k + 1}, {"size", sizes[k]}, {"type0", types[k][0]}, {"type_half", types[k][1]},
                          {"type1", types[k][2]}});
    json nodes = json::array();
    for (const auto& n : t.nodes)
        nodes.push_back({{"label", display_label(n.label)}, {"vertex", n.vertex}, {"truncated", n.truncated}});
    return {{"root", t.root},           {"condition", t.condition}, {"depth", t.depth_cap},
            {"truncated", t.truncated}, {"levels", levels},         {"nodes", nodes}};
}

// ---------------------------------------------------------------- commands

void cmd_generate(const json& c)
{
    TilingSpec s;
    s.p = static_cast<int>(get_int(c, "p"));
    s.q = static_cast<int>(get_int(c, "q"));
    s.radius = static_cast<int>(get_int(c, "radius"));
    s.allow_unsupported = get_flag(c, "allow_unsupported");
    GraphDocument doc;
    doc.graph = build_ball(s, budget_of(c));
    if (get_flag(c, "star_edges")) {
        MatchingGraph mg(doc.graph);
        doc.star_edges = mg.star_edges();
        doc.has_star_edges = true;
    }
    doc.meta = {{"config_hash", config_hash(c)}, {"config", c}, {"p", s.p}, {"q", s.q}, {"radius", s.radius}};
    write_text(get_text(c, "out"), write_graph_string(doc));
}

void cmd_walk(const json& c)
{
    auto g = load_graph(c);
    const auto rule = WalkRule::parse(get_text(c, "rule"));
    DirectedEdge start;
    const auto text = get_text(c, "start");
    if (text.empty()) {
        if (g.vertex_count() == 0 || g.degree(0) == 0) throw UsageError("vertex 0 has no edges; pass --start");
        start = {0, g.neighbor(0, 0)};
    } else {
        auto parts = split(text, ',');
        if (parts.size() != 2) throw UsageError("--start expects v,w");
        start = {static_cast<Vertex>(parse_int("start", parts[0])), static_cast<Vertex>(parse_int("start", parts[1]))};
    }
    const auto steps = get_int(c, "steps");
    if (steps < 0) throw UsageError("--steps must be nonnegative");
    auto w = turn_walk(g, start, rule, static_cast<int>(steps));
    emit(c, {{"rule", rule.str()}, {"start", {start.from, start.to}}, {"path", w.path}, {"truncated", w.truncated}});
}

void cmd_tree(const json& c)
{
    auto g = load_graph(c);
    const Vertex root = vertex_arg(g, c, "root");
    const auto condition = get_int(c, "condition");
    if (condition != 1 && condition != 2) throw UsageError("--condition must be 1 or 2");
    auto t = grow_tree(g, root, static_cast<int>(get_int(c, "start_slot")), static_cast<int>(condition),
                       static_cast<int>(get_int(c, "depth")));
    auto pc = tree_pc();
    json result = tree_summary(t);
    result["tree_pc"] = {{"perron_root", pc.perron_root}, {"pc", pc.pc}, {"closed_form_bound", pc.closed_form_bound}};
    const auto svg = get_text(c, "svg");
    if (!svg.empty()) {
        SvgOverlay red;
        red.edges = t.tree_edges();
        red.vertices = {root};
        SvgOptions opt;
        opt.title = "embedded tree, condition " + std::to_string(condition);
        opt.caption = caption(c);
        write_text(svg, render_svg(g, {red}, opt, root));
    }
    emit(c, result);
}

json chandelier_json(const Chandelier& ch)
{
    return {{"root", ch.root},   {"v1", ch.v1},   {"v2", ch.v2},
            {"side", to_string(ch.side)}, {"l1", ch.l1}, {"l2", ch.l2},
            {"vertices", ch.vertices()}};
}

void cmd_chandelier(const json& c)
{
    auto g = load_graph(c);
    const Vertex root = vertex_arg(g, c, "root");
    const int depth = static_cast<int>(get_int(c, "depth"));
    const auto to = get_int(c, "to");
    std::vector<SvgOverlay> layers;
    json result;
    if (to >= 0) {
        const Vertex target = vertex_arg(g, c, "to");
        auto geodesic = shortest_path(g, root, target);
        if (geodesic.empty()) throw UsageError("--to is not reachable from --root");
        auto seq = chandelier_sequence(g, geodesic, depth);
        json left = json::array(), right = json::array(), alt = json::array();
        for (const auto& ch : seq.left) left.push_back(chandelier_json(ch));
        for (const auto& ch : seq.right) right.push_back(chandelier_json(ch));
        for (auto [a, b] : seq.alternating) alt.push_back({a, b});
        result = {{"geodesic", geodesic}, {"left", left},   {"right", right},
                  {"alternating", alt},   {"pair_count", seq.pair_count()},
                  {"empty_left", seq.empty_left}, {"empty_right", seq.empty_right}};
        SvgOverlay path;
        path.color = "#000000";
        for (std::size_t i = 0; i + 1 < geodesic.size(); ++i) path.edges.emplace_back(geodesic[i], geodesic[i + 1]);
        layers.push_back(path);
        for (auto [a, b] : seq.alternating) {
            SvgOverlay l, r;
            l.color = "#d62728";
            r.color = "#1f77b4";
            l.edges = seq.left[a].subtree.tree_edges();
            l.edges.emplace_back(seq.left[a].root, seq.left[a].v1);
            l.edges.emplace_back(seq.left[a].v1, seq.left[a].v2);
            r.edges = seq.right[b].subtree.tree_edges();
            r.edges.emplace_back(seq.right[b].root, seq.right[b].v1);
            r.edges.emplace_back(seq.right[b].v1, seq.right[b].v2);
            layers.push_back(l);
            layers.push_back(r);
        }
    } else {
        const auto side_text = get_text(c, "side");
        if (side_text != "left" && side_text != "right") throw UsageError("--side must be left or right");
        const Side side = side_text == "left" ? Side::left : Side::right;
        auto ch = build_chandelier(g, root, side, depth, static_cast<int>(get_int(c, "slot")));
        result = chandelier_json(ch);
        SvgOverlay red;
        red.edges = ch.subtree.tree_edges();
        red.edges.emplace_back(ch.root, ch.v1);
        red.edges.emplace_back(ch.v1, ch.v2);
        red.vertices = {ch.root};
        layers.push_back(red);
    }
    const auto svg = get_text(c, "svg");
    if (!svg.empty()) {
        SvgOptions opt;
        opt.title = to >= 0 ? "chandelier sequence" : "chandelier";
        opt.caption = caption(c);
        write_text(svg, render_svg(g, layers, opt, root));
    }
    emit(c, result);
}

void cmd_matching(const json& c)
{
    auto g = load_graph(c);
    MatchingGraph mg(g);
    std::map<int, std::int64_t> interior, partial;
    for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v)
        ++(mg.partial(v) ? partial : interior)[mg.degree(v)];
    json hist_i = json::object(), hist_p = json::object();
    for (auto [d, n] : interior) hist_i[std::to_string(d)] = n;
    for (auto [d, n] : partial) hist_p[std::to_string(d)] = n;
    json edges = json::array();
    for (auto [a, b] : mg.star_edges()) edges.push_back({a, b});
    emit(c, {{"vertex_count", g.vertex_count()},
             {"edge_count", g.edge_count()},
             {"star_edge_count", mg.star_edges().size()},
             {"interior_star_degrees", hist_i},
             {"partial_star_degrees", hist_p},
             {"star_edges", edges}});
}

AdjacencyMode adjacency_of(const json& c)
{
    const auto a = get_text(c, "adjacency");
    if (a == "graph") return AdjacencyMode::graph;
    if (a == "star") return AdjacencyMode::star;
    throw UsageError("--adjacency must be graph or star");
}

void cmd_percolate(const json& c)
{
    auto g = load_graph(c);
    MatchingGraph mg(g);
    const AdjacencyView adj = adjacency_of(c) == AdjacencyMode::star ? mg.view() : view(g);
    const auto ps = get_reals(c, "p");
    for (double p : ps)
        if (!(p >= 0.0 && p <= 1.0)) throw UsageError("--p values must lie in [0, 1]");
    const auto samples = positive(c, "samples");
    const int core = static_cast<int>(get_int(c, "core_radius"));
    const auto seed = seed_of(c);

    auto d = bfs_distances(g, Vertex{0});
    std::vector<Vertex> core_set;
    for (std::size_t v = 0; v < d.size(); ++v)
        if (d[v] >= 0 && d[v] <= core) core_set.push_back(static_cast<Vertex>(v));

    std::ostringstream csv;
    csv << "# config_hash=" << config_hash(c) << "\n";
    csv << "p,sample,state,clusters_touching,largest_size\n";
    for (double p : ps) {
        for (std::int64_t i = 0; i < samples; ++i) {
            auto conf = sample(g, p, seed, static_cast<std::uint64_t>(i));
            auto lab = label_clusters(adj, conf);
            for (int state : {1, 0}) {
                csv << format_real(p) << ',' << i << ',' << state << ','
                    << boundary_cluster_count(lab, core_set, static_cast<std::uint8_t>(state)) << ','
                    << lab.largest(static_cast<std::uint8_t>(state)) << '\n';
            }
        }
    }
    auto report = get_text(c, "report");
    write_text(report.empty() ? get_text(c, "out") : report, csv.str());
}

void cmd_two_point(const json& c)
{
    auto g = load_graph(c);
    MatchingGraph mg(g);
    const AdjacencyView adj = adjacency_of(c) == AdjacencyMode::star ? mg.view() : view(g);
    const Vertex u = vertex_arg(g, c, "u");
    const Vertex v = vertex_arg(g, c, "v");
    const double p = probability(c, "p");
    auto e = two_point(adj, p, u, v, positive(c, "samples"), seed_of(c), threads_of(c));
    json result = {{"u", u},          {"v", v},
                   {"p", p},          {"adjacency", get_text(c, "adjacency")},
                   {"hits", e.hits},  {"samples", e.samples},
                   {"estimate", e.mean}, {"std_error", e.std_error}};
    if (get_flag(c, "exact")) {
        auto poly = exact_connection_poly(adj, u, std::span<const Vertex>(&v, 1));
        result["exact_polynomial"] = poly.to_polynomial().str();
        result["exact_value"] = poly(p);
    }
    emit(c, result);
}

void cmd_decay(const json& c)
{
    auto g = load_graph(c);
    MatchingGraph mg(g);
    const auto pairs_text = get_text(c, "pairs");
    std::vector<std::pair<Vertex, Vertex>> pairs;
    if (pairs_text == "auto") {
        pairs = auto_pair_schedule(mg, vertex_arg(g, c, "root"));
    } else {
        for (const auto& item : split(pairs_text, ',')) {
            auto uv = split(item, ':');
            if (uv.size() != 2) throw UsageError("--pairs expects auto or u:v,u:v,...");
            pairs.emplace_back(static_cast<Vertex>(parse_int("pairs", uv[0])),
                               static_cast<Vertex>(parse_int("pairs", uv[1])));
        }
    }
    const auto variant = parse_decay_variant(get_text(c, "variant"));
    auto fit = decay_fit(mg, probability(c, "p"), pairs, variant, positive(c, "samples"), seed_of(c), threads_of(c));

    json points = json::array();
    std::ostringstream csv;
    csv << "# config_hash=" << config_hash(c) << "\n";
    csv << "distance,u,v,hits,samples,estimate,log_estimate\n";
    for (const auto& pt : fit.points) {
        points.push_back({{"distance", pt.distance},
                          {"u", pt.u},
                          {"v", pt.v},
                          {"hits", pt.hits},
                          {"samples", pt.samples},
                          {"estimate", pt.estimate}});
        csv << pt.distance << ',' << pt.u << ',' << pt.v << ',' << pt.hits << ',' << pt.samples << ','
            << format_real(pt.estimate) << ',' << format_real(pt.log_estimate) << '\n';
    }
    const auto path = get_text(c, "csv");
    if (!path.empty()) write_text(path, csv.str());
    emit(c, {{"p", fit.p},
             {"variant", to_string(fit.variant)},
             {"points", points},
             {"slope", fit.slope},
             {"c_p", fit.c_p()},
             {"slope_std_error", fit.slope_std_error},
             {"ci95", {fit.ci_low, fit.ci_high}},
             {"ci_excludes_zero", fit.ci_excludes_zero()},
             {"r_squared", fit.r_squared},
             {"smoothing", "(hits + 1/2) / (samples + 1)"}});
}

json region_json(const PhiRegion& r)
{
    return {{"v", r.v},
            {"radius", r.radius},
            {"size", r.vertices.size()},
            {"interior_size", r.interior.size()},
            {"frontier_size", r.frontier.size()}};
}

void cmd_phi(const json& c)
{
    auto g = load_graph(c);
    const Vertex v = vertex_arg(g, c, "v");
    const auto radius = get_int(c, "radius");
    if (radius < 0) throw UsageError("--radius must be nonnegative");
    auto region = ball_region(g, v, static_cast<int>(radius));
    const double p = probability(c, "p");
    const auto method = get_text(c, "method");
    json result = {{"region", region_json(region)}, {"p", p}, {"method", method}};
    if (method == "exact") {
        auto counts = phi_exact(g, region);
        result["phi"] = counts(p);
        result["polynomial"] = counts.to_polynomial().str();
    } else if (method == "monte_carlo" || method == "mc") {
        auto e = phi_monte_carlo(g, p, region, positive(c, "samples"), seed_of(c), threads_of(c));
        result["phi"] = e.mean;
        result["std_error"] = e.std_error;
        result["samples"] = e.samples;
    } else {
        throw UsageError("--method must be exact or monte_carlo");
    }
    emit(c, result);
}

void cmd_certify(const json& c)
{
    auto g = load_graph(c);
    const Vertex v = vertex_arg(g, c, "v");
    const double p = probability(c, "p");
    CertificateOptions opt;
    opt.epsilon = get_real(c, "epsilon");
    opt.mc_samples = positive(c, "samples");
    opt.seed = seed_of(c);
    opt.threads = threads_of(c);
    const int max_radius = static_cast<int>(get_int(c, "max_radius"));
    const auto core = get_int(c, "core");

    std::vector<Vertex> targets{v};
    if (core >= 0) {
        targets.clear();
        auto d = bfs_distances(g, v);
        for (std::size_t x = 0; x < d.size(); ++x)
            if (d[x] >= 0 && d[x] <= core) targets.push_back(static_cast<Vertex>(x));
    }
    json certs = json::array();
    std::int64_t certified = 0;
    for (Vertex x : targets) {
        auto cert = subcritical_certificate(g, p, x, max_radius, opt);
        json item = {{"v", x}, {"certified", cert.has_value()}};
        if (cert) {
            ++certified;
            item["region"] = region_json(cert->region);
            item["phi"] = cert->phi;
            item["phi_upper"] = cert->phi_upper;
            item["exact"] = cert->exact;
        }
        certs.push_back(item);
    }
    emit(c, {{"p", p},
             {"epsilon", opt.epsilon},
             {"max_radius", max_radius},
             {"certified", certified},
             {"total", targets.size()},
             {"certificates", certs},
             {"note", "per-vertex certificates on a finite patch; uniformity over vertices is not checked"}});
}

void cmd_contour(const json& c)
{
    auto g = load_graph(c);
    MatchingGraph mg(g);
    const double p = probability(c, "p");
    const auto samples = positive(c, "samples");
    const auto seed = seed_of(c);
    std::int64_t clusters = 0, skipped = 0;
    json per_sample = json::array();
    std::vector<SvgOverlay> layers;
    for (std::int64_t i = 0; i < samples; ++i) {
        auto conf = sample(g, p, seed, static_cast<std::uint64_t>(i));
        auto lab = label_clusters(mg.view(), conf);
        std::vector<std::vector<Vertex>> members(lab.clusters.size());
        for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v) members[lab.label[v]].push_back(v);
        std::int64_t here = 0, longest = 0;
        for (std::size_t k = 0; k < lab.clusters.size(); ++k) {
            if (lab.clusters[k].state != 0) continue;
            const auto& xi = members[k];
            if (std::any_of(xi.begin(), xi.end(), [&](Vertex v) { return mg.partial(v); })) {
                ++skipped;
                continue;
            }
            auto ob = outer_boundary(mg, conf, xi);
            ++here;
            longest = std::max<std::int64_t>(longest, static_cast<std::int64_t>(ob.walk.size()));
            if (i == 0 && layers.size() < 40) {
                SvgOverlay closed, contour;
                closed.color = "#1f77b4";
                closed.vertices = xi;
                contour.color = "#d62728";
                for (std::size_t j = 0; j < ob.walk.size(); ++j)
                    contour.edges.emplace_back(ob.walk[j], ob.walk[(j + 1) % ob.walk.size()]);
                layers.push_back(closed);
                layers.push_back(contour);
            }
        }
        clusters += here;
        per_sample.push_back({{"sample", i}, {"finite_clusters", here}, {"longest_boundary", longest}});
    }
    const auto svg = get_text(c, "svg");
    if (!svg.empty()) {
        SvgOptions opt;
        opt.title = "outer boundaries of finite closed star-clusters (sample 0)";
        opt.caption = caption(c);
        write_text(svg, render_svg(g, layers, opt));
    }
    emit(c, {{"p", p},
             {"samples", samples},
             {"finite_clusters", clusters},
             {"boundary_clusters_skipped", skipped},
             {"per_sample", per_sample}});
}

void cmd_render(const json& c)
{
    auto g = load_graph(c);
    const auto overlay = get_text(c, "overlay");
    std::vector<SvgOverlay> layers;
    if (overlay == "tree") {
        auto t = grow_tree(g, 0, 0, static_cast<int>(get_int(c, "condition")), static_cast<int>(get_int(c, "depth")));
        SvgOverlay red;
        red.edges = t.tree_edges();
        layers.push_back(red);
    } else if (overlay == "matching") {
        MatchingGraph mg(g);
        SvgOverlay star;
        star.color = "#2ca02c";
        star.stroke_width = 0.8;
        star.edges = mg.star_edges();
        layers.push_back(star);
    } else if (overlay == "clusters") {
        auto conf = sample(g, probability(c, "p"), seed_of(c), 0);
        SvgOverlay open;
        open.color = "#d62728";
        open.vertex_radius = 1.5;
        for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v)
            if (conf.states[v]) open.vertices.push_back(v);
        layers.push_back(open);
    } else if (overlay != "none") {
        throw UsageError("--overlay must be none, tree, matching or clusters");
    }
    SvgOptions opt;
    opt.title = get_text(c, "graph").empty() ? "{" + get_text(c, "tiling") + "}" : get_text(c, "graph");
    opt.caption = caption(c);
    write_text(get_text(c, "out"), render_svg(g, layers, opt));
}

std::vector<CommandSpec> command_table()
{
    auto with_graph = [](std::string tiling, std::vector<OptSpec> extra) {
        auto opts = graph_source(tiling);
        opts.insert(opts.end(), extra.begin(), extra.end());
        return opts;
    };
    return {
        {"generate",
         "build a {p,q} tiling ball and write it as graph JSON",
         {{"p", Kind::integer, "3", "face degree"},
          {"q", Kind::integer, "7", "vertex degree"},
          {"radius", Kind::integer, "8", "ball radius"},
          {"allow_unsupported", Kind::flag, "false", "allow {p,q} outside the supported regime"},
          {"star_edges", Kind::flag, "false", "include the matching-graph star edges"}},
         cmd_generate},
        {"walk",
         "follow a turn rule from a directed edge",
         with_graph("3,7,8",
                    {{"rule", Kind::text, "+3", "+3, -3, +2, -2, left:3, right:2, ..."},
                     {"start", Kind::text, "", "start edge v,w (default 0 and its slot-0 neighbour)"},
                     {"steps", Kind::integer, "50", "maximum number of steps"}}),
         cmd_walk},
        {"tree",
         "grow the labelled embedded tree",
         with_graph("3,7,8",
                    {{"root", Kind::integer, "0", "root vertex"},
                     {"condition", Kind::integer, "1", "1 (degrees >= 7) or 2 (degrees >= 5, faces >= 4)"},
                     {"depth", Kind::integer, "6", "depth cap"},
                     {"start_slot", Kind::integer, "0", "slot of the first child of the root"},
                     {"svg", Kind::text, "", "write an SVG overlay to this path"}}),
         cmd_tree},
        {"chandelier",
         "build a chandelier, or the chandelier sequence along a geodesic",
         with_graph("3,7,10",
                    {{"root", Kind::integer, "0", "root vertex"},
                     {"side", Kind::text, "left", "left (chandelier) or right (anti-chandelier)"},
                     {"depth", Kind::integer, "4", "depth cap of the subtree"},
                     {"slot", Kind::integer, "0", "slot of v1 at the root"},
                     {"to", Kind::integer, "-1", "build the sequence along a shortest path root -> to"},
                     {"svg", Kind::text, "", "write an SVG overlay to this path"}}),
         cmd_chandelier},
        {"matching", "summarise the matching graph G*", with_graph("3,7,6", {}), cmd_matching},
        {"percolate",
         "sample site percolation and report boundary-touching clusters as CSV",
         with_graph("3,7,8",
                    {{"p", Kind::reals, "0.5", "comma-separated open probabilities"},
                     {"samples", Kind::integer, "100", "samples per p"},
                     {"core_radius", Kind::integer, "2", "clusters must meet B(0, core_radius)"},
                     {"adjacency", Kind::text, "graph", "graph or star"},
                     {"report", Kind::text, "", "CSV path (default: --out)"}}),
         cmd_percolate},
        {"two-point",
         "Monte Carlo estimate of P_p(u <-> v)",
         with_graph("3,7,8",
                    {{"u", Kind::integer, "0", "first vertex"},
                     {"v", Kind::integer, "1", "second vertex"},
                     {"p", Kind::real, "0.5", "open probability"},
                     {"samples", Kind::integer, "10000", "number of samples"},
                     {"adjacency", Kind::text, "graph", "graph or star"},
                     {"exact", Kind::flag, "false", "also enumerate exactly (small graphs)"}}),
         cmd_two_point},
        {"decay",
         "fit the exponential decay rate of connection probabilities",
         with_graph("3,7,10",
                    {{"p", Kind::real, "0.5", "open probability"},
                     {"pairs", Kind::text, "auto", "auto or u:v,u:v,..."},
                     {"root", Kind::integer, "0", "root of the auto schedule"},
                     {"samples", Kind::integer, "20000", "number of samples"},
                     {"variant", Kind::text, "point_graph", "point_graph, point_star or boundary_star"},
                     {"csv", Kind::text, "", "write per-distance estimates to this CSV"}}),
         cmd_decay},
        {"phi",
         "evaluate phi_p^v on the ball B(v, radius)",
         with_graph("3,7,6",
                    {{"v", Kind::integer, "0", "vertex"},
                     {"radius", Kind::integer, "2", "region radius"},
                     {"p", Kind::real, "0.2", "open probability"},
                     {"method", Kind::text, "exact", "exact or monte_carlo"},
                     {"samples", Kind::integer, "20000", "Monte Carlo samples"}}),
         cmd_phi},
        {"certify",
         "search for subcritical phi-certificates",
         with_graph("3,7,6",
                    {{"v", Kind::integer, "0", "vertex"},
                     {"p", Kind::real, "0.15", "open probability"},
                     {"max_radius", Kind::integer, "4", "largest ball radius tried"},
                     {"epsilon", Kind::real, "0.05", "certificate margin"},
                     {"samples", Kind::integer, "20000", "Monte Carlo samples for large regions"},
                     {"core", Kind::integer, "-1", "certify every vertex within this distance of v"}}),
         cmd_certify},
        {"contour",
         "outer boundaries of finite closed star-clusters",
         with_graph("3,7,8",
                    {{"p", Kind::real, "0.7", "open probability"},
                     {"samples", Kind::integer, "10", "number of samples"},
                     {"svg", Kind::text, "", "draw sample 0 to this path"}}),
         cmd_contour},
        {"render",
         "draw the graph as SVG",
         with_graph("3,7,5",
                    {{"overlay", Kind::text, "none", "none, tree, matching or clusters"},
                     {"depth", Kind::integer, "4", "tree depth for --overlay tree"},
                     {"condition", Kind::integer, "1", "tree condition for --overlay tree"},
                     {"p", Kind::real, "0.5", "open probability for --overlay clusters"}}),
         cmd_render},
    };
}

const std::vector<OptSpec>& global_options()
{
    static const std::vector<OptSpec> opts{
        {"seed", Kind::integer, "1", "random seed"},
        {"threads", Kind::integer, "1", "worker threads (results do not depend on it)"},
        {"budget", Kind::integer, std::to_string(kDefaultVertexBudget), "vertex budget for tiling construction"},
        {"out", Kind::text, "", "output path (default: stdout)"},
    };
    return opts;
}

int execute(const json& config)
{
    if (!config.is_object()) throw UsageError("config must be a JSON object");
    const auto name = get_text(config, "command");
    for (const auto& cmd : command_table())
        if (cmd.name == name) {
            cmd.run(config);
            return kExitOk;
        }
    throw UsageError("unknown command '" + name + "'");
}

int guarded(const std::function<int()>& body)
{
    try {
        return body();
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const PreconditionError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const StructuralError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ResourceError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kExitResource;
    } catch (const InvariantViolation& e) {
        std::cerr << "invariant violation (bug): " << e.what() << "\n";
        return kExitInvariant;
    } catch (const json::exception& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"hyperperc: percolation experiments on negatively curved planar tilings"};
    app.require_subcommand(1);

    std::map<std::string, std::string> globals;
    for (const auto& o : global_options()) {
        globals[o.name] = o.def;
        app.add_option(flag_name(o.name), globals[o.name], o.help)->capture_default_str();
    }
    std::string save_config;
    app.add_option("--save-config", save_config, "write the resolved config JSON to this path");

    const auto table = command_table();
    std::map<std::string, std::map<std::string, std::string>> values;
    std::map<std::string, std::map<std::string, bool>> flags;
    std::map<std::string, CLI::App*> subs;
    for (const auto& cmd : table) {
        auto* sub = app.add_subcommand(cmd.name, cmd.help);
        sub->fallthrough();
        subs[cmd.name] = sub;
        for (const auto& o : cmd.options) {
            if (o.kind == Kind::flag) {
                flags[cmd.name][o.name] = false;
                sub->add_flag(flag_name(o.name), flags[cmd.name][o.name], o.help);
            } else {
                values[cmd.name][o.name] = o.def;
                sub->add_option(flag_name(o.name), values[cmd.name][o.name], o.help)->capture_default_str();
            }
        }
    }
    std::string config_path;
    auto* run = app.add_subcommand("run", "re-run a saved config");
    run->fallthrough();
    run->add_option("config", config_path, "config JSON written by --save-config")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return e.get_exit_code() == 0 ? code : kExitUsage;
    }

    return guarded([&]() -> int {
        json config;
        if (run->parsed()) {
            std::ifstream f(config_path);
            if (!f) throw UsageError("cannot read config '" + config_path + "'");
            config = json::parse(f);
            if (!config.is_object()) throw UsageError("config must be a JSON object");
            // Explicit output/threads flags on the command line override the saved ones.
            for (const char* key : {"out", "threads"})
                if (app.get_option(flag_name(key))->count() > 0)
                    config[key] = typed_value(OptSpec{key, std::string(key) == "out" ? Kind::text : Kind::integer,
                                                      "", ""},
                                              globals[key]);
        } else {
            for (const auto& cmd : table) {
                if (!subs[cmd.name]->parsed()) continue;
                config["command"] = cmd.name;
                for (const auto& o : cmd.options)
                    config[o.name] = o.kind == Kind::flag ? json(flags[cmd.name][o.name])
                                                          : typed_value(o, values[cmd.name][o.name]);
            }
            for (const auto& o : global_options()) config[o.name] = typed_value(o, globals[o.name]);
        }
        if (!save_config.empty()) write_text(save_config, config.dump(2) + "\n");
        return execute(config);
    });
}
