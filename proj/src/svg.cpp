#include "hyperperc/svg.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace hyperperc {

std::vector<Point> disk_layout(const RotationGraph& g, Vertex root)
{
    const auto n = g.vertex_count();
    std::vector<Point> pos(n);
    if (n == 0) return pos;
    std::vector<int> depth(n, -1);
    std::vector<Vertex> parent(n, kNoVertex), order{root};
    depth[root] = 0;
    for (std::size_t h = 0; h < order.size(); ++h)
        for (Vertex w : g.neighbors(order[h]))
            if (depth[w] < 0) {
                depth[w] = depth[order[h]] + 1;
                parent[w] = order[h];
                order.push_back(w);
            }

    std::vector<double> weight(n, 1.0);
    for (auto it = order.rbegin(); it != order.rend(); ++it)
        if (parent[*it] != kNoVertex) weight[parent[*it]] += weight[*it];

    // Children in rotation order so that sectors follow the embedding.
    std::vector<double> lo(n, 0.0), hi(n, 0.0);
    hi[root] = 2 * std::numbers::pi;
    for (Vertex v : order) {
        double a = lo[v];
        const double span = hi[v] - lo[v];
        const double total = weight[v] - 1.0;
        for (Vertex w : g.neighbors(v)) {
            if (parent[w] != v) continue;
            const double share = total > 0 ? span * weight[w] / total : 0.0;
            lo[w] = a;
            hi[w] = a + share;
            a += share;
        }
        const double angle = 0.5 * (lo[v] + hi[v]);
        const double r = std::tanh(0.3 * depth[v]);
        pos[v] = {r * std::cos(angle), r * std::sin(angle)};
    }
    for (std::size_t v = 0; v < n; ++v)
        if (depth[v] < 0) {
            const double angle = 2 * std::numbers::pi * static_cast<double>(v) / static_cast<double>(n);
            pos[v] = {std::cos(angle), std::sin(angle)};
        }
    return pos;
}

namespace {

std::string fmt(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

std::string escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string render_svg(const RotationGraph& g, const std::vector<SvgOverlay>& overlays, const SvgOptions& options,
                       Vertex root)
{
    const auto pos = disk_layout(g, root);
    const double s = options.size;
    const double margin = 20;
    const double caption_h = options.caption.empty() ? 0 : 24;
    const double title_h = options.title.empty() ? 0 : 28;
    auto X = [&](Vertex v) { return fmt(margin + (pos[v].x + 1) * 0.5 * (s - 2 * margin)); };
    auto Y = [&](Vertex v) { return fmt(title_h + margin + (1 - pos[v].y) * 0.5 * (s - 2 * margin)); };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.size << "\" height=\""
        << fmt(s + caption_h + title_h) << "\" viewBox=\"0 0 " << options.size << ' ' << fmt(s + caption_h + title_h)
        << "\">\n";
    if (!options.caption.empty()) out << "<!-- " << escape(options.caption) << " -->\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!options.title.empty())
        out << "<text x=\"" << fmt(s / 2) << "\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" "
            << "font-size=\"16\">" << escape(options.title) << "</text>\n";
    out << "<g stroke=\"" << options.base_color << "\" stroke-width=\"0.6\">\n";
    for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v)
        for (Vertex w : g.neighbors(v))
            if (v < w)
                out << "<line x1=\"" << X(v) << "\" y1=\"" << Y(v) << "\" x2=\"" << X(w) << "\" y2=\"" << Y(w)
                    << "\"/>\n";
    out << "</g>\n";
    for (const auto& layer : overlays) {
        out << "<g stroke=\"" << layer.color << "\" stroke-width=\"" << fmt(layer.stroke_width) << "\" fill=\""
            << layer.color << "\">\n";
        for (auto [a, b] : layer.edges)
            out << "<line x1=\"" << X(a) << "\" y1=\"" << Y(a) << "\" x2=\"" << X(b) << "\" y2=\"" << Y(b)
                << "\"/>\n";
        for (Vertex v : layer.vertices)
            out << "<circle cx=\"" << X(v) << "\" cy=\"" << Y(v) << "\" r=\"" << fmt(layer.vertex_radius)
                << "\" stroke=\"none\"/>\n";
        out << "</g>\n";
    }
    if (!options.caption.empty())
        out << "<text x=\"" << fmt(margin) << "\" y=\"" << fmt(s + title_h + caption_h - 8)
            << "\" font-family=\"monospace\" font-size=\"12\">" << escape(options.caption) << "</text>\n";
    out << "</svg>\n";
    return out.str();
}

}  // namespace hyperperc
