#include "hyperperc/tree.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include <Eigen/Eigenvalues>

#include "hyperperc/errors.hpp"

namespace hyperperc {

namespace {

int mod(int a, int m)
{
    int r = a % m;
    return r < 0 ? r + m : r;
}

int type_index(char c) { return c == kZero ? 0 : (c == kHalf ? 1 : 2); }

void check_condition(const RotationGraph& g, Vertex v, int condition)
{
    const int d = g.degree(v);
    if (condition == 1) {
        if (d < 7) throw PreconditionError("tree condition 1 needs degree >= 7 at vertex " + std::to_string(v));
        return;
    }
    if (d < 5) throw PreconditionError("tree condition 2 needs degree >= 5 at vertex " + std::to_string(v));
    const auto& faces = g.faces();
    for (int s = 0; s < d; ++s) {
        FaceId f = g.face_at(v, s);
        if (!faces.finite(f) || faces.degree(f) < 4)
            throw PreconditionError("tree condition 2 needs face degrees >= 4 at vertex " + std::to_string(v));
    }
}

// (digit, slot) pairs for the children of a node, in label order 0, 1/2, 1.
std::vector<std::pair<char, int>> child_slots(const TreeNode& node, int turn, int start_slot)
{
    if (node.parent < 0) return {{kZero, start_slot}, {kOne, start_slot + 1}};
    const int a = node.in_slot;
    switch (node.type()) {
    case kZero:
        return {{kZero, a + turn}, {kOne, a + turn + 1}};
    case kHalf:
        return {{kZero, a - turn - 1}, {kOne, a - turn}};
    default:
        return {{kZero, a - turn - 2}, {kHalf, a - turn - 1}, {kOne, a - turn}};
    }
}

}  // namespace

std::string display_label(const Label& b)
{
    if (b.empty()) return "()";
    std::string out;
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (i) out += ',';
        out += b[i] == kHalf ? std::string("1/2") : std::string(1, b[i]);
    }
    return out;
}

std::vector<char> child_digits(const Label& b)
{
    if (!b.empty() && b.back() == kOne) return {kZero, kHalf, kOne};
    return {kZero, kOne};
}

bool is_legal_label(const Label& b)
{
    for (std::size_t j = 0; j < b.size(); ++j) {
        if (b[j] != kZero && b[j] != kHalf && b[j] != kOne) return false;
        if (b[j] == kHalf && (j == 0 || b[j - 1] != kOne)) return false;
    }
    return true;
}

std::optional<Vertex> TreeEmbedding::vertex_of(const Label& b) const
{
    auto it = index.find(b);
    if (it == index.end()) return std::nullopt;
    return nodes[it->second].vertex;
}

std::vector<std::pair<Vertex, Vertex>> TreeEmbedding::tree_edges() const
{
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(nodes.size());
    for (const auto& n : nodes)
        if (n.parent >= 0) out.emplace_back(nodes[n.parent].vertex, n.vertex);
    return out;
}

std::vector<Vertex> TreeEmbedding::vertices() const
{
    std::vector<Vertex> out;
    out.reserve(nodes.size());
    for (const auto& n : nodes) out.push_back(n.vertex);
    return out;
}

std::vector<Vertex> TreeEmbedding::path(const Label& b) const
{
    auto it = index.find(b);
    if (it == index.end()) return {};
    std::vector<Vertex> out;
    const auto& node = nodes[it->second];
    if (node.parent >= 0) out.push_back(nodes[node.parent].vertex);
    out.push_back(node.vertex);
    if (b.empty()) return out;
    const char cont = b.back() == kZero ? kZero : kOne;
    Label cur = b;
    for (;;) {
        cur.push_back(cont);
        auto next = index.find(cur);
        if (next == index.end()) break;
        out.push_back(nodes[next->second].vertex);
    }
    return out;
}

std::vector<std::int64_t> TreeEmbedding::level_sizes() const
{
    std::vector<std::int64_t> out;
    for (const auto& n : nodes) {
        if (n.label.empty()) continue;
        if (out.size() < n.label.size()) out.resize(n.label.size(), 0);
        ++out[n.label.size() - 1];
    }
    return out;
}

std::vector<std::array<std::int64_t, 3>> TreeEmbedding::level_types() const
{
    std::vector<std::array<std::int64_t, 3>> out;
    for (const auto& n : nodes) {
        if (n.label.empty()) continue;
        if (out.size() < n.label.size()) out.resize(n.label.size(), {0, 0, 0});
        ++out[n.label.size() - 1][type_index(n.type())];
    }
    return out;
}

TreeEmbedding grow_tree(const RotationGraph& g, Vertex root, int start_slot, int condition, int depth_cap)
{
    if (condition != 1 && condition != 2) throw PreconditionError("tree condition must be 1 or 2");
    if (depth_cap < 0) throw PreconditionError("depth cap must be nonnegative");
    if (root < 0 || root >= static_cast<Vertex>(g.vertex_count())) throw PreconditionError("root out of range");

    TreeEmbedding t;
    t.root = root;
    t.condition = condition;
    t.turn = condition == 1 ? 3 : 2;
    t.depth_cap = depth_cap;
    t.start_slot = g.degree(root) > 0 ? mod(start_slot, g.degree(root)) : 0;
    t.nodes.push_back(TreeNode{Label{}, root, -1, -1, g.is_boundary(root), {}});
    t.index.emplace(Label{}, 0);
    if (g.is_boundary(root)) {
        t.truncated = true;
        return t;
    }

    std::unordered_set<Vertex> used{root};
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
        if (t.nodes[i].truncated || static_cast<int>(t.nodes[i].label.size()) > depth_cap) continue;
        const Vertex v = t.nodes[i].vertex;
        check_condition(g, v, condition);
        for (auto [digit, slot] : child_slots(t.nodes[i], t.turn, t.start_slot)) {
            const Vertex w = g.neighbor(v, slot);
            Label label = t.nodes[i].label + digit;
            if (!used.insert(w).second)
                throw InvariantViolation("tree paths meet at vertex " + std::to_string(w) + " (label " +
                                         display_label(label) + ")");
            TreeNode child{label, w, static_cast<int>(i), g.slot_of(w, v), g.is_boundary(w), {}};
            t.truncated = t.truncated || child.truncated;
            t.nodes[i].children.push_back(static_cast<int>(t.nodes.size()));
            t.index.emplace(std::move(label), static_cast<int>(t.nodes.size()));
            t.nodes.push_back(std::move(child));
        }
    }
    return t;
}

TypeMatrix label_type_matrix()
{
    TypeMatrix m{};
    for (char parent : {kZero, kHalf, kOne})
        for (char c : child_digits(Label(1, parent))) m[type_index(parent)][type_index(c)] += 1;
    return m;
}

TypeMatrix observed_type_matrix(const TreeEmbedding& t)
{
    TypeMatrix m{};
    std::array<bool, 3> seen{false, false, false};
    for (const auto& n : t.nodes) {
        if (n.parent < 0 || n.children.empty()) continue;
        std::array<double, 3> row{0, 0, 0};
        for (int c : n.children) row[type_index(t.nodes[c].type())] += 1;
        const int r = type_index(n.type());
        if (seen[r] && row != m[r])
            throw InvariantViolation("tree nodes of type " + display_label(Label(1, n.type())) +
                                     " have different child counts");
        m[r] = row;
        seen[r] = true;
    }
    return m;
}

TreePc tree_pc(const TypeMatrix& m)
{
    Eigen::Matrix3d a;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a(i, j) = m[i][j];
    Eigen::EigenSolver<Eigen::Matrix3d> solver(a, false);
    double lambda = 0;
    for (int i = 0; i < 3; ++i) lambda = std::max(lambda, solver.eigenvalues()[i].real());
    TreePc out;
    out.perron_root = lambda;
    out.pc = lambda > 0 ? 1.0 / lambda : 1.0;
    out.closed_form_bound = std::pow(2.0, -2.0 / 3.0) * std::pow(3.0, -1.0 / 3.0);
    return out;
}

std::vector<Vertex> Chandelier::vertices() const
{
    auto out = subtree.vertices();
    out.push_back(root);
    out.push_back(v1);
    std::sort(out.begin(), out.end());
    return out;
}

Chandelier build_chandelier(const RotationGraph& g, DirectedEdge spine, Side side, int depth_cap)
{
    const Vertex v = spine.from;
    const Vertex v1 = spine.to;
    if (v < 0 || v >= static_cast<Vertex>(g.vertex_count()) || !g.adjacent(v, v1))
        throw PreconditionError("chandelier spine is not an edge");
    if (g.is_boundary(v) || g.is_boundary(v1))
        throw ResourceError("patch too small: chandelier at vertex " + std::to_string(v) + " reaches the boundary");
    check_condition(g, v1, 1);

    Chandelier c;
    c.root = v;
    c.v1 = v1;
    c.side = side;
    const int a = g.slot_of(v1, v);
    c.v2 = g.neighbor(v1, side == Side::left ? a - 3 : a + 3);
    const int b = g.slot_of(c.v2, v1);
    c.subtree = grow_tree(g, c.v2, side == Side::left ? b + 3 : b - 4, 1, depth_cap);
    c.l1 = c.subtree.path(Label(1, side == Side::left ? kOne : kZero));
    c.l2 = c.subtree.path(Label(1, side == Side::left ? kZero : kOne));

    if (faces_between(g, v1, {v, v1}, {v1, c.v2}, side) != 3)
        throw InvariantViolation("chandelier spine does not keep 3 faces on its side");
    for (const auto& n : c.subtree.nodes)
        if (n.vertex == v || n.vertex == v1)
            throw InvariantViolation("chandelier subtree returns to its spine at vertex " + std::to_string(n.vertex));
    if (!c.l1.empty() && !c.l2.empty()) {
        std::vector<Vertex> x(c.l1.begin(), c.l1.end());
        std::vector<Vertex> y(c.l2.begin(), c.l2.end());
        std::sort(x.begin(), x.end());
        std::sort(y.begin(), y.end());
        std::vector<Vertex> both;
        std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(both));
        if (both != std::vector<Vertex>{c.v2}) throw InvariantViolation("chandelier boundary paths meet away from v2");
    }
    return c;
}

namespace {

void require_disjoint(const std::vector<const Chandelier*>& list, const std::string& what)
{
    std::unordered_map<Vertex, std::size_t> owner;
    for (std::size_t i = 0; i < list.size(); ++i) {
        for (Vertex x : list[i]->vertices()) {
            auto [it, fresh] = owner.emplace(x, i);
            if (!fresh && it->second != i)
                throw InvariantViolation(what + " chandeliers rooted at " + std::to_string(list[it->second]->root) +
                                         " and " + std::to_string(list[i]->root) + " share vertex " +
                                         std::to_string(x));
        }
    }
}

}  // namespace

ChandelierSequence chandelier_sequence(const RotationGraph& g, std::span<const Vertex> geodesic, int depth_cap)
{
    const auto n = static_cast<int>(geodesic.size());
    if (n < 1) throw PreconditionError("geodesic is empty");
    for (Vertex x : geodesic)
        if (x < 0 || x >= static_cast<Vertex>(g.vertex_count())) throw PreconditionError("geodesic vertex out of range");
    for (int i = 0; i + 1 < n; ++i)
        if (!g.adjacent(geodesic[i], geodesic[i + 1])) throw PreconditionError("geodesic has a non-edge step");
    if (g.is_boundary(geodesic.front()) || g.is_boundary(geodesic.back()))
        throw PreconditionError("geodesic endpoints must be interior");
    if (bfs_distances(g, geodesic.front())[geodesic.back()] != n - 1)
        throw PreconditionError("path is not a shortest path");

    ChandelierSequence seq;
    Vertex last_left = kNoVertex;
    Vertex last_right = kNoVertex;
    for (int i = 1; i + 1 < n; ++i) {
        const Vertex z = geodesic[i];
        const int d = g.degree(z);
        const int in = g.slot_of(z, geodesic[i - 1]);
        const int out = g.slot_of(z, geodesic[i + 1]);
        const int right_wedges = mod(out - in, d);
        const int left_wedges = d - right_wedges;
        auto attempt = [&](Side side, Vertex& last, std::vector<Chandelier>& into, std::vector<int>& pos, int& empty) {
            const Vertex a = g.neighbor(z, side == Side::left ? in - 1 : in + 1);
            if (a == last) return;
            last = a;
            try {
                into.push_back(build_chandelier(g, DirectedEdge{z, a}, side, depth_cap));
                pos.push_back(i);
            } catch (const ResourceError&) {
                ++empty;
            }
        };
        if (left_wedges >= 2) attempt(Side::left, last_left, seq.left, seq.left_position, seq.empty_left);
        if (right_wedges >= 2) attempt(Side::right, last_right, seq.right, seq.right_position, seq.empty_right);
    }

    std::vector<const Chandelier*> ls;
    std::vector<const Chandelier*> rs;
    for (const auto& c : seq.left) ls.push_back(&c);
    for (const auto& c : seq.right) rs.push_back(&c);
    require_disjoint(ls, "left");
    require_disjoint(rs, "right");

    std::size_t li = 0;
    std::size_t ri = 0;
    int last = -1;
    std::vector<const Chandelier*> chosen;
    for (;;) {
        while (li < seq.left.size() && seq.left_position[li] <= last) ++li;
        if (li == seq.left.size()) break;
        while (ri < seq.right.size() && seq.right_position[ri] <= seq.left_position[li]) ++ri;
        if (ri == seq.right.size()) break;
        seq.alternating.emplace_back(static_cast<int>(li), static_cast<int>(ri));
        chosen.push_back(&seq.left[li]);
        chosen.push_back(&seq.right[ri]);
        last = seq.right_position[ri];
    }
    require_disjoint(chosen, "alternating");
    return seq;
}

}  // namespace hyperperc
