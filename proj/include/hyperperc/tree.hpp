#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hyperperc/graph.hpp"
#include "hyperperc/walks.hpp"

namespace hyperperc {

// Labels are words over {0, 1/2, 1}, stored as strings over '0', 'h', '1'.
using Label = std::string;

inline constexpr char kZero = '0';
inline constexpr char kHalf = 'h';
inline constexpr char kOne = '1';

// "1,1/2,0" style rendering; the root renders as "()".
std::string display_label(const Label& b);
// Child digits allowed after the last digit of b (the empty word acts as a
// type-0 node with children {0, 1}).
std::vector<char> child_digits(const Label& b);
bool is_legal_label(const Label& b);

struct TreeNode {
    Label label;
    Vertex vertex = kNoVertex;
    int parent = -1;   // node index, -1 for the root
    int in_slot = -1;  // slot of the parent vertex in the rotation of `vertex`
    bool truncated = false;  // boundary vertex, not expanded
    std::vector<int> children;

    char type() const { return label.empty() ? kZero : label.back(); }
};

// Embedded tree whose vertices are indexed by legal labels. Nodes are stored
// level by level; node 0 is the root.
struct TreeEmbedding {
    Vertex root = kNoVertex;
    int condition = 1;
    int turn = 3;
    int depth_cap = 0;
    int start_slot = 0;
    bool truncated = false;
    std::vector<TreeNode> nodes;
    std::unordered_map<Label, int> index;

    std::optional<Vertex> vertex_of(const Label& b) const;
    std::vector<std::pair<Vertex, Vertex>> tree_edges() const;
    std::vector<Vertex> vertices() const;
    // pi_b: parent of v_b, v_b, then the continuation digit (0 if b ends in 0,
    // otherwise 1) repeated while the tree has the node.
    std::vector<Vertex> path(const Label& b) const;
    // Number of labels of each length k >= 1.
    std::vector<std::int64_t> level_sizes() const;
    // Per level k >= 1, counts of node types (0, 1/2, 1).
    std::vector<std::array<std::int64_t, 3>> level_types() const;
};

// Self-avoiding labelled tree embedded in g. condition 1: interior degrees >= 7, paths keep
// 3 faces on their turning side. condition 2: degrees >= 5 and face degrees
// >= 4, paths keep 2 faces. The root's children sit at slots start_slot and
// start_slot + 1, so they share the face in that wedge. Labels have length at
// most depth_cap + 1.
TreeEmbedding grow_tree(const RotationGraph& g, Vertex root, int start_slot, int condition, int depth_cap);

// Type-transition matrix over (0, 1/2, 1): row = parent type, column = child type.
using TypeMatrix = std::array<std::array<double, 3>, 3>;
TypeMatrix label_type_matrix();
// Matrix read off the expanded nodes of a grown tree.
TypeMatrix observed_type_matrix(const TreeEmbedding& t);

struct TreePc {
    double perron_root = 0;
    double pc = 0;               // 1 / perron_root
    double closed_form_bound = 0;  // 2^{-2/3} 3^{-1/3}
};
TreePc tree_pc(const TypeMatrix& m = label_type_matrix());

struct Chandelier {
    Vertex root = kNoVertex;
    Vertex v1 = kNoVertex;
    Vertex v2 = kNoVertex;
    Side side = Side::left;
    TreeEmbedding subtree;  // rooted at v2
    std::vector<Vertex> l1;  // boundary path turning towards `side`
    std::vector<Vertex> l2;

    // {root, v1} plus the subtree vertices, sorted.
    std::vector<Vertex> vertices() const;
};

// Chandelier (side = left) or anti-chandelier (side = right) with spine
// root -> v1 -> v2; at v1 exactly 3 face incidences lie on `side`. Throws
// ResourceError("patch too small") if root or v1 is boundary-flagged.
Chandelier build_chandelier(const RotationGraph& g, DirectedEdge spine, Side side, int depth_cap);
inline Chandelier build_chandelier(const RotationGraph& g, Vertex root, Side side, int depth_cap, int first_slot = 0)
{
    return build_chandelier(g, DirectedEdge{root, g.neighbor(root, first_slot)}, side, depth_cap);
}

struct ChandelierSequence {
    std::vector<Chandelier> left;
    std::vector<Chandelier> right;
    std::vector<int> left_position;   // geodesic index of each left root
    std::vector<int> right_position;
    int empty_left = 0;   // selected roots whose chandelier runs off the patch
    int empty_right = 0;
    std::vector<std::pair<int, int>> alternating;  // (left, right) indices

    int pair_count() const { return static_cast<int>(alternating.size()); }
};

// Chandeliers on both sides of a geodesic. Throws PreconditionError if the
// path is not a shortest path between interior vertices, InvariantViolation
// if same-side chandeliers or the alternating subsequence intersect.
ChandelierSequence chandelier_sequence(const RotationGraph& g, std::span<const Vertex> geodesic, int depth_cap);

}  // namespace hyperperc
