#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Core data model: quivers, rooted tree quivers, trees over a quiver,
// forests, downsets, and AHU-style canonical keys.
//
// All values are immutable after construction and safe to share across
// threads. Vertex identifiers are opaque strings; every tie-break is
// lexicographic on identifiers, so results do not depend on input order.

namespace treeph {

using VertexId = std::string;
using EdgePair = std::pair<VertexId, VertexId>;

// Invalid input or violated precondition. The CLI maps this to exit code 1.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A finite directed multigraph. Loops and parallel edges are representable
// here; rooted-tree validation rejects them.
struct Quiver {
    std::vector<VertexId> vertices;  // sorted, unique
    std::vector<EdgePair> edges;     // sorted (source, target) pairs

    bool has_vertex(const VertexId& v) const;
    bool operator==(const Quiver& other) const = default;
};

// errors: duplicate vertex id; edge endpoint undeclared; malformed id.
Quiver build_quiver(std::vector<VertexId> vertices, std::vector<EdgePair> edges);

// A tree quiver with exactly one sink (the root); edges point toward the
// root. Vertices are indexed 0..size-1 in lexicographic id order, so the
// smallest index in any set is also the lexicographically smallest id.
class RootedTree {
public:
    const Quiver& quiver() const { return quiver_; }
    int size() const { return static_cast<int>(quiver_.vertices.size()); }

    int index_of(const VertexId& v) const;  // throws ValidationError on unknown id
    const VertexId& id_of(int index) const { return quiver_.vertices.at(index); }

    int root() const { return root_; }
    const VertexId& root_id() const { return id_of(root_); }
    int parent(int index) const { return parent_.at(index); }  // -1 for the root
    const std::vector<int>& children(int index) const { return children_.at(index); }
    int level(int index) const { return level_.at(index); }
    int height() const { return height_; }
    // Vertices at a given level, ascending index order; empty when out of range.
    const std::vector<int>& at_level(int level) const;

    bool operator==(const RootedTree& other) const { return quiver_ == other.quiver_; }

private:
    friend RootedTree validate_rooted_tree(const Quiver& q);
    Quiver quiver_;
    std::vector<int> parent_;
    std::vector<std::vector<int>> children_;
    std::vector<int> level_;
    std::vector<std::vector<int>> by_level_;
    int root_ = -1;
    int height_ = 0;
};

using RootedTreePtr = std::shared_ptr<const RootedTree>;

// errors: empty quiver; loop; parallel edge; no sink (cycle); several sinks;
// non-root vertex with out-degree != 1; underlying graph not connected.
RootedTree validate_rooted_tree(const Quiver& q);
RootedTreePtr validate_rooted_tree_ptr(const Quiver& q);

// x <= y iff there is a directed path from x to y (y is an ancestor-or-self
// of x). The root is the maximum.
bool leq_q(const RootedTree& q, int x, int y);
bool leq_q(const RootedTree& q, const VertexId& x, const VertexId& y);

// Least common ancestor in the order above; every rooted tree quiver is a
// join-semilattice.
int join(const RootedTree& q, int x, int y);
VertexId join(const RootedTree& q, const VertexId& x, const VertexId& y);

// The induced subtree on {y : y <= x}, rooted at x. Vertex ids are preserved.
RootedTree downset(const RootedTree& q, const VertexId& x);
RootedTreePtr downset_ptr(const RootedTree& q, const VertexId& x);

// The unique ancestor of x at the given level. errors: level > level(x).
int ancestor_at_level(const RootedTree& q, int x, int level);
VertexId ancestor_at_level(const RootedTree& q, const VertexId& x, int level);

// A rooted tree T together with a root-preserving, edge-compatible labeling
// into a base rooted tree quiver. The labeling is necessarily
// level-preserving; construction asserts this.
class TreeOverQ {
public:
    const RootedTree& base() const { return *base_; }
    const RootedTreePtr& base_ptr() const { return base_; }
    const RootedTree& tree() const { return *tree_; }
    const RootedTreePtr& tree_ptr() const { return tree_; }

    // Label of a tree vertex, as a base index / base id.
    int label_of(int tree_index) const { return label_.at(tree_index); }
    const VertexId& label_id(const VertexId& tree_vertex) const;

    std::map<VertexId, VertexId> labeling_map() const;

    bool is_star() const { return tree_->size() == 1; }

private:
    friend TreeOverQ build_tree_over(RootedTreePtr base, RootedTreePtr tree,
                                     const std::map<VertexId, VertexId>& labeling);
    RootedTreePtr base_;
    RootedTreePtr tree_;
    std::vector<int> label_;  // tree index -> base index
};

// errors: tree root not mapped to base root; unlabeled vertex; some tree
// edge whose image is not an edge of the base.
TreeOverQ build_tree_over(RootedTreePtr base, RootedTreePtr tree,
                          const std::map<VertexId, VertexId>& labeling);
TreeOverQ build_tree_over(RootedTreePtr base, const Quiver& tree,
                          const std::map<VertexId, VertexId>& labeling);

// The one-vertex tree over Q, mapped to the root. The single vertex is
// named "*".
TreeOverQ star_over(RootedTreePtr base);

// Glue trees over the downsets of Q's root children under a fresh root.
// assignments[i] lists trees over downset(Q, c_i), where c_0 < c_1 < ... are
// the root's children in id order. The empty assignment yields the star.
// Glued vertices are renamed n0 (root), n1, n2, ... deterministically.
// errors: assignment count mismatch; an assigned tree whose base is not the
// expected downset.
TreeOverQ glue_trees_over(RootedTreePtr base,
                          const std::vector<std::vector<TreeOverQ>>& assignments);

// The subtree of t at a vertex, re-based over the downset of the base at the
// vertex's label. Vertex ids are preserved.
TreeOverQ subtree_over(const TreeOverQ& t, int tree_index);

// Root-deleted components of a tree over Q, grouped per root child of the
// base: the inverse of glue_trees_over up to isomorphism. Entry i lists the
// subtrees over downset(base, c_i) hanging below t's root in branch c_i.
std::vector<std::vector<TreeOverQ>> split_at_root(const TreeOverQ& t);

// AHU-style canonical form: "(" + label + sorted children keys + ")".
// Two trees over the same base have equal keys iff they are isomorphic
// over the base.
using CanonicalKey = std::string;
CanonicalKey canonical_key(const TreeOverQ& t);

// errors: mismatched ambient.
bool iso_over_q(const TreeOverQ& s, const TreeOverQ& t);

// A disjoint union of trees over downsets of a shared ambient Q; component
// i lives over downset(ambient, apex[i]).
struct ForestOverQ {
    RootedTreePtr ambient;
    std::vector<TreeOverQ> components;
    std::vector<VertexId> apexes;

    bool empty() const { return components.empty(); }
};

// errors: component base not the downset at its apex; components sharing a
// vertex id.
ForestOverQ make_forest_over(RootedTreePtr ambient, std::vector<TreeOverQ> components,
                             std::vector<VertexId> apexes);

// Quiver of covering pairs of a finite poset. The relation must be given in
// full. errors: relation not reflexive / not antisymmetric / not transitive;
// pair mentions an undeclared element.
Quiver hasse_quiver(const std::vector<VertexId>& elements,
                    const std::vector<std::pair<VertexId, VertexId>>& relation);

}  // namespace treeph
