#pragma once

#include <cstdint>
#include <utility>

#include "treeph/core.hpp"
#include "treeph/order.hpp"

// The elder-rule decomposition of a linearized tree over Q into reduced
// components (quadratic in the tree size), plus the single-split primitive.

namespace treeph {

struct Summand {
    VertexId apex;
    CanonicalKey key;
    TreeOverQ witness;  // reduced, over downset(ambient, apex)
    std::int64_t multiplicity;
};

// Krull-Schmidt multiset of a linearized tree or forest over Q. The witness
// dim vectors, scaled by multiplicity and extended by zero, sum to `dims`.
struct Decomposition {
    std::vector<Summand> summands;         // sorted by (apex, key)
    std::map<VertexId, std::int64_t> dims;  // per ambient Q vertex
};

// Deletes the edge drop_child -> parent, splitting off the subtree at
// drop_child as a direct summand. pre: drop_child and keep_child are
// distinct children of parent with equal labels and the dropped subtree
// precedes the kept one under the preorder. Returns (remaining tree over
// the same base, detached subtree over the downset at its label).
std::pair<TreeOverQ, TreeOverQ> elder_split(const TreeOverQ& t, const VertexId& parent,
                                            const VertexId& drop_child,
                                            const VertexId& keep_child);

struct TreeDecomposition {
    ForestOverQ subforest;  // t minus the deleted edges; every component reduced
    Decomposition decomposition;
};

// Level-by-level elder rule: at each vertex keep a maximal set of pairwise
// incomparable child subtrees per label class and cut the rest.
TreeDecomposition decompose_tree(const TreeOverQ& t);

// Multiset union of per-component decompositions over the shared ambient.
Decomposition decompose_forest(const ForestOverQ& f);

}  // namespace treeph
