#pragma once

#include <gmpxx.h>

#include <map>
#include <vector>

#include "treeph/core.hpp"

// The preorder on trees over Q, exact morphism counting, reducedness tests,
// and enumeration of all reduced trees over Q (the finite indecomposable
// list). All functions are pure; memo tables are call-local.

namespace treeph {

// Exact cardinality of the hom set; counts grow multiplicatively with
// branching, hence unbounded precision.
using HomCount = mpz_class;

// s precedes t iff every child subtree of s embeds order-wise under some
// same-labeled child subtree of t, recursively. Reflexive and transitive but
// not antisymmetric. errors: mismatched ambient.
bool tree_leq(const TreeOverQ& s, const TreeOverQ& t);

// Number of root-preserving, label-compatible quiver morphisms s -> t over
// the shared base. errors: mismatched ambient.
HomCount hom_count(const TreeOverQ& s, const TreeOverQ& t);

// Equivalent to tree_leq(s, t) and to hom_count(s, t) > 0.
bool exists_morphism(const TreeOverQ& s, const TreeOverQ& t);

// Definitional recursion: every vertex's same-labeled child subtrees are
// pairwise incomparable under the preorder.
bool is_reduced(const TreeOverQ& t);

// The interchangeable characterization: exactly one endomorphism over Q.
bool has_unique_endomorphism(const TreeOverQ& t);

// One representative per isomorphism class of reduced trees over the
// ambient, sorted by canonical key.
struct ReducedCatalog {
    RootedTreePtr ambient;
    std::vector<TreeOverQ> entries;
    std::map<CanonicalKey, int> by_key;
};

// Enumerates antichains of child catalogs recursively; exponential in the
// worst case and intended for desk-scale quivers. errors: catalog larger
// than the hard cap.
ReducedCatalog enumerate_reduced(RootedTreePtr q);

inline constexpr long kCatalogCap = 200000;

// A reduced tree over the downset at some vertex of Q; the linearizations of
// these are exactly the indecomposables.
struct Indecomposable {
    VertexId apex;
    TreeOverQ tree;  // over downset(Q, apex)
    CanonicalKey key;
};

// Union over all x in Q of enumerate_reduced(downset(Q, x)), tagged with the
// apex x; sorted by (apex, key).
std::vector<Indecomposable> enumerate_indecomposables(RootedTreePtr q);

}  // namespace treeph
