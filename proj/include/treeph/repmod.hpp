#pragma once

#include <cstdint>
#include <span>

#include "treeph/core.hpp"
#include "treeph/filtration.hpp"
#include "treeph/order.hpp"

// Explicit linear-algebra realization over a prime field: linearization to
// 0/1 matrices, push-forward along downset inclusions, direct sums,
// coefficient quivers, exact hom-space dimensions, an independent H0
// dimension count, and the brute-force decomposition oracle. No floating
// point anywhere.

namespace treeph {

// Dense matrix over GF(p), row-major, entries reduced mod p.
struct GFMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::uint32_t> entries;

    GFMatrix() = default;
    GFMatrix(int r, int c) : rows(r), cols(c), entries(static_cast<size_t>(r) * c, 0) {}
    std::uint32_t at(int r, int c) const { return entries[static_cast<size_t>(r) * cols + c]; }
    void set(int r, int c, std::uint32_t v) { entries[static_cast<size_t>(r) * cols + c] = v; }
    bool operator==(const GFMatrix&) const = default;
};

// Rank by Gaussian elimination mod p. errors: p not prime or out of range.
int gf_rank(GFMatrix m, std::uint32_t p);

// A representation of Q over GF(p): a dimension per vertex and, for each
// edge c -> parent(c), a matrix of shape dims(parent) x dims(c) stored at
// the child index.
struct Representation {
    RootedTreePtr q;
    std::uint32_t p = 2;
    std::vector<int> dims;            // by Q index
    std::vector<GFMatrix> matrices;   // by child Q index; unused at the root

    int dim_of(const VertexId& v) const { return dims.at(q->index_of(v)); }
    std::map<VertexId, std::int64_t> dim_vector() const;
};

Representation zero_representation(RootedTreePtr q, std::uint32_t p);

// Push-forward of the constant representation: dims count the labeling
// fibers (basis ordered by vertex id) and every matrix entry is 0/1.
Representation linearize(const TreeOverQ& t, std::uint32_t p);

// Direct sum over the ambient of the pushed-forward component
// linearizations.
Representation linearize(const ForestOverQ& f, std::uint32_t p);

// Extends by zero outside the downset. errors: r's base is not the downset
// of q at r's root.
Representation push_forward_inclusion(const Representation& r, RootedTreePtr q);

// Blockwise sums; the empty list gives the zero representation.
Representation direct_sum(RootedTreePtr q, std::uint32_t p, std::span<const Representation> rs);

// Dimension of the space of morphisms m -> n, i.e. of solutions of the
// commuting system, with the root component forced to zero when
// zero_at_root. errors: base or characteristic mismatch.
int hom_dim(const Representation& m, const Representation& n, bool zero_at_root);

// One vertex per basis element, one edge per non-zero matrix entry. Basis
// element i at Q-vertex x is named "x#i".
Quiver coefficient_quiver(const Representation& r);

using DimVector = std::map<VertexId, std::int64_t>;

// Independent H0 dimensions: at each Q-vertex, components of the sublevel
// graph counted as |V| - rank of its incidence matrix. The count does not
// depend on p.
DimVector h0_dims_via_rank(const QFiltration& f, std::uint32_t p);

struct OracleSummand {
    VertexId apex;
    CanonicalKey key;
    std::int64_t multiplicity;
    bool operator==(const OracleSummand&) const = default;
};

// INCONCLUSIVE is a first-class outcome: the probe family is not proven to
// pin the multiset down.
struct OracleResult {
    bool conclusive = false;
    std::vector<OracleSummand> summands;  // meaningful only when conclusive
};

// Searches nonnegative multiplicity vectors over the catalog constrained by
// the dim vector, keeps those matching all hom-dim probes and the
// endomorphism dimension, and reports the multiset if exactly one survives.
// Exponential in the worst case; intended for small Q and total dimension.
// errors: zero survivors (the input was not a sum of catalog entries).
OracleResult oracle_decompose(const Representation& m,
                              const std::vector<Indecomposable>& catalog);

}  // namespace treeph
