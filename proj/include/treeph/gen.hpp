#pragma once

#include <cstdint>
#include <random>

#include "treeph/core.hpp"
#include "treeph/filtration.hpp"

// Seeded random instances for tests and the CLI: random recursive
// attachment for trees, random root-preserving walks for labelings, and
// monotone-repaired values for filtrations. Deterministic across platforms
// (mt19937_64 with plain modular reduction).

namespace treeph {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    // Uniform-ish value in [0, n).
    std::uint64_t below(std::uint64_t n) { return engine_() % n; }
    int below_int(int n) { return static_cast<int>(below(static_cast<std::uint64_t>(n))); }

private:
    std::mt19937_64 engine_;
};

// Rooted tree quiver with vertices q0..q{size-1}, each attached to a
// uniformly random earlier vertex; q0 is the root.
Quiver gen_rooted_tree_quiver(int size, Rng& rng);

// Tree over q grown by random attachment: each new vertex hangs below an
// existing vertex whose label has children, with a uniformly random child
// label. May stop early when no vertex can take children; at least the star
// is always produced.
TreeOverQ gen_tree_over(RootedTreePtr q, int size, Rng& rng);

// Random graph on n_vertices with up to edge_attempts distinct edges;
// vertex values uniform over q, edge values repaired upward to the join of
// the endpoints and a random vertex. Always validates.
QFiltration gen_filtration(RootedTreePtr q, int n_vertices, int edge_attempts, Rng& rng);

// Connected variant: a random spanning tree plus extra edges.
QFiltration gen_connected_filtration(RootedTreePtr q, int n_vertices, int extra_edges, Rng& rng);

}  // namespace treeph
