#pragma once

#include "treeph/core.hpp"
#include "treeph/decomp.hpp"
#include "treeph/filtration.hpp"

// Merge trees of linearly filtered graphs, morphisms of merge trees induced
// by pointwise-comparable filtrations, and the decomposable invariant of
// such a morphism.

namespace treeph {

// The linear rooted tree quiver 1 -> 2 -> ... -> n, rooted at n.
RootedTreePtr path_quiver(int n);

// A graph filtered by {1..n}: edge values dominate endpoint values.
struct LinearFiltration {
    Graph graph;
    int n = 0;
    std::map<VertexId, int> vertex_value;
    std::map<GraphEdge, int> edge_value;
};

// errors: value out of 1..n; missing value; edge below an endpoint.
LinearFiltration validate_linear_filtration(Graph g, int n,
                                            const std::map<VertexId, int>& vertex_values,
                                            const std::map<GraphEdge, int>& edge_values);

// The corresponding Q-filtration over the path quiver.
QFiltration to_q_filtration(const LinearFiltration& f);

// A tree over a path quiver.
using MergeTree = TreeOverQ;

// Componentwise summary of the sublevel filtration. pre: the level-n
// sublevel graph (the whole graph) is connected. errors: disconnected.
MergeTree merge_tree(const LinearFiltration& f);

// The morphism of merge trees induced by f <= g on the same graph: the
// merge tree of g re-expressed as a tree over the merge tree of f.
struct MergeMorphism {
    MergeTree codomain;          // merge tree of (K, f)
    TreeOverQ domain_over_codomain;  // merge tree of (K, g), labeled into codomain's tree
};

// pre: f <= g pointwise on vertices and edges; both connected at level n.
// Every node of the domain is labeled by the codomain node whose component
// contains it; containment is asserted on every run.
MergeMorphism merge_tree_morphism(const LinearFiltration& f, const LinearFiltration& g);

// The elder-rule decomposition of the domain tree as a representation of the
// codomain tree. Disconnected inputs are split into level-n components and
// processed independently, one part per component.
struct MorphismInvariantPart {
    MergeMorphism morphism;
    Decomposition decomposition;
};

std::vector<MorphismInvariantPart> morphism_invariant(const Graph& k, int n,
                                                      const std::map<VertexId, int>& f_vertices,
                                                      const std::map<GraphEdge, int>& f_edges,
                                                      const std::map<VertexId, int>& g_vertices,
                                                      const std::map<GraphEdge, int>& g_edges);

}  // namespace treeph
