#pragma once

#include <map>
#include <vector>

#include "treeph/core.hpp"
#include "treeph/decomp.hpp"

// Q-filtered graphs and the union-find pipeline computing their H0 as a
// forest over Q, plus explicitly-given monotone graph functors and the
// restriction of grid bifiltrations to rooted tree posets.

namespace treeph {

// Unordered edge, stored with endpoints sorted.
using GraphEdge = std::pair<VertexId, VertexId>;

// A finite simple undirected graph.
struct Graph {
    std::vector<VertexId> vertices;  // sorted, unique
    std::vector<GraphEdge> edges;    // sorted, endpoints sorted per edge

    bool has_vertex(const VertexId& v) const;
    bool operator==(const Graph& other) const = default;
};

// errors: duplicate vertex; loop; duplicate edge; undeclared endpoint.
Graph build_graph(std::vector<VertexId> vertices, std::vector<GraphEdge> edges);

// Disjoint-set structure over dynamically added elements, with path
// compression and union by rank.
class UnionFind {
public:
    void add(int element);
    int find(int element);
    // Merges the two classes; returns false when already joined.
    bool unite(int a, int b);
    bool contains(int element) const;
    // Current class roots in ascending order.
    std::vector<int> representatives() const;

private:
    std::map<int, int> parent_;
    std::map<int, int> rank_;
};

// A graph whose cells carry monotone Q-values: endpoint values precede edge
// values in the order on Q.
struct QFiltration {
    Graph graph;
    RootedTreePtr q;
    std::map<VertexId, VertexId> vertex_value;   // h_V
    std::map<GraphEdge, VertexId> edge_value;    // h_E

    bool operator==(const QFiltration& other) const;
};

// errors: missing value; monotonicity violation naming the offending edge.
QFiltration validate_filtration(Graph g, RootedTreePtr q,
                                const std::map<VertexId, VertexId>& vertex_values,
                                const std::map<GraphEdge, VertexId>& edge_values);

// Sweeps levels from the deepest occupied one up to the root, merging along
// edges and emitting one forest node per class per level; the linearization
// of the result is H0 of the filtration. Node ids are "<member>@<level>"
// with <member> the smallest vertex of the class.
ForestOverQ filtration_to_forest(const QFiltration& f);

// Same sweep, additionally recording for every level the forest node id of
// each graph vertex present at that level. Quadratic-size bookkeeping, used
// by the merge-tree pipeline.
struct TrackedForest {
    ForestOverQ forest;
    // node_at_level[l] maps graph vertex -> forest node id, for levels 0..max.
    std::vector<std::map<VertexId, VertexId>> node_at_level;
};
TrackedForest filtration_to_forest_tracked(const QFiltration& f);

// decompose_forest(filtration_to_forest(f)).
Decomposition decompose_h0(const QFiltration& f);

// An explicitly given monotone assignment of subgraphs to Q-vertices: the
// subgraph at x is contained in the subgraph at every y above x.
struct GraphFunctor {
    RootedTreePtr q;
    std::map<VertexId, Graph> assignment;  // one entry per Q-vertex
};

// errors: missing Q-vertex; monotonicity violation on a covering pair.
GraphFunctor validate_graph_functor(RootedTreePtr q, std::map<VertexId, Graph> assignment);

// The sublevel functor of a filtration: F(x) = cells valued below x.
GraphFunctor functor_of_filtration(const QFiltration& f);

// One forest node per (Q-vertex, connected component of the assigned
// subgraph), with the containment edges. Agrees with filtration_to_forest on
// functors arising from a filtration.
ForestOverQ sigma_of_functor(const GraphFunctor& f);

// A cell value in an m x n grid, components in {1..m} x {1..n}.
struct GridValue {
    int i = 0;
    int j = 0;
    bool operator==(const GridValue&) const = default;
    bool leq(const GridValue& other) const { return i <= other.i && j <= other.j; }
};

// Restriction of a graph bifiltration to a rooted tree poset embedded in the
// grid: F(p) = cells whose grid value lies componentwise below e(p).
// errors: non-monotone grid values; embedding not order-preserving.
GraphFunctor restrict_bifiltration(const Graph& g,
                                   const std::map<VertexId, GridValue>& vertex_values,
                                   const std::map<GraphEdge, GridValue>& edge_values,
                                   RootedTreePtr p,
                                   const std::map<VertexId, GridValue>& embedding);

}  // namespace treeph
