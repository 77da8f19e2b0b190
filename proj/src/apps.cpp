#include "treeph/apps.hpp"

#include <algorithm>

namespace treeph {

RootedTreePtr path_quiver(int n) {
    if (n < 1) throw ValidationError("path quiver needs at least one vertex");
    std::vector<VertexId> vertices;
    std::vector<EdgePair> edges;
    for (int k = 1; k <= n; ++k) {
        vertices.push_back(std::to_string(k));
        if (k < n) edges.emplace_back(std::to_string(k), std::to_string(k + 1));
    }
    return validate_rooted_tree_ptr(build_quiver(std::move(vertices), std::move(edges)));
}

LinearFiltration validate_linear_filtration(Graph g, int n,
                                            const std::map<VertexId, int>& vertex_values,
                                            const std::map<GraphEdge, int>& edge_values) {
    if (n < 1) throw ValidationError("filtration length must be at least 1");
    auto check_range = [&](int value, const std::string& what) {
        if (value < 1 || value > n)
            throw ValidationError(what + " has value " + std::to_string(value) +
                                  " outside 1.." + std::to_string(n));
    };
    for (const auto& v : g.vertices) {
        auto it = vertex_values.find(v);
        if (it == vertex_values.end()) throw ValidationError("vertex '" + v + "' has no value");
        check_range(it->second, "vertex '" + v + "'");
    }
    if (vertex_values.size() != g.vertices.size())
        throw ValidationError("vertex values mention vertices outside the graph");
    for (const auto& e : g.edges) {
        auto it = edge_values.find(e);
        if (it == edge_values.end())
            throw ValidationError("edge {" + e.first + ", " + e.second + "} has no value");
        check_range(it->second, "edge {" + e.first + ", " + e.second + "}");
        if (it->second < vertex_values.at(e.first) || it->second < vertex_values.at(e.second))
            throw ValidationError("edge {" + e.first + ", " + e.second +
                                  "} appears before one of its endpoints");
    }
    if (edge_values.size() != g.edges.size())
        throw ValidationError("edge values mention edges outside the graph");
    return LinearFiltration{std::move(g), n, vertex_values, edge_values};
}

QFiltration to_q_filtration(const LinearFiltration& f) {
    RootedTreePtr q = path_quiver(f.n);
    std::map<VertexId, VertexId> vv;
    for (const auto& [v, value] : f.vertex_value) vv[v] = std::to_string(value);
    std::map<GraphEdge, VertexId> ev;
    for (const auto& [e, value] : f.edge_value) ev[e] = std::to_string(value);
    return validate_filtration(f.graph, std::move(q), vv, ev);
}

namespace {

// Connected components of the full graph, as sorted vertex lists sorted by
// smallest member.
std::vector<std::vector<VertexId>> graph_components(const Graph& g) {
    std::map<VertexId, int> index;
    for (size_t i = 0; i < g.vertices.size(); ++i) index[g.vertices[i]] = static_cast<int>(i);
    UnionFind uf;
    for (size_t i = 0; i < g.vertices.size(); ++i) uf.add(static_cast<int>(i));
    for (const auto& [u, w] : g.edges) uf.unite(index.at(u), index.at(w));
    std::map<int, std::vector<VertexId>> by_root;
    for (size_t i = 0; i < g.vertices.size(); ++i)
        by_root[uf.find(static_cast<int>(i))].push_back(g.vertices[i]);
    std::vector<std::vector<VertexId>> out;
    for (auto& [root, members] : by_root) out.push_back(std::move(members));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

MergeTree merge_tree(const LinearFiltration& f) {
    if (f.graph.vertices.empty())
        throw ValidationError("the empty graph has no merge tree");
    if (graph_components(f.graph).size() != 1)
        throw ValidationError("filtration is disconnected at level " + std::to_string(f.n));
    ForestOverQ forest = filtration_to_forest(to_q_filtration(f));
    if (forest.components.size() != 1)
        throw std::logic_error("internal: connected filtration produced several components");
    return forest.components[0];
}

MergeMorphism merge_tree_morphism(const LinearFiltration& f, const LinearFiltration& g) {
    if (!(f.graph == g.graph))
        throw ValidationError("the two filtrations live on different graphs");
    if (f.n != g.n) throw ValidationError("the two filtrations have different lengths");
    for (const auto& v : f.graph.vertices)
        if (f.vertex_value.at(v) > g.vertex_value.at(v))
            throw ValidationError("f > g at vertex '" + v + "'");
    for (const auto& e : f.graph.edges)
        if (f.edge_value.at(e) > g.edge_value.at(e))
            throw ValidationError("f > g at edge {" + e.first + ", " + e.second + "}");
    if (f.graph.vertices.empty()) throw ValidationError("the empty graph has no merge tree");
    if (graph_components(f.graph).size() != 1)
        throw ValidationError("filtration is disconnected at level " + std::to_string(f.n));

    TrackedForest tf = filtration_to_forest_tracked(to_q_filtration(f));
    TrackedForest tg = filtration_to_forest_tracked(to_q_filtration(g));
    if (tf.forest.components.size() != 1 || tg.forest.components.size() != 1)
        throw std::logic_error("internal: connected filtration produced several components");
    const MergeTree& codomain = tf.forest.components[0];
    const MergeTree& domain = tg.forest.components[0];

    // Each domain node is the class of its members at its level; the label
    // is the codomain node containing those members. All members must land
    // in the same codomain node.
    std::map<VertexId, VertexId> labeling;
    const RootedTree& dt = domain.tree();
    for (int i = 0; i < dt.size(); ++i) labeling[dt.id_of(i)] = "";
    for (size_t level = 0; level < tg.node_at_level.size(); ++level) {
        for (const auto& [vertex, domain_node] : tg.node_at_level[level]) {
            const VertexId& codomain_node = tf.node_at_level.at(level).at(vertex);
            VertexId& slot = labeling.at(domain_node);
            if (slot.empty())
                slot = codomain_node;
            else if (slot != codomain_node)
                throw std::logic_error(
                    "internal: domain component not contained in one codomain component");
        }
    }
    for (const auto& [node, label] : labeling)
        if (label.empty()) throw std::logic_error("internal: domain node with no members");

    TreeOverQ domain_over_codomain =
        build_tree_over(codomain.tree_ptr(), domain.tree_ptr(), labeling);
    return MergeMorphism{codomain, std::move(domain_over_codomain)};
}

std::vector<MorphismInvariantPart> morphism_invariant(const Graph& k, int n,
                                                      const std::map<VertexId, int>& f_vertices,
                                                      const std::map<GraphEdge, int>& f_edges,
                                                      const std::map<VertexId, int>& g_vertices,
                                                      const std::map<GraphEdge, int>& g_edges) {
    validate_linear_filtration(k, n, f_vertices, f_edges);
    validate_linear_filtration(k, n, g_vertices, g_edges);

    std::vector<MorphismInvariantPart> parts;
    for (const std::vector<VertexId>& members : graph_components(k)) {
        std::vector<GraphEdge> edges;
        std::map<VertexId, int> fv, gv;
        std::map<GraphEdge, int> fe, ge;
        for (const auto& v : members) {
            fv[v] = f_vertices.at(v);
            gv[v] = g_vertices.at(v);
        }
        for (const auto& e : k.edges) {
            if (!std::binary_search(members.begin(), members.end(), e.first)) continue;
            edges.push_back(e);
            fe[e] = f_edges.at(e);
            ge[e] = g_edges.at(e);
        }
        Graph sub = build_graph(members, std::move(edges));
        MergeMorphism morphism =
            merge_tree_morphism(validate_linear_filtration(sub, n, fv, fe),
                                validate_linear_filtration(sub, n, gv, ge));
        Decomposition decomposition = decompose_tree(morphism.domain_over_codomain).decomposition;
        parts.push_back(MorphismInvariantPart{std::move(morphism), std::move(decomposition)});
    }
    return parts;
}

}  // namespace treeph
