#include "treeph/gen.hpp"

#include <algorithm>
#include <set>

namespace treeph {

Quiver gen_rooted_tree_quiver(int size, Rng& rng) {
    if (size < 1) throw ValidationError("tree size must be at least 1");
    std::vector<VertexId> vertices;
    std::vector<EdgePair> edges;
    for (int k = 0; k < size; ++k) {
        vertices.push_back("q" + std::to_string(k));
        if (k > 0) edges.emplace_back(vertices[k], vertices[rng.below_int(k)]);
    }
    return build_quiver(std::move(vertices), std::move(edges));
}

TreeOverQ gen_tree_over(RootedTreePtr q, int size, Rng& rng) {
    if (size < 1) throw ValidationError("tree size must be at least 1");
    std::vector<VertexId> vertices{"t0"};
    std::vector<EdgePair> edges;
    std::vector<int> labels{q->root()};
    std::map<VertexId, VertexId> labeling{{"t0", q->root_id()}};
    std::vector<int> attachable;  // indices of vertices whose label has children
    if (!q->children(q->root()).empty()) attachable.push_back(0);
    for (int k = 1; k < size; ++k) {
        if (attachable.empty()) break;
        int u = attachable[rng.below_int(static_cast<int>(attachable.size()))];
        const std::vector<int>& options = q->children(labels[u]);
        int label = options[rng.below_int(static_cast<int>(options.size()))];
        VertexId id = "t" + std::to_string(k);
        vertices.push_back(id);
        edges.emplace_back(id, vertices[u]);
        labels.push_back(label);
        labeling[id] = q->id_of(label);
        if (!q->children(label).empty()) attachable.push_back(k);
    }
    return build_tree_over(std::move(q), build_quiver(std::move(vertices), std::move(edges)),
                           labeling);
}

namespace {

QFiltration assemble_filtration(RootedTreePtr q, std::vector<VertexId> vertices,
                                std::vector<GraphEdge> edges, Rng& rng) {
    const RootedTree& Q = *q;
    std::map<VertexId, VertexId> vertex_values;
    std::map<VertexId, int> value_index;
    for (const auto& v : vertices) {
        int x = rng.below_int(Q.size());
        value_index[v] = x;
        vertex_values[v] = Q.id_of(x);
    }
    std::map<GraphEdge, VertexId> edge_values;
    for (auto& [u, w] : edges) {
        if (w < u) std::swap(u, w);
        int sampled = rng.below_int(Q.size());
        int repaired = join(Q, join(Q, value_index.at(u), value_index.at(w)), sampled);
        edge_values[{u, w}] = Q.id_of(repaired);
    }
    Graph g = build_graph(std::move(vertices), std::move(edges));
    return validate_filtration(std::move(g), std::move(q), vertex_values, edge_values);
}

}  // namespace

QFiltration gen_filtration(RootedTreePtr q, int n_vertices, int edge_attempts, Rng& rng) {
    if (n_vertices < 0) throw ValidationError("vertex count must be nonnegative");
    std::vector<VertexId> vertices;
    for (int k = 0; k < n_vertices; ++k) vertices.push_back("v" + std::to_string(k));
    std::set<std::pair<int, int>> seen;
    std::vector<GraphEdge> edges;
    for (int t = 0; t < edge_attempts && n_vertices >= 2; ++t) {
        int a = rng.below_int(n_vertices);
        int b = rng.below_int(n_vertices);
        if (a == b) continue;
        if (!seen.insert({std::min(a, b), std::max(a, b)}).second) continue;
        edges.emplace_back(vertices[a], vertices[b]);
    }
    return assemble_filtration(std::move(q), std::move(vertices), std::move(edges), rng);
}

QFiltration gen_connected_filtration(RootedTreePtr q, int n_vertices, int extra_edges, Rng& rng) {
    if (n_vertices < 1) throw ValidationError("connected graph needs at least one vertex");
    std::vector<VertexId> vertices;
    for (int k = 0; k < n_vertices; ++k) vertices.push_back("v" + std::to_string(k));
    std::set<std::pair<int, int>> seen;
    std::vector<GraphEdge> edges;
    for (int k = 1; k < n_vertices; ++k) {
        int a = rng.below_int(k);
        seen.insert({a, k});
        edges.emplace_back(vertices[a], vertices[k]);
    }
    for (int t = 0; t < extra_edges && n_vertices >= 2; ++t) {
        int a = rng.below_int(n_vertices);
        int b = rng.below_int(n_vertices);
        if (a == b) continue;
        if (!seen.insert({std::min(a, b), std::max(a, b)}).second) continue;
        edges.emplace_back(vertices[a], vertices[b]);
    }
    return assemble_filtration(std::move(q), std::move(vertices), std::move(edges), rng);
}

}  // namespace treeph
