#include "treeph/filtration.hpp"

#include <algorithm>
#include <set>

namespace treeph {

namespace {

void check_graph_id(const VertexId& v) {
    if (v.empty()) throw ValidationError("vertex id must be a nonempty string");
    for (unsigned char c : v)
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r')
            throw ValidationError("vertex id '" + v + "' contains whitespace");
}

}  // namespace

bool Graph::has_vertex(const VertexId& v) const {
    return std::binary_search(vertices.begin(), vertices.end(), v);
}

Graph build_graph(std::vector<VertexId> vertices, std::vector<GraphEdge> edges) {
    for (const auto& v : vertices) check_graph_id(v);
    std::sort(vertices.begin(), vertices.end());
    auto dup = std::adjacent_find(vertices.begin(), vertices.end());
    if (dup != vertices.end()) throw ValidationError("duplicate vertex id '" + *dup + "'");
    Graph g;
    g.vertices = std::move(vertices);
    for (auto& [u, w] : edges) {
        if (u == w) throw ValidationError("loop at vertex '" + u + "' is not allowed");
        if (!g.has_vertex(u)) throw ValidationError("edge endpoint '" + u + "' is not declared");
        if (!g.has_vertex(w)) throw ValidationError("edge endpoint '" + w + "' is not declared");
        if (w < u) std::swap(u, w);
    }
    std::sort(edges.begin(), edges.end());
    auto edup = std::adjacent_find(edges.begin(), edges.end());
    if (edup != edges.end())
        throw ValidationError("duplicate edge {" + edup->first + ", " + edup->second + "}");
    g.edges = std::move(edges);
    return g;
}

void UnionFind::add(int element) {
    if (parent_.count(element)) throw ValidationError("element already present in union-find");
    parent_[element] = element;
    rank_[element] = 0;
}

bool UnionFind::contains(int element) const { return parent_.count(element) > 0; }

int UnionFind::find(int element) {
    auto it = parent_.find(element);
    if (it == parent_.end()) throw ValidationError("element not present in union-find");
    int root = element;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[element] != root) {
        int next = parent_[element];
        parent_[element] = root;
        element = next;
    }
    return root;
}

bool UnionFind::unite(int a, int b) {
    int ra = find(a), rb = find(b);
    if (ra == rb) return false;
    if (rank_[ra] < rank_[rb]) std::swap(ra, rb);
    parent_[rb] = ra;
    if (rank_[ra] == rank_[rb]) rank_[ra]++;
    return true;
}

std::vector<int> UnionFind::representatives() const {
    std::vector<int> roots;
    for (const auto& [e, p] : parent_)
        if (e == p) roots.push_back(e);
    return roots;  // map order is already ascending
}

bool QFiltration::operator==(const QFiltration& other) const {
    return graph == other.graph && *q == *other.q && vertex_value == other.vertex_value &&
           edge_value == other.edge_value;
}

QFiltration validate_filtration(Graph g, RootedTreePtr q,
                                const std::map<VertexId, VertexId>& vertex_values,
                                const std::map<GraphEdge, VertexId>& edge_values) {
    for (const auto& v : g.vertices) {
        auto it = vertex_values.find(v);
        if (it == vertex_values.end())
            throw ValidationError("vertex '" + v + "' has no value");
        q->index_of(it->second);  // throws on unknown Q-vertex
    }
    if (vertex_values.size() != g.vertices.size())
        throw ValidationError("vertex_values mentions vertices outside the graph");
    for (const auto& e : g.edges) {
        auto it = edge_values.find(e);
        if (it == edge_values.end())
            throw ValidationError("edge {" + e.first + ", " + e.second + "} has no value");
        const VertexId& ev = it->second;
        for (const VertexId& endpoint : {e.first, e.second}) {
            const VertexId& vv = vertex_values.at(endpoint);
            if (!leq_q(*q, vv, ev))
                throw ValidationError("monotonicity violated at edge {" + e.first + ", " +
                                      e.second + "}: endpoint '" + endpoint + "' has value '" +
                                      vv + "' which is not below the edge value '" + ev + "'");
        }
    }
    if (edge_values.size() != g.edges.size())
        throw ValidationError("edge_values mentions edges outside the graph");
    return QFiltration{std::move(g), std::move(q), vertex_values, edge_values};
}

namespace {

struct ForestNode {
    VertexId id;
    int level;
    int label;        // Q index
    int parent = -1;  // node index, -1 at level 0
};

ForestOverQ assemble_forest(const RootedTreePtr& q, const std::vector<ForestNode>& nodes) {
    // Parents are created after their children, so a reverse sweep sees each
    // parent before its children.
    std::vector<int> comp(nodes.size(), -1);
    int ncomp = 0;
    for (int i = static_cast<int>(nodes.size()) - 1; i >= 0; --i) {
        if (nodes[i].parent == -1)
            comp[i] = ncomp++;
        else
            comp[i] = comp[nodes[i].parent];
    }
    std::vector<std::vector<VertexId>> vertices(ncomp);
    std::vector<std::vector<EdgePair>> edges(ncomp);
    std::vector<std::map<VertexId, VertexId>> labeling(ncomp);
    for (size_t i = 0; i < nodes.size(); ++i) {
        int c = comp[i];
        vertices[c].push_back(nodes[i].id);
        labeling[c][nodes[i].id] = q->id_of(nodes[i].label);
        if (nodes[i].parent != -1) edges[c].emplace_back(nodes[i].id, nodes[nodes[i].parent].id);
    }
    std::vector<TreeOverQ> components;
    std::vector<VertexId> apexes;
    for (int c = 0; c < ncomp; ++c) {
        components.push_back(build_tree_over(
            q, build_quiver(std::move(vertices[c]), std::move(edges[c])), labeling[c]));
        apexes.push_back(q->root_id());
    }
    return make_forest_over(q, std::move(components), std::move(apexes));
}

TrackedForest sweep(const QFiltration& f, bool track) {
    const RootedTree& q = *f.q;
    const Graph& g = f.graph;
    const int nv = static_cast<int>(g.vertices.size());

    auto vertex_index = [&](const VertexId& v) {
        return static_cast<int>(std::lower_bound(g.vertices.begin(), g.vertices.end(), v) -
                                g.vertices.begin());
    };

    std::vector<int> vlabel(nv);
    int max_level = -1;
    for (int i = 0; i < nv; ++i) {
        vlabel[i] = q.index_of(f.vertex_value.at(g.vertices[i]));
        max_level = std::max(max_level, q.level(vlabel[i]));
    }
    TrackedForest out;
    if (max_level < 0) {
        out.forest = ForestOverQ{f.q, {}, {}};
        return out;  // empty graph, empty forest
    }

    std::vector<std::vector<int>> vertices_at(max_level + 1);
    for (int i = 0; i < nv; ++i) vertices_at[q.level(vlabel[i])].push_back(i);
    std::vector<std::vector<std::pair<int, int>>> edges_at(max_level + 1);
    for (const auto& e : g.edges) {
        int lvl = q.level(q.index_of(f.edge_value.at(e)));
        edges_at[lvl].emplace_back(vertex_index(e.first), vertex_index(e.second));
    }

    UnionFind uf;
    std::map<int, int> anchor;      // class root -> Q index of the level's ancestor value
    std::map<int, int> min_member;  // class root -> smallest member vertex index
    std::vector<ForestNode> nodes;
    std::map<int, int> node_of_root;  // class root -> node index at the previous level
    if (track) out.node_at_level.resize(max_level + 1);

    for (int level = max_level; level >= 0; --level) {
        // Lift every class anchor from the previous level to this one.
        if (level < max_level) {
            for (auto& [root, a] : anchor) a = q.parent(a);
        }
        for (int v : vertices_at[level]) {
            uf.add(v);
            anchor[v] = vlabel[v];
            min_member[v] = v;
        }
        for (const auto& [a, b] : edges_at[level]) {
            int ra = uf.find(a), rb = uf.find(b);
            if (ra == rb) continue;
            if (anchor.at(ra) != anchor.at(rb))
                throw std::logic_error(
                    "internal: union-find classes with distinct level ancestors merged");
            uf.unite(a, b);
            int nr = uf.find(a);
            int other = nr == ra ? rb : ra;
            min_member[nr] = std::min(min_member.at(ra), min_member.at(rb));
            anchor.erase(other);
            min_member.erase(other);
        }
        std::map<int, int> current_node_of_root;
        for (int root : uf.representatives()) {
            int a = anchor.at(root);
            if (q.level(a) != level)
                throw std::logic_error("internal: class anchor at the wrong level");
            ForestNode node;
            node.id = g.vertices[min_member.at(root)] + "@" + std::to_string(level);
            node.level = level;
            node.label = a;
            current_node_of_root[root] = static_cast<int>(nodes.size());
            nodes.push_back(std::move(node));
        }
        // Connect the previous level's nodes to their class's node here.
        for (const auto& [old_root, node_index] : node_of_root)
            nodes[node_index].parent = current_node_of_root.at(uf.find(old_root));
        if (track) {
            auto& row = out.node_at_level[level];
            for (int i = 0; i < nv; ++i)
                if (uf.contains(i)) row[g.vertices[i]] = nodes[current_node_of_root.at(uf.find(i))].id;
        }
        node_of_root = std::move(current_node_of_root);
    }

    out.forest = assemble_forest(f.q, nodes);
    return out;
}

}  // namespace

ForestOverQ filtration_to_forest(const QFiltration& f) { return sweep(f, false).forest; }

TrackedForest filtration_to_forest_tracked(const QFiltration& f) { return sweep(f, true); }

Decomposition decompose_h0(const QFiltration& f) {
    return decompose_forest(filtration_to_forest(f));
}

namespace {

bool subgraph_of(const Graph& small, const Graph& big) {
    return std::includes(big.vertices.begin(), big.vertices.end(), small.vertices.begin(),
                         small.vertices.end()) &&
           std::includes(big.edges.begin(), big.edges.end(), small.edges.begin(),
                         small.edges.end());
}

}  // namespace

GraphFunctor validate_graph_functor(RootedTreePtr q, std::map<VertexId, Graph> assignment) {
    for (const auto& x : q->quiver().vertices)
        if (!assignment.count(x))
            throw ValidationError("no subgraph assigned to quiver vertex '" + x + "'");
    if (assignment.size() != q->quiver().vertices.size())
        throw ValidationError("assignment mentions vertices outside the quiver");
    for (int x = 0; x < q->size(); ++x) {
        if (x == q->root()) continue;
        const Graph& lower = assignment.at(q->id_of(x));
        const Graph& upper = assignment.at(q->id_of(q->parent(x)));
        if (!subgraph_of(lower, upper))
            throw ValidationError("monotonicity violated on the edge ('" + q->id_of(x) + "' -> '" +
                                  q->id_of(q->parent(x)) + "'): the lower subgraph is not contained "
                                  "in the upper one");
    }
    return GraphFunctor{std::move(q), std::move(assignment)};
}

GraphFunctor functor_of_filtration(const QFiltration& f) {
    std::map<VertexId, Graph> assignment;
    for (const auto& x : f.q->quiver().vertices) {
        std::vector<VertexId> vs;
        std::vector<GraphEdge> es;
        for (const auto& v : f.graph.vertices)
            if (leq_q(*f.q, f.vertex_value.at(v), x)) vs.push_back(v);
        for (const auto& e : f.graph.edges)
            if (leq_q(*f.q, f.edge_value.at(e), x)) es.push_back(e);
        assignment[x] = build_graph(std::move(vs), std::move(es));
    }
    return validate_graph_functor(f.q, std::move(assignment));
}

ForestOverQ sigma_of_functor(const GraphFunctor& f) {
    const RootedTree& q = *f.q;

    // Components of every assigned subgraph, as vertex -> smallest member of
    // its component.
    std::vector<std::map<VertexId, VertexId>> comp_rep(q.size());
    for (int x = 0; x < q.size(); ++x) {
        const Graph& g = f.assignment.at(q.id_of(x));
        std::map<VertexId, int> index;
        for (size_t i = 0; i < g.vertices.size(); ++i) index[g.vertices[i]] = static_cast<int>(i);
        UnionFind uf;
        for (size_t i = 0; i < g.vertices.size(); ++i) uf.add(static_cast<int>(i));
        for (const auto& [u, w] : g.edges) uf.unite(index.at(u), index.at(w));
        std::map<int, VertexId> smallest;
        for (size_t i = 0; i < g.vertices.size(); ++i) {
            int root = uf.find(static_cast<int>(i));
            if (!smallest.count(root)) smallest[root] = g.vertices[i];  // ascending id order
        }
        for (size_t i = 0; i < g.vertices.size(); ++i)
            comp_rep[x][g.vertices[i]] = smallest.at(uf.find(static_cast<int>(i)));
    }

    // One node per (Q-vertex, component); process shallow levels first so
    // parents exist when children link to them.
    std::vector<int> order(q.size());
    for (int x = 0; x < q.size(); ++x) order[x] = x;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return std::make_pair(q.level(a), a) < std::make_pair(q.level(b), b);
    });

    std::vector<ForestNode> nodes;
    std::set<VertexId> used_ids;
    std::vector<std::map<VertexId, int>> node_of_rep(q.size());
    for (int x : order) {
        std::set<VertexId> reps;
        for (const auto& [v, rep] : comp_rep[x]) reps.insert(rep);
        for (const VertexId& rep : reps) {
            ForestNode node;
            node.id = rep + "@" + q.id_of(x);
            while (!used_ids.insert(node.id).second) node.id += "'";
            node.level = q.level(x);
            node.label = x;
            if (x != q.root()) {
                int y = q.parent(x);
                auto it = comp_rep[y].find(rep);
                if (it == comp_rep[y].end())
                    throw std::logic_error("internal: component member missing above");
                node.parent = node_of_rep[y].at(it->second);
            }
            node_of_rep[x][rep] = static_cast<int>(nodes.size());
            nodes.push_back(std::move(node));
        }
        // Containment check: all members of a component below lie in one
        // component above.
        if (x != q.root()) {
            int y = q.parent(x);
            for (const auto& [v, rep] : comp_rep[x]) {
                if (comp_rep[y].at(rep) != comp_rep[y].at(v))
                    throw std::logic_error(
                        "internal: component split when passing to the upper subgraph");
            }
        }
    }

    // assemble_forest expects children created before parents; here the
    // order is reversed, so flip it.
    std::vector<ForestNode> reversed(nodes.rbegin(), nodes.rend());
    for (auto& n : reversed)
        if (n.parent != -1) n.parent = static_cast<int>(nodes.size()) - 1 - n.parent;
    return assemble_forest(f.q, reversed);
}

GraphFunctor restrict_bifiltration(const Graph& g,
                                   const std::map<VertexId, GridValue>& vertex_values,
                                   const std::map<GraphEdge, GridValue>& edge_values,
                                   RootedTreePtr p,
                                   const std::map<VertexId, GridValue>& embedding) {
    for (const auto& v : g.vertices)
        if (!vertex_values.count(v)) throw ValidationError("vertex '" + v + "' has no grid value");
    for (const auto& e : g.edges) {
        auto it = edge_values.find(e);
        if (it == edge_values.end())
            throw ValidationError("edge {" + e.first + ", " + e.second + "} has no grid value");
        if (!vertex_values.at(e.first).leq(it->second) ||
            !vertex_values.at(e.second).leq(it->second))
            throw ValidationError("grid values violate monotonicity at edge {" + e.first + ", " +
                                  e.second + "}");
    }
    for (const auto& x : p->quiver().vertices)
        if (!embedding.count(x))
            throw ValidationError("poset element '" + x + "' has no embedding value");
    for (int x = 0; x < p->size(); ++x) {
        if (x == p->root()) continue;
        if (!embedding.at(p->id_of(x)).leq(embedding.at(p->id_of(p->parent(x)))))
            throw ValidationError("embedding is not order-preserving on ('" + p->id_of(x) +
                                  "' <= '" + p->id_of(p->parent(x)) + "')");
    }

    std::map<VertexId, Graph> assignment;
    for (const auto& x : p->quiver().vertices) {
        const GridValue& bound = embedding.at(x);
        std::vector<VertexId> vs;
        std::vector<GraphEdge> es;
        for (const auto& v : g.vertices)
            if (vertex_values.at(v).leq(bound)) vs.push_back(v);
        for (const auto& e : g.edges)
            if (edge_values.at(e).leq(bound)) es.push_back(e);
        assignment[x] = build_graph(std::move(vs), std::move(es));
    }
    return validate_graph_functor(std::move(p), std::move(assignment));
}

}  // namespace treeph
