#pragma once

#include <functional>
#include <map>
#include <set>
#include <vector>

#include "treeph/core.hpp"
#include "treeph/filtration.hpp"

// Shared fixtures and independent oracles for the test suites. The oracles
// deliberately avoid the library's recursion formulas: morphisms are counted
// by direct enumeration of vertex maps, and component counts by plain DFS.

namespace treeph::testing {

// Q = a -> b, rooted at b.
inline RootedTreePtr q_ab() {
    return validate_rooted_tree_ptr(build_quiver({"a", "b"}, {{"a", "b"}}));
}

// The 2-vertex chain u -> v over Q = a -> b.
inline TreeOverQ t1(const RootedTreePtr& q) {
    return build_tree_over(q, build_quiver({"u", "v"}, {{"u", "v"}}),
                           {{"u", "a"}, {"v", "b"}});
}

// Two leaves over a joined at one root over b.
inline TreeOverQ t2(const RootedTreePtr& q) {
    return build_tree_over(q, build_quiver({"u", "v", "w"}, {{"u", "v"}, {"w", "v"}}),
                           {{"u", "a"}, {"w", "a"}, {"v", "b"}});
}

// Exhaustive count of root-preserving, label-preserving maps phi with
// phi(child) a child of phi(parent). Exponential; keep inputs small.
inline long brute_force_hom_count(const TreeOverQ& s, const TreeOverQ& t) {
    const RootedTree& S = s.tree();
    const RootedTree& T = t.tree();
    if (s.label_of(S.root()) != t.label_of(T.root())) return 0;
    std::vector<int> order{S.root()};
    for (size_t i = 0; i < order.size(); ++i)
        for (int c : S.children(order[i])) order.push_back(c);
    std::vector<int> image(S.size(), -1);
    image[S.root()] = T.root();
    long count = 0;
    std::function<void(size_t)> assign = [&](size_t k) {
        if (k == order.size()) {
            ++count;
            return;
        }
        int v = order[k];
        for (int c : T.children(image[S.parent(v)])) {
            if (t.label_of(c) != s.label_of(v)) continue;
            image[v] = c;
            assign(k + 1);
        }
        image[v] = -1;
    };
    assign(1);
    return count;
}

// Connected components of the subgraph of cells valued below x, by DFS over
// adjacency lists.
inline int brute_force_sublevel_components(const QFiltration& f, const VertexId& x) {
    std::vector<VertexId> vs;
    for (const auto& v : f.graph.vertices)
        if (leq_q(*f.q, f.vertex_value.at(v), x)) vs.push_back(v);
    std::map<VertexId, std::vector<VertexId>> adjacency;
    for (const auto& v : vs) adjacency[v] = {};
    for (const auto& e : f.graph.edges) {
        if (!leq_q(*f.q, f.edge_value.at(e), x)) continue;
        adjacency[e.first].push_back(e.second);
        adjacency[e.second].push_back(e.first);
    }
    std::set<VertexId> seen;
    int components = 0;
    for (const auto& v : vs) {
        if (seen.count(v)) continue;
        ++components;
        std::vector<VertexId> stack{v};
        seen.insert(v);
        while (!stack.empty()) {
            VertexId u = stack.back();
            stack.pop_back();
            for (const auto& w : adjacency.at(u))
                if (seen.insert(w).second) stack.push_back(w);
        }
    }
    return components;
}

}  // namespace treeph::testing
