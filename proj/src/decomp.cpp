#include "treeph/decomp.hpp"

#include <algorithm>
#include <deque>

namespace treeph {

namespace {

// Members of the subtree at `root`, following only non-cut edges.
std::vector<int> component_members(const RootedTree& T, const std::vector<bool>& cut, int root) {
    std::vector<int> members;
    std::deque<int> queue{root};
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        members.push_back(v);
        for (int c : T.children(v)) {
            if (!cut[c]) queue.push_back(c);
        }
    }
    return members;
}

TreeOverQ extract_component(const TreeOverQ& t, const std::vector<int>& members, int root,
                            const RootedTreePtr& base) {
    const RootedTree& T = t.tree();
    std::vector<VertexId> vertices;
    std::vector<EdgePair> edges;
    std::map<VertexId, VertexId> labeling;
    for (int v : members) {
        vertices.push_back(T.id_of(v));
        labeling[T.id_of(v)] = t.base().id_of(t.label_of(v));
        if (v != root) edges.emplace_back(T.id_of(v), T.id_of(T.parent(v)));
    }
    return build_tree_over(base, build_quiver(std::move(vertices), std::move(edges)), labeling);
}

std::map<VertexId, std::int64_t> dim_vector(const TreeOverQ& t) {
    std::map<VertexId, std::int64_t> dims;
    for (const auto& v : t.base().quiver().vertices) dims[v] = 0;
    for (int i = 0; i < t.tree().size(); ++i) dims[t.base().id_of(t.label_of(i))]++;
    return dims;
}

void aggregate(std::map<std::pair<VertexId, CanonicalKey>, Summand>& acc, const VertexId& apex,
               CanonicalKey key, const TreeOverQ& witness, std::int64_t multiplicity) {
    std::pair<VertexId, CanonicalKey> map_key{apex, key};
    auto it = acc.find(map_key);
    if (it == acc.end())
        acc.emplace(std::move(map_key), Summand{apex, std::move(key), witness, multiplicity});
    else
        it->second.multiplicity += multiplicity;
}

Decomposition finish(std::map<std::pair<VertexId, CanonicalKey>, Summand>&& acc,
                     std::map<VertexId, std::int64_t> dims) {
    Decomposition d;
    d.dims = std::move(dims);
    for (auto& [kk, summand] : acc) d.summands.push_back(std::move(summand));
    // std::map iteration is already (apex, key)-sorted.
    std::map<VertexId, std::int64_t> check;
    for (const auto& [v, unused] : d.dims) check[v] = 0;
    for (const Summand& s : d.summands)
        for (int i = 0; i < s.witness.tree().size(); ++i)
            check[s.witness.base().id_of(s.witness.label_of(i))] += s.multiplicity;
    if (check != d.dims)
        throw std::logic_error("internal: decomposition does not conserve the dimension vector");
    return d;
}

}  // namespace

std::pair<TreeOverQ, TreeOverQ> elder_split(const TreeOverQ& t, const VertexId& parent,
                                            const VertexId& drop_child,
                                            const VertexId& keep_child) {
    const RootedTree& T = t.tree();
    int p = T.index_of(parent);
    int d = T.index_of(drop_child);
    int k = T.index_of(keep_child);
    if (d == k) throw ValidationError("drop and keep children must be distinct");
    if (T.parent(d) != p)
        throw ValidationError("'" + drop_child + "' is not a child of '" + parent + "'");
    if (T.parent(k) != p)
        throw ValidationError("'" + keep_child + "' is not a child of '" + parent + "'");
    if (t.label_of(d) != t.label_of(k))
        throw ValidationError("children '" + drop_child + "' and '" + keep_child +
                              "' carry different labels");
    TreeOverQ dropped = subtree_over(t, d);
    TreeOverQ kept = subtree_over(t, k);
    if (!tree_leq(dropped, kept))
        throw ValidationError("subtree at '" + drop_child +
                              "' does not precede the subtree at '" + keep_child + "'");

    std::vector<bool> cut(T.size(), false);
    cut[d] = true;
    std::vector<int> members = component_members(T, cut, T.root());
    TreeOverQ remaining = extract_component(t, members, T.root(), t.base_ptr());
    return {std::move(remaining), std::move(dropped)};
}

TreeDecomposition decompose_tree(const TreeOverQ& t) {
    const RootedTree& T = t.tree();
    const int n = T.size();
    std::vector<bool> cut(n, false);

    std::vector<int> pos(n, 0);
    for (int l = 0; l <= T.height(); ++l) {
        const std::vector<int>& verts = T.at_level(l);
        for (size_t i = 0; i < verts.size(); ++i) pos[verts[i]] = static_cast<int>(i);
    }

    // R on the level currently below the one being processed, as a dense
    // matrix over within-level positions. x R y encodes: equal labels and
    // the current subtree at x precedes the one at y.
    std::vector<bool> below_r;
    for (int l = T.height(); l >= 0; --l) {
        const std::vector<int>& verts = T.at_level(l);
        const size_t below_sz = l < T.height() ? T.at_level(l + 1).size() : 0;
        auto r_below = [&](int a, int b) {
            return below_r[static_cast<size_t>(pos[a]) * below_sz + pos[b]];
        };

        // Keep one representative per class of maximal children within each
        // label group; cut everything else. Children lists are id-sorted, so
        // the representative is the lexicographically smallest.
        for (int x : verts) {
            const std::vector<int>& kids = T.children(x);
            if (kids.size() < 2) continue;
            std::map<int, std::vector<int>> groups;
            for (int c : kids) groups[t.label_of(c)].push_back(c);
            for (const auto& [label, group] : groups) {
                if (group.size() < 2) continue;
                std::vector<int> kept;
                for (int c : group) {
                    bool maximal = true;
                    for (int other : group) {
                        if (other != c && r_below(c, other) && !r_below(other, c)) {
                            maximal = false;
                            break;
                        }
                    }
                    if (!maximal) {
                        cut[c] = true;
                        continue;
                    }
                    bool duplicate = false;
                    for (int rep : kept) {
                        if (r_below(c, rep) && r_below(rep, c)) {
                            duplicate = true;
                            break;
                        }
                    }
                    if (duplicate)
                        cut[c] = true;
                    else
                        kept.push_back(c);
                }
            }
        }

        // Extend R to this level over the kept children.
        const size_t m = verts.size();
        std::vector<std::vector<int>> kept(m);
        for (size_t i = 0; i < m; ++i)
            for (int c : T.children(verts[i]))
                if (!cut[c]) kept[i].push_back(c);
        std::vector<bool> r(m * m, false);
        for (size_t i = 0; i < m; ++i) {
            for (size_t j = 0; j < m; ++j) {
                if (t.label_of(verts[i]) != t.label_of(verts[j])) continue;
                bool all = true;
                for (int p : kept[i]) {
                    bool found = false;
                    for (int q : kept[j]) {
                        if (r_below(p, q)) {
                            found = true;
                            break;
                        }
                    }
                    if (!found) {
                        all = false;
                        break;
                    }
                }
                r[i * m + j] = all;
            }
        }
        below_r = std::move(r);
    }

    std::vector<int> roots{T.root()};
    for (int v = 0; v < n; ++v)
        if (cut[v]) roots.push_back(v);
    std::sort(roots.begin(), roots.end());

    std::map<VertexId, RootedTreePtr> downsets;
    std::vector<TreeOverQ> components;
    std::vector<VertexId> apexes;
    std::map<std::pair<VertexId, CanonicalKey>, Summand> acc;
    for (int root : roots) {
        const VertexId& apex = t.base().id_of(t.label_of(root));
        auto it = downsets.find(apex);
        if (it == downsets.end()) it = downsets.emplace(apex, downset_ptr(t.base(), apex)).first;
        TreeOverQ component = extract_component(t, component_members(T, cut, root), root, it->second);
        aggregate(acc, apex, canonical_key(component), component, 1);
        components.push_back(std::move(component));
        apexes.push_back(apex);
    }

    TreeDecomposition result{
        make_forest_over(t.base_ptr(), std::move(components), std::move(apexes)),
        finish(std::move(acc), dim_vector(t))};
    return result;
}

Decomposition decompose_forest(const ForestOverQ& f) {
    std::map<VertexId, std::int64_t> dims;
    for (const auto& v : f.ambient->quiver().vertices) dims[v] = 0;
    std::map<std::pair<VertexId, CanonicalKey>, Summand> acc;
    for (const TreeOverQ& component : f.components) {
        Decomposition part = decompose_tree(component).decomposition;
        for (Summand& s : part.summands)
            aggregate(acc, s.apex, std::move(s.key), s.witness, s.multiplicity);
        for (const auto& [v, d] : part.dims) dims[v] += d;
    }
    return finish(std::move(acc), std::move(dims));
}

}  // namespace treeph
