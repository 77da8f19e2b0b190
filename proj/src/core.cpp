#include "treeph/core.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <set>

namespace treeph {

namespace {

void check_id(const VertexId& v) {
    if (v.empty()) throw ValidationError("vertex id must be a nonempty string");
    for (unsigned char c : v) {
        if (std::isspace(c)) throw ValidationError("vertex id '" + v + "' contains whitespace");
    }
}

}  // namespace

bool Quiver::has_vertex(const VertexId& v) const {
    return std::binary_search(vertices.begin(), vertices.end(), v);
}

Quiver build_quiver(std::vector<VertexId> vertices, std::vector<EdgePair> edges) {
    for (const auto& v : vertices) check_id(v);
    std::sort(vertices.begin(), vertices.end());
    auto dup = std::adjacent_find(vertices.begin(), vertices.end());
    if (dup != vertices.end()) throw ValidationError("duplicate vertex id '" + *dup + "'");
    Quiver q;
    q.vertices = std::move(vertices);
    for (const auto& [s, t] : edges) {
        if (!q.has_vertex(s)) throw ValidationError("edge source '" + s + "' is not a declared vertex");
        if (!q.has_vertex(t)) throw ValidationError("edge target '" + t + "' is not a declared vertex");
    }
    std::sort(edges.begin(), edges.end());
    q.edges = std::move(edges);
    return q;
}

int RootedTree::index_of(const VertexId& v) const {
    auto it = std::lower_bound(quiver_.vertices.begin(), quiver_.vertices.end(), v);
    if (it == quiver_.vertices.end() || *it != v)
        throw ValidationError("unknown vertex '" + v + "'");
    return static_cast<int>(it - quiver_.vertices.begin());
}

const std::vector<int>& RootedTree::at_level(int level) const {
    static const std::vector<int> kEmpty;
    if (level < 0 || level >= static_cast<int>(by_level_.size())) return kEmpty;
    return by_level_[level];
}

RootedTree validate_rooted_tree(const Quiver& q) {
    const int n = static_cast<int>(q.vertices.size());
    if (n == 0) throw ValidationError("empty quiver has no root");
    if (std::adjacent_find(q.edges.begin(), q.edges.end()) != q.edges.end())
        throw ValidationError("parallel edges are not allowed in a tree quiver");

    RootedTree t;
    t.quiver_ = q;
    t.parent_.assign(n, -1);
    t.children_.assign(n, {});
    std::vector<int> out_degree(n, 0);
    for (const auto& [s, d] : q.edges) {
        if (s == d) throw ValidationError("loop at vertex '" + s + "' is not allowed in a tree quiver");
        int si = t.index_of(s), di = t.index_of(d);
        out_degree[si]++;
        t.parent_[si] = di;
        t.children_[di].push_back(si);
    }

    int root = -1;
    for (int i = 0; i < n; ++i) {
        if (out_degree[i] == 0) {
            if (root != -1)
                throw ValidationError("two sinks present ('" + q.vertices[root] + "' and '" +
                                      q.vertices[i] + "'); a rooted tree quiver has exactly one");
            root = i;
        } else if (out_degree[i] > 1) {
            throw ValidationError("vertex '" + q.vertices[i] + "' has out-degree " +
                                  std::to_string(out_degree[i]) + "; expected 1 for a non-root vertex");
        }
    }
    if (root == -1) throw ValidationError("no sink present: the quiver contains a directed cycle");
    t.root_ = root;

    // Children lists were filled in edge-sorted order, hence already sorted
    // by child id; levels by BFS from the root.
    t.level_.assign(n, -1);
    t.level_[root] = 0;
    std::deque<int> queue{root};
    int reached = 0;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        ++reached;
        t.height_ = std::max(t.height_, t.level_[v]);
        for (int c : t.children_[v]) {
            t.level_[c] = t.level_[v] + 1;
            queue.push_back(c);
        }
    }
    if (reached != n) {
        for (int i = 0; i < n; ++i)
            if (t.level_[i] == -1)
                throw ValidationError("vertex '" + q.vertices[i] +
                                      "' is not connected to the root '" + q.vertices[root] + "'");
    }
    t.by_level_.assign(t.height_ + 1, {});
    for (int i = 0; i < n; ++i) t.by_level_[t.level_[i]].push_back(i);
    return t;
}

RootedTreePtr validate_rooted_tree_ptr(const Quiver& q) {
    return std::make_shared<const RootedTree>(validate_rooted_tree(q));
}

bool leq_q(const RootedTree& q, int x, int y) {
    if (x < 0 || x >= q.size() || y < 0 || y >= q.size())
        throw ValidationError("vertex index out of range");
    // Follow parent pointers from x up to y's level.
    while (q.level(x) > q.level(y)) x = q.parent(x);
    return x == y;
}

bool leq_q(const RootedTree& q, const VertexId& x, const VertexId& y) {
    return leq_q(q, q.index_of(x), q.index_of(y));
}

int join(const RootedTree& q, int x, int y) {
    if (x < 0 || x >= q.size() || y < 0 || y >= q.size())
        throw ValidationError("vertex index out of range");
    while (q.level(x) > q.level(y)) x = q.parent(x);
    while (q.level(y) > q.level(x)) y = q.parent(y);
    while (x != y) {
        x = q.parent(x);
        y = q.parent(y);
    }
    return x;
}

VertexId join(const RootedTree& q, const VertexId& x, const VertexId& y) {
    return q.id_of(join(q, q.index_of(x), q.index_of(y)));
}

RootedTree downset(const RootedTree& q, const VertexId& x) {
    int xi = q.index_of(x);
    std::vector<int> members;
    std::deque<int> queue{xi};
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        members.push_back(v);
        for (int c : q.children(v)) queue.push_back(c);
    }
    std::sort(members.begin(), members.end());
    std::vector<VertexId> vertices;
    vertices.reserve(members.size());
    for (int v : members) vertices.push_back(q.id_of(v));
    std::vector<EdgePair> edges;
    for (int v : members)
        if (v != xi) edges.emplace_back(q.id_of(v), q.id_of(q.parent(v)));
    return validate_rooted_tree(build_quiver(std::move(vertices), std::move(edges)));
}

RootedTreePtr downset_ptr(const RootedTree& q, const VertexId& x) {
    return std::make_shared<const RootedTree>(downset(q, x));
}

int ancestor_at_level(const RootedTree& q, int x, int level) {
    if (x < 0 || x >= q.size()) throw ValidationError("vertex index out of range");
    if (level < 0 || level > q.level(x))
        throw ValidationError("no ancestor of '" + q.id_of(x) + "' at level " + std::to_string(level));
    while (q.level(x) > level) x = q.parent(x);
    return x;
}

VertexId ancestor_at_level(const RootedTree& q, const VertexId& x, int level) {
    return q.id_of(ancestor_at_level(q, q.index_of(x), level));
}

const VertexId& TreeOverQ::label_id(const VertexId& tree_vertex) const {
    return base_->id_of(label_.at(tree_->index_of(tree_vertex)));
}

std::map<VertexId, VertexId> TreeOverQ::labeling_map() const {
    std::map<VertexId, VertexId> m;
    for (int i = 0; i < tree_->size(); ++i) m[tree_->id_of(i)] = base_->id_of(label_[i]);
    return m;
}

TreeOverQ build_tree_over(RootedTreePtr base, RootedTreePtr tree,
                          const std::map<VertexId, VertexId>& labeling) {
    TreeOverQ t;
    t.base_ = std::move(base);
    t.tree_ = std::move(tree);
    const RootedTree& T = *t.tree_;
    const RootedTree& Q = *t.base_;
    t.label_.assign(T.size(), -1);
    for (const auto& [v, q] : labeling) {
        // index_of throws on ids outside T or Q
        t.label_[T.index_of(v)] = Q.index_of(q);
    }
    for (int i = 0; i < T.size(); ++i)
        if (t.label_[i] == -1)
            throw ValidationError("vertex '" + T.id_of(i) + "' has no label");
    if (t.label_[T.root()] != Q.root())
        throw ValidationError("labeling is not root-preserving: root '" + T.root_id() +
                              "' maps to '" + Q.id_of(t.label_[T.root()]) + "', not to '" +
                              Q.root_id() + "'");
    for (int i = 0; i < T.size(); ++i) {
        if (i == T.root()) continue;
        int p = T.parent(i);
        if (Q.parent(t.label_[i]) != t.label_[p])
            throw ValidationError("edge ('" + T.id_of(i) + "' -> '" + T.id_of(p) +
                                  "') maps to ('" + Q.id_of(t.label_[i]) + "' -> '" +
                                  Q.id_of(t.label_[p]) + "'), which is not an edge of the base");
    }
    // Level preservation is a consequence of the two checks above.
    for (int i = 0; i < T.size(); ++i) {
        if (T.level(i) != Q.level(t.label_[i]))
            throw ValidationError("internal: labeling is not level-preserving");
    }
    return t;
}

TreeOverQ build_tree_over(RootedTreePtr base, const Quiver& tree,
                          const std::map<VertexId, VertexId>& labeling) {
    return build_tree_over(std::move(base), validate_rooted_tree_ptr(tree), labeling);
}

TreeOverQ star_over(RootedTreePtr base) {
    Quiver one = build_quiver({"*"}, {});
    std::map<VertexId, VertexId> labeling{{"*", base->root_id()}};
    return build_tree_over(std::move(base), one, labeling);
}

TreeOverQ glue_trees_over(RootedTreePtr base,
                          const std::vector<std::vector<TreeOverQ>>& assignments) {
    const RootedTree& Q = *base;
    const std::vector<int>& root_children = Q.children(Q.root());
    if (assignments.size() != root_children.size())
        throw ValidationError("expected " + std::to_string(root_children.size()) +
                              " assignment lists, got " + std::to_string(assignments.size()));

    std::vector<VertexId> vertices{"n0"};
    std::vector<EdgePair> edges;
    std::map<VertexId, VertexId> labeling{{"n0", Q.root_id()}};
    int next = 1;
    for (size_t i = 0; i < assignments.size(); ++i) {
        RootedTree expected = downset(Q, Q.id_of(root_children[i]));
        for (const TreeOverQ& part : assignments[i]) {
            if (!(part.base() == expected))
                throw ValidationError("assigned tree for branch '" + Q.id_of(root_children[i]) +
                                      "' is not over the downset at that vertex");
            const RootedTree& T = part.tree();
            // BFS from the part's root, assigning fresh ids n1, n2, ...
            std::vector<VertexId> fresh(T.size());
            std::deque<int> queue{T.root()};
            while (!queue.empty()) {
                int v = queue.front();
                queue.pop_front();
                fresh[v] = "n" + std::to_string(next++);
                for (int c : T.children(v)) queue.push_back(c);
            }
            for (int v = 0; v < T.size(); ++v) {
                vertices.push_back(fresh[v]);
                labeling[fresh[v]] = part.base().id_of(part.label_of(v));
                if (v == T.root())
                    edges.emplace_back(fresh[v], "n0");
                else
                    edges.emplace_back(fresh[v], fresh[T.parent(v)]);
            }
        }
    }
    return build_tree_over(std::move(base),
                           build_quiver(std::move(vertices), std::move(edges)), labeling);
}

TreeOverQ subtree_over(const TreeOverQ& t, int tree_index) {
    const RootedTree& T = t.tree();
    const RootedTree& Q = t.base();
    std::vector<int> members;
    std::deque<int> queue{tree_index};
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        members.push_back(v);
        for (int c : T.children(v)) queue.push_back(c);
    }
    std::vector<VertexId> vertices;
    std::vector<EdgePair> edges;
    std::map<VertexId, VertexId> labeling;
    for (int v : members) {
        vertices.push_back(T.id_of(v));
        labeling[T.id_of(v)] = Q.id_of(t.label_of(v));
        if (v != tree_index) edges.emplace_back(T.id_of(v), T.id_of(T.parent(v)));
    }
    return build_tree_over(downset_ptr(Q, Q.id_of(t.label_of(tree_index))),
                           build_quiver(std::move(vertices), std::move(edges)), labeling);
}

std::vector<std::vector<TreeOverQ>> split_at_root(const TreeOverQ& t) {
    const RootedTree& T = t.tree();
    const RootedTree& Q = t.base();
    const std::vector<int>& branches = Q.children(Q.root());
    std::vector<std::vector<TreeOverQ>> out(branches.size());
    for (int top : T.children(T.root())) {
        auto it = std::find(branches.begin(), branches.end(), t.label_of(top));
        out[it - branches.begin()].push_back(subtree_over(t, top));
    }
    return out;
}

CanonicalKey canonical_key(const TreeOverQ& t) {
    const RootedTree& T = t.tree();
    // Post-order with an explicit stack; trees can be deep (path-shaped).
    std::vector<CanonicalKey> key(T.size());
    std::vector<std::pair<int, bool>> stack{{T.root(), false}};
    while (!stack.empty()) {
        auto [v, expanded] = stack.back();
        stack.pop_back();
        if (!expanded) {
            stack.emplace_back(v, true);
            for (int c : T.children(v)) stack.emplace_back(c, false);
        } else {
            std::vector<CanonicalKey> child_keys;
            child_keys.reserve(T.children(v).size());
            for (int c : T.children(v)) child_keys.push_back(std::move(key[c]));
            std::sort(child_keys.begin(), child_keys.end());
            CanonicalKey k = "(" + t.base().id_of(t.label_of(v));
            for (const auto& ck : child_keys) k += ck;
            k += ")";
            key[v] = std::move(k);
        }
    }
    return key[T.root()];
}

bool iso_over_q(const TreeOverQ& s, const TreeOverQ& t) {
    if (!(s.base() == t.base()))
        throw ValidationError("cannot compare trees over different ambient quivers");
    return canonical_key(s) == canonical_key(t);
}

ForestOverQ make_forest_over(RootedTreePtr ambient, std::vector<TreeOverQ> components,
                             std::vector<VertexId> apexes) {
    if (components.size() != apexes.size())
        throw ValidationError("component/apex count mismatch");
    std::set<VertexId> seen;
    for (size_t i = 0; i < components.size(); ++i) {
        RootedTree expected = downset(*ambient, apexes[i]);
        if (!(components[i].base() == expected))
            throw ValidationError("forest component " + std::to_string(i) +
                                  " is not over the downset at apex '" + apexes[i] + "'");
        for (const auto& v : components[i].tree().quiver().vertices)
            if (!seen.insert(v).second)
                throw ValidationError("forest components share vertex '" + v + "'");
    }
    return ForestOverQ{std::move(ambient), std::move(components), std::move(apexes)};
}

Quiver hasse_quiver(const std::vector<VertexId>& elements,
                    const std::vector<std::pair<VertexId, VertexId>>& relation) {
    Quiver base = build_quiver(elements, {});  // validates and sorts ids
    const int n = static_cast<int>(base.vertices.size());
    auto index = [&](const VertexId& v) {
        auto it = std::lower_bound(base.vertices.begin(), base.vertices.end(), v);
        if (it == base.vertices.end() || *it != v)
            throw ValidationError("relation mentions undeclared element '" + v + "'");
        return static_cast<int>(it - base.vertices.begin());
    };
    std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
    for (const auto& [a, b] : relation) rel[index(a)][index(b)] = true;
    for (int i = 0; i < n; ++i)
        if (!rel[i][i])
            throw ValidationError("relation is not reflexive: missing (" + base.vertices[i] +
                                  ", " + base.vertices[i] + ")");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && rel[i][j] && rel[j][i])
                throw ValidationError("relation is not antisymmetric on ('" + base.vertices[i] +
                                      "', '" + base.vertices[j] + "')");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (rel[i][j] && rel[j][k] && !rel[i][k])
                    throw ValidationError("relation is not transitive: ('" + base.vertices[i] +
                                          "', '" + base.vertices[j] + "', '" + base.vertices[k] +
                                          "')");
    std::vector<EdgePair> covers;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j || !rel[i][j]) continue;
            bool covered = true;
            for (int k = 0; k < n; ++k)
                if (k != i && k != j && rel[i][k] && rel[k][j]) covered = false;
            if (covered) covers.emplace_back(base.vertices[i], base.vertices[j]);
        }
    return build_quiver(base.vertices, std::move(covers));
}

}  // namespace treeph
