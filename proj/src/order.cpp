#include "treeph/order.hpp"

#include <algorithm>

namespace treeph {

namespace {

void require_same_ambient(const TreeOverQ& s, const TreeOverQ& t) {
    if (!(s.base() == t.base()))
        throw ValidationError("trees live over different ambient quivers");
}

// Pairwise subtree comparison: compare(u, v) holds iff the subtree of s at u
// is below the subtree of t at v. Only meaningful for equal labels.
class LeqTable {
public:
    LeqTable(const TreeOverQ& s, const TreeOverQ& t) : s_(s), t_(t) {
        memo_.assign(static_cast<size_t>(s.tree().size()) * t.tree().size(), kUnknown);
    }

    bool compare(int u, int v) {
        size_t slot = static_cast<size_t>(u) * t_.tree().size() + v;
        if (memo_[slot] != kUnknown) return memo_[slot] == kTrue;
        bool ok = true;
        for (int cu : s_.tree().children(u)) {
            bool found = false;
            for (int cv : t_.tree().children(v)) {
                if (s_.label_of(cu) != t_.label_of(cv)) continue;
                if (compare(cu, cv)) {
                    found = true;
                    break;
                }
            }
            if (!found) {
                ok = false;
                break;
            }
        }
        memo_[slot] = ok ? kTrue : kFalse;
        return ok;
    }

private:
    static constexpr signed char kUnknown = -1, kFalse = 0, kTrue = 1;
    const TreeOverQ& s_;
    const TreeOverQ& t_;
    std::vector<signed char> memo_;
};

class CountTable {
public:
    CountTable(const TreeOverQ& s, const TreeOverQ& t) : s_(s), t_(t) {
        memo_.resize(static_cast<size_t>(s.tree().size()) * t.tree().size());
        known_.assign(memo_.size(), false);
    }

    // Product over children of u of the sum over same-labeled children of v.
    const HomCount& count(int u, int v) {
        size_t slot = static_cast<size_t>(u) * t_.tree().size() + v;
        if (known_[slot]) return memo_[slot];
        HomCount total = 1;
        for (int cu : s_.tree().children(u)) {
            HomCount sum = 0;
            for (int cv : t_.tree().children(v)) {
                if (s_.label_of(cu) != t_.label_of(cv)) continue;
                sum += count(cu, cv);
            }
            total *= sum;
            if (total == 0) break;
        }
        memo_[slot] = std::move(total);
        known_[slot] = true;
        return memo_[slot];
    }

private:
    const TreeOverQ& s_;
    const TreeOverQ& t_;
    std::vector<HomCount> memo_;
    std::vector<bool> known_;
};

}  // namespace

bool tree_leq(const TreeOverQ& s, const TreeOverQ& t) {
    require_same_ambient(s, t);
    return LeqTable(s, t).compare(s.tree().root(), t.tree().root());
}

HomCount hom_count(const TreeOverQ& s, const TreeOverQ& t) {
    require_same_ambient(s, t);
    return CountTable(s, t).count(s.tree().root(), t.tree().root());
}

bool exists_morphism(const TreeOverQ& s, const TreeOverQ& t) { return tree_leq(s, t); }

bool is_reduced(const TreeOverQ& t) {
    const RootedTree& T = t.tree();
    LeqTable table(t, t);
    for (int v = 0; v < T.size(); ++v) {
        const std::vector<int>& kids = T.children(v);
        for (size_t a = 0; a < kids.size(); ++a)
            for (size_t b = a + 1; b < kids.size(); ++b) {
                if (t.label_of(kids[a]) != t.label_of(kids[b])) continue;
                if (table.compare(kids[a], kids[b]) || table.compare(kids[b], kids[a]))
                    return false;
            }
    }
    return true;
}

bool has_unique_endomorphism(const TreeOverQ& t) {
    return hom_count(t, t) == 1;
}

namespace {

// All antichains (as index lists) of `entries` under tree_leq; the empty
// antichain is included.
void collect_antichains(const std::vector<TreeOverQ>& entries,
                        const std::vector<std::vector<bool>>& leq, size_t start,
                        std::vector<int>& chosen, std::vector<std::vector<int>>& out) {
    out.push_back(chosen);
    for (size_t i = start; i < entries.size(); ++i) {
        bool incomparable = true;
        for (int j : chosen) {
            if (leq[i][j] || leq[j][i]) {
                incomparable = false;
                break;
            }
        }
        if (!incomparable) continue;
        chosen.push_back(static_cast<int>(i));
        collect_antichains(entries, leq, i + 1, chosen, out);
        chosen.pop_back();
    }
}

std::vector<TreeOverQ> reduced_over(const RootedTree& ambient, const VertexId& apex) {
    RootedTreePtr q = downset_ptr(ambient, apex);
    const std::vector<int>& branches = q->children(q->root());

    // Per branch: the child catalog and all of its antichains.
    std::vector<std::vector<TreeOverQ>> child_entries(branches.size());
    std::vector<std::vector<std::vector<int>>> child_antichains(branches.size());
    long combinations = 1;
    for (size_t i = 0; i < branches.size(); ++i) {
        child_entries[i] = reduced_over(*q, q->id_of(branches[i]));
        const auto& entries = child_entries[i];
        std::vector<std::vector<bool>> leq(entries.size(), std::vector<bool>(entries.size()));
        for (size_t a = 0; a < entries.size(); ++a)
            for (size_t b = 0; b < entries.size(); ++b)
                leq[a][b] = tree_leq(entries[a], entries[b]);
        std::vector<int> chosen;
        collect_antichains(entries, leq, 0, chosen, child_antichains[i]);
        if (combinations > kCatalogCap / static_cast<long>(child_antichains[i].size()))
            throw ValidationError("reduced catalog over this quiver exceeds the cap of " +
                                  std::to_string(kCatalogCap) + " entries");
        combinations *= static_cast<long>(child_antichains[i].size());
    }

    // Cross product of per-branch antichain choices; the all-empty choice
    // yields the star.
    std::vector<TreeOverQ> result;
    std::vector<size_t> pick(branches.size(), 0);
    while (true) {
        std::vector<std::vector<TreeOverQ>> assignment(branches.size());
        for (size_t i = 0; i < branches.size(); ++i)
            for (int idx : child_antichains[i][pick[i]])
                assignment[i].push_back(child_entries[i][idx]);
        result.push_back(glue_trees_over(q, assignment));
        size_t i = 0;
        for (; i < branches.size(); ++i) {
            if (++pick[i] < child_antichains[i].size()) break;
            pick[i] = 0;
        }
        if (i == branches.size()) break;
    }
    std::sort(result.begin(), result.end(), [](const TreeOverQ& a, const TreeOverQ& b) {
        return canonical_key(a) < canonical_key(b);
    });
    return result;
}

}  // namespace

ReducedCatalog enumerate_reduced(RootedTreePtr q) {
    ReducedCatalog catalog;
    catalog.ambient = q;
    catalog.entries = reduced_over(*q, q->root_id());
    for (size_t i = 0; i < catalog.entries.size(); ++i) {
        CanonicalKey key = canonical_key(catalog.entries[i]);
        if (!catalog.by_key.emplace(std::move(key), static_cast<int>(i)).second)
            throw ValidationError("internal: duplicate catalog entry");
    }
    return catalog;
}

std::vector<Indecomposable> enumerate_indecomposables(RootedTreePtr q) {
    std::vector<Indecomposable> out;
    for (const VertexId& x : q->quiver().vertices) {
        ReducedCatalog catalog = enumerate_reduced(downset_ptr(*q, x));
        for (auto& entry : catalog.entries) {
            CanonicalKey key = canonical_key(entry);
            out.push_back(Indecomposable{x, std::move(entry), std::move(key)});
        }
    }
    std::sort(out.begin(), out.end(), [](const Indecomposable& a, const Indecomposable& b) {
        return std::tie(a.apex, a.key) < std::tie(b.apex, b.key);
    });
    return out;
}

}  // namespace treeph
