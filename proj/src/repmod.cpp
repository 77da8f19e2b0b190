#include "treeph/repmod.hpp"

#include <algorithm>
#include <numeric>

namespace treeph {

namespace {

bool is_prime(std::uint32_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

void check_prime(std::uint32_t p) {
    if (p > 0x7fffffffu || !is_prime(p))
        throw ValidationError("characteristic must be a prime below 2^31, got " +
                              std::to_string(p));
}

std::uint32_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
    std::uint64_t result = 1 % p;
    base %= p;
    while (exp) {
        if (exp & 1) result = result * base % p;
        base = base * base % p;
        exp >>= 1;
    }
    return static_cast<std::uint32_t>(result);
}

std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p) { return mod_pow(a, p - 2, p); }

void require_compatible(const Representation& m, const Representation& n) {
    if (!(*m.q == *n.q)) throw ValidationError("representations live over different quivers");
    if (m.p != n.p)
        throw ValidationError("characteristic mismatch: " + std::to_string(m.p) + " vs " +
                              std::to_string(n.p));
}

}  // namespace

int gf_rank(GFMatrix m, std::uint32_t p) {
    check_prime(p);
    int rank = 0;
    for (int col = 0; col < m.cols && rank < m.rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < m.rows; ++r) {
            if (m.at(r, col) % p != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot == -1) continue;
        if (pivot != rank)
            for (int c = 0; c < m.cols; ++c) {
                std::uint32_t tmp = m.at(rank, c);
                m.set(rank, c, m.at(pivot, c));
                m.set(pivot, c, tmp);
            }
        std::uint64_t inv = mod_inverse(m.at(rank, col) % p, p);
        for (int c = col; c < m.cols; ++c)
            m.set(rank, c, static_cast<std::uint32_t>(m.at(rank, c) % p * inv % p));
        for (int r = rank + 1; r < m.rows; ++r) {
            std::uint64_t factor = m.at(r, col) % p;
            if (factor == 0) continue;
            for (int c = col; c < m.cols; ++c) {
                std::uint64_t v = m.at(r, c) + (p - factor) * m.at(rank, c) % p;
                m.set(r, c, static_cast<std::uint32_t>(v % p));
            }
        }
        ++rank;
    }
    return rank;
}

std::map<VertexId, std::int64_t> Representation::dim_vector() const {
    std::map<VertexId, std::int64_t> out;
    for (int x = 0; x < q->size(); ++x) out[q->id_of(x)] = dims[x];
    return out;
}

Representation zero_representation(RootedTreePtr q, std::uint32_t p) {
    check_prime(p);
    Representation r;
    r.q = std::move(q);
    r.p = p;
    r.dims.assign(r.q->size(), 0);
    r.matrices.assign(r.q->size(), GFMatrix(0, 0));
    return r;
}

Representation linearize(const TreeOverQ& t, std::uint32_t p) {
    Representation r = zero_representation(t.base_ptr(), p);
    const RootedTree& T = t.tree();
    const RootedTree& Q = t.base();
    // Fiber basis per Q-vertex, in ascending tree-vertex (= id) order.
    std::vector<int> fiber_pos(T.size(), -1);
    for (int v = 0; v < T.size(); ++v) fiber_pos[v] = r.dims[t.label_of(v)]++;
    for (int c = 0; c < Q.size(); ++c) {
        if (c == Q.root()) continue;
        r.matrices[c] = GFMatrix(r.dims[Q.parent(c)], r.dims[c]);
    }
    for (int v = 0; v < T.size(); ++v) {
        if (v == T.root()) continue;
        int c = t.label_of(v);
        r.matrices[c].set(fiber_pos[T.parent(v)], fiber_pos[v], 1);
    }
    return r;
}

Representation linearize(const ForestOverQ& f, std::uint32_t p) {
    std::vector<Representation> parts;
    parts.reserve(f.components.size());
    for (const TreeOverQ& component : f.components)
        parts.push_back(push_forward_inclusion(linearize(component, p), f.ambient));
    return direct_sum(f.ambient, p, parts);
}

Representation push_forward_inclusion(const Representation& r, RootedTreePtr q) {
    const VertexId& apex = r.q->root_id();
    if (!(downset(*q, apex) == *r.q))
        throw ValidationError("representation base is not the downset of the target at '" + apex +
                              "'");
    Representation out = zero_representation(q, r.p);
    for (int x = 0; x < r.q->size(); ++x)
        out.dims[q->index_of(r.q->id_of(x))] = r.dims[x];
    for (int c = 0; c < q->size(); ++c) {
        if (c == q->root()) continue;
        const VertexId& id = q->id_of(c);
        if (id != apex && r.q->quiver().has_vertex(id))
            out.matrices[c] = r.matrices[r.q->index_of(id)];
        else
            out.matrices[c] = GFMatrix(out.dims[q->parent(c)], out.dims[c]);
    }
    return out;
}

Representation direct_sum(RootedTreePtr q, std::uint32_t p, std::span<const Representation> rs) {
    Representation out = zero_representation(q, p);
    for (const Representation& r : rs) {
        require_compatible(out, r);
        for (int x = 0; x < q->size(); ++x) out.dims[x] += r.dims[x];
    }
    for (int c = 0; c < q->size(); ++c) {
        if (c == q->root()) continue;
        GFMatrix block(out.dims[q->parent(c)], out.dims[c]);
        int row0 = 0, col0 = 0;
        for (const Representation& r : rs) {
            const GFMatrix& m = r.matrices[c];
            for (int i = 0; i < m.rows; ++i)
                for (int j = 0; j < m.cols; ++j) block.set(row0 + i, col0 + j, m.at(i, j));
            row0 += m.rows;
            col0 += m.cols;
        }
        out.matrices[c] = std::move(block);
    }
    return out;
}

int hom_dim(const Representation& m, const Representation& n, bool zero_at_root) {
    require_compatible(m, n);
    const RootedTree& q = *m.q;
    const std::uint32_t p = m.p;

    // One unknown block per vertex: phi_x of shape n.dims(x) x m.dims(x);
    // the root block is dropped entirely when zero_at_root.
    std::vector<int> offset(q.size(), -1);
    int nvars = 0;
    for (int x = 0; x < q.size(); ++x) {
        if (zero_at_root && x == q.root()) continue;
        offset[x] = nvars;
        nvars += n.dims[x] * m.dims[x];
    }
    auto var = [&](int x, int i, int j) { return offset[x] + i * m.dims[x] + j; };

    int nrows = 0;
    for (int c = 0; c < q.size(); ++c) {
        if (c == q.root()) continue;
        nrows += n.dims[q.parent(c)] * m.dims[c];
    }
    GFMatrix system(nrows, nvars);
    int row = 0;
    for (int c = 0; c < q.size(); ++c) {
        if (c == q.root()) continue;
        int b = q.parent(c);
        const GFMatrix& mc = m.matrices[c];  // m.dims(b) x m.dims(c)
        const GFMatrix& nc = n.matrices[c];  // n.dims(b) x n.dims(c)
        for (int r = 0; r < n.dims[b]; ++r) {
            for (int col = 0; col < m.dims[c]; ++col, ++row) {
                if (offset[b] != -1)
                    for (int k = 0; k < m.dims[b]; ++k) {
                        std::uint64_t v = system.at(row, var(b, r, k)) + mc.at(k, col);
                        system.set(row, var(b, r, k), static_cast<std::uint32_t>(v % p));
                    }
                if (offset[c] != -1)
                    for (int k = 0; k < n.dims[c]; ++k) {
                        std::uint64_t v =
                            system.at(row, var(c, k, col)) + (p - nc.at(r, k) % p) % p;
                        system.set(row, var(c, k, col), static_cast<std::uint32_t>(v % p));
                    }
            }
        }
    }
    return nvars - gf_rank(std::move(system), p);
}

Quiver coefficient_quiver(const Representation& r) {
    const RootedTree& q = *r.q;
    std::vector<VertexId> vertices;
    for (int x = 0; x < q.size(); ++x)
        for (int i = 0; i < r.dims[x]; ++i)
            vertices.push_back(q.id_of(x) + "#" + std::to_string(i));
    std::vector<EdgePair> edges;
    for (int c = 0; c < q.size(); ++c) {
        if (c == q.root()) continue;
        int b = q.parent(c);
        const GFMatrix& m = r.matrices[c];
        for (int i = 0; i < m.rows; ++i)
            for (int j = 0; j < m.cols; ++j)
                if (m.at(i, j) % r.p != 0)
                    edges.emplace_back(q.id_of(c) + "#" + std::to_string(j),
                                       q.id_of(b) + "#" + std::to_string(i));
    }
    return build_quiver(std::move(vertices), std::move(edges));
}

DimVector h0_dims_via_rank(const QFiltration& f, std::uint32_t p) {
    check_prime(p);
    const RootedTree& q = *f.q;
    DimVector out;
    for (const auto& x : q.quiver().vertices) {
        std::vector<VertexId> vs;
        for (const auto& v : f.graph.vertices)
            if (leq_q(q, f.vertex_value.at(v), x)) vs.push_back(v);
        std::vector<GraphEdge> es;
        for (const auto& e : f.graph.edges)
            if (leq_q(q, f.edge_value.at(e), x)) es.push_back(e);
        // Boundary matrix of the sublevel graph: one column per edge with a
        // +1/-1 pair; its rank is |V| minus the component count.
        GFMatrix incidence(static_cast<int>(vs.size()), static_cast<int>(es.size()));
        auto index = [&](const VertexId& v) {
            return static_cast<int>(std::lower_bound(vs.begin(), vs.end(), v) - vs.begin());
        };
        for (size_t j = 0; j < es.size(); ++j) {
            incidence.set(index(es[j].first), static_cast<int>(j), 1);
            incidence.set(index(es[j].second), static_cast<int>(j), p - 1);
        }
        out[x] = static_cast<std::int64_t>(vs.size()) - gf_rank(std::move(incidence), p);
    }
    return out;
}

namespace {

struct OracleSearch {
    int ncat;
    int nq;
    std::vector<std::vector<int>> entry_dims;  // per entry, by Q index
    std::vector<std::vector<bool>> suffix_support;
    std::vector<std::vector<std::int64_t>> hom;  // hom[i][j] = hom_dim(X_i, X_j)
    std::vector<std::int64_t> to_m, from_m;
    std::int64_t endo = 0;
    std::vector<std::int64_t> mu;
    std::vector<std::vector<std::int64_t>> survivors;

    void dfs(int j, std::vector<int>& remaining) {
        if (survivors.size() >= 2) return;
        for (int x = 0; x < nq; ++x)
            if (remaining[x] > 0 && (j >= ncat || !suffix_support[j][x])) return;
        if (j == ncat) {
            for (int i = 0; i < ncat; ++i) {
                std::int64_t to = 0, from = 0;
                for (int k = 0; k < ncat; ++k) {
                    to += mu[k] * hom[i][k];
                    from += mu[k] * hom[k][i];
                }
                if (to != to_m[i] || from != from_m[i]) return;
            }
            std::int64_t end_sum = 0;
            for (int i = 0; i < ncat; ++i)
                for (int k = 0; k < ncat; ++k) end_sum += mu[i] * mu[k] * hom[i][k];
            if (end_sum != endo) return;
            survivors.push_back(mu);
            return;
        }
        int bound = -1;
        for (int x = 0; x < nq; ++x) {
            if (entry_dims[j][x] == 0) continue;
            int b = remaining[x] / entry_dims[j][x];
            bound = bound == -1 ? b : std::min(bound, b);
        }
        if (bound < 0) bound = 0;  // zero-dim entries cannot occur
        for (int count = 0; count <= bound; ++count) {
            mu[j] = count;
            if (count > 0)
                for (int x = 0; x < nq; ++x) remaining[x] -= entry_dims[j][x];
            dfs(j + 1, remaining);
            if (survivors.size() >= 2) break;
        }
        for (int x = 0; x < nq; ++x) remaining[x] += mu[j] * entry_dims[j][x];
        mu[j] = 0;
    }
};

}  // namespace

OracleResult oracle_decompose(const Representation& m,
                              const std::vector<Indecomposable>& catalog) {
    std::vector<Representation> reps;
    reps.reserve(catalog.size());
    for (const Indecomposable& entry : catalog)
        reps.push_back(push_forward_inclusion(linearize(entry.tree, m.p), m.q));

    OracleSearch search;
    search.ncat = static_cast<int>(catalog.size());
    search.nq = m.q->size();
    search.entry_dims.resize(search.ncat);
    for (int j = 0; j < search.ncat; ++j) search.entry_dims[j] = reps[j].dims;
    search.suffix_support.assign(search.ncat, std::vector<bool>(search.nq, false));
    for (int j = search.ncat - 1; j >= 0; --j)
        for (int x = 0; x < search.nq; ++x)
            search.suffix_support[j][x] =
                search.entry_dims[j][x] > 0 ||
                (j + 1 < search.ncat && search.suffix_support[j + 1][x]);
    search.hom.assign(search.ncat, std::vector<std::int64_t>(search.ncat, 0));
    search.to_m.resize(search.ncat);
    search.from_m.resize(search.ncat);
    for (int i = 0; i < search.ncat; ++i) {
        for (int j = 0; j < search.ncat; ++j) search.hom[i][j] = hom_dim(reps[i], reps[j], false);
        search.to_m[i] = hom_dim(reps[i], m, false);
        search.from_m[i] = hom_dim(m, reps[i], false);
    }
    search.endo = hom_dim(m, m, false);
    search.mu.assign(search.ncat, 0);

    std::vector<int> remaining = m.dims;
    search.dfs(0, remaining);

    if (search.survivors.empty())
        throw ValidationError(
            "no multiplicity vector matches: the representation is not a direct sum of catalog "
            "entries");
    OracleResult result;
    if (search.survivors.size() > 1) return result;  // INCONCLUSIVE
    result.conclusive = true;
    for (int j = 0; j < search.ncat; ++j)
        if (search.survivors[0][j] > 0)
            result.summands.push_back(
                OracleSummand{catalog[j].apex, catalog[j].key, search.survivors[0][j]});
    return result;
}

}  // namespace treeph
