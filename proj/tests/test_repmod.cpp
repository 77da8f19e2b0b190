#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>

#include "doctest.h"
#include "helpers.hpp"
#include "treeph/decomp.hpp"
#include "treeph/gen.hpp"
#include "treeph/repmod.hpp"

using namespace treeph;
using namespace treeph::testing;

namespace {

// Shape-only AHU key of a rooted tree, for isomorphism checks that ignore
// vertex names.
CanonicalKey shape_key(const RootedTree& t, int v) {
    std::vector<CanonicalKey> kids;
    for (int c : t.children(v)) kids.push_back(shape_key(t, c));
    std::sort(kids.begin(), kids.end());
    CanonicalKey out = "(";
    for (const auto& k : kids) out += k;
    return out + ")";
}
CanonicalKey shape_key(const RootedTree& t) { return shape_key(t, t.root()); }

// Reads a coefficient quiver back as a tree over q; vertex "x#i" is labeled
// by "x".
TreeOverQ coefficient_tree(const Quiver& coeff, const RootedTreePtr& q) {
    std::map<VertexId, VertexId> labeling;
    for (const auto& v : coeff.vertices) labeling[v] = v.substr(0, v.rfind('#'));
    return build_tree_over(q, coeff, labeling);
}

std::vector<OracleSummand> algorithm_multiset(const Decomposition& d) {
    std::vector<OracleSummand> out;
    for (const Summand& s : d.summands)
        out.push_back(OracleSummand{s.apex, s.key, s.multiplicity});
    return out;
}

}  // namespace

TEST_CASE("gf_rank on small matrices") {
    GFMatrix m(2, 3);
    m.set(0, 0, 1);
    m.set(0, 1, 1);
    m.set(1, 1, 1);
    m.set(1, 2, 1);
    CHECK(gf_rank(m, 2) == 2);
    GFMatrix singular(2, 2);
    singular.set(0, 0, 1);
    singular.set(0, 1, 1);
    singular.set(1, 0, 1);
    singular.set(1, 1, 1);
    CHECK(gf_rank(singular, 2) == 1);
    CHECK(gf_rank(singular, 3) == 1);
    CHECK(gf_rank(GFMatrix(0, 5), 2) == 0);
    CHECK_THROWS_AS(gf_rank(GFMatrix(1, 1), 4), ValidationError);
}

TEST_CASE("linearize produces the 0/1 fiber matrices") {
    RootedTreePtr q = q_ab();
    int a = q->index_of("a");

    Representation star = linearize(star_over(q), 2);
    CHECK(star.dim_of("a") == 0);
    CHECK(star.dim_of("b") == 1);
    CHECK(star.matrices[a].rows == 1);
    CHECK(star.matrices[a].cols == 0);

    Representation one = linearize(t1(q), 2);
    CHECK(one.dim_of("a") == 1);
    CHECK(one.dim_of("b") == 1);
    CHECK(one.matrices[a].at(0, 0) == 1);

    Representation two = linearize(t2(q), 2);
    CHECK(two.dim_of("a") == 2);
    CHECK(two.dim_of("b") == 1);
    CHECK(two.matrices[a].at(0, 0) == 1);
    CHECK(two.matrices[a].at(0, 1) == 1);
}

TEST_CASE("push_forward_inclusion extends by zero") {
    RootedTreePtr q = q_ab();
    Representation inside = linearize(star_over(downset_ptr(*q, "a")), 2);
    Representation pushed = push_forward_inclusion(inside, q);
    CHECK(pushed.dim_of("a") == 1);
    CHECK(pushed.dim_of("b") == 0);
    CHECK(pushed.matrices[q->index_of("a")].rows == 0);
    CHECK(pushed.matrices[q->index_of("a")].cols == 1);

    Representation whole = linearize(t1(q), 2);
    Representation same = push_forward_inclusion(whole, q);
    CHECK(same.dims == whole.dims);
    CHECK(same.matrices[q->index_of("a")] == whole.matrices[q->index_of("a")]);

    RootedTreePtr chain3 = validate_rooted_tree_ptr(
        build_quiver({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}));
    Representation mid = linearize(t1(downset_ptr(*chain3, "b")), 2);
    Representation up = push_forward_inclusion(mid, chain3);
    CHECK(up.dim_of("a") == 1);
    CHECK(up.dim_of("b") == 1);
    CHECK(up.dim_of("c") == 0);

    CHECK_THROWS_AS(push_forward_inclusion(linearize(star_over(chain3), 2), q), ValidationError);
}

TEST_CASE("direct_sum assembles blocks") {
    RootedTreePtr q = q_ab();
    Representation one = linearize(t1(q), 2);
    std::vector<Representation> single{one};
    Representation same = direct_sum(q, 2, single);
    CHECK(same.dims == one.dims);

    Representation zero = direct_sum(q, 2, {});
    CHECK(zero.dim_of("a") == 0);
    CHECK(zero.dim_of("b") == 0);

    Representation pushed = push_forward_inclusion(linearize(star_over(downset_ptr(*q, "a")), 2), q);
    std::vector<Representation> pair{one, pushed};
    Representation sum = direct_sum(q, 2, pair);
    CHECK(sum.dim_of("a") == 2);
    CHECK(sum.dim_of("b") == 1);
    // Same dim vector as the two-leaf tree, as representations they differ
    // only by basis.
    CHECK(sum.dims == linearize(t2(q), 2).dims);
}

TEST_CASE("hom_dim on the worked pairs") {
    RootedTreePtr q = q_ab();
    Representation one = linearize(t1(q), 2);
    Representation star = linearize(star_over(q), 2);
    Representation leaf = push_forward_inclusion(linearize(star_over(downset_ptr(*q, "a")), 2), q);

    CHECK(hom_dim(one, one, false) == 1);
    CHECK(hom_dim(one, one, true) == 0);
    CHECK(hom_dim(leaf, one, false) == 0);  // the constraint forces both components zero
    CHECK(hom_dim(one, leaf, false) == 1);  // free scalar on the leaf component
    CHECK(hom_dim(one, leaf, true) == 1);   // the root block is already zero-dimensional
    CHECK(hom_dim(star, one, false) == 1);
    CHECK(hom_dim(star, one, true) == 0);

    Representation p3 = linearize(t1(q), 3);
    CHECK_THROWS_AS(hom_dim(one, p3, false), ValidationError);
}

TEST_CASE("coefficient quivers recover the tree") {
    RootedTreePtr q = q_ab();
    Quiver coeff = coefficient_quiver(linearize(t1(q), 2));
    CHECK(shape_key(validate_rooted_tree(coeff)) == shape_key(t1(q).tree()));

    CHECK(coefficient_quiver(zero_representation(q, 2)).vertices.empty());

    Quiver vee = coefficient_quiver(linearize(t2(q), 2));
    RootedTree vt = validate_rooted_tree(vee);
    CHECK(vt.children(vt.root()).size() == 2);
}

TEST_CASE("linearize then coefficient quiver is the identity up to iso") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        Rng rng(seed);
        RootedTreePtr q =
            validate_rooted_tree_ptr(gen_rooted_tree_quiver(1 + rng.below_int(8), rng));
        TreeOverQ t = gen_tree_over(q, 1 + rng.below_int(15), rng);
        TreeOverQ back = coefficient_tree(coefficient_quiver(linearize(t, 2)), q);
        CHECK(canonical_key(back) == canonical_key(t));
    }
}

TEST_CASE("gluing then linearizing equals linearizing then gluing") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Rng rng(seed);
        RootedTreePtr q =
            validate_rooted_tree_ptr(gen_rooted_tree_quiver(2 + rng.below_int(6), rng));
        const std::vector<int>& branches = q->children(q->root());
        std::vector<std::vector<TreeOverQ>> assignment(branches.size());
        for (size_t i = 0; i < branches.size(); ++i) {
            RootedTreePtr down = downset_ptr(*q, q->id_of(branches[i]));
            for (int k = rng.below_int(3); k > 0; --k)
                assignment[i].push_back(gen_tree_over(down, 1 + rng.below_int(5), rng));
        }

        // Assemble the glued block representation by hand: one dimension at
        // the root, per-branch direct sums below, all-ones maps into the root.
        Representation glued = zero_representation(q, 2);
        glued.dims[q->root()] = 1;
        for (size_t i = 0; i < branches.size(); ++i) {
            RootedTreePtr down = downset_ptr(*q, q->id_of(branches[i]));
            std::vector<Representation> parts;
            for (const TreeOverQ& part : assignment[i]) parts.push_back(linearize(part, 2));
            Representation branch_sum = direct_sum(down, 2, parts);
            for (int x = 0; x < down->size(); ++x) {
                int gx = q->index_of(down->id_of(x));
                glued.dims[gx] = branch_sum.dims[x];
            }
            for (int x = 0; x < down->size(); ++x) {
                int gx = q->index_of(down->id_of(x));
                if (x == down->root()) {
                    GFMatrix ones(1, branch_sum.dims[x]);
                    for (int c = 0; c < ones.cols; ++c) ones.set(0, c, 1);
                    glued.matrices[gx] = std::move(ones);
                } else {
                    glued.matrices[gx] = branch_sum.matrices[x];
                }
            }
        }

        TreeOverQ whole = glue_trees_over(q, assignment);
        Representation direct = linearize(whole, 2);
        CHECK(direct.dims == glued.dims);
        // Equal up to simultaneous permutation: compare coefficient quivers
        // as labeled trees over q.
        CHECK(canonical_key(coefficient_tree(coefficient_quiver(direct), q)) ==
              canonical_key(coefficient_tree(coefficient_quiver(glued), q)));
    }
}

TEST_CASE("order, hom count, and hom dimension agree") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        Rng rng(seed);
        RootedTreePtr q =
            validate_rooted_tree_ptr(gen_rooted_tree_quiver(1 + rng.below_int(5), rng));
        TreeOverQ s = gen_tree_over(q, 1 + rng.below_int(10), rng);
        TreeOverQ t = gen_tree_over(q, 1 + rng.below_int(10), rng);
        Representation ks = linearize(s, 2);
        Representation kt = linearize(t, 2);
        bool nonzero_at_root = hom_dim(ks, kt, false) > hom_dim(ks, kt, true);
        CHECK(nonzero_at_root == tree_leq(s, t));
        CHECK(nonzero_at_root == (hom_count(s, t) > 0));
    }
}

TEST_CASE("reduced trees have local endomorphism rings") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        Rng rng(seed);
        RootedTreePtr q =
            validate_rooted_tree_ptr(gen_rooted_tree_quiver(1 + rng.below_int(5), rng));
        TreeOverQ t = gen_tree_over(q, 1 + rng.below_int(10), rng);
        if (!is_reduced(t)) continue;
        Representation kt = linearize(t, 2);
        CHECK(hom_dim(kt, kt, false) - hom_dim(kt, kt, true) == 1);
    }
}

TEST_CASE("h0 dims via rank on the worked filtrations") {
    RootedTreePtr q = q_ab();
    Graph g = build_graph({"u", "w"}, {{"u", "w"}});
    QFiltration f = validate_filtration(g, q, {{"u", "a"}, {"w", "a"}}, {{{"u", "w"}, "b"}});
    DimVector dims = h0_dims_via_rank(f, 2);
    CHECK(dims.at("a") == 2);
    CHECK(dims.at("b") == 1);

    QFiltration empty = validate_filtration(build_graph({}, {}), q, {}, {});
    DimVector zeros = h0_dims_via_rank(empty, 2);
    CHECK(zeros.at("a") == 0);
    CHECK(zeros.at("b") == 0);

    QFiltration at_root = validate_filtration(g, q, {{"u", "b"}, {"w", "b"}}, {{{"u", "w"}, "b"}});
    DimVector root_only = h0_dims_via_rank(at_root, 2);
    CHECK(root_only.at("a") == 0);
    CHECK(root_only.at("b") == 1);
}

TEST_CASE("h0 dims match the forest pipeline on random filtrations") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Rng rng(seed);
        RootedTreePtr q =
            validate_rooted_tree_ptr(gen_rooted_tree_quiver(1 + rng.below_int(8), rng));
        QFiltration f = gen_filtration(q, rng.below_int(20), rng.below_int(30), rng);
        Representation lin = linearize(filtration_to_forest(f), 2);
        CHECK(lin.dim_vector() == h0_dims_via_rank(f, 2));
        CHECK(lin.dim_vector() == h0_dims_via_rank(f, 3));
    }
}

TEST_CASE("oracle on the worked examples") {
    RootedTreePtr q = q_ab();
    auto catalog = enumerate_indecomposables(q);
    REQUIRE(catalog.size() == 3);

    OracleResult two = oracle_decompose(linearize(t2(q), 2), catalog);
    REQUIRE(two.conclusive);
    REQUIRE(two.summands.size() == 2);
    CHECK(two.summands[0] == OracleSummand{"a", "(a)", 1});
    CHECK(two.summands[1] == OracleSummand{"b", "(b(a))", 1});

    OracleResult star = oracle_decompose(linearize(star_over(q), 2), catalog);
    REQUIRE(star.conclusive);
    REQUIRE(star.summands.size() == 1);
    CHECK(star.summands[0] == OracleSummand{"b", "(b)", 1});

    Representation one = linearize(t1(q), 2);
    std::vector<Representation> pair{one, one};
    OracleResult doubled = oracle_decompose(direct_sum(q, 2, pair), catalog);
    REQUIRE(doubled.conclusive);
    REQUIRE(doubled.summands.size() == 1);
    CHECK(doubled.summands[0] == OracleSummand{"b", "(b(a))", 2});
}

TEST_CASE("oracle rejects representations outside the additive closure") {
    // Three distinct lines in the plane over the 3-leaf star: indecomposable
    // with a one-dimensional endomorphism ring, but not a rooted tree module.
    RootedTreePtr star3 = validate_rooted_tree_ptr(
        build_quiver({"a", "b", "c", "r"}, {{"a", "r"}, {"b", "r"}, {"c", "r"}}));
    Representation lines = zero_representation(star3, 2);
    for (const char* leaf : {"a", "b", "c"}) lines.dims[star3->index_of(leaf)] = 1;
    lines.dims[star3->root()] = 2;
    GFMatrix la(2, 1), lb(2, 1), lc(2, 1);
    la.set(0, 0, 1);
    lb.set(1, 0, 1);
    lc.set(0, 0, 1);
    lc.set(1, 0, 1);
    lines.matrices[star3->index_of("a")] = la;
    lines.matrices[star3->index_of("b")] = lb;
    lines.matrices[star3->index_of("c")] = lc;
    CHECK_THROWS_AS(oracle_decompose(lines, enumerate_indecomposables(star3)), ValidationError);
}

TEST_CASE("oracle agrees with the decomposition algorithm") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        Rng rng(seed);
        RootedTreePtr q =
            validate_rooted_tree_ptr(gen_rooted_tree_quiver(1 + rng.below_int(5), rng));
        TreeOverQ t = gen_tree_over(q, 1 + rng.below_int(10), rng);
        auto catalog = enumerate_indecomposables(q);
        for (std::uint32_t p : {2u, 3u}) {
            OracleResult oracle = oracle_decompose(linearize(t, p), catalog);
            if (!oracle.conclusive) continue;
            CHECK(oracle.summands == algorithm_multiset(decompose_tree(t).decomposition));
        }
    }
}
