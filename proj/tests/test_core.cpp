#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>

#include "doctest.h"
#include "helpers.hpp"
#include "treeph/core.hpp"
#include "treeph/gen.hpp"

using namespace treeph;
using namespace treeph::testing;

TEST_CASE("build_quiver validates ids and endpoints") {
    Quiver q = build_quiver({"a", "b"}, {{"a", "b"}});
    CHECK(q.vertices.size() == 2);
    CHECK(q.edges.size() == 1);
    CHECK_THROWS_AS(build_quiver({"a"}, {{"a", "x"}}), ValidationError);
    CHECK_THROWS_AS(build_quiver({"a", "a"}, {}), ValidationError);
    CHECK_THROWS_AS(build_quiver({"a b"}, {}), ValidationError);
    CHECK_THROWS_AS(build_quiver({""}, {}), ValidationError);
    Quiver empty = build_quiver({}, {});
    CHECK(empty.vertices.empty());
}

TEST_CASE("validate_rooted_tree basic shapes") {
    RootedTree chain = validate_rooted_tree(build_quiver({"a", "b"}, {{"a", "b"}}));
    CHECK(chain.root_id() == "b");
    CHECK(chain.level(chain.index_of("b")) == 0);
    CHECK(chain.level(chain.index_of("a")) == 1);
    CHECK(chain.height() == 1);

    RootedTree vee = validate_rooted_tree(build_quiver({"a", "b", "c"}, {{"a", "b"}, {"c", "b"}}));
    CHECK(vee.root_id() == "b");
    CHECK(vee.level(vee.index_of("a")) == 1);
    CHECK(vee.level(vee.index_of("c")) == 1);
    CHECK(vee.children(vee.root()).size() == 2);
}

TEST_CASE("validate_rooted_tree rejections") {
    CHECK_THROWS_AS(validate_rooted_tree(build_quiver({"a", "b"}, {{"a", "b"}, {"b", "a"}})),
                    ValidationError);  // cycle: no sink
    CHECK_THROWS_AS(validate_rooted_tree(build_quiver({"a", "b"}, {})), ValidationError);  // 2 sinks
    CHECK_THROWS_AS(validate_rooted_tree(build_quiver({}, {})), ValidationError);
    CHECK_THROWS_AS(validate_rooted_tree(build_quiver({"a"}, {{"a", "a"}})), ValidationError);
    CHECK_THROWS_AS(
        validate_rooted_tree(build_quiver({"a", "b"}, {{"a", "b"}, {"a", "b"}})),
        ValidationError);  // parallel
    CHECK_THROWS_AS(validate_rooted_tree(
                        build_quiver({"a", "b", "c"}, {{"a", "b"}, {"a", "c"}})),
                    ValidationError);  // out-degree 2
    // Connected check: a 2-cycle next to the root cannot stay connected.
    CHECK_THROWS_AS(validate_rooted_tree(
                        build_quiver({"a", "b", "r"}, {{"a", "b"}, {"b", "a"}})),
                    ValidationError);
}

TEST_CASE("leq_q follows directed paths") {
    RootedTree chain = validate_rooted_tree(build_quiver({"a", "b"}, {{"a", "b"}}));
    CHECK(leq_q(chain, "a", "b"));
    CHECK_FALSE(leq_q(chain, "b", "a"));
    RootedTree vee = validate_rooted_tree(build_quiver({"a", "b", "c"}, {{"a", "b"}, {"c", "b"}}));
    CHECK_FALSE(leq_q(vee, "a", "c"));
    CHECK(leq_q(vee, "a", "a"));
    CHECK_THROWS_AS(leq_q(vee, "a", "zzz"), ValidationError);
}

TEST_CASE("join of siblings and comparable pairs") {
    RootedTree vee = validate_rooted_tree(build_quiver({"a", "b", "c"}, {{"a", "b"}, {"c", "b"}}));
    CHECK(join(vee, VertexId("a"), VertexId("c")) == "b");
    RootedTree chain = validate_rooted_tree(build_quiver({"a", "b"}, {{"a", "b"}}));
    CHECK(join(chain, VertexId("a"), VertexId("b")) == "b");
    CHECK(join(chain, VertexId("a"), VertexId("a")) == "a");
}

TEST_CASE("downset of root, leaf, and middle vertex") {
    RootedTree vee = validate_rooted_tree(build_quiver({"a", "b", "c"}, {{"a", "b"}, {"c", "b"}}));
    CHECK(downset(vee, "b") == vee);
    RootedTree leaf = downset(vee, "a");
    CHECK(leaf.size() == 1);
    CHECK(leaf.root_id() == "a");
    RootedTree chain3 = validate_rooted_tree(
        build_quiver({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}));
    RootedTree mid = downset(chain3, "b");
    CHECK(mid.quiver() == build_quiver({"a", "b"}, {{"a", "b"}}));
}

TEST_CASE("ancestor_at_level walks the parent chain") {
    RootedTree chain3 = validate_rooted_tree(
        build_quiver({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}));
    CHECK(ancestor_at_level(chain3, VertexId("a"), 0) == "c");
    CHECK(ancestor_at_level(chain3, VertexId("a"), 1) == "b");
    CHECK(ancestor_at_level(chain3, VertexId("a"), 2) == "a");
    CHECK_THROWS_AS(ancestor_at_level(chain3, VertexId("c"), 1), ValidationError);
}

TEST_CASE("build_tree_over accepts and rejects labelings") {
    RootedTreePtr q = q_ab();
    TreeOverQ valid = t1(q);
    CHECK(valid.label_id("u") == "a");
    TreeOverQ star = build_tree_over(q, build_quiver({"w"}, {}), {{"w", "b"}});
    CHECK(star.is_star());
    CHECK_THROWS_AS(build_tree_over(q, build_quiver({"u", "v"}, {{"u", "v"}}),
                                    {{"u", "b"}, {"v", "a"}}),
                    ValidationError);  // not root-preserving
    RootedTreePtr vee = validate_rooted_tree_ptr(
        build_quiver({"a", "b", "c"}, {{"a", "b"}, {"c", "b"}}));
    CHECK_THROWS_AS(build_tree_over(vee, build_quiver({"u", "v"}, {{"u", "v"}}),
                                    {{"u", "c"}, {"v", "c"}}),
                    ValidationError);  // (c -> c) is not an edge
    CHECK_THROWS_AS(build_tree_over(q, build_quiver({"u", "v"}, {{"u", "v"}}), {{"v", "b"}}),
                    ValidationError);  // missing label
}

TEST_CASE("glue_trees_over builds the inductive cases") {
    RootedTreePtr q = q_ab();
    RootedTreePtr down_a = downset_ptr(*q, "a");
    TreeOverQ star_a = star_over(down_a);

    TreeOverQ one = glue_trees_over(q, {{star_a}});
    CHECK(canonical_key(one) == "(b(a))");
    CHECK(iso_over_q(one, t1(q)));

    TreeOverQ two = glue_trees_over(q, {{star_a, star_a}});
    CHECK(canonical_key(two) == "(b(a)(a))");
    CHECK(iso_over_q(two, t2(q)));

    TreeOverQ none = glue_trees_over(q, {{}});
    CHECK(none.is_star());
    CHECK(canonical_key(none) == "(b)");

    CHECK_THROWS_AS(glue_trees_over(q, {{star_over(q)}}), ValidationError);  // wrong downset
    CHECK_THROWS_AS(glue_trees_over(q, {}), ValidationError);  // wrong arity
}

TEST_CASE("canonical keys ignore ids and child order") {
    RootedTreePtr q = q_ab();
    TreeOverQ t2a = t2(q);
    TreeOverQ t2b = build_tree_over(q, build_quiver({"x", "y", "z"}, {{"z", "y"}, {"x", "y"}}),
                                    {{"z", "a"}, {"x", "a"}, {"y", "b"}});
    CHECK(iso_over_q(t2a, t2b));
    CHECK_FALSE(iso_over_q(star_over(q), t2a));
    CHECK(iso_over_q(t2a, t2a));
}

TEST_CASE("split_at_root inverts glue_trees_over") {
    RootedTreePtr q = q_ab();
    TreeOverQ two = t2(q);
    auto lists = split_at_root(two);
    REQUIRE(lists.size() == 1);
    REQUIRE(lists[0].size() == 2);
    CHECK(lists[0][0].is_star());
    CHECK(lists[0][1].is_star());
    auto none = split_at_root(star_over(q));
    CHECK(none[0].empty());
}

TEST_CASE("hasse_quiver of chains, antichains, and vees") {
    Quiver chain = hasse_quiver({"1", "2", "3"},
                                {{"1", "1"}, {"2", "2"}, {"3", "3"},
                                 {"1", "2"}, {"2", "3"}, {"1", "3"}});
    CHECK(chain == build_quiver({"1", "2", "3"}, {{"1", "2"}, {"2", "3"}}));

    Quiver antichain = hasse_quiver({"1", "2"}, {{"1", "1"}, {"2", "2"}});
    CHECK(antichain.edges.empty());

    Quiver vee = hasse_quiver({"1", "2", "3"},
                              {{"1", "1"}, {"2", "2"}, {"3", "3"}, {"1", "3"}, {"2", "3"}});
    CHECK(vee == build_quiver({"1", "2", "3"}, {{"1", "3"}, {"2", "3"}}));

    CHECK_THROWS_AS(hasse_quiver({"1", "2"}, {{"1", "2"}}), ValidationError);  // not reflexive
    CHECK_THROWS_AS(hasse_quiver({"1", "2"},
                                 {{"1", "1"}, {"2", "2"}, {"1", "2"}, {"2", "1"}}),
                    ValidationError);  // not antisymmetric
    CHECK_THROWS_AS(hasse_quiver({"1", "2", "3"},
                                 {{"1", "1"}, {"2", "2"}, {"3", "3"}, {"1", "2"}, {"2", "3"}}),
                    ValidationError);  // not transitive
}

TEST_CASE("hasse_quiver inverts the reachability order of a tree quiver") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng rng(seed);
        RootedTree q = validate_rooted_tree(gen_rooted_tree_quiver(1 + rng.below_int(12), rng));
        std::vector<std::pair<VertexId, VertexId>> relation;
        for (int x = 0; x < q.size(); ++x)
            for (int y = 0; y < q.size(); ++y)
                if (leq_q(q, x, y)) relation.emplace_back(q.id_of(x), q.id_of(y));
        CHECK(hasse_quiver(q.quiver().vertices, relation) == q.quiver());
    }
}

TEST_CASE("forest construction rejects overlapping components") {
    RootedTreePtr q = q_ab();
    TreeOverQ star_b = star_over(q);
    TreeOverQ star_b2 = build_tree_over(q, build_quiver({"s"}, {}), {{"s", "b"}});
    ForestOverQ forest = make_forest_over(q, {star_b, star_b2}, {"b", "b"});
    CHECK(forest.components.size() == 2);
    CHECK_THROWS_AS(make_forest_over(q, {star_b, star_b}, {"b", "b"}), ValidationError);
    CHECK_THROWS_AS(make_forest_over(q, {star_b}, {"a"}), ValidationError);  // wrong downset
}

TEST_CASE("leq_q is a partial order and join is the least upper bound") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        Rng rng(seed);
        RootedTree q = validate_rooted_tree(gen_rooted_tree_quiver(2 + rng.below_int(11), rng));
        const int n = q.size();
        for (int x = 0; x < n; ++x) {
            CHECK(leq_q(q, x, q.root()));
            CHECK(leq_q(q, x, x));
            for (int y = 0; y < n; ++y) {
                if (leq_q(q, x, y) && leq_q(q, y, x)) CHECK(x == y);
                for (int z = 0; z < n; ++z)
                    if (leq_q(q, x, y) && leq_q(q, y, z)) CHECK(leq_q(q, x, z));
                int j = join(q, x, y);
                CHECK(j == join(q, y, x));
                CHECK(leq_q(q, x, j));
                CHECK(leq_q(q, y, j));
                for (int z = 0; z < n; ++z)
                    if (leq_q(q, x, z) && leq_q(q, y, z)) CHECK(leq_q(q, j, z));
            }
        }
    }
}

TEST_CASE("labelings are level-preserving on random instances") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        Rng rng(seed);
        RootedTreePtr q =
            validate_rooted_tree_ptr(gen_rooted_tree_quiver(1 + rng.below_int(12), rng));
        TreeOverQ t = gen_tree_over(q, 1 + rng.below_int(20), rng);
        for (int v = 0; v < t.tree().size(); ++v)
            CHECK(t.tree().level(v) == q->level(t.label_of(v)));
    }
}

TEST_CASE("canonical keys are invariant under relabeling") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        Rng rng(seed);
        RootedTreePtr q =
            validate_rooted_tree_ptr(gen_rooted_tree_quiver(2 + rng.below_int(8), rng));
        TreeOverQ t = gen_tree_over(q, 1 + rng.below_int(15), rng);
        // Rename every tree vertex and present the edges in a rotated order.
        const RootedTree& T = t.tree();
        std::map<VertexId, VertexId> rename;
        for (int v = 0; v < T.size(); ++v)
            rename[T.id_of(v)] = "r" + std::to_string(rng.below(1000000)) + "_" + T.id_of(v);
        std::vector<VertexId> vertices;
        for (int v = 0; v < T.size(); ++v) vertices.push_back(rename.at(T.id_of(v)));
        std::vector<EdgePair> edges;
        for (int v = 0; v < T.size(); ++v)
            if (v != T.root())
                edges.emplace_back(rename.at(T.id_of(v)), rename.at(T.id_of(T.parent(v))));
        if (edges.size() > 1) std::rotate(edges.begin(), edges.begin() + 1, edges.end());
        std::map<VertexId, VertexId> labeling;
        for (int v = 0; v < T.size(); ++v)
            labeling[rename.at(T.id_of(v))] = q->id_of(t.label_of(v));
        TreeOverQ renamed = build_tree_over(q, build_quiver(vertices, edges), labeling);
        CHECK(canonical_key(renamed) == canonical_key(t));
    }
}

TEST_CASE("glue then split recovers the inputs up to isomorphism") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        Rng rng(seed);
        RootedTreePtr q =
            validate_rooted_tree_ptr(gen_rooted_tree_quiver(2 + rng.below_int(8), rng));
        const std::vector<int>& branches = q->children(q->root());
        std::vector<std::vector<TreeOverQ>> assignment(branches.size());
        for (size_t i = 0; i < branches.size(); ++i) {
            RootedTreePtr down = downset_ptr(*q, q->id_of(branches[i]));
            int count = rng.below_int(3);
            for (int k = 0; k < count; ++k)
                assignment[i].push_back(gen_tree_over(down, 1 + rng.below_int(6), rng));
        }
        TreeOverQ glued = glue_trees_over(q, assignment);
        auto recovered = split_at_root(glued);
        REQUIRE(recovered.size() == assignment.size());
        for (size_t i = 0; i < assignment.size(); ++i) {
            REQUIRE(recovered[i].size() == assignment[i].size());
            std::vector<CanonicalKey> before, after;
            for (const auto& x : assignment[i]) before.push_back(canonical_key(x));
            for (const auto& x : recovered[i]) after.push_back(canonical_key(x));
            std::sort(before.begin(), before.end());
            std::sort(after.begin(), after.end());
            CHECK(before == after);
        }
    }
}
