#include <doctest.h>

#include <random>

#include "chipfire/graph.hpp"
#include "oracles.hpp"

using namespace chipfire;

TEST_SUITE("graph") {

TEST_CASE("genus is |E| - |V| + 1") {
    CHECK(build_banana({3, 4, 5}).genus() == 2);
    CHECK(build_banana({1, 1, 1, 1}).genus() == 3);
    CHECK(build_cycle(3, 1).graph.genus() == 1);
    Graph tri = build_general({"a", "b", "c", "d", "e"},
                              {{"a", "b"}, {"b", "c"}, {"c", "a"}, {"c", "d"}, {"d", "e"}, {"e", "c"}});
    CHECK(tri.genus() == 2);
}

TEST_CASE("banana naming and aliases") {
    Graph b = build_banana({3, 2, 4});
    CHECK(b.size() == 2 + 2 + 1 + 3);
    CHECK(b.vertex("L") == b.vertex("s0.0"));
    CHECK(b.vertex("s1.0") == b.left());
    CHECK(b.vertex("s2.4") == b.right());
    CHECK(b.vertex("R") == b.right());
    CHECK(b.valence(b.left()) == 3);
    CHECK(b.valence(b.vertex("s2.2")) == 2);
    CHECK(b.strand_positions(b.left()).size() == 3);
    const auto p = b.strand_positions(b.vertex("s1.1"));
    REQUIRE(p.size() == 1);
    CHECK(p[0] == StrandPos{1, 1});
    CHECK(b.default_base() == b.left());
}

TEST_CASE("multi-edges from length-1 strands") {
    Graph b = build_banana({1, 1, 1});
    CHECK(b.size() == 2);
    CHECK(b.multiplicity(b.left(), b.right()) == 3);
    CHECK(b.genus() == 2);
}

TEST_CASE("invalid graphs are rejected") {
    CHECK_THROWS_AS(build_general({"a", "a"}, {{"a", "a"}}), GraphError);
    CHECK_THROWS_AS(build_general({"a", "b", "c"}, {{"a", "b"}}), GraphError);
    CHECK_THROWS_AS(build_general({"a", "b"}, {{"a", "a"}}), GraphError);
    CHECK_THROWS_AS(build_banana({2}), GraphError);
    CHECK_THROWS_AS(build_banana({2, 0}), GraphError);
    CHECK_THROWS_AS(build_banana({2, 2}).vertex("s5.1"), GraphError);
}

TEST_CASE("Kirchhoff count agrees with subset enumeration") {
    CHECK(jacobian_order(build_banana({3, 4, 5})) == 47);
    std::mt19937 rng(7);
    for (int t = 0; t < 12; ++t) {
        std::vector<int> n;
        const int strands = 2 + static_cast<int>(rng() % 3);
        for (int i = 0; i < strands; ++i) n.push_back(1 + static_cast<int>(rng() % 3));
        Graph b = build_banana(n);
        CHECK(jacobian_order(b) == oracle::spanning_trees(b));
    }
    Graph k4 = build_general({"a", "b", "c", "d"},
                             {{"a", "b"}, {"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}, {"c", "d"}});
    CHECK(jacobian_order(k4) == 16);
    CHECK(oracle::spanning_trees(k4) == 16);
}

TEST_CASE("gluing adds genus and keeps end marks") {
    MarkedGraph a = build_cycle(3, 1), b = build_cycle(3, 2);
    MarkedGraph g = vertex_glue(a, b);
    CHECK(g.graph.genus() == 2);
    CHECK(g.graph.size() == a.graph.size() + b.graph.size() - 1);
    CHECK(g.graph.name(g.u) == "c1/s0.0");
    CHECK(g.graph.name(g.v) == "c2/s0.3");

    Gluing br = glue_chain({a, b}, {2});
    CHECK(br.glued.graph.genus() == 2);
    CHECK(br.glued.graph.size() == a.graph.size() + b.graph.size() + 1);
    CHECK(br.bridge_vertices[0].size() == 1);
    CHECK_THROWS_AS(glue_chain({a, b}, {1, 1}), GraphError);
}

TEST_CASE("bridge contraction") {
    Gluing br = glue_chain({build_cycle(2, 2), build_cycle(1, 2)}, {3});
    int n = 0;
    MarkedGraph c = contract_bridges(br.glued, &n);
    CHECK(n == 3);
    CHECK(c.graph.genus() == 2);
    CHECK(c.graph.size() == br.glued.graph.size() - 3);
    CHECK(jacobian_order(c.graph) == jacobian_order(br.glued.graph));
}

TEST_CASE("banana recognition from structure") {
    Graph plain = build_general({"x", "y", "p", "q", "r"},
                                {{"x", "p"}, {"p", "y"}, {"x", "q"}, {"q", "r"}, {"r", "y"}, {"x", "y"}});
    auto view = recognize_banana(plain);
    REQUIRE(view);
    auto lens = view->spec.lengths;
    std::sort(lens.begin(), lens.end());
    CHECK(lens == std::vector<int>{1, 2, 3});
    MarkedGraph mg = mark(plain, "p", "r");
    Relabeled rel = as_banana(mg, *view);
    CHECK(rel.marked.graph.genus() == 2);
    CHECK(jacobian_order(rel.marked.graph) == jacobian_order(plain));
    CHECK(rel.image[static_cast<std::size_t>(mg.u)] == rel.marked.u);

    Graph two = build_general({"a", "b", "c", "d", "e"},
                              {{"a", "b"}, {"b", "c"}, {"c", "a"}, {"c", "d"}, {"d", "e"}, {"e", "c"}});
    CHECK_FALSE(recognize_banana(two));
    auto loops = recognize_two_loops(two);
    REQUIRE(loops);
    CHECK(two.name(loops->cut) == "c");
    CHECK(loops->loop_a.size() == 3);
    CHECK(loops->loop_b.size() == 3);
    CHECK(loops->loop_a.front() == loops->cut);
}

}
