#include <doctest.h>

#include <random>
#include <set>

#include "chipfire/banana.hpp"
#include "chipfire/certify.hpp"
#include "chipfire/spec_io.hpp"
#include "oracles.hpp"

using namespace chipfire;

namespace {

MarkedGraph theta(int a, int b, int c, const char* u, const char* v) { return mark(build_banana({a, b, c}), u, v); }

// Brute-force census: max rank per degree by scanning every effective divisor
// class through the reference rank.
std::vector<int> brute_census(const Graph& g) {
    std::vector<int> out;
    const auto classes = oracle::jacobian(g);
    for (long long d = 0; d <= 2LL * g.genus() - 2; ++d) {
        int best = -1;
        for (const auto& c : classes) {
            Divisor e = c;
            e.add(0, d);
            best = std::max(best, oracle::rank(g, e));
        }
        out.push_back(best);
    }
    return out;
}

}  // namespace

TEST_SUITE("certify") {

TEST_CASE("rho and verdict strings") {
    CHECK(rho(3, 1, 2) == -1);
    CHECK(rho(3, 1, 3) == 1);
    CHECK(rho(3, 1, 4) == 3);
    CHECK(rho(8, 0, 0) == 0);
    CHECK(to_string(Verdict::CertifiedGeneral) == "CERTIFIED_GENERAL");
    CHECK(exit_code(Verdict::Inconclusive) == 2);
    CHECK(exit_code(Verdict::NotKgt) == 1);
    CHECK(exit_code(Verdict::Kgt2) == 0);
}

TEST_CASE("census agrees with brute force") {
    for (const Graph& g : {build_banana({2, 1, 2}), build_banana({1, 1, 1, 1}), oracle::small_graphs()[5]}) {
        const Census c = divisor_census(g, 2);
        std::vector<int> got(c.max_rank.begin(), c.max_rank.end());
        CHECK(got == brute_census(g));
        for (std::size_t d = 0; d < c.argmax.size(); ++d) {
            CHECK(c.argmax[d].degree() == static_cast<long long>(d));
            CHECK(oracle::rank(g, c.argmax[d]) == c.max_rank[d]);
        }
        CHECK(c.contains(-3, -1));
        CHECK_FALSE(c.contains(-1, 0));
        CHECK(c.contains(2 * g.genus() + 1, g.genus() + 1));
        CHECK_FALSE(c.contains(2 * g.genus() + 1, g.genus() + 2));
    }
}

TEST_CASE("unmarked generality by census") {
    CHECK(bn_general_unmarked(build_banana({3, 1})).verdict == Verdict::CertifiedGeneral);
    const Certificate k4 = bn_general_unmarked(oracle::small_graphs()[6]);
    CHECK(k4.verdict == Verdict::CertifiedGeneral);
    // Genus 3 with a degree-2 rank-1 class is hyperelliptic, so not general.
    const Certificate hyp = bn_general_unmarked(build_banana({1, 1, 1, 1}));
    CHECK(hyp.verdict == Verdict::NotGeneral);
    CHECK(hyp.evidence["violation"]["rho"].get<long long>() < 0);
}

TEST_CASE("marked generality by Weierstrass partitions") {
    MarkedGraph c = build_cycle(3, 1);
    CHECK(bn_general_marked(c.graph, c.v).verdict == Verdict::CertifiedGeneral);
    Graph b = build_banana({1, 1, 1, 1});
    CHECK(bn_general_marked(b, b.right()).verdict == Verdict::NotGeneral);
}

TEST_CASE("theta non-submodular classes match brute force") {
    for (const auto& n : std::vector<std::vector<int>>{{3, 3, 3}, {2, 3, 1}, {4, 1, 2}}) {
        Graph b = build_banana(n);
        auto o = make_rank_oracle(b);
        const auto classes = jacobian_classes(b);
        for (Vertex u = 0; u < static_cast<Vertex>(b.size()); ++u)
            for (Vertex v = 0; v < static_cast<Vertex>(b.size()); ++v) {
                if (u == v) continue;
                MarkedGraph mg{b, u, v};
                std::set<Divisor> brute;
                for (const auto& c : classes) {
                    Divisor d = c;
                    d.add(b.left(), 2);
                    if (oracle::delta(b, u, v, d) < 0) brute.insert(o->canonical(d));
                }
                const auto got = theta_nonsubmodular_set(mg);
                CHECK(std::set<Divisor>(got.begin(), got.end()) == brute);
            }
    }
}

TEST_CASE("genus-2 classification examples") {
    const Certificate even = classify_genus2(theta(4, 1, 4, "s0.1", "s2.1"));
    CHECK(even.verdict == Verdict::Kgt);
    CHECK(even.evidence["case"] == "3c");
    CHECK(even.evidence["k"] == 4);
    CHECK(even.evidence["evenly_marked"] == true);

    const Certificate same = classify_genus2(theta(3, 3, 3, "s0.1", "s0.2"));
    CHECK(same.verdict == Verdict::NotKgt);
    CHECK(same.evidence.contains("delta_witness"));

    const Certificate lr = classify_genus2(theta(2, 2, 2, "L", "R"));
    CHECK(lr.verdict == Verdict::NotKgt);
    CHECK(lr.evidence["case"] == "multivalent");

    const Certificate glued = classify_genus2(vertex_glue(build_cycle(3, 1), build_cycle(1, 3)));
    CHECK(glued.verdict == Verdict::Kgt);
    CHECK(glued.evidence["case"] == "1");
    const Certificate unequal = classify_genus2(vertex_glue(build_cycle(3, 1), build_cycle(3, 2)));
    CHECK(unequal.verdict == Verdict::NotKgt);
    CHECK(unequal.evidence.contains("recurrence"));

    Graph loops = oracle::small_graphs()[5];
    CHECK(classify_genus2(mark(loops, "a", "b")).verdict == Verdict::NotKgt);
    Graph digon = build_general({"c", "d", "x", "y"}, {{"c", "d"}, {"d", "c"}, {"c", "x"}, {"x", "y"}, {"y", "c"}});
    const Certificate two = classify_genus2(mark(digon, "c", "d"));
    CHECK(two.verdict == Verdict::Kgt);
    CHECK(two.evidence["case"] == "2");

    CHECK_THROWS_AS(classify_genus2(build_cycle(2, 2)), GraphError);
    CHECK_THROWS_AS(classify_genus2(theta(2, 2, 2, "L", "L")), DegenerateMarksError);
}

TEST_CASE("genus-2 classification handles bridges") {
    Gluing g = glue_chain({build_cycle(3, 1), build_cycle(1, 3)}, {2});
    const Certificate c = classify_genus2(g.glued);
    CHECK(c.verdict == Verdict::Kgt);
    CHECK(c.evidence["bridges_contracted"] == 2);
}

TEST_CASE("genus-2 classification agrees with the sweep on small thetas") {
    for (const auto& n : std::vector<std::vector<int>>{{2, 2, 1}, {3, 1, 2}, {2, 2, 2}}) {
        Graph b = build_banana(n);
        for (Vertex u = 0; u < static_cast<Vertex>(b.size()); ++u)
            for (Vertex v = 0; v < static_cast<Vertex>(b.size()); ++v) {
                if (u == v) continue;
                MarkedGraph mg{b, u, v};
                const bool kgt = classify_genus2(mg).verdict == Verdict::Kgt;
                CHECK(kgt == kgt_check(mg).pass);
            }
    }
}

TEST_CASE("banana classification examples") {
    const Certificate two = classify_banana(mark(build_banana({2, 2, 1, 1}), "s0.1", "s1.1"));
    CHECK(two.verdict == Verdict::Kgt2);
    const Certificate lr = classify_banana(mark(build_banana({3, 3, 3, 3}), "L", "R"));
    CHECK(lr.verdict == Verdict::SubmodularNotKgt);
    CHECK(lr.evidence["bound"]["value"] == 6);
    const Certificate gen = classify_banana(mark(build_banana({3, 3, 3, 3}), "s0.1", "s1.1"));
    CHECK(gen.verdict == Verdict::NonSubmodular);
    Graph b = build_banana({3, 3, 3, 3});
    const Divisor w = parse_divisor(b, gen.evidence["delta_witness"].get<std::string>());
    CHECK(oracle::delta(b, b.vertex("s0.1"), b.vertex("s1.1"), w) == -1);
    CHECK_THROWS_AS(classify_banana(theta(2, 2, 2, "L", "R")), GraphError);
}

TEST_CASE("banana classification agrees with the sweep on small bananas") {
    for (const auto& n : std::vector<std::vector<int>>{{2, 2, 1, 1}, {3, 2, 1, 1}, {2, 2, 2, 1}}) {
        Graph b = build_banana(n);
        for (Vertex u = 0; u < static_cast<Vertex>(b.size()); ++u)
            for (Vertex v = 0; v < static_cast<Vertex>(b.size()); ++v) {
                if (u == v) continue;
                MarkedGraph mg{b, u, v};
                const Certificate c = classify_banana(mg);
                const KgtReport r = kgt_check(mg);
                CHECK((c.verdict == Verdict::NonSubmodular) == !r.submodular);
                CHECK((c.verdict == Verdict::Kgt2 || c.verdict == Verdict::Kgt) == r.pass);
            }
    }
}

TEST_CASE("chain split index and certificates") {
    CHECK(chain_split_index({1, 2, 1, 2, 2}) == 3);
    CHECK(chain_split_index({1}) == 1);
    CHECK(chain_split_index({3, 1}) == 1);

    ChainSpec one{{build_cycle(3, 1)}, {}};
    const Certificate c1 = chain_certify(one);
    CHECK(c1.verdict == Verdict::CertifiedGeneral);

    ChainSpec weak{{build_cycle(2, 1), theta(2, 1, 2, "s0.1", "s2.1")}, {}};
    const Certificate c2 = chain_certify(weak);
    CHECK(c2.verdict == Verdict::Inconclusive);

    ChainSpec bad{{build_cycle(3, 1), theta(3, 3, 3, "s0.1", "s0.2")}, {}};
    const Certificate c3 = chain_certify(bad);
    CHECK(c3.verdict == Verdict::Inconclusive);
    CHECK(c3.evidence.contains("reason"));
}

TEST_CASE("certified small chains pass the census") {
    ChainSpec spec{{build_cycle(2, 1), theta(4, 1, 4, "s0.1", "s2.1")}, {}};
    const Certificate c = chain_certify(spec);
    REQUIRE(c.verdict == Verdict::CertifiedGeneral);
    Gluing g = glue_chain(spec.components);
    CHECK(jacobian_order(g.glued.graph) == 72);
    CHECK(bn_general_unmarked(g.glued.graph, 2).verdict == Verdict::CertifiedGeneral);
}


TEST_CASE("every certified chain of genus <= 4 passes the census") {
    const std::vector<MarkedGraph> parts = {build_cycle(3, 1), build_cycle(2, 1), build_cycle(1, 1),
                                            theta(4, 1, 4, "s0.1", "s2.1"), theta(2, 1, 2, "s0.1", "s2.1"),
                                            theta(3, 3, 3, "s0.1", "s1.1")};
    int certified = 0;
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::size_t j = 0; j < parts.size(); ++j) {
            if (parts[i].graph.genus() + parts[j].graph.genus() > 4) continue;
            ChainSpec spec{{parts[i], parts[j]}, {}};
            if (chain_certify(spec).verdict != Verdict::CertifiedGeneral) continue;
            ++certified;
            CHECK(bn_general_unmarked(glue_chain(spec.components).glued.graph, 2).verdict == Verdict::CertifiedGeneral);
        }
    CHECK(certified > 0);
}

}
