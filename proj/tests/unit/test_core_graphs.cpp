#include <doctest.h>

#include "coarsesep/error.hpp"
#include "coarsesep/graph.hpp"
#include "coarsesep/graph_io.hpp"
#include "coarsesep/rational.hpp"

using namespace coarsesep;

namespace {

LabeledGraph z2_cycle(int n) { return cycle_graph(cyclic_labels(std::vector<int>(static_cast<std::size_t>(n), 2))); }

// a-b-c with the given orders
LabeledGraph abc_path(int a = 2, int b = 2, int c = 2) { return path_graph(cyclic_labels({a, b, c})); }

}  // namespace

TEST_CASE("parse_graph reads the pentagon") {
    const auto g = parse_graph(R"({"vertices": [
        {"id": 0, "group": {"cyclic": 2}}, {"id": 1, "group": {"cyclic": 2}}, {"id": 2, "group": {"cyclic": 2}},
        {"id": 3, "group": {"cyclic": 2}}, {"id": 4, "group": {"cyclic": 2}}],
        "edges": [[0,1],[1,2],[2,3],[3,4],[4,0]]})");
    CHECK(g.size() == 5);
    CHECK(g.edges().size() == 5);
    for (int v = 0; v < 5; ++v) {
        CHECK(g.label(v).is_z2());
        CHECK(g.adjacent(v, (v + 1) % 5));
        CHECK_FALSE(g.adjacent(v, (v + 2) % 5));
    }
}

TEST_CASE("parse_graph rejects malformed input") {
    const std::string two = R"({"id": 0, "group": {"cyclic": 2}}, {"id": 1, "group": {"cyclic": 2}})";
    CHECK_THROWS_WITH_AS(parse_graph(R"({"vertices": [)" + two + R"(], "edges": [[1,1]]})"),
                         doctest::Contains("loop"), Error);
    // identity row fine, 1 and 2 mutually inverse, but (1*1)*2 != 1*(1*2)
    CHECK_THROWS_WITH_AS(parse_graph(R"({"vertices": [{"id": 0, "group": {"table": [[0,1,2],[1,1,0],[2,0,2]]}}]})"),
                         doctest::Contains("non-associative"), Error);
    CHECK_THROWS_AS(parse_graph("{"), Error);
    CHECK_THROWS_AS(parse_graph(R"({"vertices": [{"id": 0, "group": {"cyclic": 1}}]})"), Error);
    CHECK_THROWS_AS(parse_graph(R"({"vertices": [{"id": 1, "group": {"cyclic": 2}}]})"), Error);
    CHECK_THROWS_AS(parse_graph(R"({"vertices": [)" + two + R"(], "edges": [[0,1],[1,0]]})"), Error);
    CHECK_THROWS_AS(parse_graph(R"({"vertices": [)" + two + R"(], "edges": [[0,7]]})"), Error);
}

TEST_CASE("abstract labels carry flags") {
    const auto g = parse_graph(R"({"vertices": [{"id": 0, "group": {"abstract": {"order": "infinite", "hyperbolic": "yes"}}}]})");
    CHECK_FALSE(g.label(0).is_finite());
    CHECK(g.label(0).hyperbolic() == Tri::yes);
    CHECK_FALSE(g.all_concrete());
}

TEST_CASE("is_square_free") {
    CHECK_FALSE(is_square_free(z2_cycle(4)));
    CHECK(is_square_free(z2_cycle(5)));
    CHECK(is_square_free(complete_graph(cyclic_labels({2, 2, 2, 2}))));
    const auto sq = find_induced_square(z2_cycle(4));
    REQUIRE(sq);
    CHECK(sq->size() == 4);
}

TEST_CASE("is_square_free agrees with a scan of all 4-subsets") {
    // every graph on 5 vertices, edge set as a bitmask over the 10 pairs
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < 5; ++u)
        for (int v = u + 1; v < 5; ++v) pairs.emplace_back(u, v);
    for (int mask = 0; mask < (1 << 10); ++mask) {
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < 10; ++i)
            if ((mask >> i) & 1) edges.push_back(pairs[static_cast<std::size_t>(i)]);
        const LabeledGraph g(cyclic_labels({2, 2, 2, 2, 2}), edges);
        bool square = false;
        for (int a = 0; a < 5; ++a)
            for (int b = 0; b < 5; ++b)
                for (int c = 0; c < 5; ++c)
                    for (int d = 0; d < 5; ++d) {
                        if (a == b || a == c || a == d || b == c || b == d || c == d) continue;
                        if (g.adjacent(a, b) && g.adjacent(b, c) && g.adjacent(c, d) && g.adjacent(d, a) &&
                            !g.adjacent(a, c) && !g.adjacent(b, d))
                            square = true;
                    }
        CHECK(is_square_free(g) == !square);
    }
}

TEST_CASE("is_separating") {
    CHECK(is_separating(abc_path(), VertexSet::of({1})));
    CHECK_FALSE(is_separating(z2_cycle(5), VertexSet::of({0})));
    CHECK(is_separating(z2_cycle(5), VertexSet::of({0, 2})));
    CHECK_FALSE(is_separating(z2_cycle(5), VertexSet::of({0, 1})));
    CHECK_THROWS_AS((void)is_separating(z2_cycle(5), VertexSet::range(5)), Error);
}

TEST_CASE("join_decomposition") {
    SUBCASE("complete graph") {
        const auto j = join_decomposition(complete_graph(cyclic_labels({2, 3, 5})));
        CHECK(j.complete_part == VertexSet::range(3));
        CHECK(j.factors.empty());
    }
    SUBCASE("two isolated vertices") {
        const auto j = join_decomposition(edgeless_graph(cyclic_labels({2, 2})));
        CHECK(j.complete_part.empty());
        REQUIRE(j.factors.size() == 1);
        CHECK(j.factors[0] == VertexSet::of({0, 1}));
    }
    SUBCASE("cone over a pentagon") {
        std::vector<std::pair<int, int>> edges{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}};
        for (int v = 0; v < 5; ++v) edges.emplace_back(v, 5);
        const auto j = join_decomposition(LabeledGraph(cyclic_labels({2, 2, 2, 2, 2, 2}), edges));
        CHECK(j.complete_part == VertexSet::of({5}));
        REQUIRE(j.factors.size() == 1);
        CHECK(j.factors[0] == VertexSet::range(5));
    }
}

TEST_CASE("link, star, link_of") {
    const auto c5 = z2_cycle(5);
    CHECK(link(c5, 0) == VertexSet::of({1, 4}));
    CHECK(star(c5, 0) == VertexSet::of({0, 1, 4}));
    const auto k4 = complete_graph(cyclic_labels({2, 2, 2, 2}));
    CHECK(star(k4, 2) == VertexSet::range(4));
    CHECK(link_of(abc_path(), VertexSet::of({0, 2})) == VertexSet::of({1}));
}

TEST_CASE("enumerate_candidate_vc_separators") {
    SUBCASE("cut vertex of a path") {
        const auto seps = enumerate_candidate_vc_separators(abc_path(3, 5, 3));
        CHECK(std::find(seps.begin(), seps.end(), VertexSet::of({1})) != seps.end());
    }
    SUBCASE("non-adjacent Z2 pairs of the pentagon") {
        const auto seps = enumerate_candidate_vc_separators(z2_cycle(5));
        for (int u = 0; u < 5; ++u) {
            const auto pair = VertexSet::of({u, (u + 2) % 5});
            CHECK(std::find(seps.begin(), seps.end(), pair) != seps.end());
        }
        for (const auto& s : seps) CHECK(is_separating(z2_cycle(5), s));
    }
    SUBCASE("all-Z3 pentagon has none, exhaustive and clique-based alike") {
        const auto g = cycle_graph(cyclic_labels({3, 3, 3, 3, 3}));
        CHECK(enumerate_candidate_vc_separators(g, SeparatorScan::exhaustive).empty());
        CHECK(enumerate_candidate_vc_separators(g, SeparatorScan::clique_based).empty());
    }
}

TEST_CASE("Delta parsing and admission") {
    CHECK(Delta::parse("1/2") == Delta(1, 2));
    CHECK(Delta::parse("0.25") == Delta(1, 4));
    CHECK(Delta(2, 4) == Delta(1, 2));
    CHECK_THROWS_AS(Delta::parse("3/2"), Error);
    CHECK_THROWS_AS(Delta::parse("0"), Error);
    CHECK(Delta(1, 2).admits(4, 9));
    CHECK_FALSE(Delta(1, 2).admits(5, 9));
}
