#include <doctest.h>

#include "../oracles.hpp"
#include "coarsesep/classify.hpp"
#include "coarsesep/error.hpp"

using namespace coarsesep;

namespace {

LabeledGraph cycle_of(std::vector<int> orders) { return cycle_graph(cyclic_labels(orders)); }

VertexGroup infinite_hyperbolic() {
    VertexGroup::AbstractInfo info;
    info.hyperbolic = Tri::yes;
    return VertexGroup::abstract(info);
}

}  // namespace

TEST_CASE("hyperbolicity") {
    CHECK(is_hyperbolic(cycle_of({2, 2, 2, 2, 2})).yes());
    const auto sq = is_hyperbolic(cycle_of({2, 2, 2, 2}));
    CHECK(sq.no());
    REQUIRE(sq.witness);
    CHECK(*sq.witness == VertexSet::range(4));

    const LabeledGraph edge({infinite_hyperbolic(), infinite_hyperbolic()}, {{0, 1}});
    const auto v = is_hyperbolic(edge);
    CHECK(v.no());
    REQUIRE(v.witness);
    CHECK(*v.witness == VertexSet::of({0, 1}));
}

TEST_CASE("finiteness") {
    CHECK(is_finite_group(complete_graph(cyclic_labels({2, 2, 3}))).yes());
    CHECK(is_finite_group(edgeless_graph(cyclic_labels({2, 2}))).no());
    CHECK(is_finite_group(LabeledGraph({VertexGroup::abstract({})}, {})).no());
}

TEST_CASE("virtually cyclic") {
    CHECK(is_virtually_cyclic(edgeless_graph(cyclic_labels({2, 2}))).yes());
    // u - c - v with u, v of order two
    CHECK(is_virtually_cyclic(path_graph(cyclic_labels({2, 5, 2}))).yes());
    CHECK(is_virtually_cyclic(edgeless_graph(cyclic_labels({3, 3}))).no());
}

TEST_CASE("virtual surface") {
    CHECK(is_virtual_surface(cycle_of({2, 2, 2, 2, 2})).yes());
    CHECK(is_virtual_surface(cycle_of({3, 2, 2, 2, 2})).no());

    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v < 6; ++v) {
        edges.emplace_back(v, (v + 1) % 6);
        edges.emplace_back(v, 6);
    }
    CHECK(is_virtual_surface(LabeledGraph(cyclic_labels({2, 2, 2, 2, 2, 2, 2}), edges)).yes());
}

TEST_CASE("splitting over finite subgroups") {
    const auto dihedral = splits_over_finite(edgeless_graph(cyclic_labels({2, 2})));
    CHECK(dihedral.yes());
    REQUIRE(dihedral.witness);
    CHECK(dihedral.witness->empty());

    CHECK(splits_over_finite(cycle_of({2, 2, 2, 2, 2})).no());

    // two triangles glued at vertex 2
    const LabeledGraph bowtie(cyclic_labels({2, 2, 2, 2, 2}), {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4}});
    const auto v = splits_over_finite(bowtie);
    CHECK(v.yes());
    REQUIRE(v.witness);
    CHECK(*v.witness == VertexSet::of({2}));
}

TEST_CASE("splitting over virtually cyclic subgroups") {
    const auto p = splits_over_virtually_cyclic(cycle_of({2, 2, 2, 2, 2}));
    CHECK(p.yes());
    REQUIRE(p.witness);
    CHECK(p.witness->size() == 2);
    CHECK_FALSE(cycle_of({2, 2, 2, 2, 2}).adjacent(p.witness->first(), p.witness->to_vector()[1]));

    CHECK(splits_over_virtually_cyclic(cycle_of({3, 3, 3, 3, 3})).no());

    SUBCASE("alternating hexagon against a removal oracle") {
        const auto g = cycle_of({2, 3, 2, 3, 2, 3});
        // {0,2} is a non-adjacent Z2 pair; removing it isolates vertex 1
        std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
        for (const auto& [u, v] : g.edges()) edges.emplace_back(u, v);
        const auto csr = Csr::from_edges(6, edges);
        CHECK(oracle::census(csr, 0b000101).size() == 2);
        CHECK(splits_over_virtually_cyclic(g).yes());
    }
}

TEST_CASE("coarse separability by subexponential families") {
    CHECK(is_coarsely_separable_subexp(cycle_of({2, 2, 2, 2, 2})).yes());
    CHECK(is_coarsely_separable_subexp(cycle_of({3, 2, 2, 2, 2})).yes());
    CHECK(is_coarsely_separable_subexp(cycle_of({3, 3, 3, 3, 3})).no());
    CHECK_THROWS_AS(is_coarsely_separable_subexp(cycle_of({2, 2, 2, 2})), Error);
}

TEST_CASE("one-endedness") {
    CHECK(is_one_ended(cycle_of({2, 2, 2, 2, 2})).yes());
    CHECK(is_one_ended(cycle_of({3, 2, 2, 2, 2})).yes());
    CHECK(is_one_ended(edgeless_graph(cyclic_labels({2, 2}))).no());
    CHECK(is_one_ended(complete_graph(cyclic_labels({2, 3}))).no());
}

TEST_CASE("finite-index subgraphs") {
    const auto c5 = cycle_of({2, 2, 2, 2, 2});
    CHECK(finite_index_subgraph(c5, VertexSet::range(5)).yes());

    // pentagon plus a finite apex joined to everything
    std::vector<std::pair<int, int>> edges(c5.edges().begin(), c5.edges().end());
    for (int v = 0; v < 5; ++v) edges.emplace_back(v, 5);
    CHECK(finite_index_subgraph(LabeledGraph(cyclic_labels({2, 2, 2, 2, 2, 3}), edges), VertexSet::range(5)).yes());

    // same apex, not joined
    const LabeledGraph loose(cyclic_labels({2, 2, 2, 2, 2, 3}), c5.edges());
    CHECK(finite_index_subgraph(loose, VertexSet::range(5)).no());
}

TEST_CASE("preconditions surface as errors, unknown flags as undecided") {
    VertexGroup::AbstractInfo info;  // infinite, everything unknown
    const LabeledGraph g({VertexGroup::abstract(info), VertexGroup::cyclic(2)}, {});
    CHECK(is_hyperbolic(g).undecided());
    CHECK_THROWS_AS(splits_over_virtually_cyclic(g), Error);
}
