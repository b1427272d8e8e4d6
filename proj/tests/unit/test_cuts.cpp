#include <doctest.h>

#include <random>

#include "../oracles.hpp"
#include "coarsesep/cayley.hpp"
#include "coarsesep/cuts.hpp"
#include "coarsesep/error.hpp"
#include "coarsesep/flow.hpp"

using namespace coarsesep;

namespace {

const Delta kHalf{1, 2};

Csr k5_minus_edge() {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> e;
    for (std::uint32_t u = 0; u < 5; ++u)
        for (std::uint32_t v = u + 1; v < 5; ++v)
            if (!(u == 0 && v == 1)) e.emplace_back(u, v);
    return Csr::from_edges(5, e);
}

void check_upper(const Csr& g, const CutReport& r) {
    CHECK(r.bound != Bound::lower);
    CHECK(r.value == r.cut_set.size());
    CHECK(is_delta_cut(g, r.delta, r.cut_set));
    CHECK(component_census(g, r.cut_set) == r.component_census);
    if (!r.component_census.empty()) CHECK(r.delta.admits(r.component_census.front(), g.size()));
    CHECK(verify_partition_lemma(g, r).ok);
}

}  // namespace

TEST_CASE("exact cuts of fixtures") {
    CHECK(exact_min_cut(path_csr(9), kHalf).value == 1);
    CHECK(exact_min_cut(path_csr(9), kHalf).cut_set == std::vector<std::uint32_t>{4});
    CHECK(exact_min_cut(cycle_csr(12), kHalf).value == 2);
    CHECK(exact_min_cut(complete_csr(5), kHalf).value == 3);
    const auto r = exact_min_cut(cycle_csr(12), kHalf);
    CHECK(r.bound == Bound::exact);
    check_upper(cycle_csr(12), r);
    CHECK_THROWS_AS(exact_min_cut(path_csr(kExactThreshold + 1), kHalf), Error);
}

TEST_CASE("exact cuts match subset enumeration") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 60; ++i) {
        const auto n = static_cast<std::uint32_t>(3 + i % 10);
        const auto g = oracle::random_graph(rng, n, 0.15 + 0.05 * (i % 7));
        for (const Delta d : {Delta(1, 4), Delta(1, 2), Delta(3, 4)}) {
            const auto r = exact_min_cut(g, d);
            CHECK(r.value == oracle::min_delta_cut(g, d));
            check_upper(g, r);
        }
    }
}

TEST_CASE("cut size is nonincreasing in delta") {
    std::mt19937_64 rng(6);
    for (int i = 0; i < 40; ++i) {
        const auto g = oracle::random_graph(rng, 12, 0.3);
        const auto a = exact_min_cut(g, Delta(1, 4)).value;
        const auto b = exact_min_cut(g, Delta(1, 2)).value;
        const auto c = exact_min_cut(g, Delta(3, 4)).value;
        CHECK(a >= b);
        CHECK(b >= c);
    }
}

TEST_CASE("heuristic cuts") {
    SUBCASE("zero budget returns the whole set") {
        const auto r = heuristic_cut(cycle_csr(10), kHalf, {.budget = 0});
        CHECK(r.note == "no search");
        CHECK(r.value == 10);
        check_upper(cycle_csr(10), r);
    }
    SUBCASE("long cycle") {
        const auto r = heuristic_cut(cycle_csr(100), kHalf);
        CHECK(r.value == 2);
        check_upper(cycle_csr(100), r);
    }
    SUBCASE("dihedral thickened sphere") {
        const GraphProduct dihedral(edgeless_graph(cyclic_labels({2, 2})));
        const auto s = thickened_sphere(dihedral, 6, 1);
        CHECK(heuristic_cut(s, kHalf).value == exact_min_cut(s, kHalf).value);
    }
    SUBCASE("never below the optimum, always valid") {
        std::mt19937_64 rng(7);
        for (int i = 0; i < 40; ++i) {
            const auto g = oracle::random_graph(rng, 14, 0.2);
            const auto h = heuristic_cut(g, kHalf, {.seed = static_cast<std::uint64_t>(i)});
            check_upper(g, h);
            CHECK(h.value >= oracle::min_delta_cut(g, kHalf));
        }
    }
}

TEST_CASE("vertex flow against subset enumeration") {
    std::mt19937_64 rng(8);
    int tested = 0;
    while (tested < 80) {
        const auto n = static_cast<std::uint32_t>(4 + tested % 9);
        const auto g = oracle::random_graph(rng, n, 0.35);
        std::uniform_int_distribution<std::uint32_t> pick(0, n - 1);
        const auto x = pick(rng);
        const auto y = pick(rng);
        if (x == y || g.adjacent(x, y)) continue;
        const std::vector<std::uint32_t> s{x};
        const std::vector<std::uint32_t> t{y};
        VertexFlow flow(g);
        const auto k = flow.max_flow(s, t);
        CHECK(k == oracle::min_vertex_cut(g, 1U << x, 1U << y));
        const auto cut = flow.last_min_cut();
        CHECK(cut.size() == k);
        std::uint32_t mask = 0;
        for (auto v : cut) mask |= 1U << v;
        CHECK(oracle::min_vertex_cut(g, 1U << x, 1U << y) == k);
        // removing the reported cut must disconnect x from y
        const auto sizes = oracle::census(g, mask);
        std::vector<char> removed(n, 0);
        for (auto v : cut) removed[v] = 1;
        const auto dist = bfs_distances(g, s, &removed);
        CHECK(dist[y] == kUnreached);
        ++tested;
    }
}

TEST_CASE("flow terminal sets") {
    const auto g = cycle_csr(10);
    const std::vector<std::uint32_t> a{0, 1};
    const std::vector<std::uint32_t> b{5, 6};
    CHECK(vertex_connectivity(g, a, b) == 2);
    const std::vector<std::uint32_t> adj{2};
    CHECK_THROWS_AS(vertex_connectivity(g, a, adj), Error);
    CHECK_THROWS_AS(vertex_connectivity(g, a, a), Error);
    CHECK_THROWS_AS(vertex_connectivity(g, a, {}), Error);
}

TEST_CASE("far-pair lower bounds") {
    CHECK(flow_far_pair_lower_bound(cycle_csr(20), kHalf).value == 2);
    CHECK(flow_far_pair_lower_bound(path_csr(9), kHalf).value == 1);
    CHECK(flow_far_pair_lower_bound(k5_minus_edge(), kHalf).value == 3);
    const auto r = flow_far_pair_lower_bound(cycle_csr(30), kHalf, {.depth = 3});
    CHECK(r.bound == Bound::lower);
    REQUIRE(r.certificate);
    CHECK(r.certificate->kappa == 2);
    CHECK(r.certificate->depth == 3);
    CHECK(flow_far_pair_lower_bound(complete_csr(5), kHalf).note == "no far pair");
    CHECK_THROWS_AS(flow_far_pair_lower_bound(Csr::from_edges(4, {{0, 1}, {2, 3}}), kHalf), Error);
}

TEST_CASE("lower bounds never exceed the exact value on small subgraphs") {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 40; ++i) {
        const auto g = oracle::random_graph(rng, 14, 0.3);
        if (component_labels(g).sizes.size() != 1) continue;
        CHECK(flow_far_pair_lower_bound(g, kHalf).value <= exact_min_cut(g, kHalf).value);
    }
}

TEST_CASE("partition lemma") {
    auto c12 = heuristic_cut(cycle_csr(12), kHalf, {.budget = 0});
    c12.cut_set = {0, 6};  // antipodal pair
    c12.value = 2;
    c12.component_census = component_census(cycle_csr(12), c12.cut_set);
    const auto p = verify_partition_lemma(cycle_csr(12), c12);
    CHECK(p.large_cut);
    CHECK(p.ok);
    CHECK(p.delta_prime == Delta(1, 8));
    CHECK(p.side_a == 5);
    CHECK(p.side_b == 5);

    const auto p9 = verify_partition_lemma(path_csr(9), exact_min_cut(path_csr(9), kHalf));
    CHECK(p9.ok);
    CHECK(p9.side_a + p9.side_b == 8);

    const auto whole = heuristic_cut(cycle_csr(12), kHalf, {.budget = 0});
    const auto pw = verify_partition_lemma(cycle_csr(12), whole);
    CHECK(pw.ok);
    CHECK(pw.large_cut);

    CHECK_THROWS_AS(verify_partition_lemma(cycle_csr(12), flow_far_pair_lower_bound(cycle_csr(12), kHalf)), Error);
}

TEST_CASE("cut growth experiment") {
    const GraphProduct c5(cycle_graph(cyclic_labels({2, 2, 2, 2, 2})));
    const auto one = cut_growth_experiment(c5, 2, kHalf, 4, 4);
    CHECK(one.upper.flag == kFlagInsufficient);
    CHECK(one.lower.flag == kFlagInsufficient);

    const auto t = cut_growth_experiment(c5, 2, kHalf, 3, 6);
    REQUIRE(t.rows.size() == 4);
    for (const auto& row : t.rows) {
        REQUIRE(row.upper);
        REQUIRE(row.lower);
        CHECK(*row.lower <= *row.upper);
        CHECK(row.partition_lemma_ok);
    }
    CHECK(t.upper.flag == kFlagSubexponential);
    CHECK(experiment_csv(t) == experiment_csv(cut_growth_experiment(c5, 2, kHalf, 3, 6)));
    CHECK(experiment_csv(t).rfind("n,t,delta,size_subject,upper,lower,exact,lambda_fit_flag,runtime_ms,seed\n", 0) == 0);

    const auto clamped = cut_growth_experiment(c5, 2, kHalf, 1, 3);
    CHECK(clamped.rows.front().n == 3);

    ExperimentOptions tiny;
    tiny.cayley.mem_cap = 2000;
    const auto trunc = cut_growth_experiment(c5, 2, kHalf, 3, 6, tiny);
    CHECK(trunc.rows.back().truncated);
    CHECK(experiment_csv(trunc).find("truncated") != std::string::npos);
}

TEST_CASE("separation profile") {
    const GraphProduct dihedral(edgeless_graph(cyclic_labels({2, 2})));
    const auto d = sep_profile_estimate(dihedral, 8, 2);
    for (const auto& row : d.rows) CHECK(row.upper <= 2);
    CHECK(std::abs(d.epsilon_hat) < 0.05);

    const GraphProduct edge(complete_graph(cyclic_labels({2, 3})));
    const auto f = sep_profile_estimate(edge, 8, 2);
    CHECK(f.rows.back().size == 6);
    CHECK_FALSE(f.notes.empty());

    const GraphProduct z3(cycle_graph(cyclic_labels({3, 3, 3, 3, 3})));
    const auto p = sep_profile_estimate(z3, 4, 2);
    CHECK(p.epsilon_hat > 0.0);
    for (const auto& row : p.rows) CHECK(row.lower <= row.upper);
}
