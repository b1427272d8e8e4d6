#include <doctest.h>

#include <random>

#include "../oracles.hpp"
#include "coarsesep/error.hpp"
#include "coarsesep/word.hpp"

using namespace coarsesep;

namespace {

Syllable syl(int v, int a) { return {static_cast<std::uint8_t>(v), static_cast<std::uint8_t>(a)}; }

std::vector<Syllable> random_raw(std::mt19937_64& rng, const LabeledGraph& g, std::size_t len) {
    std::vector<Syllable> w;
    std::uniform_int_distribution<int> pick_v(0, g.size() - 1);
    for (std::size_t i = 0; i < len; ++i) {
        const int v = pick_v(rng);
        std::uniform_int_distribution<int> pick_a(0, *g.label(v).order() - 1);
        w.push_back(syl(v, pick_a(rng)));
    }
    return w;
}

}  // namespace

TEST_CASE("reduce: cancellation, shuffles, canonical order") {
    const GraphProduct dihedral(edgeless_graph(cyclic_labels({2, 2})));
    CHECK(dihedral.reduce(std::vector{syl(0, 1), syl(0, 1)}).empty());
    CHECK(dihedral.reduce(std::vector{syl(0, 1), syl(1, 1), syl(0, 1)}).size() == 3);

    const GraphProduct edge(complete_graph(cyclic_labels({2, 3})));
    CHECK(edge.reduce(std::vector{syl(0, 1), syl(1, 2), syl(0, 1)}).syllables == std::vector{syl(1, 2)});
    const auto a = edge.reduce(std::vector{syl(1, 1), syl(0, 1)});
    const auto b = edge.reduce(std::vector{syl(0, 1), syl(1, 1)});
    CHECK(a.syllables == std::vector{syl(0, 1), syl(1, 1)});
    CHECK(edge.equals(a, b));
}

TEST_CASE("reduce matches the rewriting oracle") {
    std::mt19937_64 rng(17);
    for (const auto& orders : {std::vector<int>{2, 2, 2, 2, 2}, {3, 2, 3, 2, 4}, {3, 3, 3, 3, 3}}) {
        const auto g = cycle_graph(cyclic_labels(orders));
        const GraphProduct gp(g);
        for (int i = 0; i < 400; ++i) {
            const auto raw = random_raw(rng, g, 1 + i % 9);
            const auto w = gp.reduce(raw);
            CHECK(gp.is_normal_form(w));
            CHECK(oracle::normal(g, w.syllables) == oracle::normal(g, raw));
        }
    }
}

TEST_CASE("group axioms on random words") {
    const auto g = cycle_graph(cyclic_labels({2, 3, 2, 3, 2}));
    const GraphProduct gp(g);
    for (std::uint64_t s = 0; s < 1000; ++s) {
        const auto x = random_word(gp, s, 8);
        CHECK(gp.multiply(x, gp.inverse(x)).empty());
        CHECK(gp.multiply(gp.inverse(x), x).empty());
        CHECK(gp.reduce(x.syllables) == x);
    }
}

TEST_CASE("closure sizes of finite products") {
    const GraphProduct edge(complete_graph(cyclic_labels({2, 3})));
    CHECK(oracle::closure(edge.graph()).size() == 6);
    const GraphProduct tri(complete_graph(cyclic_labels({2, 2, 2})));
    CHECK(oracle::closure(tri.graph()).size() == 8);
}

TEST_CASE("lengths") {
    const GraphProduct dihedral(edgeless_graph(cyclic_labels({2, 2})));
    CHECK(syllable_length(dihedral.identity()) == 0);
    const auto w = dihedral.reduce(std::vector{syl(0, 1), syl(1, 1), syl(0, 1)});
    CHECK(syllable_length(w) == 3);
    CHECK(word_length(w) == 3);
}

TEST_CASE("random_word") {
    const GraphProduct edge(complete_graph(cyclic_labels({2, 3})));
    CHECK(random_word(edge, 5, 0).empty());
    const GraphProduct c5(cycle_graph(cyclic_labels({2, 2, 2, 2, 2})));
    CHECK(random_word(c5, 42, 10) == random_word(c5, 42, 10));
    for (std::uint64_t s = 0; s < 10000; ++s) {
        const auto w = random_word(edge, s, 4);
        CHECK(edge.reduce(w.syllables) == w);
    }
}

TEST_CASE("parse and format round-trip") {
    const GraphProduct gp(cycle_graph(cyclic_labels({3, 3, 3, 3, 3})));
    const auto w = gp.reduce(parse_word("v0:1 v2:2 v0:2"));
    CHECK(format_word(w) == "v0:1 v2:2 v0:2");
    CHECK(format_word(gp.identity()) == "e");
    CHECK(parse_word("e").empty());
    CHECK_THROWS_AS(parse_word("x"), Error);
    CHECK_THROWS_AS(gp.reduce(parse_word("v0:3")), Error);
    CHECK_THROWS_AS(gp.reduce(parse_word("v9:1")), Error);
}

TEST_CASE("packed codec round-trip") {
    const GraphProduct gp(cycle_graph(cyclic_labels({3, 2, 3, 2, 4})));
    const PackedCodec codec(gp);
    for (std::uint64_t s = 0; s < 500; ++s) {
        const auto w = random_word(gp, s, std::min<std::size_t>(codec.max_syllables(), 12));
        const auto p = codec.encode(w);
        CHECK(codec.decode(p) == w);
        CHECK(codec.length(p) == w.size());
    }
}

TEST_CASE("embed_phi") {
    const GraphProduct c5(cycle_graph(cyclic_labels({2, 2, 2, 2, 2})));
    SUBCASE("identity maps") {
        const std::vector<std::vector<int>> id(5, std::vector<int>{0, 1});
        for (std::uint64_t s = 0; s < 50; ++s) {
            const auto x = random_word(c5, s, 6);
            CHECK(embed_phi(c5, c5, id, x) == x);
        }
    }
    SUBCASE("Z2 into Z4 keeps reduced words reduced") {
        const GraphProduct src(edgeless_graph(cyclic_labels({2, 2})));
        const GraphProduct dst(edgeless_graph(cyclic_labels({4, 4})));
        const std::vector<std::vector<int>> maps(2, std::vector<int>{0, 2});
        const auto x = src.reduce(std::vector{syl(0, 1), syl(1, 1)});
        CHECK(embed_phi(src, dst, maps, x).syllables == std::vector{syl(0, 2), syl(1, 2)});
    }
    SUBCASE("syllable distance is preserved") {
        const GraphProduct c5z3(cycle_graph(cyclic_labels({3, 3, 3, 3, 3})));
        const std::vector<std::vector<int>> maps(5, std::vector<int>{0, 1});
        for (std::uint64_t s = 0; s < 200; ++s) {
            const auto x = random_word(c5, s, 7);
            const auto y = random_word(c5, s + 1000, 7);
            const auto d = c5.multiply(c5.inverse(x), y).size();
            const auto px = embed_phi(c5, c5z3, maps, x);
            const auto py = embed_phi(c5, c5z3, maps, y);
            CHECK(c5z3.multiply(c5z3.inverse(px), py).size() == d);
        }
    }
    SUBCASE("maps must be injective and fix the identity") {
        const GraphProduct z4(cycle_graph(cyclic_labels({4, 4, 4, 4, 4})));
        CHECK_THROWS_AS(validate_phi_maps(c5, z4, std::vector<std::vector<int>>(5, {0, 0})), Error);
        CHECK_THROWS_AS(validate_phi_maps(c5, z4, std::vector<std::vector<int>>(5, {1, 2})), Error);
        CHECK_NOTHROW(validate_phi_maps(c5, z4, std::vector<std::vector<int>>(5, {0, 3})));
    }
}
