#include "coarsesep/classify.hpp"

#include "coarsesep/error.hpp"

namespace coarsesep {

namespace {

Verdict make(Tri value, std::string reason, std::vector<std::string> rules,
             std::optional<VertexSet> witness = std::nullopt) {
    Verdict v;
    v.value = value;
    v.reason = std::move(reason);
    v.rules = std::move(rules);
    v.witness = witness;
    return v;
}

VertexSet infinite_vertices(const LabeledGraph& g) { return g.all() - g.finite_vertices(); }

void require_finite_labels(const LabeledGraph& g, const char* what) {
    if (!g.all_finite()) throw Error(std::string(what) + " requires every vertex group to be finite");
}

/// Induced cycle on `s`: connected, every vertex with exactly two neighbours in `s`.
bool is_induced_cycle(const LabeledGraph& g, VertexSet s) {
    if (s.size() < 3 || !is_connected(g, s)) return false;
    bool ok = true;
    s.for_each([&](int v) {
        if ((g.neighbors(v) & s).size() != 2) ok = false;
    });
    return ok;
}

}  // namespace

std::string verdict_word(Tri t) {
    switch (t) {
        case Tri::yes: return "yes";
        case Tri::no: return "no";
        case Tri::unknown: return "undecided";
    }
    return "undecided";
}

Verdict is_hyperbolic(const LabeledGraph& g) {
    const VertexSet infinite = infinite_vertices(g);
    bool unknown = false;
    for (int v = 0; v < g.size(); ++v) {
        const Tri h = g.label(v).hyperbolic();
        if (h == Tri::no) {
            return make(Tri::no, "vertex group " + std::to_string(v) + " is not hyperbolic", {"vertex-groups-hyperbolic"},
                        VertexSet::of({v}));
        }
        if (h == Tri::unknown) unknown = true;
    }
    for (auto [u, v] : g.edges()) {
        if (infinite.contains(u) && infinite.contains(v)) {
            return make(Tri::no, "infinite vertex groups " + std::to_string(u) + " and " + std::to_string(v) + " are adjacent",
                        {"no-adjacent-infinite"}, VertexSet::of({u, v}));
        }
    }
    std::optional<Verdict> link_failure;
    infinite.for_each([&](int u) {
        if (link_failure) return;
        const VertexSet l = link(g, u);
        l.for_each([&](int v) {
            if (link_failure) return;
            const VertexSet bad = (l - g.neighbors(v)) - VertexSet::of({v});
            if (!bad.empty()) {
                const int w = bad.first();
                link_failure = make(Tri::no,
                                    "vertices " + std::to_string(v) + " and " + std::to_string(w) +
                                        " share the infinite neighbour " + std::to_string(u) + " but are not adjacent",
                                    {"link-of-infinite-complete"}, VertexSet::of({u, v, w}));
            }
        });
    });
    if (link_failure) return *link_failure;
    if (auto sq = find_induced_square(g)) {
        return make(Tri::no, "induced square " + VertexSet::of(*sq).str(), {"square-free"}, VertexSet::of(*sq));
    }
    const std::vector<std::string> rules{"vertex-groups-hyperbolic", "no-adjacent-infinite", "link-of-infinite-complete",
                                         "square-free"};
    if (unknown) return make(Tri::unknown, "hyperbolicity of an abstract vertex group is unknown", rules);
    return make(Tri::yes, "all four hyperbolicity conditions hold", rules);
}

Verdict is_finite_group(const LabeledGraph& g) {
    const VertexSet infinite = infinite_vertices(g);
    if (!infinite.empty()) {
        return make(Tri::no, "vertex group " + std::to_string(infinite.first()) + " is infinite", {"finite-direct-product"},
                    VertexSet::of({infinite.first()}));
    }
    for (int u = 0; u < g.size(); ++u) {
        const VertexSet missing = (g.all() - g.neighbors(u)) - VertexSet::of({u});
        if (!missing.empty()) {
            const int v = missing.first();
            return make(Tri::no,
                        "vertices " + std::to_string(u) + " and " + std::to_string(v) +
                            " are not adjacent, so the group contains an infinite free product",
                        {"finite-direct-product"}, VertexSet::of({u, v}));
        }
    }
    return make(Tri::yes, "complete graph of finite groups", {"finite-direct-product"}, g.all());
}

Verdict is_virtually_cyclic(const LabeledGraph& g) {
    const JoinDecomposition jd = join_decomposition(g);
    const VertexSet infinite = infinite_vertices(g);
    if (jd.factors.empty()) {
        if (infinite.empty()) return make(Tri::yes, "complete graph of finite groups", {"vc-complete-finite"}, g.all());
        if (infinite.size() >= 2) {
            return make(Tri::no, "two infinite vertex groups generate a product of infinite groups", {"vc-complete-finite",
                        "vc-complete-one-vic"}, infinite);
        }
        const int u = infinite.first();
        switch (g.label(u).virtually_infinite_cyclic()) {
            case Tri::yes:
                return make(Tri::yes, "complete graph with one virtually infinite cyclic vertex group",
                            {"vc-complete-one-vic"}, VertexSet::of({u}));
            case Tri::no:
                return make(Tri::no, "the only infinite vertex group is not virtually infinite cyclic",
                            {"vc-complete-one-vic"}, VertexSet::of({u}));
            case Tri::unknown:
                return make(Tri::unknown, "virtual cyclicity of vertex group " + std::to_string(u) + " is unknown",
                            {"vc-complete-one-vic"});
        }
    }
    const std::vector<std::string> rules{"vc-join-dihedral"};
    if (jd.factors.size() >= 2) {
        return make(Tri::no, "join of two non-complete factors contains a product of infinite groups", rules,
                    jd.factors[0] | jd.factors[1]);
    }
    const VertexSet factor = jd.factors.front();
    if (!(jd.complete_part & infinite).empty()) {
        return make(Tri::no, "complete factor carries an infinite vertex group", rules, jd.complete_part & infinite);
    }
    if (factor.size() != 2) {
        return make(Tri::no, "the non-complete factor " + factor.str() + " is not a pair of vertices", rules, factor);
    }
    const auto pair = factor.to_vector();
    if (!g.label(pair[0]).is_z2() || !g.label(pair[1]).is_z2()) {
        return make(Tri::no, "the non-adjacent pair " + factor.str() + " is not labelled by Z2 twice", rules, factor);
    }
    return make(Tri::yes, "finite complete graph joined with two non-adjacent Z2 vertices", rules, factor);
}

Verdict is_virtual_surface(const LabeledGraph& g) {
    const JoinDecomposition jd = join_decomposition(g);
    const VertexSet infinite = infinite_vertices(g);
    if (jd.factors.empty()) {
        const std::vector<std::string> rules{"vs-complete-one-surface"};
        if (infinite.empty()) return make(Tri::no, "the group is finite", rules);
        if (infinite.size() >= 2) return make(Tri::no, "two infinite vertex groups generate a product of infinite groups", rules, infinite);
        const int u = infinite.first();
        switch (g.label(u).virtual_surface()) {
            case Tri::yes:
                return make(Tri::yes, "complete graph with one virtual surface vertex group", rules, VertexSet::of({u}));
            case Tri::no:
                return make(Tri::no, "the only infinite vertex group is not a virtual surface group", rules,
                            VertexSet::of({u}));
            case Tri::unknown:
                return make(Tri::unknown, "whether vertex group " + std::to_string(u) + " is a virtual surface group is unknown",
                            rules);
        }
    }
    const std::vector<std::string> rules{"vs-join-cycle"};
    if (jd.factors.size() >= 2) {
        return make(Tri::no, "join of two non-complete factors is not hyperbolic", rules, jd.factors[0] | jd.factors[1]);
    }
    const VertexSet factor = jd.factors.front();
    if (!(jd.complete_part & infinite).empty()) {
        return make(Tri::no, "complete factor carries an infinite vertex group", rules, jd.complete_part & infinite);
    }
    if (!is_induced_cycle(g, factor) || factor.size() < 5) {
        return make(Tri::no, "the non-complete factor " + factor.str() + " is not a cycle of length >= 5", rules, factor);
    }
    if (!factor.subset_of(g.z2_vertices())) {
        return make(Tri::no, "the cycle " + factor.str() + " has a vertex group other than Z2", rules,
                    factor - g.z2_vertices());
    }
    return make(Tri::yes, "finite complete graph joined with a Z2-labelled cycle of length >= 5", rules, factor);
}

Verdict splits_over_finite(const LabeledGraph& g) {
    require_finite_labels(g, "splits_over_finite");
    const std::vector<std::string> rules{"separating-clique"};
    if (g.size() >= 2 && !is_connected(g)) {
        return make(Tri::yes, "the graph is disconnected: free product over the trivial group", rules, VertexSet{});
    }
    for (VertexSet c : cliques_within(g, g.all())) {
        if (c.empty() || c == g.all()) continue;
        if (is_separating(g, c)) return make(Tri::yes, "separating complete subgraph " + c.str(), rules, c);
    }
    return make(Tri::no, "no complete subgraph separates the graph", rules);
}

Verdict splits_over_virtually_cyclic(const LabeledGraph& g) {
    require_finite_labels(g, "splits_over_virtually_cyclic");
    const std::vector<std::string> rules{"separating-join-A*B"};
    const auto candidates = enumerate_candidate_vc_separators(g);
    if (candidates.empty()) return make(Tri::no, "no separating subgraph of the form A * B", rules);
    const VertexSet w = candidates.front();
    return make(Tri::yes, "separating subgraph " + w.str() + " of the form A * B", rules, w);
}

Verdict is_one_ended(const LabeledGraph& g) {
    require_finite_labels(g, "is_one_ended");
    const std::vector<std::string> rules{"infinite", "separating-clique"};
    const Verdict fin = is_finite_group(g);
    if (fin.yes()) return make(Tri::no, "the group is finite (zero ends)", rules);
    const Verdict split = splits_over_finite(g);
    if (split.yes()) return make(Tri::no, "splits over a finite subgroup: " + split.reason, rules, split.witness);
    return make(Tri::yes, "infinite and no separating complete subgraph", rules);
}

Verdict is_coarsely_separable_subexp(const LabeledGraph& g) {
    if (auto sq = find_induced_square(g)) {
        throw Error("coarse separability criterion requires a square-free graph; found induced square " +
                    VertexSet::of(*sq).str());
    }
    require_finite_labels(g, "is_coarsely_separable_subexp");
    Verdict v = splits_over_virtually_cyclic(g);
    v.rules.insert(v.rules.begin(), "coarse-separation-subexp");
    if (is_finite_group(g).yes()) {
        v.context = "finite";
    } else if (is_virtually_cyclic(g).yes()) {
        v.context = "virtually-cyclic";
    } else if (splits_over_finite(g).yes()) {
        v.context = "multi-ended";
    } else if (is_virtual_surface(g).yes()) {
        v.context = "virtual-surface";
    } else {
        v.context = "one-ended";
    }
    return v;
}

Verdict finite_index_subgraph(const LabeledGraph& g, VertexSet lambda) {
    if (!lambda.subset_of(g.all())) throw Error("subgraph " + lambda.str() + " is not contained in the graph");
    const std::vector<std::string> rules{"star-and-finite-link"};
    const VertexSet outside = g.all() - lambda;
    const VertexSet not_in_star = outside - link_of(g, lambda);
    if (!not_in_star.empty()) {
        return make(Tri::no, "vertex " + std::to_string(not_in_star.first()) + " is outside star(lambda)", rules,
                    not_in_star);
    }
    if (!is_clique(g, outside)) return make(Tri::no, "link(lambda) is not complete", rules, outside);
    const VertexSet infinite = outside - g.finite_vertices();
    if (!infinite.empty()) return make(Tri::no, "link(lambda) carries an infinite vertex group", rules, infinite);
    return make(Tri::yes, "graph equals star(lambda) with a finite complete link", rules, lambda);
}

}  // namespace coarsesep
