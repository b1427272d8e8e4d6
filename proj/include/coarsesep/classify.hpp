#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coarsesep/graph.hpp"

namespace coarsesep {

/// Outcome of one decision procedure on (Gamma, G).
///
/// `witness` is set for witness-producing answers (separators, finite-index
/// subgraphs, forbidden patterns). `rules` names the criteria consulted, in
/// the order they fired. `undecided` only appears when an abstract vertex
/// group leaves a flag the rule needs unknown.
struct Verdict {
    Tri value = Tri::unknown;
    std::optional<VertexSet> witness;
    std::string reason;
    std::vector<std::string> rules;
    /// Regime the coarse-separability answer was reached in; empty otherwise.
    std::string context;

    [[nodiscard]] bool yes() const { return value == Tri::yes; }
    [[nodiscard]] bool no() const { return value == Tri::no; }
    [[nodiscard]] bool undecided() const { return value == Tri::unknown; }
};

std::string verdict_word(Tri t);  // "yes" / "no" / "undecided"

Verdict is_hyperbolic(const LabeledGraph& g);
Verdict is_finite_group(const LabeledGraph& g);
Verdict is_virtually_cyclic(const LabeledGraph& g);
Verdict is_virtual_surface(const LabeledGraph& g);

// The splitting criteria need every vertex group finite and throw otherwise.
Verdict splits_over_finite(const LabeledGraph& g);
Verdict splits_over_virtually_cyclic(const LabeledGraph& g);
/// Infinite and not splitting over a finite subgroup.
Verdict is_one_ended(const LabeledGraph& g);

/// Requires Gamma square-free and all vertex groups finite; throws otherwise.
/// Same decision surface as splits_over_virtually_cyclic, with `context`
/// naming the regime: "finite", "multi-ended", "virtually-cyclic",
/// "virtual-surface" or "one-ended".
Verdict is_coarsely_separable_subexp(const LabeledGraph& g);

/// Whether the subgroup generated by the vertex groups of `lambda` has finite
/// index: Gamma = star(lambda) and link(lambda) a complete graph of finite
/// vertex groups.
Verdict finite_index_subgraph(const LabeledGraph& g, VertexSet lambda);

}  // namespace coarsesep
