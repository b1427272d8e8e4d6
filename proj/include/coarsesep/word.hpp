#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "coarsesep/graph.hpp"

namespace coarsesep {

/// One letter of a word: a non-identity element of the vertex group at `vertex`.
struct Syllable {
    std::uint8_t vertex = 0;
    std::uint8_t elem = 0;

    friend constexpr auto operator<=>(const Syllable&, const Syllable&) = default;
};

/// Element of a graph product, held in canonical normal form once produced by
/// GraphProduct::reduce. The ambient stamp identifies the GraphProduct that
/// produced it (0 for raw sequences).
struct Word {
    std::vector<Syllable> syllables;
    std::uint32_t ambient = 0;

    [[nodiscard]] std::size_t size() const { return syllables.size(); }
    [[nodiscard]] bool empty() const { return syllables.empty(); }

    friend bool operator==(const Word& a, const Word& b) = default;
    friend auto operator<=>(const Word& a, const Word& b) { return a.syllables <=> b.syllables; }
};

/// Exact arithmetic in the graph product of a labelled graph whose vertex
/// groups are all given by multiplication tables.
///
/// Normal forms are graphically reduced words in Cartier–Foata order: the
/// syllables are grouped into successive blocks of pairwise commuting
/// syllables, each pushed as far left as possible, and sorted by vertex id
/// inside a block. Two words represent the same element iff their normal
/// forms are equal sequences.
///
/// Metric convention: the generating set is the union of all non-trivial
/// vertex-group elements, so every syllable has length 1 and the word length
/// of an element is the number of syllables of its normal form.
class GraphProduct {
public:
    explicit GraphProduct(LabeledGraph g);

    [[nodiscard]] const LabeledGraph& graph() const { return graph_; }
    [[nodiscard]] std::uint32_t id() const { return id_; }
    [[nodiscard]] int order(int v) const { return *graph_.label(v).order(); }

    /// Normal form of an arbitrary syllable sequence. Identity syllables are
    /// allowed in the input and dropped. Throws on out-of-range indices.
    [[nodiscard]] Word reduce(std::span<const Syllable> raw) const;
    [[nodiscard]] Word identity() const;

    [[nodiscard]] Word multiply(const Word& x, const Word& y) const;
    [[nodiscard]] Word inverse(const Word& x) const;
    [[nodiscard]] bool equals(const Word& x, const Word& y) const;
    [[nodiscard]] Word right_multiply(const Word& x, Syllable s) const;
    [[nodiscard]] Word left_multiply(Syllable s, const Word& x) const;

    /// Every non-identity vertex-group element, ordered by (vertex, element).
    [[nodiscard]] const std::vector<Syllable>& generators() const { return generators_; }
    /// 1-based position of `s` in generators().
    [[nodiscard]] int generator_index(Syllable s) const {
        return gen_offset_[s.vertex] + s.elem;
    }

    /// Checks the normal-form invariants: valid non-identity syllables,
    /// graphically reduced, canonical block order, matching ambient.
    [[nodiscard]] bool is_normal_form(const Word& w) const;

    /// Canonical reordering of an already graphically reduced sequence.
    void canonicalize(std::vector<Syllable>& syl) const;

private:
    void check(Syllable s) const;
    void check(const Word& w) const;
    /// Pushes `s` left past commuting syllables until it merges, cancels or
    /// settles at the end. Keeps `stack` graphically reduced.
    void insert(std::vector<Syllable>& stack, Syllable s) const;
    [[nodiscard]] bool commute(int u, int v) const { return graph_.adjacent(u, v); }
    [[nodiscard]] Word stamp(std::vector<Syllable> syl) const;

    LabeledGraph graph_;
    std::uint32_t id_;
    std::vector<Syllable> generators_;
    std::vector<int> gen_offset_;  // per vertex, index of (v,1) minus 1
};

[[nodiscard]] inline std::size_t syllable_length(const Word& w) { return w.size(); }
/// Sum of vertex-group lengths; each non-trivial element has length 1 under
/// the fixed generating set.
[[nodiscard]] inline std::size_t word_length(const Word& w) { return w.size(); }

/// Deterministic in `seed`: draws `n` syllables, each a uniformly random
/// vertex followed by a uniformly random non-identity element of its group,
/// then reduces. The result has at most `n` syllables.
[[nodiscard]] Word random_word(const GraphProduct& gp, std::uint64_t seed, std::size_t n);

/// Raw syllable sequence, not reduced. Syntax: "v3:2 v0:1"; "e" or "" is the
/// empty word.
[[nodiscard]] std::vector<Syllable> parse_word(const std::string& text);
[[nodiscard]] std::string format_word(const Word& w);

/// Syllable-wise image under per-vertex injections `maps[v][a]` (element a of
/// the source group at v to an element of the target group at v), re-reduced
/// in the target. Both products must share the defining graph. Throws when a
/// map is not injective or sends a non-identity element to the identity.
[[nodiscard]] Word embed_phi(const GraphProduct& source, const GraphProduct& target,
                             const std::vector<std::vector<int>>& maps, const Word& x);
void validate_phi_maps(const GraphProduct& source, const GraphProduct& target,
                       const std::vector<std::vector<int>>& maps);

/// Fixed-width key for a normal form: generator indices packed at
/// `bits_per_syllable()` bits each into 128 bits, terminated by zero.
using PackedWord = std::array<std::uint64_t, 2>;

class PackedCodec {
public:
    explicit PackedCodec(const GraphProduct& gp);

    [[nodiscard]] int bits_per_syllable() const { return bits_; }
    [[nodiscard]] std::size_t max_syllables() const { return static_cast<std::size_t>(128 / bits_); }

    /// Throws if the word does not fit.
    [[nodiscard]] PackedWord encode(const Word& w) const;
    [[nodiscard]] Word decode(const PackedWord& p) const;
    [[nodiscard]] std::size_t length(const PackedWord& p) const;

private:
    const GraphProduct* gp_;
    int bits_;
};

}  // namespace coarsesep
