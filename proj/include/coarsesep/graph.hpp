#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coarsesep/vertex_group.hpp"

namespace coarsesep {

/// Subset of the vertices of a defining graph, stored as a bitmask. All
/// subgraphs are induced: a VertexSet carries no edges of its own.
class VertexSet {
public:
    static constexpr int kCapacity = 64;

    constexpr VertexSet() = default;
    constexpr explicit VertexSet(std::uint64_t bits) : bits_(bits) {}

    static VertexSet of(std::initializer_list<int> ids);
    static VertexSet of(const std::vector<int>& ids);
    static constexpr VertexSet range(int n) {
        return VertexSet(n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1));
    }

    [[nodiscard]] constexpr std::uint64_t bits() const { return bits_; }
    [[nodiscard]] constexpr bool empty() const { return bits_ == 0; }
    [[nodiscard]] constexpr int size() const { return std::popcount(bits_); }
    [[nodiscard]] constexpr bool contains(int v) const { return (bits_ >> v) & 1U; }
    [[nodiscard]] constexpr bool subset_of(VertexSet o) const { return (bits_ & ~o.bits_) == 0; }
    [[nodiscard]] constexpr int first() const { return std::countr_zero(bits_); }

    constexpr void insert(int v) { bits_ |= std::uint64_t{1} << v; }
    constexpr void erase(int v) { bits_ &= ~(std::uint64_t{1} << v); }

    [[nodiscard]] std::vector<int> to_vector() const;
    [[nodiscard]] std::string str() const;  // "{0,2,4}"

    template <typename F>
    void for_each(F&& f) const {
        for (auto b = bits_; b != 0; b &= b - 1) f(std::countr_zero(b));
    }

    friend constexpr VertexSet operator|(VertexSet a, VertexSet b) { return VertexSet(a.bits_ | b.bits_); }
    friend constexpr VertexSet operator&(VertexSet a, VertexSet b) { return VertexSet(a.bits_ & b.bits_); }
    friend constexpr VertexSet operator-(VertexSet a, VertexSet b) { return VertexSet(a.bits_ & ~b.bits_); }
    friend constexpr bool operator==(VertexSet, VertexSet) = default;
    friend constexpr auto operator<=>(VertexSet a, VertexSet b) { return a.bits_ <=> b.bits_; }

private:
    std::uint64_t bits_ = 0;
};

/// Finite simple graph with one vertex group per vertex: the defining data
/// of a graph product. Immutable once constructed.
class LabeledGraph {
public:
    LabeledGraph() = default;
    /// Throws on loops, repeated edges, out-of-range endpoints or more than
    /// VertexSet::kCapacity vertices.
    LabeledGraph(std::vector<VertexGroup> labels, std::vector<std::pair<int, int>> edges);

    [[nodiscard]] int size() const { return static_cast<int>(labels_.size()); }
    [[nodiscard]] VertexSet all() const { return VertexSet::range(size()); }
    [[nodiscard]] const VertexGroup& label(int v) const { return labels_[static_cast<std::size_t>(v)]; }
    [[nodiscard]] const std::vector<VertexGroup>& labels() const { return labels_; }
    [[nodiscard]] VertexSet neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
    [[nodiscard]] bool adjacent(int u, int v) const { return adj_[static_cast<std::size_t>(u)].contains(v); }
    /// Sorted (u < v) edge list.
    [[nodiscard]] const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    [[nodiscard]] bool all_finite() const;
    [[nodiscard]] bool all_concrete() const;
    [[nodiscard]] VertexSet finite_vertices() const;
    [[nodiscard]] VertexSet z2_vertices() const;

private:
    std::vector<VertexGroup> labels_;
    std::vector<VertexSet> adj_;
    std::vector<std::pair<int, int>> edges_;
};

// Small constructors used by tests, fixtures and the CLI.
LabeledGraph cycle_graph(const std::vector<VertexGroup>& labels);
LabeledGraph complete_graph(const std::vector<VertexGroup>& labels);
LabeledGraph path_graph(const std::vector<VertexGroup>& labels);
LabeledGraph edgeless_graph(const std::vector<VertexGroup>& labels);
std::vector<VertexGroup> cyclic_labels(const std::vector<int>& orders);

// ── induced-subgraph predicates ─────────────────────────────────────────

[[nodiscard]] bool is_clique(const LabeledGraph& g, VertexSet s);
/// Connected components of the subgraph induced on `s`, ordered by lowest vertex.
[[nodiscard]] std::vector<VertexSet> components(const LabeledGraph& g, VertexSet s);
[[nodiscard]] bool is_connected(const LabeledGraph& g, VertexSet s);
[[nodiscard]] bool is_connected(const LabeledGraph& g);

/// An induced 4-cycle, if any (vertices in cycle order).
[[nodiscard]] std::optional<std::vector<int>> find_induced_square(const LabeledGraph& g);
[[nodiscard]] bool is_square_free(const LabeledGraph& g);

/// True iff the subgraph induced on V \ lambda has at least two components.
/// Throws when lambda is the whole vertex set.
[[nodiscard]] bool is_separating(const LabeledGraph& g, VertexSet lambda);

struct JoinDecomposition {
    VertexSet complete_part;         // vertices isolated in the complement
    std::vector<VertexSet> factors;  // complement components with >= 2 vertices
};
[[nodiscard]] JoinDecomposition join_decomposition(const LabeledGraph& g);

[[nodiscard]] VertexSet link(const LabeledGraph& g, int u);
[[nodiscard]] VertexSet star(const LabeledGraph& g, int u);
/// Vertices outside `lambda` adjacent to every vertex of `lambda`.
[[nodiscard]] VertexSet link_of(const LabeledGraph& g, VertexSet lambda);

/// Every clique (including the empty one) contained in `within`, in
/// increasing (size, bitmask) order.
[[nodiscard]] std::vector<VertexSet> cliques_within(const LabeledGraph& g, VertexSet within);

/// Shape test: lambda = A * B with A complete and B empty or a non-adjacent
/// pair of Z2-labelled vertices joined to all of A.
[[nodiscard]] bool is_vc_separator_shape(const LabeledGraph& g, VertexSet lambda);

enum class SeparatorScan : std::uint8_t { automatic, exhaustive, clique_based };

/// Largest defining graph the separator enumeration accepts.
inline constexpr int kMaxSeparatorVertices = 24;
/// Below this size the automatic strategy scans all subsets.
inline constexpr int kExhaustiveBelow = 16;

/// Every separating Lambda of the A * B shape, sorted by (size, bitmask).
/// Requires every label to be finite.
[[nodiscard]] std::vector<VertexSet> enumerate_candidate_vc_separators(const LabeledGraph& g,
                                                                      SeparatorScan scan = SeparatorScan::automatic);

}  // namespace coarsesep
