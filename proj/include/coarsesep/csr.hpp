#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace coarsesep {

/// Undirected graph in compressed sparse row form. Each edge is stored in
/// both directions; neighbour lists are sorted.
class Csr {
public:
    Csr() : offsets_{0} {}
    Csr(std::vector<std::uint32_t> offsets, std::vector<std::uint32_t> targets)
        : offsets_(std::move(offsets)), targets_(std::move(targets)) {}

    /// Builds from an undirected edge list; loops and duplicates are dropped.
    static Csr from_edges(std::uint32_t n, std::vector<std::pair<std::uint32_t, std::uint32_t>> edges);

    [[nodiscard]] std::uint32_t size() const { return static_cast<std::uint32_t>(offsets_.size() - 1); }
    [[nodiscard]] std::size_t edge_count() const { return targets_.size() / 2; }
    [[nodiscard]] std::span<const std::uint32_t> neighbors(std::uint32_t v) const {
        return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
    }
    [[nodiscard]] std::uint32_t degree(std::uint32_t v) const { return offsets_[v + 1] - offsets_[v]; }
    [[nodiscard]] bool adjacent(std::uint32_t u, std::uint32_t v) const;

    [[nodiscard]] const std::vector<std::uint32_t>& offsets() const { return offsets_; }
    [[nodiscard]] const std::vector<std::uint32_t>& targets() const { return targets_; }

private:
    std::vector<std::uint32_t> offsets_;
    std::vector<std::uint32_t> targets_;
};

inline constexpr std::uint32_t kUnreached = 0xffffffffU;

/// Hop distances from `sources` (kUnreached elsewhere), optionally avoiding
/// vertices flagged in `removed` and stopping at `max_depth`.
std::vector<std::uint32_t> bfs_distances(const Csr& g, std::span<const std::uint32_t> sources,
                                         const std::vector<char>* removed = nullptr,
                                         std::uint32_t max_depth = kUnreached);

/// Component id per vertex of g minus `removed` (removed vertices get
/// kUnreached) and the component sizes, ids assigned in order of lowest vertex.
struct ComponentLabels {
    std::vector<std::uint32_t> label;
    std::vector<std::uint32_t> sizes;
};
ComponentLabels component_labels(const Csr& g, const std::vector<char>* removed = nullptr);

/// Subgraph induced on the vertices with keep[v] set, renumbered in
/// increasing order of the original ids.
Csr induced_subgraph(const Csr& g, const std::vector<char>& keep);

Csr path_csr(std::uint32_t n);
Csr cycle_csr(std::uint32_t n);
Csr complete_csr(std::uint32_t n);

}  // namespace coarsesep
