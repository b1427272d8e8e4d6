#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "coarsesep/csr.hpp"

namespace coarsesep {

/// Unit vertex-capacity max-flow on a node-split copy of an undirected graph.
///
/// Vertex v becomes an in-node 2v and an out-node 2v+1 joined by a unit arc;
/// each graph edge {u,v} becomes unit arcs u_out -> v_in and v_out -> u_in.
/// Flows run from a source vertex set to a disjoint sink vertex set, both
/// treated as contracted (uncapacitated) super-vertices, by Dinic's
/// algorithm. The value is the minimum number of vertices outside both sets
/// whose removal disconnects them (Menger).
///
/// The arc structure is built once; each query resets the residual
/// capacities, so one VertexFlow can answer many queries. Not thread-safe;
/// use one instance per thread.
class VertexFlow {
public:
    explicit VertexFlow(const Csr& g);

    /// Sets must be non-empty and disjoint, and no source may be adjacent to
    /// a sink (the value would be unbounded). Stops early once `limit`
    /// augmenting paths are found.
    std::uint32_t max_flow(std::span<const std::uint32_t> sources, std::span<const std::uint32_t> sinks,
                           std::uint32_t limit = 0xffffffffU);

    /// Vertices of a minimum separator from the last query (reachable in-node,
    /// unreachable out-node in the final residual graph).
    [[nodiscard]] std::vector<std::uint32_t> last_min_cut() const;

private:
    bool build_levels();
    std::uint32_t blocking_flow(std::uint32_t limit);

    const Csr* g_;
    std::vector<std::uint32_t> head_;  // per node, first arc
    std::vector<std::uint32_t> to_;
    std::vector<std::uint8_t> base_cap_;
    std::vector<std::uint8_t> cap_;
    std::vector<std::uint32_t> level_;
    std::vector<std::uint32_t> iter_;
    std::vector<std::uint8_t> role_;  // 0 plain, 1 source, 2 sink
    std::vector<std::uint32_t> queue_;
};

/// Convenience wrapper for one query.
std::uint32_t vertex_connectivity(const Csr& g, std::span<const std::uint32_t> sources,
                                  std::span<const std::uint32_t> sinks);

}  // namespace coarsesep
