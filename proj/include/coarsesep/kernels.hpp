#pragma once

// Data-parallel inner loops of the Cayley enumeration. Each kernel has an
// OpenMP version and a serial reference with identical output; tests compare
// the two and bench/ times them.

#include <cstdint>
#include <span>
#include <vector>

#include "coarsesep/word.hpp"

namespace coarsesep::kernels {

enum class Exec : std::uint8_t { serial, parallel };

/// Sorted, duplicate-free keys of the sphere S_{k+1}, given the sorted keys of
/// S_k. Uses that the distance to the identity equals the syllable length of
/// the normal form.
std::vector<PackedWord> next_layer(const GraphProduct& gp, const PackedCodec& codec,
                                   std::span<const PackedWord> layer, std::size_t k, Exec exec);

/// Index of `key` in the sorted `keys`, or kNotFound.
inline constexpr std::uint32_t kNotFound = 0xffffffffU;
std::uint32_t find_key(std::span<const PackedWord> keys, const PackedWord& key);

/// Neighbour indices (by right multiplication with every generator) of each
/// element of the sorted key set, restricted to the set. Row i lists the
/// neighbours of keys[i] in increasing order.
struct Adjacency {
    std::vector<std::uint32_t> offsets;
    std::vector<std::uint32_t> targets;
};
Adjacency induced_adjacency(const GraphProduct& gp, const PackedCodec& codec, std::span<const PackedWord> keys,
                            Exec exec);

/// Plain breadth-first search from the identity with a visited set and no
/// use of word lengths: layer k holds the elements first reached at depth k.
/// Independent reference for next_layer.
std::vector<std::vector<PackedWord>> reference_bfs_layers(const GraphProduct& gp, const PackedCodec& codec,
                                                          std::size_t n);

int max_threads();

}  // namespace coarsesep::kernels
