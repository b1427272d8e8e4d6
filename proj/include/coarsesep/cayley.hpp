#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coarsesep/csr.hpp"
#include "coarsesep/fit.hpp"
#include "coarsesep/kernels.hpp"
#include "coarsesep/word.hpp"

namespace coarsesep {

inline constexpr std::size_t kDefaultMemCap = 5'000'000;

struct CayleyOptions {
    /// Largest number of group elements any enumeration may hold.
    std::size_t mem_cap = kDefaultMemCap;
    kernels::Exec exec = kernels::Exec::parallel;
};

/// Spheres S_0..S_n around the identity, each as sorted packed keys.
///
/// Distances are exact: with every non-trivial vertex-group element as a
/// generator, the distance from the identity is the syllable count of the
/// normal form.
class BallLayers {
public:
    /// Throws when an enumerated or projected |B_k| exceeds opts.mem_cap.
    BallLayers(const GraphProduct& gp, int n, const CayleyOptions& opts = {});

    [[nodiscard]] int radius() const { return static_cast<int>(layers_.size()) - 1; }
    [[nodiscard]] const std::vector<PackedWord>& layer(int k) const { return layers_[static_cast<std::size_t>(k)]; }
    [[nodiscard]] std::size_t ball_size(int k) const;
    [[nodiscard]] const PackedCodec& codec() const { return codec_; }
    /// First k with S_k empty (the group is finite), if reached.
    [[nodiscard]] std::optional<int> stabilized_at() const;

private:
    PackedCodec codec_;
    std::vector<std::vector<PackedWord>> layers_;
};

enum class SubgraphKind : std::uint8_t { ball, sphere, thickened_sphere, custom };

struct SubgraphTag {
    SubgraphKind kind = SubgraphKind::custom;
    int n = 0;
    int t = 0;

    [[nodiscard]] std::string str() const;  // "ball(5)", "thickened_sphere(6,2)", ...
};

/// Finite induced subgraph of the Cayley graph. Elements are indexed in
/// increasing packed-key order; edges join x and x*s for generators s when
/// both are present. Immutable after construction.
class CayleySubgraph {
public:
    CayleySubgraph(const GraphProduct& gp, SubgraphTag tag, std::vector<PackedWord> keys, const CayleyOptions& opts = {});
    /// Trusts `graph` to be the induced adjacency of `keys`.
    CayleySubgraph(const GraphProduct& gp, SubgraphTag tag, std::vector<PackedWord> keys, Csr graph);

    [[nodiscard]] const GraphProduct& product() const { return *gp_; }
    [[nodiscard]] const SubgraphTag& tag() const { return tag_; }
    [[nodiscard]] std::uint32_t size() const { return graph_.size(); }
    [[nodiscard]] const Csr& graph() const { return graph_; }
    [[nodiscard]] const std::vector<PackedWord>& keys() const { return keys_; }
    [[nodiscard]] const PackedCodec& codec() const { return codec_; }

    [[nodiscard]] Word element(std::uint32_t i) const { return codec_.decode(keys_[i]); }
    /// Distance from the identity (the centre of every enumerated subgraph).
    [[nodiscard]] std::uint32_t depth(std::uint32_t i) const { return static_cast<std::uint32_t>(codec_.length(keys_[i])); }
    [[nodiscard]] std::optional<std::uint32_t> index_of(const Word& w) const;
    [[nodiscard]] bool connected() const;

private:
    const GraphProduct* gp_;
    SubgraphTag tag_;
    PackedCodec codec_;
    std::vector<PackedWord> keys_;
    Csr graph_;
};

CayleySubgraph ball(const GraphProduct& gp, int n, const CayleyOptions& opts = {});
CayleySubgraph sphere(const GraphProduct& gp, int n, const CayleyOptions& opts = {});
/// All g with d(g, S_n) <= t, found by multi-source BFS from S_n inside
/// B_{n+t}. Requires t >= 1 and n > t.
CayleySubgraph thickened_sphere(const GraphProduct& gp, int n, int t, const CayleyOptions& opts = {});
/// Variants reusing enumerated layers (radius >= n, resp. n + t).
CayleySubgraph ball(const GraphProduct& gp, const BallLayers& layers, int n, kernels::Exec exec = kernels::Exec::parallel);
CayleySubgraph thickened_sphere(const GraphProduct& gp, const BallLayers& layers, int n, int t,
                                kernels::Exec exec = kernels::Exec::parallel);
/// Same element set but only requires n >= t >= 0; used for the persistent
/// family A(r) = S_r^{+t}, which starts at r = t.
std::vector<PackedWord> thickened_sphere_keys(const GraphProduct& gp, const BallLayers& layers, int n, int t);

/// Intrinsic (inside S) hop distance; nullopt when x and y lie in different
/// components.
std::optional<std::uint32_t> intrinsic_distance(const CayleySubgraph& s, const Word& x, const Word& y);

/// Dump: header `index,word,depth,neighbors`, neighbours space-separated.
std::string subgraph_csv(const CayleySubgraph& s);

// ── growth ──────────────────────────────────────────────────────────────

struct GrowthRow {
    int n = 0;
    std::size_t ball = 0;
    std::size_t sphere = 0;
};

struct GrowthTable {
    std::vector<GrowthRow> rows;
    /// Slope of log|B_n| against n over the fit window (0 when stabilized).
    double alpha_hat = 0.0;
    LinearFit exp_fit;   // log|B_n| ~ n
    LinearFit poly_fit;  // log|B_n| ~ log n
    int fit_from = 0;
    int fit_to = 0;
    std::string flag;    // stabilized / exponential / subexponential / insufficient points
};

/// Rows n = 0..n_max. The fit window is [n_min_fit, n_max]; a negative
/// n_min_fit selects max(1, n_max - 6). The series is called exponential
/// when the log-linear model fits at least as well as the log-log one.
GrowthTable growth_table(const GraphProduct& gp, int n_max, int n_min_fit = -1, const CayleyOptions& opts = {});
std::string growth_csv(const GrowthTable& table);

// ── persistence ─────────────────────────────────────────────────────────

struct PersistenceRow {
    Word x;
    Word y;
    int r = 0;
    int t = 0;
    std::size_t size_x = 0;
    std::size_t size_y = 0;
    std::size_t intersection = 0;
    std::size_t ball_t = 0;          // |B_t|; the bound is 1/|B_t|
    bool contained_in_ball = false;  // A_x(r) inside B(x, 4r)
    [[nodiscard]] double ratio() const { return size_x == 0 ? 0.0 : static_cast<double>(intersection) / static_cast<double>(size_x); }
    /// intersection * |B_t| >= |A(r)|, |A_x| = |A_y|, containment; exact integers.
    [[nodiscard]] bool ok() const;
};

/// Checks the persistent-family inequalities for A_x(r) = x * S_r^{+t} on each
/// pair. Pairs must be neighbours (x^{-1} y a generator) or equal. Requires
/// r >= t >= 1.
std::vector<PersistenceRow> persistence_check(const GraphProduct& gp, int r, int t,
                                              const std::vector<std::pair<Word, Word>>& pairs,
                                              const CayleyOptions& opts = {});

/// `count` pairs (x, x*s): x a random word of at most max_len syllables and s
/// a uniformly random generator. Deterministic in seed.
std::vector<std::pair<Word, Word>> random_neighbor_pairs(const GraphProduct& gp, std::size_t count, std::uint64_t seed,
                                                         std::size_t max_len);

// ── distortion ──────────────────────────────────────────────────────────

struct DistortionRow {
    Word x;
    Word y;
    std::uint32_t extrinsic = 0;
    std::optional<std::uint32_t> intrinsic;  // nullopt = different components
};

struct DistortionReport {
    int n = 0;
    int t = 0;
    double threshold = 0.0;  // pairs with extrinsic >= threshold enter the fit
    std::vector<DistortionRow> rows;
    LinearFit fit;           // log intrinsic ~ extrinsic
    bool subgraph_connected = false;
};

struct DistortionOptions {
    double delta_hat = 2.0;               // stand-in for the hyperbolicity constant
    std::optional<double> threshold;      // default 9*delta_hat + 6*t
    std::size_t sources = 8;              // random base points
    std::size_t targets_per_source = 16;  // random partners per base point
    std::uint64_t seed = 1;
    std::vector<std::pair<Word, Word>> extra_pairs;  // always reported first
};

DistortionReport distortion_report(const GraphProduct& gp, int n, int t, const DistortionOptions& dopts,
                                   const CayleyOptions& opts = {});

}  // namespace coarsesep
