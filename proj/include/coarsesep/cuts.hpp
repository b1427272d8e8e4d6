#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coarsesep/cayley.hpp"
#include "coarsesep/csr.hpp"
#include "coarsesep/fit.hpp"
#include "coarsesep/rational.hpp"

namespace coarsesep {

enum class Bound : std::uint8_t { upper, lower, exact };
enum class CutMethod : std::uint8_t { none, exhaustive, branch_and_bound, layer_sweep, local_search, flow_far_pairs };

std::string to_string(Bound b);
std::string to_string(CutMethod m);

/// Witness of a far-pair flow bound.
struct FlowCertificate {
    std::uint32_t x = 0;
    std::uint32_t y = 0;
    std::uint32_t distance = 0;       // d_S(x, y)
    std::uint32_t kappa = 0;          // vertex connectivity between the two terminal sets
    std::uint32_t paths = 0;          // internally disjoint paths found (= kappa)
    std::uint32_t pairs_tested = 0;
    std::uint32_t pairs_skipped = 0;  // terminal balls overlapping or adjacent
    std::uint32_t diameter_estimate = 0;
    std::uint32_t depth = 0;
};

/// A δ-cut of a finite graph (upper / exact) or a lower bound on cut^δ.
struct CutReport {
    std::string subject;             // tag of the cut graph
    std::uint32_t subject_size = 0;
    Delta delta{1, 2};
    Bound bound = Bound::upper;
    CutMethod method = CutMethod::none;
    std::vector<std::uint32_t> cut_set;           // sorted; empty for lower bounds
    std::vector<std::uint32_t> component_census;  // sizes of components of S minus cut, descending
    std::uint32_t value = 0;                      // |cut_set|, or the lower bound
    std::optional<FlowCertificate> certificate;
    std::string note;                             // e.g. "no search", "no far pair"
};

/// Component sizes of g minus `cut`, descending.
std::vector<std::uint32_t> component_census(const Csr& g, const std::vector<std::uint32_t>& cut);
/// All components of g minus `cut` have size <= delta * |g|.
bool is_delta_cut(const Csr& g, const Delta& delta, const std::vector<std::uint32_t>& cut);

inline constexpr std::uint32_t kExactThreshold = 28;

/// Minimum δ-cut by iterative deepening over cut size. Subsets of a given
/// size are visited in lexicographic order, so the reported cut is the
/// lexicographically first minimum one. Pruning: a component of the vertices
/// already fixed as kept that exceeds delta*|S| kills the branch, and the
/// search starts at min(kappa(S), |S| - floor(delta*|S|)).
CutReport exact_min_cut(const Csr& g, const Delta& delta, const std::string& subject = "graph");
CutReport exact_min_cut(const CayleySubgraph& s, const Delta& delta);

struct HeuristicOptions {
    std::uint32_t budget = 8;  // BFS seeds for the level sweep; 0 returns the trivial cut
    std::uint32_t local_search_passes = 4;
    std::uint64_t seed = 1;
};

/// Level-set sweep from several seeds, greedy shrinking and separator
/// vertex moves. The result is always re-verified; bound = upper.
CutReport heuristic_cut(const Csr& g, const Delta& delta, const HeuristicOptions& opts = {},
                        const std::string& subject = "graph");
CutReport heuristic_cut(const CayleySubgraph& s, const Delta& delta, const HeuristicOptions& opts = {});

struct FarPairPolicy {
    double rho = 0.5;            // pairs at distance >= rho * diameter estimate
    std::uint32_t max_pairs = 32;
    std::uint64_t seed = 1;
    /// Terminals are the intrinsic balls B_S(x, depth), B_S(y, depth). Depth 0
    /// gives point-to-point connectivity.
    std::uint32_t depth = 0;
    kernels::Exec exec = kernels::Exec::parallel;
};

/// Minimum over sampled far pairs of the vertex connectivity between their
/// terminal sets. A lower bound for every δ-cut that separates one of the
/// sampled pairs at the given depth; not a certificate for cut^δ in general.
/// Throws on a disconnected graph.
CutReport flow_far_pair_lower_bound(const Csr& g, const Delta& delta, const FarPairPolicy& policy = {},
                                    const std::string& subject = "graph");
CutReport flow_far_pair_lower_bound(const CayleySubgraph& s, const Delta& delta, const FarPairPolicy& policy = {});

/// Double-sweep BFS lower estimate of the diameter of a connected graph.
std::uint32_t diameter_estimate(const Csr& g, std::uint32_t start = 0);

struct PartitionCheck {
    bool ok = false;
    bool large_cut = false;  // |cut| >= δ'|S|
    std::uint64_t side_a = 0;
    std::uint64_t side_b = 0;
    Delta delta_prime{1, 8};
};

/// With δ' = min(δ/4, (1-δ)/4): either |cut| >= δ'|S| or the components of
/// S minus cut split greedily into A, B with |A|, |B| >= δ'|S|. Throws when
/// the report is not a valid δ-cut of g.
PartitionCheck verify_partition_lemma(const Csr& g, const CutReport& cut);

// ── experiments ─────────────────────────────────────────────────────────

struct ExperimentRow {
    int n = 0;
    int t = 0;
    std::size_t size = 0;
    std::optional<std::uint32_t> upper;
    std::optional<std::uint32_t> lower;
    std::optional<std::uint32_t> exact;
    double runtime_ms = 0.0;
    bool truncated = false;  // cap exceeded, row not computed
    bool connected = true;
    bool partition_lemma_ok = true;
};

struct SeriesFit {
    LinearFit fit;  // log(bound) ~ n
    std::string flag;
};

struct ExperimentTable {
    std::vector<ExperimentRow> rows;
    Delta delta{1, 2};
    std::uint64_t seed = 1;
    SeriesFit upper;
    SeriesFit lower;
    std::vector<std::string> notes;  // classification context, truncation
};

struct ExperimentOptions {
    CayleyOptions cayley;
    HeuristicOptions heuristic;
    FarPairPolicy pairs;
    /// Terminal depth floor(n/2): a δ-cut far from both points of a pair
    /// must separate their radius-n/2 neighbourhoods.
    bool deep_pairs = true;
    bool timing = false;
};

/// Rows for n in [n_lo, n_hi] on S_n^{+t}; rows beyond the element cap are
/// marked truncated and skipped.
ExperimentTable cut_growth_experiment(const GraphProduct& gp, int t, const Delta& delta, int n_lo, int n_hi,
                                      const ExperimentOptions& opts = {});

/// Flag of a bound series: "exponential" when the slope of log(bound) against
/// n is positive and distinguishable from 0, else "subexponential".
SeriesFit fit_bound_series(const std::vector<double>& n, const std::vector<double>& bound);

/// CSV `n,t,delta,size_subject,upper,lower,exact,lambda_fit_flag,runtime_ms,seed`.
std::string experiment_csv(const ExperimentTable& table);
/// Whitespace-separated columns for gnuplot, with a commented header.
std::string experiment_dat(const ExperimentTable& table);

struct SepRow {
    std::string kind;  // ball / thickened_sphere
    int n = 0;
    int t = 0;
    std::size_t size = 0;
    std::uint32_t upper = 0;
    std::uint32_t lower = 0;
    std::optional<std::uint32_t> exact;
    double runtime_ms = 0.0;
};

struct SepProfile {
    std::vector<SepRow> rows;
    LinearFit upper_fit;  // log upper ~ log size
    LinearFit lower_fit;  // log lower ~ log size
    double epsilon_hat = 0.0;  // slope of lower_fit
    std::uint64_t seed = 1;
    std::vector<std::string> notes;
};

/// cut^{1/2} bounds on balls B_n and thickened spheres S_n^{+t} for n up to
/// n_max. Stops at the group order for finite groups.
SepProfile sep_profile_estimate(const GraphProduct& gp, int n_max, int t, const ExperimentOptions& opts = {});

/// CSV `kind,n,t,size_subject,upper,lower,exact,runtime_ms,seed`.
std::string sep_profile_csv(const SepProfile& p, bool timing);

}  // namespace coarsesep
