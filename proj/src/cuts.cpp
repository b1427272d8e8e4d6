#include "coarsesep/cuts.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "coarsesep/error.hpp"
#include "coarsesep/flow.hpp"

namespace coarsesep {

std::string to_string(Bound b) {
    switch (b) {
        case Bound::upper: return "upper";
        case Bound::lower: return "lower";
        case Bound::exact: return "exact";
    }
    return "?";
}

std::string to_string(CutMethod m) {
    switch (m) {
        case CutMethod::none: return "none";
        case CutMethod::exhaustive: return "exhaustive";
        case CutMethod::branch_and_bound: return "branch_and_bound";
        case CutMethod::layer_sweep: return "layer_sweep";
        case CutMethod::local_search: return "local_search";
        case CutMethod::flow_far_pairs: return "flow_far_pairs";
    }
    return "?";
}

namespace {

std::int64_t max_component(const Csr& g, const Delta& d) {
    return d.num * static_cast<std::int64_t>(g.size()) / d.den;
}

std::vector<char> mask_of(std::uint32_t n, const std::vector<std::uint32_t>& set) {
    std::vector<char> m(n, 0);
    for (auto v : set) {
        if (v >= n) throw Error("cut vertex out of range");
        m[v] = 1;
    }
    return m;
}

CutReport make_cut_report(const Csr& g, const Delta& delta, std::vector<std::uint32_t> cut, Bound bound,
                          CutMethod method, const std::string& subject) {
    std::sort(cut.begin(), cut.end());
    CutReport r;
    r.subject = subject;
    r.subject_size = g.size();
    r.delta = delta;
    r.bound = bound;
    r.method = method;
    r.component_census = component_census(g, cut);
    r.value = static_cast<std::uint32_t>(cut.size());
    r.cut_set = std::move(cut);
    return r;
}

}  // namespace

std::vector<std::uint32_t> component_census(const Csr& g, const std::vector<std::uint32_t>& cut) {
    const auto removed = mask_of(g.size(), cut);
    auto sizes = component_labels(g, &removed).sizes;
    std::sort(sizes.begin(), sizes.end(), std::greater<>());
    return sizes;
}

bool is_delta_cut(const Csr& g, const Delta& delta, const std::vector<std::uint32_t>& cut) {
    const auto census = component_census(g, cut);
    return census.empty() || delta.admits(census.front(), g.size());
}

// ── exact ───────────────────────────────────────────────────────────────

namespace {

using Mask = std::uint32_t;

class SubsetSearch {
public:
    SubsetSearch(const Csr& g, std::int64_t limit) : n_(g.size()), limit_(limit), adj_(g.size(), 0) {
        for (std::uint32_t v = 0; v < n_; ++v) {
            for (auto w : g.neighbors(v)) adj_[v] |= Mask{1} << w;
        }
    }

    // Lexicographically first valid cut of exactly k vertices.
    std::optional<Mask> find(std::uint32_t k) {
        k_ = k;
        found_.reset();
        descend(0, 0, 0, 0);
        return found_;
    }

private:
    // Component of `start` inside `within`.
    Mask flood(Mask within, std::uint32_t start) const {
        Mask comp = Mask{1} << start;
        Mask frontier = comp;
        while (frontier) {
            Mask next = 0;
            for (Mask f = frontier; f; f &= f - 1) next |= adj_[static_cast<std::uint32_t>(std::countr_zero(f))];
            next &= within & ~comp;
            comp |= next;
            frontier = next;
        }
        return comp;
    }

    bool valid(Mask kept) const {
        while (kept) {
            const Mask c = flood(kept, static_cast<std::uint32_t>(std::countr_zero(kept)));
            if (std::popcount(c) > limit_) return false;
            kept &= ~c;
        }
        return true;
    }

    void descend(std::uint32_t pos, std::uint32_t chosen, Mask cut, Mask kept) {
        if (found_) return;
        if (chosen == k_) {
            const Mask all = n_ == 32 ? ~Mask{0} : (Mask{1} << n_) - 1;
            if (valid(all & ~cut)) found_ = cut;
            return;
        }
        if (n_ - pos < k_ - chosen) return;
        descend(pos + 1, chosen + 1, cut | (Mask{1} << pos), kept);
        const Mask with = kept | (Mask{1} << pos);
        // Components of the vertices already kept only grow later on.
        if (std::popcount(flood(with, pos)) > limit_) return;
        descend(pos + 1, chosen, cut, with);
    }

    std::uint32_t n_;
    std::int64_t limit_;
    std::vector<Mask> adj_;
    std::uint32_t k_ = 0;
    std::optional<Mask> found_;
};

// Global vertex connectivity of a small graph; 0 when disconnected, n-1 when
// complete.
std::uint32_t global_connectivity(const Csr& g) {
    const std::uint32_t n = g.size();
    if (n <= 1) return 0;
    if (component_labels(g).sizes.size() > 1) return 0;
    std::uint32_t best = n - 1;
    VertexFlow flow(g);
    for (std::uint32_t u = 0; u < n; ++u) {
        for (std::uint32_t v = u + 1; v < n; ++v) {
            if (g.adjacent(u, v)) continue;
            const std::uint32_t src[] = {u};
            const std::uint32_t dst[] = {v};
            best = std::min(best, flow.max_flow(src, dst, best));
        }
    }
    return best;
}

}  // namespace

CutReport exact_min_cut(const Csr& g, const Delta& delta, const std::string& subject) {
    const std::uint32_t n = g.size();
    if (n > kExactThreshold) {
        throw Error("exact search limited to " + std::to_string(kExactThreshold) + " vertices, got " +
                    std::to_string(n));
    }
    const std::int64_t limit = max_component(g, delta);
    const auto upper = static_cast<std::uint32_t>(static_cast<std::int64_t>(n) - limit);
    std::uint32_t k = std::min(global_connectivity(g), upper);
    if (is_delta_cut(g, delta, {})) k = 0;
    SubsetSearch search(g, limit);
    for (; k <= n; ++k) {
        if (auto found = search.find(k)) {
            std::vector<std::uint32_t> cut;
            for (Mask m = *found; m; m &= m - 1) cut.push_back(static_cast<std::uint32_t>(std::countr_zero(m)));
            return make_cut_report(g, delta, std::move(cut), Bound::exact, CutMethod::branch_and_bound, subject);
        }
    }
    throw Error("exact search exhausted without a cut");  // unreachable: the whole set is a cut
}

CutReport exact_min_cut(const CayleySubgraph& s, const Delta& delta) {
    return exact_min_cut(s.graph(), delta, s.tag().str());
}

// ── heuristic ───────────────────────────────────────────────────────────

namespace {

struct Dsu {
    std::vector<std::uint32_t> parent;
    std::vector<std::uint32_t> size;
    explicit Dsu(std::uint32_t n) : parent(n), size(n, 1) { std::iota(parent.begin(), parent.end(), 0U); }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size[a] < size[b]) std::swap(a, b);
        parent[b] = a;
        size[a] += size[b];
    }
};

// Returns cut vertices back to the kept side while no component exceeds the limit.
std::vector<std::uint32_t> shrink(const Csr& g, std::int64_t limit, std::vector<std::uint32_t> cut) {
    const std::uint32_t n = g.size();
    auto in_cut = mask_of(n, cut);
    Dsu dsu(n);
    for (std::uint32_t v = 0; v < n; ++v) {
        if (in_cut[v]) continue;
        for (auto w : g.neighbors(v)) {
            if (!in_cut[w]) dsu.unite(v, w);
        }
    }
    std::vector<std::uint32_t> roots;
    std::vector<std::uint32_t> kept_cut;
    for (auto v : cut) {
        roots.clear();
        for (auto w : g.neighbors(v)) {
            if (!in_cut[w]) roots.push_back(dsu.find(w));
        }
        std::sort(roots.begin(), roots.end());
        roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
        std::int64_t merged = 1;
        for (auto r : roots) merged += dsu.size[r];
        if (merged <= limit) {
            in_cut[v] = 0;
            for (auto r : roots) dsu.unite(v, r);
        } else {
            kept_cut.push_back(v);
        }
    }
    return kept_cut;
}

// Best valid level set of a BFS from `seed`, or nullopt.
std::optional<std::vector<std::uint32_t>> sweep(const Csr& g, const Delta& delta, std::int64_t limit,
                                                std::uint32_t seed) {
    const std::uint32_t n = g.size();
    const std::uint32_t src[] = {seed};
    const auto dist = bfs_distances(g, src);
    std::uint32_t maxd = 0;
    for (auto d : dist) {
        if (d != kUnreached) maxd = std::max(maxd, d);
    }
    std::vector<std::int64_t> count(maxd + 1, 0);
    for (auto d : dist) {
        if (d != kUnreached) ++count[d];
    }
    std::vector<std::pair<std::int64_t, std::uint32_t>> candidates;  // (|level|, r)
    std::int64_t inside = 0;
    for (std::uint32_t r = 0; r <= maxd; ++r) {
        // {d < r} is connected, so it only has to fit.
        if (inside <= limit) candidates.emplace_back(count[r], r);
        inside += count[r];
    }
    std::sort(candidates.begin(), candidates.end());
    std::vector<std::int64_t> prefix(maxd + 2, 0);
    for (std::uint32_t r = 0; r <= maxd; ++r) prefix[r + 1] = prefix[r] + count[r];
    auto level_set = [&](std::uint32_t r) {
        std::vector<std::uint32_t> level;
        level.reserve(static_cast<std::size_t>(count[r]));
        for (std::uint32_t v = 0; v < n; ++v) {
            if (dist[v] == r) level.push_back(v);
        }
        return level;
    };
    // Levels whose far side also fits are valid without a census; smaller
    // levels need one, and only a bounded number of those is tried.
    std::optional<std::uint32_t> free_level;
    for (auto [size, r] : candidates) {
        if (static_cast<std::int64_t>(n) - prefix[r + 1] <= limit) {
            free_level = r;
            break;
        }
    }
    constexpr int kMaxCensus = 16;
    int census_runs = 0;
    for (auto [size, r] : candidates) {
        if (free_level && size >= count[*free_level]) break;
        if (census_runs++ >= kMaxCensus) break;
        auto level = level_set(r);
        if (is_delta_cut(g, delta, level)) return level;
    }
    if (free_level) return level_set(*free_level);
    return std::nullopt;
}

// Two-sided separator moves (A | C | B, no A-B edges, |A|,|B| <= limit).
class SeparatorSearch {
public:
    SeparatorSearch(const Csr& g, std::int64_t limit) : g_(g), limit_(limit), side_(g.size(), kC) {}

    bool init(const std::vector<std::uint32_t>& cut) {
        const auto removed = mask_of(g_.size(), cut);
        const auto labels = component_labels(g_, &removed);
        std::vector<std::uint32_t> order(labels.sizes.size());
        std::iota(order.begin(), order.end(), 0U);
        std::stable_sort(order.begin(), order.end(),
                         [&](auto a, auto b) { return labels.sizes[a] > labels.sizes[b]; });
        std::vector<std::uint8_t> comp_side(labels.sizes.size(), kA);
        size_[kA] = size_[kB] = 0;
        for (auto c : order) {
            const std::uint8_t s = size_[kA] <= size_[kB] ? kA : kB;
            comp_side[c] = s;
            size_[s] += labels.sizes[c];
        }
        if (size_[kA] > limit_ || size_[kB] > limit_) return false;
        cverts_.clear();
        pos_.assign(g_.size(), kNone);
        for (std::uint32_t v = 0; v < g_.size(); ++v) {
            if (removed[v]) {
                side_[v] = kC;
                add_c(v);
            } else {
                side_[v] = comp_side[labels.label[v]];
            }
        }
        return true;
    }

    void run(std::uint32_t passes) {
        for (std::uint32_t p = 0; p < passes; ++p) {
            if (!pass()) break;
        }
    }

    [[nodiscard]] std::vector<std::uint32_t> separator() const {
        auto c = cverts_;
        std::sort(c.begin(), c.end());
        return c;
    }

private:
    static constexpr std::uint8_t kA = 0;
    static constexpr std::uint8_t kB = 1;
    static constexpr std::uint8_t kC = 2;
    static constexpr std::uint32_t kNone = 0xffffffffU;

    void add_c(std::uint32_t v) {
        pos_[v] = static_cast<std::uint32_t>(cverts_.size());
        cverts_.push_back(v);
    }
    void remove_c(std::uint32_t v) {
        const auto i = pos_[v];
        const auto last = cverts_.back();
        cverts_[i] = last;
        pos_[last] = i;
        cverts_.pop_back();
        pos_[v] = kNone;
    }
    void set_side(std::uint32_t v, std::uint8_t s) {
        log_.emplace_back(v, side_[v]);
        if (side_[v] == kC) remove_c(v);
        else size_[side_[v]] -= 1;
        side_[v] = s;
        if (s == kC) add_c(v);
        else size_[s] += 1;
    }
    void undo_to(std::size_t mark) {
        while (log_.size() > mark) {
            auto [v, s] = log_.back();
            log_.pop_back();
            if (side_[v] == kC) remove_c(v);
            else size_[side_[v]] -= 1;
            side_[v] = s;
            if (s == kC) add_c(v);
            else size_[s] += 1;
        }
    }

    // One pass; true if the separator shrank.
    bool pass() {
        log_.clear();
        locked_.assign(g_.size(), 0);
        const std::size_t start = cverts_.size();
        std::size_t best = start;
        std::size_t best_mark = 0;
        const std::size_t max_moves = std::min<std::size_t>(2 * start + 16, 256);
        for (std::size_t move = 0; move < max_moves; ++move) {
            std::int64_t best_gain = std::numeric_limits<std::int64_t>::min();
            std::uint32_t best_v = kNone;
            std::uint8_t best_s = kA;
            for (auto v : cverts_) {
                if (locked_[v]) continue;
                for (std::uint8_t s : {kA, kB}) {
                    if (size_[s] + 1 > limit_) continue;
                    const std::uint8_t other = s == kA ? kB : kA;
                    std::int64_t pulled = 0;
                    for (auto w : g_.neighbors(v)) pulled += side_[w] == other;
                    const std::int64_t gain = 1 - pulled;
                    if (gain > best_gain || (gain == best_gain && (v < best_v || (v == best_v && s < best_s)))) {
                        best_gain = gain;
                        best_v = v;
                        best_s = s;
                    }
                }
            }
            if (best_v == kNone) break;
            const std::uint8_t other = best_s == kA ? kB : kA;
            set_side(best_v, best_s);
            locked_[best_v] = 1;
            for (auto w : g_.neighbors(best_v)) {
                if (side_[w] == other) set_side(w, kC);
            }
            if (cverts_.size() < best) {
                best = cverts_.size();
                best_mark = log_.size();
            }
        }
        undo_to(best_mark);
        return best < start;
    }

    const Csr& g_;
    std::int64_t limit_;
    std::vector<std::uint8_t> side_;
    std::vector<std::uint32_t> cverts_;
    std::vector<std::uint32_t> pos_;
    std::vector<char> locked_;
    std::vector<std::pair<std::uint32_t, std::uint8_t>> log_;
    std::int64_t size_[2] = {0, 0};
};

std::uint32_t farthest(const Csr& g, std::uint32_t start, std::uint32_t* dist_out = nullptr) {
    const std::uint32_t src[] = {start};
    const auto dist = bfs_distances(g, src);
    std::uint32_t best = start;
    std::uint32_t bd = 0;
    for (std::uint32_t v = 0; v < g.size(); ++v) {
        if (dist[v] != kUnreached && dist[v] > bd) {
            bd = dist[v];
            best = v;
        }
    }
    if (dist_out) *dist_out = bd;
    return best;
}

}  // namespace

std::uint32_t diameter_estimate(const Csr& g, std::uint32_t start) {
    if (g.size() == 0) return 0;
    const auto a = farthest(g, start);
    std::uint32_t d = 0;
    farthest(g, a, &d);
    return d;
}

CutReport heuristic_cut(const Csr& g, const Delta& delta, const HeuristicOptions& opts, const std::string& subject) {
    const std::uint32_t n = g.size();
    std::vector<std::uint32_t> all(n);
    std::iota(all.begin(), all.end(), 0U);
    if (opts.budget == 0 || n == 0) {
        auto r = make_cut_report(g, delta, all, Bound::upper, CutMethod::none, subject);
        r.note = "no search";
        return r;
    }
    const std::int64_t limit = max_component(g, delta);
    if (is_delta_cut(g, delta, {})) return make_cut_report(g, delta, {}, Bound::upper, CutMethod::layer_sweep, subject);

    std::vector<std::uint32_t> seeds{farthest(g, 0)};
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<std::uint32_t> pick(0, n - 1);
    while (seeds.size() < opts.budget) seeds.push_back(pick(rng));

    std::vector<std::uint32_t> best = all;
    CutMethod method = CutMethod::none;
    for (auto s : seeds) {
        auto level = sweep(g, delta, limit, s);
        if (!level) continue;
        auto shrunk = shrink(g, limit, std::move(*level));
        if (shrunk.size() < best.size()) {
            best = std::move(shrunk);
            method = CutMethod::layer_sweep;
        }
    }
    if (opts.local_search_passes > 0 && method != CutMethod::none) {
        SeparatorSearch ls(g, limit);
        if (ls.init(best)) {
            ls.run(opts.local_search_passes);
            auto improved = shrink(g, limit, ls.separator());
            if (improved.size() < best.size() && is_delta_cut(g, delta, improved)) {
                best = std::move(improved);
                method = CutMethod::local_search;
            }
        }
    }
    if (!is_delta_cut(g, delta, best)) throw Error("heuristic produced an invalid cut");
    auto r = make_cut_report(g, delta, std::move(best), Bound::upper, method, subject);
    if (method == CutMethod::none) r.note = "no valid level set; trivial cut";
    return r;
}

CutReport heuristic_cut(const CayleySubgraph& s, const Delta& delta, const HeuristicOptions& opts) {
    return heuristic_cut(s.graph(), delta, opts, s.tag().str());
}

// ── far-pair flows ──────────────────────────────────────────────────────

namespace {

struct PairResult {
    bool skipped = true;
    std::uint32_t kappa = 0;
};

std::vector<std::uint32_t> terminal_set(const Csr& g, std::uint32_t v, std::uint32_t depth) {
    if (depth == 0) return {v};
    const std::uint32_t src[] = {v};
    const auto dist = bfs_distances(g, src, nullptr, depth);
    std::vector<std::uint32_t> out;
    for (std::uint32_t w = 0; w < g.size(); ++w) {
        if (dist[w] != kUnreached) out.push_back(w);
    }
    return out;
}

// Pairs above the running minimum only need to be shown larger than it: the
// flow stops at best + 1, so every pair attaining the minimum still reports it
// exactly and the chosen pair does not depend on scheduling.
void lower_to(std::atomic<std::uint32_t>& best, std::uint32_t value) {
    auto cur = best.load();
    while (value < cur && !best.compare_exchange_weak(cur, value)) {
    }
}

std::uint32_t flow_limit(const std::atomic<std::uint32_t>& best) {
    const auto b = best.load();
    return b == 0xffffffffU ? b : b + 1;
}

PairResult evaluate_pair(const Csr& g, VertexFlow& flow, std::uint32_t x, std::uint32_t y, std::uint32_t depth,
                         std::atomic<std::uint32_t>& best) {
    const auto a = terminal_set(g, x, depth);
    const auto b = terminal_set(g, y, depth);
    std::vector<char> in_a(g.size(), 0);
    for (auto v : a) in_a[v] = 1;
    for (auto v : b) {
        if (in_a[v]) return {};
        for (auto w : g.neighbors(v)) {
            if (in_a[w]) return {};
        }
    }
    const auto k = flow.max_flow(a, b, flow_limit(best));
    lower_to(best, k);
    return {false, k};
}

}  // namespace

CutReport flow_far_pair_lower_bound(const Csr& g, const Delta& delta, const FarPairPolicy& policy,
                                    const std::string& subject) {
    const std::uint32_t n = g.size();
    if (n == 0 || component_labels(g).sizes.size() != 1) throw Error("far-pair bound needs a connected graph");
    CutReport r;
    r.subject = subject;
    r.subject_size = n;
    r.delta = delta;
    r.bound = Bound::lower;
    r.method = CutMethod::flow_far_pairs;

    FlowCertificate cert;
    cert.depth = policy.depth;
    cert.diameter_estimate = diameter_estimate(g);
    const auto need = std::max<std::uint32_t>(
        2, static_cast<std::uint32_t>(std::ceil(policy.rho * static_cast<double>(cert.diameter_estimate))));

    // Pair sampling is serial so the pair list depends only on the seed.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    std::vector<std::uint32_t> pair_dist;
    std::mt19937_64 rng(policy.seed);
    std::uniform_int_distribution<std::uint32_t> pick(0, n - 1);
    for (std::uint32_t attempt = 0; attempt < 4 * policy.max_pairs && pairs.size() < policy.max_pairs; ++attempt) {
        const std::uint32_t x = pick(rng);
        const std::uint32_t src[] = {x};
        const auto dist = bfs_distances(g, src);
        std::vector<std::uint32_t> far;
        for (std::uint32_t v = 0; v < n; ++v) {
            if (dist[v] != kUnreached && dist[v] >= need) far.push_back(v);
        }
        if (far.empty()) continue;
        std::uniform_int_distribution<std::size_t> pf(0, far.size() - 1);
        const auto y = far[pf(rng)];
        pairs.emplace_back(x, y);
        pair_dist.push_back(dist[y]);
    }

    std::vector<PairResult> results(pairs.size());
    std::atomic<std::uint32_t> best{0xffffffffU};
    const auto count = static_cast<std::int64_t>(pairs.size());
    if (policy.exec == kernels::Exec::serial) {
        VertexFlow flow(g);
        for (std::int64_t i = 0; i < count; ++i) {
            const auto [x, y] = pairs[static_cast<std::size_t>(i)];
            results[static_cast<std::size_t>(i)] = evaluate_pair(g, flow, x, y, policy.depth, best);
        }
    } else {
#pragma omp parallel
        {
            VertexFlow flow(g);
#pragma omp for schedule(dynamic, 1)
            for (std::int64_t i = 0; i < count; ++i) {
                const auto [x, y] = pairs[static_cast<std::size_t>(i)];
                results[static_cast<std::size_t>(i)] = evaluate_pair(g, flow, x, y, policy.depth, best);
            }
        }
    }

    std::optional<std::size_t> arg;
    for (std::size_t i = 0; i < results.size(); ++i) {
        if (results[i].skipped) {
            ++cert.pairs_skipped;
            continue;
        }
        ++cert.pairs_tested;
        if (!arg || results[i].kappa < results[*arg].kappa) arg = i;
    }
    if (arg) {
        cert.x = pairs[*arg].first;
        cert.y = pairs[*arg].second;
        cert.distance = pair_dist[*arg];
        cert.kappa = cert.paths = results[*arg].kappa;
        r.value = cert.kappa;
    } else {
        r.value = 0;
        r.note = pairs.empty() ? "no far pair" : "every far pair skipped (terminal balls touch)";
    }
    r.certificate = cert;
    return r;
}

CutReport flow_far_pair_lower_bound(const CayleySubgraph& s, const Delta& delta, const FarPairPolicy& policy) {
    return flow_far_pair_lower_bound(s.graph(), delta, policy, s.tag().str());
}

// ── partition lemma ─────────────────────────────────────────────────────

PartitionCheck verify_partition_lemma(const Csr& g, const CutReport& cut) {
    if (cut.bound == Bound::lower) throw Error("partition check needs a cut, not a lower bound");
    if (cut.subject_size != g.size() || !is_delta_cut(g, cut.delta, cut.cut_set)) {
        throw Error("not a valid delta-cut of the given graph");
    }
    PartitionCheck pc;
    const auto p = cut.delta.num;
    const auto q = cut.delta.den;
    pc.delta_prime = Delta(std::min(p, q - p), 4 * q);
    const auto total = static_cast<std::int64_t>(g.size());
    // size >= δ'|S|
    const auto reaches = [&](std::int64_t size) { return size * pc.delta_prime.den >= pc.delta_prime.num * total; };
    pc.large_cut = reaches(static_cast<std::int64_t>(cut.cut_set.size()));
    std::int64_t a = 0;
    std::int64_t rest = 0;
    bool filled = false;
    for (auto s : component_census(g, cut.cut_set)) {
        if (!filled) {
            a += s;
            filled = reaches(a);
        } else {
            rest += s;
        }
    }
    pc.side_a = static_cast<std::uint64_t>(a);
    pc.side_b = static_cast<std::uint64_t>(rest);
    pc.ok = pc.large_cut || (filled && reaches(rest));
    return pc;
}

// ── experiments ─────────────────────────────────────────────────────────

SeriesFit fit_bound_series(const std::vector<double>& n, const std::vector<double>& bound) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t i = 0; i < n.size(); ++i) {
        if (bound[i] <= 0) continue;
        xs.push_back(n[i]);
        ys.push_back(std::log(bound[i]));
    }
    SeriesFit s;
    s.fit = fit_line(xs, ys);
    if (xs.size() < 3) {
        s.flag = kFlagInsufficient;
    } else if (s.fit.slope > 0 && !s.fit.slope_indistinguishable_from_zero()) {
        s.flag = kFlagExponential;
    } else {
        s.flag = kFlagSubexponential;
    }
    return s;
}

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

bool is_cap_error(const Error& e) { return std::string(e.what()).rfind("memory cap exceeded", 0) == 0; }

}  // namespace

ExperimentTable cut_growth_experiment(const GraphProduct& gp, int t, const Delta& delta, int n_lo, int n_hi,
                                      const ExperimentOptions& opts) {
    if (t < 1) throw Error("thickening t must be >= 1");
    ExperimentTable table;
    table.delta = delta;
    table.seed = opts.heuristic.seed;
    if (n_lo <= t) {
        table.notes.push_back("n raised from " + std::to_string(n_lo) + " to " + std::to_string(t + 1) +
                              " (thickened spheres need n > t)");
        n_lo = t + 1;
    }
    for (int n = n_lo; n <= n_hi; ++n) {
        ExperimentRow row;
        row.n = n;
        row.t = t;
        const auto t0 = std::chrono::steady_clock::now();
        std::optional<CayleySubgraph> s;
        try {
            s.emplace(thickened_sphere(gp, n, t, opts.cayley));
        } catch (const Error& e) {
            if (!is_cap_error(e)) throw;
            row.truncated = true;
            table.notes.push_back("n=" + std::to_string(n) + ": " + e.what());
            table.rows.push_back(row);
            continue;
        }
        row.size = s->size();
        row.connected = s->connected();
        HeuristicOptions h = opts.heuristic;
        const auto up = heuristic_cut(*s, delta, h);
        row.upper = up.value;
        row.partition_lemma_ok = verify_partition_lemma(s->graph(), up).ok;
        if (s->size() <= kExactThreshold) {
            const auto ex = exact_min_cut(*s, delta);
            row.exact = ex.value;
            row.partition_lemma_ok = row.partition_lemma_ok && verify_partition_lemma(s->graph(), ex).ok;
        }
        if (row.connected) {
            FarPairPolicy p = opts.pairs;
            if (opts.deep_pairs) p.depth = static_cast<std::uint32_t>(n / 2);
            row.lower = flow_far_pair_lower_bound(*s, delta, p).value;
        } else {
            table.notes.push_back("n=" + std::to_string(n) + ": subject disconnected, no flow bound");
        }
        if (row.lower && row.upper && *row.lower > *row.upper) {
            table.notes.push_back("n=" + std::to_string(n) + ": far-pair bound exceeds the heuristic cut");
        }
        if (opts.timing) row.runtime_ms = elapsed_ms(t0);
        table.rows.push_back(row);
    }
    std::vector<double> nu;
    std::vector<double> up;
    std::vector<double> nl;
    std::vector<double> lo;
    for (const auto& r : table.rows) {
        if (r.upper) {
            nu.push_back(r.n);
            up.push_back(*r.upper);
        }
        if (r.lower) {
            nl.push_back(r.n);
            lo.push_back(*r.lower);
        }
    }
    table.upper = fit_bound_series(nu, up);
    table.lower = fit_bound_series(nl, lo);
    return table;
}

namespace {

std::string opt_str(const std::optional<std::uint32_t>& v, const char* missing) {
    return v ? std::to_string(*v) : std::string(missing);
}

}  // namespace

std::string experiment_csv(const ExperimentTable& table) {
    std::ostringstream os;
    os << "n,t,delta,size_subject,upper,lower,exact,lambda_fit_flag,runtime_ms,seed\n";
    const std::string flag = "upper=" + table.upper.flag + ";lower=" + table.lower.flag;
    for (const auto& r : table.rows) {
        os << r.n << ',' << r.t << ',' << table.delta.str() << ',';
        if (r.truncated) {
            os << "NA,NA,NA,NA,truncated,NA," << table.seed << '\n';
            continue;
        }
        os << r.size << ',' << opt_str(r.upper, "NA") << ',' << opt_str(r.lower, "NA") << ','
           << opt_str(r.exact, "NA") << ',' << flag << ',';
        if (r.runtime_ms > 0) {
            os << static_cast<long long>(std::llround(r.runtime_ms));
        } else {
            os << "NA";
        }
        os << ',' << table.seed << '\n';
    }
    return os.str();
}

std::string experiment_dat(const ExperimentTable& table) {
    std::ostringstream os;
    os << "# delta " << table.delta.str() << " seed " << table.seed << '\n';
    os << "# lambda_upper " << table.upper.fit.slope << " r2 " << table.upper.fit.r2 << " flag " << table.upper.flag
       << '\n';
    os << "# lambda_lower " << table.lower.fit.slope << " r2 " << table.lower.fit.r2 << " flag " << table.lower.flag
       << '\n';
    for (const auto& note : table.notes) os << "# note: " << note << '\n';
    os << "# n size upper lower exact\n";
    for (const auto& r : table.rows) {
        if (r.truncated) continue;
        os << r.n << ' ' << r.size << ' ' << opt_str(r.upper, "NaN") << ' ' << opt_str(r.lower, "NaN") << ' '
           << opt_str(r.exact, "NaN") << '\n';
    }
    return os.str();
}

SepProfile sep_profile_estimate(const GraphProduct& gp, int n_max, int t, const ExperimentOptions& opts) {
    SepProfile prof;
    prof.seed = opts.heuristic.seed;
    const Delta half(1, 2);
    auto measure = [&](const CayleySubgraph& s, const char* kind, int n) {
        const auto t0 = std::chrono::steady_clock::now();
        SepRow row;
        row.kind = kind;
        row.n = n;
        row.t = s.tag().t;
        row.size = s.size();
        if (s.size() <= kExactThreshold) {
            const auto ex = exact_min_cut(s, half);
            row.exact = ex.value;
            row.upper = row.lower = ex.value;
        } else {
            row.upper = heuristic_cut(s, half, opts.heuristic).value;
            FarPairPolicy p = opts.pairs;
            if (opts.deep_pairs) p.depth = static_cast<std::uint32_t>(n / 2);
            row.lower = s.connected() ? flow_far_pair_lower_bound(s, half, p).value : 0;
        }
        if (opts.timing) row.runtime_ms = elapsed_ms(t0);
        prof.rows.push_back(row);
    };
    std::optional<BallLayers> layers;
    int reach = n_max + t;
    while (!layers) {
        try {
            layers.emplace(gp, reach, opts.cayley);
        } catch (const Error& e) {
            if (!is_cap_error(e) || reach == 0) throw;
            prof.notes.push_back(std::string("radius ") + std::to_string(reach) + ": " + e.what());
            --reach;
        }
    }
    const auto finite_at = layers->stabilized_at();
    for (int n = 1; n <= std::min(n_max, reach); ++n) {
        if (finite_at && n >= *finite_at) {
            prof.notes.push_back("finite group of order " + std::to_string(layers->ball_size(*finite_at)) +
                                 "; table stops at the whole group");
            break;
        }
        measure(ball(gp, *layers, n, opts.cayley.exec), "ball", n);
        if (n > t && n + t <= reach) measure(thickened_sphere(gp, *layers, n, t, opts.cayley.exec), "thickened_sphere", n);
    }
    std::vector<double> lx;
    std::vector<double> lu;
    std::vector<double> lx2;
    std::vector<double> ll;
    for (const auto& r : prof.rows) {
        if (r.upper > 0) {
            lx.push_back(std::log(static_cast<double>(r.size)));
            lu.push_back(std::log(static_cast<double>(r.upper)));
        }
        if (r.lower > 0) {
            lx2.push_back(std::log(static_cast<double>(r.size)));
            ll.push_back(std::log(static_cast<double>(r.lower)));
        }
    }
    prof.upper_fit = fit_line(lx, lu);
    prof.lower_fit = fit_line(lx2, ll);
    prof.epsilon_hat = prof.lower_fit.slope;
    return prof;
}

std::string sep_profile_csv(const SepProfile& p, bool timing) {
    std::ostringstream os;
    os << "kind,n,t,size_subject,upper,lower,exact,runtime_ms,seed\n";
    for (const auto& r : p.rows) {
        os << r.kind << ',' << r.n << ',' << r.t << ',' << r.size << ',' << r.upper << ',' << r.lower << ','
           << opt_str(r.exact, "NA") << ',';
        if (timing) {
            os << static_cast<long long>(std::llround(r.runtime_ms));
        } else {
            os << "NA";
        }
        os << ',' << p.seed << '\n';
    }
    return os.str();
}

}  // namespace coarsesep
