#include "coarsesep/cayley.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "coarsesep/error.hpp"

namespace coarsesep {

namespace {

void require_concrete(const GraphProduct& gp) {
    if (!gp.graph().all_concrete()) throw Error("Cayley enumeration needs concrete vertex groups");
}

[[noreturn]] void cap_exceeded(int k, std::size_t projected, std::size_t cap) {
    throw Error("memory cap exceeded: |B_" + std::to_string(k) + "| projected at " + std::to_string(projected) +
                " elements, cap " + std::to_string(cap));
}

Csr to_csr(kernels::Adjacency adj) { return {std::move(adj.offsets), std::move(adj.targets)}; }

std::vector<PackedWord> concat_layers(const BallLayers& layers, int lo, int hi) {
    std::vector<PackedWord> keys;
    std::size_t total = 0;
    for (int k = std::max(lo, 0); k <= hi; ++k) total += layers.layer(k).size();
    keys.reserve(total);
    for (int k = std::max(lo, 0); k <= hi; ++k) keys.insert(keys.end(), layers.layer(k).begin(), layers.layer(k).end());
    std::sort(keys.begin(), keys.end());
    return keys;
}

}  // namespace

// ── BallLayers ──────────────────────────────────────────────────────────

BallLayers::BallLayers(const GraphProduct& gp, int n, const CayleyOptions& opts) : codec_((require_concrete(gp), gp)) {
    if (n < 0) throw Error("radius must be non-negative");
    layers_.push_back({codec_.encode(gp.identity())});
    std::size_t ball = 1;
    for (int k = 0; k < n; ++k) {
        const auto& cur = layers_.back();
        if (cur.empty()) {
            layers_.emplace_back();
            continue;
        }
        if (static_cast<std::size_t>(k + 1) > codec_.max_syllables()) {
            throw Error("radius " + std::to_string(k + 1) + " exceeds the packed key capacity");
        }
        // Project with the last observed sphere ratio before allocating.
        const double ratio = k == 0 ? static_cast<double>(gp.generators().size())
                                    : static_cast<double>(cur.size()) /
                                          static_cast<double>(layers_[layers_.size() - 2].size());
        const auto projected = ball + static_cast<std::size_t>(std::ceil(static_cast<double>(cur.size()) * ratio));
        if (projected > opts.mem_cap) cap_exceeded(k + 1, projected, opts.mem_cap);
        auto next = kernels::next_layer(gp, codec_, cur, static_cast<std::size_t>(k), opts.exec);
        ball += next.size();
        if (ball > opts.mem_cap) cap_exceeded(k + 1, ball, opts.mem_cap);
        layers_.push_back(std::move(next));
    }
}

std::size_t BallLayers::ball_size(int k) const {
    std::size_t total = 0;
    for (int i = 0; i <= k; ++i) total += layers_[static_cast<std::size_t>(i)].size();
    return total;
}

std::optional<int> BallLayers::stabilized_at() const {
    for (std::size_t k = 0; k < layers_.size(); ++k) {
        if (layers_[k].empty()) return static_cast<int>(k);
    }
    return std::nullopt;
}

// ── CayleySubgraph ──────────────────────────────────────────────────────

std::string SubgraphTag::str() const {
    switch (kind) {
        case SubgraphKind::ball: return "ball(" + std::to_string(n) + ")";
        case SubgraphKind::sphere: return "sphere(" + std::to_string(n) + ")";
        case SubgraphKind::thickened_sphere:
            return "thickened_sphere(" + std::to_string(n) + "," + std::to_string(t) + ")";
        case SubgraphKind::custom: break;
    }
    return "custom";
}

CayleySubgraph::CayleySubgraph(const GraphProduct& gp, SubgraphTag tag, std::vector<PackedWord> keys,
                               const CayleyOptions& opts)
    : gp_(&gp), tag_(tag), codec_(gp), keys_(std::move(keys)) {
    std::sort(keys_.begin(), keys_.end());
    keys_.erase(std::unique(keys_.begin(), keys_.end()), keys_.end());
    graph_ = to_csr(kernels::induced_adjacency(gp, codec_, keys_, opts.exec));
}

CayleySubgraph::CayleySubgraph(const GraphProduct& gp, SubgraphTag tag, std::vector<PackedWord> keys, Csr graph)
    : gp_(&gp), tag_(tag), codec_(gp), keys_(std::move(keys)), graph_(std::move(graph)) {
    if (graph_.size() != keys_.size()) throw Error("adjacency does not match the element set");
}

std::optional<std::uint32_t> CayleySubgraph::index_of(const Word& w) const {
    const Word nf = w.ambient == gp_->id() ? w : gp_->reduce(w.syllables);
    if (nf.size() > codec_.max_syllables()) return std::nullopt;
    const auto i = kernels::find_key(keys_, codec_.encode(nf));
    if (i == kernels::kNotFound) return std::nullopt;
    return i;
}

bool CayleySubgraph::connected() const { return component_labels(graph_).sizes.size() <= 1; }

CayleySubgraph ball(const GraphProduct& gp, int n, const CayleyOptions& opts) {
    const BallLayers layers(gp, n, opts);
    return {gp, {SubgraphKind::ball, n, 0}, concat_layers(layers, 0, n), opts};
}

CayleySubgraph sphere(const GraphProduct& gp, int n, const CayleyOptions& opts) {
    const BallLayers layers(gp, n, opts);
    return {gp, {SubgraphKind::sphere, n, 0}, layers.layer(n), opts};
}

namespace {

struct Thickened {
    std::vector<PackedWord> keys;
    Csr graph;
};

// Every path of length <= t from S_n stays in the layers n-t..n+t, so a
// multi-source BFS inside their union gives d(., S_n) exactly.
Thickened thicken(const GraphProduct& gp, const BallLayers& layers, int n, int t, kernels::Exec exec) {
    auto band = concat_layers(layers, n - t, n + t);
    const Csr g = to_csr(kernels::induced_adjacency(gp, layers.codec(), band, exec));
    std::vector<std::uint32_t> sources;
    sources.reserve(layers.layer(n).size());
    for (const auto& key : layers.layer(n)) sources.push_back(kernels::find_key(band, key));
    const auto dist = bfs_distances(g, sources, nullptr, static_cast<std::uint32_t>(t));
    std::vector<char> keep(band.size(), 0);
    Thickened out;
    for (std::size_t i = 0; i < band.size(); ++i) {
        if (dist[i] != kUnreached) {
            keep[i] = 1;
            out.keys.push_back(band[i]);
        }
    }
    out.graph = induced_subgraph(g, keep);
    return out;
}

}  // namespace

std::vector<PackedWord> thickened_sphere_keys(const GraphProduct& gp, const BallLayers& layers, int n, int t) {
    if (t < 0 || n < t) throw Error("thickening needs n >= t >= 0");
    if (layers.radius() < n + t) throw Error("ball layers too shallow for the thickened sphere");
    return thicken(gp, layers, n, t, kernels::Exec::parallel).keys;
}

CayleySubgraph thickened_sphere(const GraphProduct& gp, int n, int t, const CayleyOptions& opts) {
    if (t < 1 || n <= t) throw Error("thickened sphere needs t >= 1 and n > t");
    const BallLayers layers(gp, n + t, opts);
    return thickened_sphere(gp, layers, n, t, opts.exec);
}

CayleySubgraph thickened_sphere(const GraphProduct& gp, const BallLayers& layers, int n, int t, kernels::Exec exec) {
    if (t < 1 || n <= t) throw Error("thickened sphere needs t >= 1 and n > t");
    if (layers.radius() < n + t) throw Error("ball layers too shallow for the thickened sphere");
    auto th = thicken(gp, layers, n, t, exec);
    return {gp, {SubgraphKind::thickened_sphere, n, t}, std::move(th.keys), std::move(th.graph)};
}

CayleySubgraph ball(const GraphProduct& gp, const BallLayers& layers, int n, kernels::Exec exec) {
    if (layers.radius() < n) throw Error("ball layers too shallow");
    CayleyOptions opts;
    opts.exec = exec;
    return {gp, {SubgraphKind::ball, n, 0}, concat_layers(layers, 0, n), opts};
}

std::optional<std::uint32_t> intrinsic_distance(const CayleySubgraph& s, const Word& x, const Word& y) {
    const auto ix = s.index_of(x);
    const auto iy = s.index_of(y);
    if (!ix || !iy) throw Error("point not in subgraph " + s.tag().str());
    const std::uint32_t src[] = {*ix};
    const auto dist = bfs_distances(s.graph(), src);
    if (dist[*iy] == kUnreached) return std::nullopt;
    return dist[*iy];
}

std::string subgraph_csv(const CayleySubgraph& s) {
    std::ostringstream os;
    os << "index,word,depth,neighbors\n";
    for (std::uint32_t i = 0; i < s.size(); ++i) {
        os << i << ',' << format_word(s.element(i)) << ',' << s.depth(i) << ',';
        bool first = true;
        for (auto j : s.graph().neighbors(i)) {
            os << (first ? "" : " ") << j;
            first = false;
        }
        os << '\n';
    }
    return os.str();
}

// ── growth ──────────────────────────────────────────────────────────────

GrowthTable growth_table(const GraphProduct& gp, int n_max, int n_min_fit, const CayleyOptions& opts) {
    const BallLayers layers(gp, n_max, opts);
    GrowthTable table;
    std::size_t ball = 0;
    for (int n = 0; n <= n_max; ++n) {
        ball += layers.layer(n).size();
        table.rows.push_back({n, ball, layers.layer(n).size()});
    }
    table.fit_to = n_max;
    table.fit_from = n_min_fit < 0 ? std::max(1, n_max - 6) : std::clamp(n_min_fit, 1, std::max(1, n_max));
    if (layers.stabilized_at()) {
        table.flag = kFlagStabilized;
        table.alpha_hat = 0.0;
        return table;
    }
    std::vector<double> xs;
    std::vector<double> logx;
    std::vector<double> ys;
    for (int n = table.fit_from; n <= table.fit_to; ++n) {
        xs.push_back(n);
        logx.push_back(std::log(static_cast<double>(n)));
        ys.push_back(std::log(static_cast<double>(table.rows[static_cast<std::size_t>(n)].ball)));
    }
    table.exp_fit = fit_line(xs, ys);
    table.poly_fit = fit_line(logx, ys);
    table.alpha_hat = table.exp_fit.slope;
    if (xs.size() < 3) {
        table.flag = kFlagInsufficient;
    } else {
        table.flag = table.exp_fit.r2 >= table.poly_fit.r2 ? kFlagExponential : kFlagSubexponential;
    }
    return table;
}

std::string growth_csv(const GrowthTable& table) {
    std::ostringstream os;
    os << "n,ball,sphere\n";
    for (const auto& r : table.rows) os << r.n << ',' << r.ball << ',' << r.sphere << '\n';
    return os.str();
}

// ── persistence ─────────────────────────────────────────────────────────

bool PersistenceRow::ok() const {
    return intersection * ball_t >= size_x && size_x == size_y && contained_in_ball;
}

std::vector<PersistenceRow> persistence_check(const GraphProduct& gp, int r, int t,
                                              const std::vector<std::pair<Word, Word>>& pairs,
                                              const CayleyOptions& opts) {
    if (t < 1 || r < t) throw Error("persistence check needs r >= t >= 1");
    // Translation invariance: A_x(r) = x.A with A = S_r^{+t}, so
    // |A_x ∩ A_y| = |A ∩ gA| for g = x^{-1} y.
    const BallLayers layers(gp, r + t, opts);
    const auto& codec = layers.codec();
    const auto a = thickened_sphere_keys(gp, layers, r, t);
    const std::size_t ball_t = layers.ball_size(t);
    bool contained = true;
    for (const auto& key : a) contained = contained && codec.length(key) <= static_cast<std::size_t>(4 * r);

    std::vector<PersistenceRow> out;
    for (const auto& [x, y] : pairs) {
        const Word g = gp.multiply(gp.inverse(x), y);
        if (g.size() > 1) {
            throw Error("pair (" + format_word(x) + ", " + format_word(y) + ") is not adjacent in the Cayley graph");
        }
        PersistenceRow row;
        row.x = gp.reduce(x.syllables);
        row.y = gp.reduce(y.syllables);
        row.r = r;
        row.t = t;
        row.size_x = a.size();
        row.ball_t = ball_t;
        row.contained_in_ball = contained;
        std::vector<PackedWord> translated;
        translated.reserve(a.size());
        for (const auto& key : a) {
            const Word w = gp.multiply(g, codec.decode(key));
            if (w.size() <= codec.max_syllables()) translated.push_back(codec.encode(w));
        }
        std::sort(translated.begin(), translated.end());
        translated.erase(std::unique(translated.begin(), translated.end()), translated.end());
        row.size_y = translated.size();
        for (const auto& key : translated) {
            if (std::binary_search(a.begin(), a.end(), key)) ++row.intersection;
        }
        out.push_back(std::move(row));
    }
    return out;
}

std::vector<std::pair<Word, Word>> random_neighbor_pairs(const GraphProduct& gp, std::size_t count, std::uint64_t seed,
                                                         std::size_t max_len) {
    std::mt19937_64 rng(seed);
    const auto& gens = gp.generators();
    std::uniform_int_distribution<std::size_t> pick_len(0, max_len);
    std::uniform_int_distribution<std::size_t> pick_gen(0, gens.size() - 1);
    std::vector<std::pair<Word, Word>> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const Word x = random_word(gp, rng(), pick_len(rng));
        const Word y = gp.right_multiply(x, gens[pick_gen(rng)]);
        out.emplace_back(x, y);
    }
    return out;
}

// ── distortion ──────────────────────────────────────────────────────────

DistortionReport distortion_report(const GraphProduct& gp, int n, int t, const DistortionOptions& dopts,
                                   const CayleyOptions& opts) {
    const CayleySubgraph s = thickened_sphere(gp, n, t, opts);
    DistortionReport rep;
    rep.n = n;
    rep.t = t;
    rep.threshold = dopts.threshold.value_or(9.0 * dopts.delta_hat + 6.0 * t);
    rep.subgraph_connected = s.connected();

    auto measure = [&](std::uint32_t ix, const std::vector<std::uint32_t>& dist, std::uint32_t iy) {
        DistortionRow row;
        row.x = s.element(ix);
        row.y = s.element(iy);
        row.extrinsic = static_cast<std::uint32_t>(gp.multiply(gp.inverse(row.x), row.y).size());
        if (dist[iy] != kUnreached) row.intrinsic = dist[iy];
        rep.rows.push_back(std::move(row));
    };

    for (const auto& [x, y] : dopts.extra_pairs) {
        const auto ix = s.index_of(x);
        const auto iy = s.index_of(y);
        if (!ix || !iy) throw Error("distortion pair not in " + s.tag().str());
        const std::uint32_t src[] = {*ix};
        measure(*ix, bfs_distances(s.graph(), src), *iy);
    }

    std::vector<std::uint32_t> on_sphere;
    for (std::uint32_t i = 0; i < s.size(); ++i) {
        if (s.depth(i) == static_cast<std::uint32_t>(n)) on_sphere.push_back(i);
    }
    std::mt19937_64 rng(dopts.seed);
    if (!on_sphere.empty()) {
        std::uniform_int_distribution<std::size_t> pick(0, on_sphere.size() - 1);
        for (std::size_t a = 0; a < dopts.sources; ++a) {
            const std::uint32_t ix = on_sphere[pick(rng)];
            const std::uint32_t src[] = {ix};
            const auto dist = bfs_distances(s.graph(), src);
            for (std::size_t b = 0; b < dopts.targets_per_source; ++b) measure(ix, dist, on_sphere[pick(rng)]);
        }
    }

    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& row : rep.rows) {
        if (!row.intrinsic || *row.intrinsic == 0 || row.extrinsic < rep.threshold) continue;
        xs.push_back(row.extrinsic);
        ys.push_back(std::log(static_cast<double>(*row.intrinsic)));
    }
    rep.fit = fit_line(xs, ys);
    return rep;
}

}  // namespace coarsesep
