#include "coarsesep/kernels.hpp"

#include <algorithm>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace coarsesep::kernels {

namespace {

void expand_one(const GraphProduct& gp, const PackedCodec& codec, const PackedWord& key, std::size_t k,
                std::vector<PackedWord>& out) {
    const Word w = codec.decode(key);
    for (Syllable s : gp.generators()) {
        // Only the last Cartier–Foata block can absorb s; anything else grows.
        Word next = gp.right_multiply(w, s);
        if (next.size() == k + 1) out.push_back(codec.encode(next));
    }
}

void sort_unique(std::vector<PackedWord>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

std::vector<PackedWord> next_layer(const GraphProduct& gp, const PackedCodec& codec,
                                   std::span<const PackedWord> layer, std::size_t k, Exec exec) {
    std::vector<PackedWord> out;
    if (exec == Exec::serial) {
        for (const auto& key : layer) expand_one(gp, codec, key, k, out);
        sort_unique(out);
        return out;
    }
    const auto n = static_cast<std::int64_t>(layer.size());
    std::vector<std::vector<PackedWord>> parts(static_cast<std::size_t>(max_threads()));
#pragma omp parallel
    {
#ifdef _OPENMP
        auto& local = parts[static_cast<std::size_t>(omp_get_thread_num())];
#else
        auto& local = parts[0];
#endif
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < n; ++i) expand_one(gp, codec, layer[static_cast<std::size_t>(i)], k, local);
        sort_unique(local);
    }
    std::size_t total = 0;
    for (const auto& p : parts) total += p.size();
    out.reserve(total);
    for (auto& p : parts) {
        out.insert(out.end(), p.begin(), p.end());
        std::vector<PackedWord>().swap(p);
    }
    sort_unique(out);
    return out;
}

std::uint32_t find_key(std::span<const PackedWord> keys, const PackedWord& key) {
    const auto it = std::lower_bound(keys.begin(), keys.end(), key);
    if (it == keys.end() || *it != key) return kNotFound;
    return static_cast<std::uint32_t>(it - keys.begin());
}

Adjacency induced_adjacency(const GraphProduct& gp, const PackedCodec& codec, std::span<const PackedWord> keys,
                            Exec exec) {
    const auto n = static_cast<std::int64_t>(keys.size());
    std::vector<std::vector<std::uint32_t>> rows(keys.size());
    auto fill = [&](std::int64_t i) {
        const Word w = codec.decode(keys[static_cast<std::size_t>(i)]);
        auto& row = rows[static_cast<std::size_t>(i)];
        for (Syllable s : gp.generators()) {
            const Word next = gp.right_multiply(w, s);
            if (next.size() > codec.max_syllables()) continue;
            const auto j = find_key(keys, codec.encode(next));
            if (j != kNotFound) row.push_back(j);
        }
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
    };
    if (exec == Exec::serial) {
        for (std::int64_t i = 0; i < n; ++i) fill(i);
    } else {
#pragma omp parallel for schedule(dynamic, 1024)
        for (std::int64_t i = 0; i < n; ++i) fill(i);
    }
    Adjacency adj;
    adj.offsets.assign(keys.size() + 1, 0);
    for (std::size_t i = 0; i < rows.size(); ++i) adj.offsets[i + 1] = adj.offsets[i] + static_cast<std::uint32_t>(rows[i].size());
    adj.targets.reserve(adj.offsets.back());
    for (auto& row : rows) {
        adj.targets.insert(adj.targets.end(), row.begin(), row.end());
        std::vector<std::uint32_t>().swap(row);
    }
    return adj;
}

std::vector<std::vector<PackedWord>> reference_bfs_layers(const GraphProduct& gp, const PackedCodec& codec,
                                                          std::size_t n) {
    std::set<PackedWord> visited;
    std::vector<std::vector<PackedWord>> layers;
    layers.push_back({codec.encode(gp.identity())});
    visited.insert(layers[0][0]);
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<PackedWord> next;
        for (const auto& key : layers[k]) {
            const Word w = codec.decode(key);
            for (Syllable s : gp.generators()) {
                const PackedWord p = codec.encode(gp.right_multiply(w, s));
                if (visited.insert(p).second) next.push_back(p);
            }
        }
        std::sort(next.begin(), next.end());
        layers.push_back(std::move(next));
    }
    return layers;
}

}  // namespace coarsesep::kernels
