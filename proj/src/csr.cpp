#include "coarsesep/csr.hpp"

#include <algorithm>

namespace coarsesep {

Csr Csr::from_edges(std::uint32_t n, std::vector<std::pair<std::uint32_t, std::uint32_t>> edges) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs;
    arcs.reserve(edges.size() * 2);
    for (auto [u, v] : edges) {
        if (u == v) continue;
        arcs.emplace_back(u, v);
        arcs.emplace_back(v, u);
    }
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
    std::vector<std::uint32_t> offsets(n + 1, 0);
    std::vector<std::uint32_t> targets;
    targets.reserve(arcs.size());
    for (auto [u, v] : arcs) {
        ++offsets[u + 1];
        targets.push_back(v);
    }
    for (std::uint32_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
    return {std::move(offsets), std::move(targets)};
}

bool Csr::adjacent(std::uint32_t u, std::uint32_t v) const {
    const auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<std::uint32_t> bfs_distances(const Csr& g, std::span<const std::uint32_t> sources,
                                         const std::vector<char>* removed, std::uint32_t max_depth) {
    std::vector<std::uint32_t> dist(g.size(), kUnreached);
    std::vector<std::uint32_t> queue;
    queue.reserve(g.size());
    for (auto s : sources) {
        if (removed && (*removed)[s]) continue;
        if (dist[s] == kUnreached) {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const auto v = queue[head];
        if (dist[v] >= max_depth) continue;
        for (auto w : g.neighbors(v)) {
            if (dist[w] != kUnreached || (removed && (*removed)[w])) continue;
            dist[w] = dist[v] + 1;
            queue.push_back(w);
        }
    }
    return dist;
}

ComponentLabels component_labels(const Csr& g, const std::vector<char>* removed) {
    ComponentLabels out;
    out.label.assign(g.size(), kUnreached);
    std::vector<std::uint32_t> stack;
    for (std::uint32_t s = 0; s < g.size(); ++s) {
        if (out.label[s] != kUnreached || (removed && (*removed)[s])) continue;
        const auto id = static_cast<std::uint32_t>(out.sizes.size());
        std::uint32_t count = 0;
        out.label[s] = id;
        stack.push_back(s);
        while (!stack.empty()) {
            const auto v = stack.back();
            stack.pop_back();
            ++count;
            for (auto w : g.neighbors(v)) {
                if (out.label[w] != kUnreached || (removed && (*removed)[w])) continue;
                out.label[w] = id;
                stack.push_back(w);
            }
        }
        out.sizes.push_back(count);
    }
    return out;
}

Csr induced_subgraph(const Csr& g, const std::vector<char>& keep) {
    std::vector<std::uint32_t> remap(g.size(), kUnreached);
    std::uint32_t n = 0;
    for (std::uint32_t v = 0; v < g.size(); ++v) {
        if (keep[v]) remap[v] = n++;
    }
    std::vector<std::uint32_t> offsets{0};
    std::vector<std::uint32_t> targets;
    offsets.reserve(n + 1);
    for (std::uint32_t v = 0; v < g.size(); ++v) {
        if (!keep[v]) continue;
        for (auto w : g.neighbors(v)) {
            if (remap[w] != kUnreached) targets.push_back(remap[w]);
        }
        offsets.push_back(static_cast<std::uint32_t>(targets.size()));
    }
    return {std::move(offsets), std::move(targets)};
}

Csr path_csr(std::uint32_t n) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> e;
    for (std::uint32_t i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return Csr::from_edges(n, std::move(e));
}

Csr cycle_csr(std::uint32_t n) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> e;
    for (std::uint32_t i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return Csr::from_edges(n, std::move(e));
}

Csr complete_csr(std::uint32_t n) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> e;
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = i + 1; j < n; ++j) e.emplace_back(i, j);
    }
    return Csr::from_edges(n, std::move(e));
}

}  // namespace coarsesep
