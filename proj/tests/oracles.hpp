// Brute-force reference implementations used by the unit and acceptance tests.
// Everything here is deliberately naive and shares no code with the library
// beyond the plain data types.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <vector>

#include "coarsesep/csr.hpp"
#include "coarsesep/rational.hpp"
#include "coarsesep/word.hpp"

namespace oracle {

using coarsesep::Csr;
using coarsesep::Delta;
using coarsesep::LabeledGraph;
using coarsesep::Syllable;

using Raw = std::vector<Syllable>;

// Word problem by rewriting: merge two syllables of the same vertex whenever
// everything between them commutes with that vertex, drop identities, repeat.
inline Raw naive_reduce(const LabeledGraph& g, Raw w) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < w.size() && !changed; ++i) {
            if (w[i].elem == 0) {
                w.erase(w.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
            for (std::size_t j = i + 1; j < w.size(); ++j) {
                if (w[j].vertex == w[i].vertex) {
                    const auto& grp = g.label(w[i].vertex);
                    w[i].elem = static_cast<std::uint8_t>(grp.mul(w[i].elem, w[j].elem));
                    w.erase(w.begin() + static_cast<std::ptrdiff_t>(j));
                    changed = true;
                    break;
                }
                if (!g.adjacent(w[i].vertex, w[j].vertex)) break;
            }
        }
    }
    return w;
}

// Smallest shuffle-equivalent arrangement of a reduced word, by exhausting
// adjacent swaps of commuting syllables.
inline Raw shuffle_canonical(const LabeledGraph& g, const Raw& w) {
    std::set<Raw> seen{w};
    std::queue<Raw> q;
    q.push(w);
    while (!q.empty()) {
        Raw cur = q.front();
        q.pop();
        for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
            if (!g.adjacent(cur[i].vertex, cur[i + 1].vertex)) continue;
            Raw nxt = cur;
            std::swap(nxt[i], nxt[i + 1]);
            if (seen.insert(nxt).second) q.push(nxt);
        }
    }
    return *seen.begin();
}

inline Raw normal(const LabeledGraph& g, const Raw& w) { return shuffle_canonical(g, naive_reduce(g, w)); }

inline Raw concat(Raw a, const Raw& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

inline std::vector<Syllable> generators(const LabeledGraph& g) {
    std::vector<Syllable> gens;
    for (int v = 0; v < g.size(); ++v) {
        for (int a = 1; a < *g.label(v).order(); ++a) {
            gens.push_back({static_cast<std::uint8_t>(v), static_cast<std::uint8_t>(a)});
        }
    }
    return gens;
}

// Sphere sizes |S_0..S_n| by BFS over canonical words.
inline std::vector<std::size_t> sphere_sizes(const LabeledGraph& g, int n) {
    const auto gens = generators(g);
    std::set<Raw> seen{Raw{}};
    std::vector<Raw> layer{Raw{}};
    std::vector<std::size_t> out{1};
    for (int k = 1; k <= n; ++k) {
        std::vector<Raw> next;
        for (const auto& w : layer) {
            for (auto s : gens) {
                auto x = normal(g, concat(w, {s}));
                if (seen.insert(x).second) next.push_back(x);
            }
        }
        out.push_back(next.size());
        layer = std::move(next);
    }
    return out;
}

// Closure of the generators under multiplication.
inline std::set<Raw> closure(const LabeledGraph& g, std::size_t limit = 100000) {
    const auto gens = generators(g);
    std::set<Raw> seen{Raw{}};
    std::vector<Raw> todo{Raw{}};
    while (!todo.empty() && seen.size() <= limit) {
        Raw w = todo.back();
        todo.pop_back();
        for (auto s : gens) {
            auto x = normal(g, concat(w, {s}));
            if (seen.insert(x).second) todo.push_back(x);
        }
    }
    return seen;
}

// ── graphs ──────────────────────────────────────────────────────────────

inline std::vector<std::uint32_t> census(const Csr& g, std::uint32_t removed_mask) {
    const std::uint32_t n = g.size();
    std::vector<char> seen(n, 0);
    std::vector<std::uint32_t> sizes;
    for (std::uint32_t s = 0; s < n; ++s) {
        if (seen[s] || ((removed_mask >> s) & 1U)) continue;
        std::uint32_t size = 0;
        std::vector<std::uint32_t> stack{s};
        seen[s] = 1;
        while (!stack.empty()) {
            const auto v = stack.back();
            stack.pop_back();
            ++size;
            for (auto w : g.neighbors(v)) {
                if (!seen[w] && !((removed_mask >> w) & 1U)) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
            }
        }
        sizes.push_back(size);
    }
    std::sort(sizes.rbegin(), sizes.rend());
    return sizes;
}

// Minimum δ-cut size by enumerating every vertex subset.
inline std::uint32_t min_delta_cut(const Csr& g, const Delta& delta) {
    const std::uint32_t n = g.size();
    std::uint32_t best = n;
    for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
        const auto k = static_cast<std::uint32_t>(__builtin_popcount(mask));
        if (k >= best) continue;
        const auto c = census(g, mask);
        if (c.empty() || delta.admits(c.front(), n)) best = k;
    }
    return best;
}

// Minimum number of non-terminal vertices separating two terminal sets.
inline std::uint32_t min_vertex_cut(const Csr& g, std::uint32_t sources, std::uint32_t sinks) {
    const std::uint32_t n = g.size();
    const std::uint32_t free = ((1U << n) - 1) & ~sources & ~sinks;
    auto separated = [&](std::uint32_t removed) {
        std::vector<char> seen(n, 0);
        std::vector<std::uint32_t> stack;
        for (std::uint32_t v = 0; v < n; ++v) {
            if ((sources >> v) & 1U) {
                seen[v] = 1;
                stack.push_back(v);
            }
        }
        while (!stack.empty()) {
            const auto v = stack.back();
            stack.pop_back();
            if ((sinks >> v) & 1U) return false;
            for (auto w : g.neighbors(v)) {
                if (!seen[w] && !((removed >> w) & 1U)) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
            }
        }
        return true;
    };
    std::uint32_t best = n;
    for (std::uint32_t sub = free;; sub = (sub - 1) & free) {
        const auto k = static_cast<std::uint32_t>(__builtin_popcount(sub));
        if (k < best && separated(sub)) best = k;
        if (sub == 0) break;
    }
    return best;
}

inline Csr random_graph(std::mt19937_64& rng, std::uint32_t n, double p) {
    std::bernoulli_distribution coin(p);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t u = 0; u < n; ++u) {
        for (std::uint32_t v = u + 1; v < n; ++v) {
            if (coin(rng)) edges.emplace_back(u, v);
        }
    }
    return Csr::from_edges(n, edges);
}

}  // namespace oracle
