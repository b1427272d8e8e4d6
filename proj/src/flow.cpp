#include "coarsesep/flow.hpp"

#include <algorithm>

#include "coarsesep/error.hpp"

namespace coarsesep {

namespace {

constexpr std::uint32_t kNoLevel = 0xffffffffU;
constexpr std::uint8_t kPlain = 0;
constexpr std::uint8_t kSource = 1;
constexpr std::uint8_t kSink = 2;

}  // namespace

VertexFlow::VertexFlow(const Csr& g) : g_(&g) {
    const std::uint32_t n = g.size();
    head_.resize(2 * static_cast<std::size_t>(n) + 1);
    std::size_t arcs = 0;
    for (std::uint32_t v = 0; v < n; ++v) {
        head_[2 * v] = static_cast<std::uint32_t>(arcs);
        arcs += g.degree(v) + 1;
        head_[2 * v + 1] = static_cast<std::uint32_t>(arcs);
        arcs += g.degree(v) + 1;
    }
    head_[2 * static_cast<std::size_t>(n)] = static_cast<std::uint32_t>(arcs);
    to_.resize(arcs);
    base_cap_.assign(arcs, 0);
    // Slot 0 of each node is the internal arc; slot 1+i follows neighbour i.
    for (std::uint32_t v = 0; v < n; ++v) {
        const auto in = head_[2 * v];
        const auto out = head_[2 * v + 1];
        to_[in] = 2 * v + 1;
        base_cap_[in] = 1;
        to_[out] = 2 * v;
        const auto nb = g.neighbors(v);
        for (std::size_t i = 0; i < nb.size(); ++i) {
            to_[in + 1 + i] = 2 * nb[i] + 1;    // residual of nb[i]_out -> v_in
            to_[out + 1 + i] = 2 * nb[i];       // v_out -> nb[i]_in
            base_cap_[out + 1 + i] = 1;
        }
    }
    cap_ = base_cap_;
    level_.assign(2 * static_cast<std::size_t>(n), kNoLevel);
    iter_.assign(2 * static_cast<std::size_t>(n), 0);
    role_.assign(n, kPlain);
}

namespace {

// Reverse arc of arc `a` leaving node `from`.
std::uint32_t reverse_arc(const Csr& g, const std::vector<std::uint32_t>& head, std::uint32_t from, std::uint32_t a) {
    const std::uint32_t v = from / 2;
    const std::uint32_t slot = a - head[from];
    if (slot == 0) return head[from ^ 1U];
    const std::uint32_t u = g.neighbors(v)[slot - 1];
    const auto nb = g.neighbors(u);
    const auto j = static_cast<std::uint32_t>(std::lower_bound(nb.begin(), nb.end(), v) - nb.begin());
    // Partner sits on the opposite side (in <-> out) of u.
    return head[2 * u + ((from & 1U) ^ 1U)] + 1 + j;
}

}  // namespace

bool VertexFlow::build_levels() {
    std::fill(level_.begin(), level_.end(), kNoLevel);
    queue_.clear();
    const std::uint32_t n = g_->size();
    for (std::uint32_t v = 0; v < n; ++v) {
        if (role_[v] == kSource) {
            level_[2 * v + 1] = 0;
            queue_.push_back(2 * v + 1);
        }
    }
    std::uint32_t sink_level = kNoLevel;
    for (std::size_t h = 0; h < queue_.size(); ++h) {
        const auto x = queue_[h];
        const auto v = x / 2;
        if (level_[x] >= sink_level) break;  // nodes past the first sink level are never on a shortest path
        if ((x & 1U) == 0 && role_[v] == kSink) {
            sink_level = level_[x];
            continue;
        }
        for (auto a = head_[x]; a < head_[x + 1]; ++a) {
            if (cap_[a] == 0) continue;
            const auto y = to_[a];
            const auto w = y / 2;
            if (level_[y] != kNoLevel) continue;
            if (role_[w] == kSource) continue;                 // sources are one contracted node
            if ((y & 1U) == 1 && role_[w] == kSink) continue;  // flow ends at a sink in-node
            level_[y] = level_[x] + 1;
            queue_.push_back(y);
        }
    }
    return sink_level != kNoLevel;
}

std::uint32_t VertexFlow::blocking_flow(std::uint32_t limit) {
    std::uint32_t pushed = 0;
    std::vector<std::uint32_t> path;   // arcs
    std::vector<std::uint32_t> nodes;  // nodes, nodes[i] is the tail of path[i]
    const std::uint32_t n = g_->size();
    for (std::uint32_t s = 0; s < n && pushed < limit; ++s) {
        if (role_[s] != kSource) continue;
        const std::uint32_t root = 2 * s + 1;
        std::uint32_t x = root;
        while (pushed < limit) {
            if ((x & 1U) == 0 && role_[x / 2] == kSink) {
                for (std::size_t i = 0; i < path.size(); ++i) {
                    cap_[path[i]] -= 1;
                    cap_[reverse_arc(*g_, head_, nodes[i], path[i])] += 1;
                }
                ++pushed;
                path.clear();
                nodes.clear();
                x = root;
                continue;
            }
            bool advanced = false;
            for (; iter_[x] < head_[x + 1]; ++iter_[x]) {
                const auto a = iter_[x];
                const auto y = to_[a];
                if (cap_[a] == 0 || level_[y] != level_[x] + 1) continue;
                path.push_back(a);
                nodes.push_back(x);
                x = y;
                advanced = true;
                break;
            }
            if (advanced) continue;
            level_[x] = kNoLevel;  // dead end
            if (path.empty()) break;
            x = nodes.back();
            path.pop_back();
            nodes.pop_back();
            ++iter_[x];
        }
    }
    return pushed;
}

std::uint32_t VertexFlow::max_flow(std::span<const std::uint32_t> sources, std::span<const std::uint32_t> sinks,
                                   std::uint32_t limit) {
    if (sources.empty() || sinks.empty()) throw Error("flow query needs non-empty terminal sets");
    std::fill(role_.begin(), role_.end(), kPlain);
    for (auto s : sources) role_[s] = kSource;
    for (auto t : sinks) {
        if (role_[t] == kSource) throw Error("flow terminals overlap");
        role_[t] = kSink;
    }
    for (auto s : sources) {
        for (auto w : g_->neighbors(s)) {
            if (role_[w] == kSink) throw Error("flow terminals are adjacent; connectivity is unbounded");
        }
    }
    cap_ = base_cap_;
    std::uint32_t flow = 0;
    while (flow < limit && build_levels()) {
        for (std::size_t x = 0; x < iter_.size(); ++x) iter_[x] = head_[x];
        const auto f = blocking_flow(limit - flow);
        if (f == 0) break;
        flow += f;
    }
    return flow;
}

std::vector<std::uint32_t> VertexFlow::last_min_cut() const {
    const std::uint32_t n = g_->size();
    std::vector<char> seen(2 * static_cast<std::size_t>(n), 0);
    std::vector<std::uint32_t> queue;
    for (std::uint32_t v = 0; v < n; ++v) {
        if (role_[v] == kSource) {
            seen[2 * v + 1] = 1;
            queue.push_back(2 * v + 1);
        }
    }
    for (std::size_t h = 0; h < queue.size(); ++h) {
        const auto x = queue[h];
        if ((x & 1U) == 0 && role_[x / 2] == kSink) continue;
        for (auto a = head_[x]; a < head_[x + 1]; ++a) {
            const auto y = to_[a];
            // Edge arcs count as uncapacitated here so that the cut lands on vertex arcs.
            const bool edge_forward = (x & 1U) == 1 && a != head_[x];
            if ((cap_[a] == 0 && !edge_forward) || seen[y] || role_[y / 2] == kSource) continue;
            seen[y] = 1;
            queue.push_back(y);
        }
    }
    std::vector<std::uint32_t> cut;
    for (std::uint32_t v = 0; v < n; ++v) {
        if (role_[v] == kPlain && seen[2 * v] && !seen[2 * v + 1]) cut.push_back(v);
    }
    return cut;
}

std::uint32_t vertex_connectivity(const Csr& g, std::span<const std::uint32_t> sources,
                                  std::span<const std::uint32_t> sinks) {
    VertexFlow f(g);
    return f.max_flow(sources, sinks);
}

}  // namespace coarsesep
