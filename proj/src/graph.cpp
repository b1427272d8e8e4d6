#include "coarsesep/graph.hpp"

#include <algorithm>
#include <sstream>

#include "coarsesep/error.hpp"

namespace coarsesep {

VertexSet VertexSet::of(std::initializer_list<int> ids) {
    VertexSet s;
    for (int v : ids) s.insert(v);
    return s;
}

VertexSet VertexSet::of(const std::vector<int>& ids) {
    VertexSet s;
    for (int v : ids) s.insert(v);
    return s;
}

std::vector<int> VertexSet::to_vector() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for_each([&](int v) { out.push_back(v); });
    return out;
}

std::string VertexSet::str() const {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for_each([&](int v) {
        if (!first) os << ',';
        os << v;
        first = false;
    });
    os << '}';
    return os.str();
}

LabeledGraph::LabeledGraph(std::vector<VertexGroup> labels, std::vector<std::pair<int, int>> edges)
    : labels_(std::move(labels)) {
    const int n = size();
    if (n > VertexSet::kCapacity) {
        throw Error("graph has " + std::to_string(n) + " vertices; at most " + std::to_string(VertexSet::kCapacity) +
                    " are supported");
    }
    adj_.assign(static_cast<std::size_t>(n), VertexSet{});
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n) {
            throw Error("edge (" + std::to_string(u) + "," + std::to_string(v) + ") references a missing vertex");
        }
        if (u == v) throw Error("loop at vertex " + std::to_string(u));
        if (u > v) std::swap(u, v);
        if (adj_[static_cast<std::size_t>(u)].contains(v)) {
            throw Error("multi-edge between " + std::to_string(u) + " and " + std::to_string(v));
        }
        adj_[static_cast<std::size_t>(u)].insert(v);
        adj_[static_cast<std::size_t>(v)].insert(u);
        edges_.emplace_back(u, v);
    }
    std::sort(edges_.begin(), edges_.end());
}

bool LabeledGraph::all_finite() const {
    return std::all_of(labels_.begin(), labels_.end(), [](const VertexGroup& g) { return g.is_finite(); });
}

bool LabeledGraph::all_concrete() const {
    return std::all_of(labels_.begin(), labels_.end(), [](const VertexGroup& g) { return g.is_concrete(); });
}

VertexSet LabeledGraph::finite_vertices() const {
    VertexSet s;
    for (int v = 0; v < size(); ++v) {
        if (label(v).is_finite()) s.insert(v);
    }
    return s;
}

VertexSet LabeledGraph::z2_vertices() const {
    VertexSet s;
    for (int v = 0; v < size(); ++v) {
        if (label(v).is_z2()) s.insert(v);
    }
    return s;
}

LabeledGraph cycle_graph(const std::vector<VertexGroup>& labels) {
    const int n = static_cast<int>(labels.size());
    if (n < 3) throw Error("a cycle needs at least 3 vertices");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    return {labels, edges};
}

LabeledGraph complete_graph(const std::vector<VertexGroup>& labels) {
    const int n = static_cast<int>(labels.size());
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    }
    return {labels, edges};
}

LabeledGraph path_graph(const std::vector<VertexGroup>& labels) {
    const int n = static_cast<int>(labels.size());
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return {labels, edges};
}

LabeledGraph edgeless_graph(const std::vector<VertexGroup>& labels) { return {labels, {}}; }

std::vector<VertexGroup> cyclic_labels(const std::vector<int>& orders) {
    std::vector<VertexGroup> out;
    out.reserve(orders.size());
    for (int k : orders) out.push_back(VertexGroup::cyclic(k));
    return out;
}

bool is_clique(const LabeledGraph& g, VertexSet s) {
    bool ok = true;
    s.for_each([&](int v) {
        if (!(s - VertexSet::of({v})).subset_of(g.neighbors(v))) ok = false;
    });
    return ok;
}

std::vector<VertexSet> components(const LabeledGraph& g, VertexSet s) {
    std::vector<VertexSet> out;
    VertexSet rest = s;
    while (!rest.empty()) {
        VertexSet comp = VertexSet::of({rest.first()});
        VertexSet frontier = comp;
        while (!frontier.empty()) {
            VertexSet next;
            frontier.for_each([&](int v) { next = next | g.neighbors(v); });
            next = (next & rest) - comp;
            comp = comp | next;
            frontier = next;
        }
        out.push_back(comp);
        rest = rest - comp;
    }
    return out;
}

bool is_connected(const LabeledGraph& g, VertexSet s) { return components(g, s).size() <= 1; }

bool is_connected(const LabeledGraph& g) { return is_connected(g, g.all()); }

std::optional<std::vector<int>> find_induced_square(const LabeledGraph& g) {
    // An induced square a-b-c-d: a,c non-adjacent with two non-adjacent
    // common neighbours b,d.
    const int n = g.size();
    for (int a = 0; a < n; ++a) {
        for (int c = a + 1; c < n; ++c) {
            if (g.adjacent(a, c)) continue;
            const VertexSet common = g.neighbors(a) & g.neighbors(c);
            const auto ids = common.to_vector();
            for (std::size_t i = 0; i < ids.size(); ++i) {
                for (std::size_t j = i + 1; j < ids.size(); ++j) {
                    if (!g.adjacent(ids[i], ids[j])) return std::vector<int>{a, ids[i], c, ids[j]};
                }
            }
        }
    }
    return std::nullopt;
}

bool is_square_free(const LabeledGraph& g) { return !find_induced_square(g).has_value(); }

bool is_separating(const LabeledGraph& g, VertexSet lambda) {
    if (!lambda.subset_of(g.all())) throw Error("subgraph " + lambda.str() + " is not contained in the graph");
    if (lambda == g.all()) throw Error("a separating subgraph must be a proper subset of the vertices");
    return components(g, g.all() - lambda).size() >= 2;
}

JoinDecomposition join_decomposition(const LabeledGraph& g) {
    // Components of the complement graph, by bitmask BFS.
    JoinDecomposition out;
    const VertexSet all = g.all();
    VertexSet rest = all;
    while (!rest.empty()) {
        VertexSet comp = VertexSet::of({rest.first()});
        VertexSet frontier = comp;
        while (!frontier.empty()) {
            VertexSet next;
            frontier.for_each([&](int v) { next = next | (all - g.neighbors(v) - VertexSet::of({v})); });
            next = (next & rest) - comp;
            comp = comp | next;
            frontier = next;
        }
        if (comp.size() == 1) {
            out.complete_part = out.complete_part | comp;
        } else {
            out.factors.push_back(comp);
        }
        rest = rest - comp;
    }
    return out;
}

VertexSet link(const LabeledGraph& g, int u) { return g.neighbors(u); }

VertexSet star(const LabeledGraph& g, int u) { return g.neighbors(u) | VertexSet::of({u}); }

VertexSet link_of(const LabeledGraph& g, VertexSet lambda) {
    VertexSet out = g.all() - lambda;
    lambda.for_each([&](int v) { out = out & g.neighbors(v); });
    return out;
}

namespace {

void extend_cliques(const LabeledGraph& g, VertexSet current, VertexSet candidates, std::vector<VertexSet>& out) {
    out.push_back(current);
    for (VertexSet rest = candidates; !rest.empty();) {
        const int v = rest.first();
        rest.erase(v);
        VertexSet next = current;
        next.insert(v);
        extend_cliques(g, next, rest & g.neighbors(v), out);
    }
}

bool by_size_then_bits(VertexSet a, VertexSet b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.bits() < b.bits();
}

}  // namespace

std::vector<VertexSet> cliques_within(const LabeledGraph& g, VertexSet within) {
    std::vector<VertexSet> out;
    extend_cliques(g, VertexSet{}, within, out);
    std::sort(out.begin(), out.end(), by_size_then_bits);
    return out;
}

bool is_vc_separator_shape(const LabeledGraph& g, VertexSet lambda) {
    int missing = 0;
    int pu = -1;
    int pv = -1;
    lambda.for_each([&](int u) {
        const VertexSet non_adj = (lambda - g.neighbors(u)) - VertexSet::of({u});
        non_adj.for_each([&](int v) {
            if (u < v) {
                ++missing;
                pu = u;
                pv = v;
            }
        });
    });
    if (missing == 0) return true;
    // Exactly one non-adjacent pair forces A = lambda \ {u,v} to be a clique
    // fully joined to u and v.
    return missing == 1 && g.label(pu).is_z2() && g.label(pv).is_z2();
}

std::vector<VertexSet> enumerate_candidate_vc_separators(const LabeledGraph& g, SeparatorScan scan) {
    const int n = g.size();
    if (!g.all_finite()) throw Error("separator enumeration needs every vertex group to be finite");
    if (n > kMaxSeparatorVertices) {
        throw Error("separator enumeration supports at most " + std::to_string(kMaxSeparatorVertices) + " vertices");
    }
    if (scan == SeparatorScan::automatic) {
        scan = n < kExhaustiveBelow ? SeparatorScan::exhaustive : SeparatorScan::clique_based;
    }
    const VertexSet all = g.all();
    std::vector<VertexSet> out;
    if (scan == SeparatorScan::exhaustive) {
        const std::uint64_t limit = std::uint64_t{1} << n;
        for (std::uint64_t m = 0; m < limit; ++m) {
            const VertexSet lambda(m);
            if (lambda == all) continue;
            if (is_vc_separator_shape(g, lambda) && is_separating(g, lambda)) out.push_back(lambda);
        }
    } else {
        for (VertexSet a : cliques_within(g, all)) {
            if (a != all && is_separating(g, a)) out.push_back(a);
        }
        const VertexSet z2 = g.z2_vertices();
        z2.for_each([&](int u) {
            (z2 - g.neighbors(u)).for_each([&](int v) {
                if (v <= u) return;
                const VertexSet pair = VertexSet::of({u, v});
                for (VertexSet a : cliques_within(g, link_of(g, pair))) {
                    const VertexSet lambda = a | pair;
                    if (lambda != all && is_separating(g, lambda)) out.push_back(lambda);
                }
            });
        });
    }
    std::sort(out.begin(), out.end(), by_size_then_bits);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace coarsesep
