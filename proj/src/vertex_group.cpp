#include "coarsesep/vertex_group.hpp"

#include "coarsesep/error.hpp"

namespace coarsesep {

std::string to_string(Tri t) {
    switch (t) {
        case Tri::no: return "no";
        case Tri::yes: return "yes";
        case Tri::unknown: return "unknown";
    }
    return "unknown";
}

Tri parse_tri(const std::string& text) {
    if (text == "yes" || text == "true") return Tri::yes;
    if (text == "no" || text == "false") return Tri::no;
    if (text == "unknown") return Tri::unknown;
    throw Error("malformed flag value '" + text + "' (expected yes/no/unknown)");
}

VertexGroup VertexGroup::cyclic(int k) {
    if (k < 2) throw Error("trivial vertex group: cyclic order must be >= 2");
    if (k > kMaxOrder) throw Error("vertex group order " + std::to_string(k) + " exceeds " + std::to_string(kMaxOrder));
    const auto n = static_cast<std::size_t>(k);
    VertexGroup g;
    g.order_ = k;
    g.cyclic_ = k;
    g.table_.assign(n, std::vector<int>(n));
    g.inverse_.resize(n);
    for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) g.table_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % k;
        g.inverse_[static_cast<std::size_t>(a)] = (k - a) % k;
    }
    return g;
}

VertexGroup VertexGroup::from_table(std::vector<std::vector<int>> table) {
    const auto n = table.size();
    if (n < 2) throw Error("trivial vertex group: table must have at least 2 elements");
    if (n > static_cast<std::size_t>(kMaxOrder)) throw Error("vertex group order exceeds " + std::to_string(kMaxOrder));
    const int k = static_cast<int>(n);
    for (const auto& row : table) {
        if (row.size() != n) throw Error("malformed table: rows must have length " + std::to_string(k));
        for (int x : row) {
            if (x < 0 || x >= k) throw Error("malformed table: entry out of range");
        }
    }
    for (int a = 0; a < k; ++a) {
        const auto ua = static_cast<std::size_t>(a);
        if (table[0][ua] != a || table[ua][0] != a) throw Error("malformed table: index 0 is not the identity");
    }
    std::vector<int> inverse(n, -1);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            if (table[a][b] == 0 && table[b][a] == 0) {
                inverse[a] = static_cast<int>(b);
                break;
            }
        }
        if (inverse[a] < 0) throw Error("malformed table: element " + std::to_string(a) + " has no two-sided inverse");
    }
    // Exhaustive associativity; k^3 <= 64^3 for the checked range. Larger
    // tables are still checked, just slower.
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            const auto ab = static_cast<std::size_t>(table[a][b]);
            for (std::size_t c = 0; c < n; ++c) {
                if (table[ab][c] != table[a][static_cast<std::size_t>(table[b][c])]) {
                    throw Error("non-associative table: (" + std::to_string(a) + "*" + std::to_string(b) + ")*" +
                                std::to_string(c) + " != " + std::to_string(a) + "*(" + std::to_string(b) + "*" +
                                std::to_string(c) + ")");
                }
            }
        }
    }
    VertexGroup g;
    g.order_ = k;
    g.table_ = std::move(table);
    g.inverse_ = std::move(inverse);
    return g;
}

VertexGroup VertexGroup::abstract(AbstractInfo info) {
    if (info.order && *info.order < 2) throw Error("trivial vertex group: abstract order must be >= 2");
    VertexGroup g;
    g.order_ = info.order;
    g.info_ = info;
    return g;
}

Tri VertexGroup::hyperbolic() const {
    if (is_finite()) return Tri::yes;
    return info_.hyperbolic;
}

Tri VertexGroup::virtually_infinite_cyclic() const {
    if (is_finite()) return Tri::no;
    return info_.virtually_infinite_cyclic;
}

Tri VertexGroup::virtual_surface() const {
    if (is_finite()) return Tri::no;
    return info_.virtual_surface;
}

std::string VertexGroup::describe() const {
    if (cyclic_) return "Z" + std::to_string(*cyclic_);
    if (is_concrete()) return "table(" + std::to_string(*order_) + ")";
    return "abstract(" + (order_ ? std::to_string(*order_) : std::string("inf")) + ")";
}

}  // namespace coarsesep
