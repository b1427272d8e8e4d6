#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace coarsesep {

/// Three-valued answer used for properties of abstract vertex groups and for
/// classification verdicts.
enum class Tri : std::uint8_t { no, yes, unknown };

std::string to_string(Tri t);
Tri parse_tri(const std::string& text);

/// A non-trivial vertex group of a graph product.
///
/// Concrete groups carry a full multiplication table over element indices
/// 0..k-1 with the identity at index 0. Abstract groups carry only their
/// order (finite or infinite) and the three classification flags the
/// decision procedures consult. Finite abstract groups answer the flags
/// themselves: a finite group is hyperbolic, not virtually infinite cyclic and
/// not virtually a surface group.
class VertexGroup {
public:
    static constexpr int kMaxOrder = 255;
    static constexpr int kMaxCheckedOrder = 64;

    struct AbstractInfo {
        std::optional<int> order;  // nullopt = infinite
        Tri hyperbolic = Tri::unknown;
        Tri virtually_infinite_cyclic = Tri::unknown;
        Tri virtual_surface = Tri::unknown;
    };

    /// Z_k with element i standing for the residue i.
    static VertexGroup cyclic(int k);
    /// Validates closure, identity at 0, inverses and associativity.
    static VertexGroup from_table(std::vector<std::vector<int>> table);
    static VertexGroup abstract(AbstractInfo info);

    [[nodiscard]] bool is_concrete() const { return !table_.empty(); }
    [[nodiscard]] bool is_finite() const { return order_.has_value(); }
    /// nullopt for infinite groups.
    [[nodiscard]] std::optional<int> order() const { return order_; }
    [[nodiscard]] bool is_z2() const { return order_ == 2; }

    [[nodiscard]] Tri hyperbolic() const;
    [[nodiscard]] Tri virtually_infinite_cyclic() const;
    [[nodiscard]] Tri virtual_surface() const;

    // Concrete groups only.
    [[nodiscard]] int mul(int a, int b) const { return table_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
    [[nodiscard]] int inv(int a) const { return inverse_[static_cast<std::size_t>(a)]; }
    [[nodiscard]] const std::vector<std::vector<int>>& table() const { return table_; }

    /// Short human-readable label, e.g. "Z2", "table(6)", "abstract(inf)".
    [[nodiscard]] std::string describe() const;

    /// The cyclic-constructor tag survives so that reports can print "Z3"
    /// instead of a table dump.
    [[nodiscard]] std::optional<int> cyclic_order() const { return cyclic_; }

    [[nodiscard]] const AbstractInfo& abstract_info() const { return info_; }

private:
    VertexGroup() = default;

    std::optional<int> order_;
    std::optional<int> cyclic_;
    std::vector<std::vector<int>> table_;
    std::vector<int> inverse_;
    AbstractInfo info_;
};

}  // namespace coarsesep
