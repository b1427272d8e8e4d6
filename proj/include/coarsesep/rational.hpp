#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "coarsesep/error.hpp"

namespace coarsesep {

/// Balance parameter of a cut, kept exact so that the component condition
/// `size <= delta * |A|` never depends on floating point rounding.
struct Delta {
    std::int64_t num = 1;
    std::int64_t den = 2;

    Delta() = default;
    Delta(std::int64_t n, std::int64_t d) : num(n), den(d) {
        if (den <= 0 || num <= 0 || num >= den) {
            throw Error("delta must be a rational in (0,1), got " + std::to_string(n) + "/" +
                        std::to_string(d));
        }
        const auto g = std::gcd(num, den);
        num /= g;
        den /= g;
    }

    /// Parses "p/q" or a decimal such as "0.5" (at most 6 decimals).
    static Delta parse(const std::string& text);

    /// size <= delta * total
    [[nodiscard]] bool admits(std::int64_t size, std::int64_t total) const {
        return size * den <= num * total;
    }

    [[nodiscard]] double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    [[nodiscard]] std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }

    friend bool operator==(const Delta&, const Delta&) = default;
};

}  // namespace coarsesep
