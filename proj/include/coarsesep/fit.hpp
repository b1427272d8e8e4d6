#pragma once

#include <span>
#include <string>

namespace coarsesep {

/// Ordinary least squares y = slope * x + intercept.
struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    /// Standard error of the slope; 0 with fewer than three points.
    double slope_stderr = 0.0;
    std::size_t points = 0;

    /// Zero lies in the two-sided 95% confidence interval of the slope (or
    /// the series is exactly flat).
    [[nodiscard]] bool slope_indistinguishable_from_zero() const;
};

double t_critical_95(std::size_t df);

/// Needs at least two points with distinct x; otherwise returns points < 2.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

/// Growth-type flags shared by the growth table and the cut experiments.
inline constexpr const char* kFlagInsufficient = "insufficient points";
inline constexpr const char* kFlagStabilized = "stabilized";
inline constexpr const char* kFlagExponential = "exponential";
inline constexpr const char* kFlagSubexponential = "subexponential";

}  // namespace coarsesep
