#include "coarsesep/fit.hpp"

#include <cmath>

namespace coarsesep {

namespace {

// Two-sided 95% critical values of Student's t, df = 1..30.
constexpr double kT975[] = {12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228,
                            2.201,  2.179, 2.160, 2.145, 2.131, 2.120, 2.110, 2.101, 2.093, 2.086,
                            2.080,  2.074, 2.069, 2.064, 2.060, 2.056, 2.052, 2.048, 2.045, 2.042};

}  // namespace

double t_critical_95(std::size_t df) {
    if (df == 0) return INFINITY;
    if (df <= 30) return kT975[df - 1];
    return 1.96;
}

bool LinearFit::slope_indistinguishable_from_zero() const {
    if (points < 3) return false;
    if (slope == 0.0) return true;
    return std::abs(slope) <= t_critical_95(points - 2) * slope_stderr;
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
    LinearFit f;
    const std::size_t n = std::min(x.size(), y.size());
    f.points = n;
    if (n < 2) return f;
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) {
        f.points = 1;
        return f;
    }
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double sse = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (f.slope * x[i] + f.intercept);
        sse += r * r;
    }
    f.r2 = syy == 0.0 ? 1.0 : 1.0 - sse / syy;
    if (n >= 3) f.slope_stderr = std::sqrt(sse / static_cast<double>(n - 2) / sxx);
    return f;
}

}  // namespace coarsesep
