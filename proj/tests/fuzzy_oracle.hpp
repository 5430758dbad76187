#pragma once

// Test-only weighted-average TSK evaluation, coded from the rule list rather
// than the estimator's membership routine.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace ehsim::testing
{

/// Trapezoid with feet a, d and plateau [b, c]; infinite feet give shoulders.
inline double trapezoid(double u, double a, double b, double c, double d)
{
    if (u < b) {
        return a == -std::numeric_limits<double>::infinity() ? 1.0
                                                             : std::max(0.0, (u - a) / (b - a));
    }
    if (u > c) {
        return d == std::numeric_limits<double>::infinity() ? 1.0
                                                            : std::max(0.0, (d - u) / (d - c));
    }
    return 1.0;
}

inline std::vector<double> rule_strengths(std::span<const double> centers, double u)
{
    const double inf = std::numeric_limits<double>::infinity();
    const std::size_t n = centers.size();
    std::vector<double> w(n);
    for (std::size_t r = 0; r < n; ++r) {
        const double left = r == 0 ? -inf : centers[r - 1];
        const double right = r + 1 == n ? inf : centers[r + 1];
        w[r] = trapezoid(u, left, centers[r], centers[r], right);
    }
    return w;
}

/// sum(w_r d_r) / sum(w_r).
inline double weighted_average(std::span<const double> centers, std::span<const double> consequents,
                               double u)
{
    const auto w = rule_strengths(centers, u);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t r = 0; r < w.size(); ++r) {
        num += w[r] * consequents[r];
        den += w[r];
    }
    return num / den;
}

} // namespace ehsim::testing
