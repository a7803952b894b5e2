#pragma once

#include <utility>
#include <vector>

namespace fragnet {

// Survival function P_>(x) = #{v >= x} / N at each distinct observed value,
// so the largest observation keeps nonzero probability.
struct Ccdf {
    std::vector<std::pair<double, double>> points;  // (value, P_>), value ascending
};

Ccdf ccdf(const std::vector<double>& values);

// Kendall rank correlation, tie-corrected (tau-b), with the multiple of the
// null-hypothesis standard deviation tau / sqrt(2(2n+5) / (9n(n-1))).
struct KendallResult {
    double tau = 0.0;
    double sigma_multiples = 0.0;
};

KendallResult kendall_tau(const std::vector<double>& x,
                          const std::vector<double>& y);

// Least-squares exponent of y ~ c * x^a on log-log axes; ci95 is the
// symmetric 95% half-width from the t distribution with n-2 dof.
struct TailFit {
    double exponent = 0.0;
    double ci95 = 0.0;
    int n_points = 0;
};

TailFit loglog_fit(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace fragnet
