#pragma once

#include <cstddef>
#include <vector>

namespace sweepchi {

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point rule, n >= 1. Nodes ascend.
[[nodiscard]] GaussRule gauss_legendre(int n);

/// sum_i w_i f(x_i) for the rule mapped to [a, b].
template <class F>
[[nodiscard]] double integrate(const GaussRule& rule, double a, double b, F&& f)
{
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return half * sum;
}

/// integrate() over `panels` equal sub-intervals of [a, b].
template <class F>
[[nodiscard]] double integrate_composite(const GaussRule& rule, double a, double b, int panels, F&& f)
{
    const double h = (b - a) / panels;
    double sum = 0.0;
    for (int k = 0; k < panels; ++k) sum += integrate(rule, a + k * h, a + (k + 1) * h, f);
    return sum;
}

} // namespace sweepchi
