#include "sweepchi/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "sweepchi/errors.hpp"

namespace sweepchi {

GaussRule gauss_legendre(int n)
{
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "quadrature order must be positive");
    GaussRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    const auto un = static_cast<unsigned>(n);
    for (int i = 0; i < n; ++i) {
        // i-th largest root; Newton from the standard asymptotic guess
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 1.0;
        for (int it = 0; it < 100; ++it) {
            const double p = std::legendre(un, x);
            const double pm = n > 1 ? std::legendre(un - 1, x) : 1.0;
            dp = n * (x * p - pm) / (x * x - 1.0);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        {
            const double p = std::legendre(un, x);
            const double pm = n > 1 ? std::legendre(un - 1, x) : 1.0;
            dp = n * (x * p - pm) / (x * x - 1.0);
        }
        const auto k = static_cast<std::size_t>(n - 1 - i);
        rule.nodes[k] = x;
        rule.weights[k] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

} // namespace sweepchi
