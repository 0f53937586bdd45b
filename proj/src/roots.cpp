#include "sweepchi/roots.hpp"

#include <cstdint>
#include <numbers>

#include <boost/math/tools/toms748_solve.hpp>

namespace sweepchi {

double refine_root(const ScalarFn& f, double a, double b, double fa, double fb)
{
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    std::uintmax_t max_iter = 100;
    const auto [lo, hi] = boost::math::tools::toms748_solve(
        f, a, b, fa, fb, boost::math::tools::eps_tolerance<double>(52), max_iter);
    return 0.5 * (lo + hi);
}

std::vector<double> periodic_roots(const ScalarFn& f, int samples)
{
    std::vector<double> values(static_cast<std::size_t>(samples));
    const double step = 2.0 * std::numbers::pi / samples;
    for (int i = 0; i < samples; ++i) values[static_cast<std::size_t>(i)] = f(step * i);
    return periodic_roots(f, values);
}

std::vector<double> periodic_roots(const ScalarFn& f, const std::vector<double>& values)
{
    std::vector<double> roots;
    const std::size_t m = values.size();
    const double step = 2.0 * std::numbers::pi / static_cast<double>(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double fa = values[i];
        const double fb = values[(i + 1) % m];
        if ((fa > 0.0) == (fb > 0.0)) continue;
        const double a = step * static_cast<double>(i);
        const double b = step * static_cast<double>(i + 1);
        roots.push_back(refine_root(f, a, b, fa, fb));
    }
    return roots;
}

} // namespace sweepchi
