#pragma once

#include <functional>
#include <vector>

namespace sweepchi {

using ScalarFn = std::function<double(double)>;

/// Refines a sign change of f on [a, b] (fa = f(a), fb = f(b), fa * fb <= 0)
/// with TOMS 748 to full double precision.
[[nodiscard]] double refine_root(const ScalarFn& f, double a, double b, double fa, double fb);

/// All sign changes of a 2pi-periodic f, bracketed on `samples` uniform
/// samples of [0, 2pi) and refined. A sample equal to zero counts as
/// non-positive, so a root landing on a sample is reported once.
[[nodiscard]] std::vector<double> periodic_roots(const ScalarFn& f, int samples);

/// Same bracketing applied to already-tabulated values f(tau_i),
/// tau_i = 2pi i / values.size().
[[nodiscard]] std::vector<double> periodic_roots(const ScalarFn& f, const std::vector<double>& values);

} // namespace sweepchi
