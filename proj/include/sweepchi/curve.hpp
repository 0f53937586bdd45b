#pragma once

#include <array>
#include <vector>

#include <Eigen/Core>

#include "sweepchi/surface.hpp"

namespace sweepchi {

/// x(tau) = cos[0] + sum_{k>=1} cos[k] cos(k tau) + sin[k-1] sin(k tau).
/// `sin` starts at frequency 1.
struct FourierSeries {
    std::vector<double> cos;
    std::vector<double> sin;

    /// Value and first two tau-derivatives.
    [[nodiscard]] std::array<double, 3> eval(double tau) const noexcept;
};

/// Position, velocity and acceleration of a curve in parameter space.
struct CurveJet {
    Eigen::Vector2d c, dc, ddc;
};

/// A closed curve in the chart, tau in [0, 2pi). Over one turn the lifted
/// curve advances by (winding_s * period_s, winding_t * period_t).
/// `orientation` = -1 traverses the series backwards; the authored direction
/// must make n = N x T point into the domain.
struct BoundaryCurve {
    FourierSeries s;
    FourierSeries t;
    int winding_s = 0;
    int winding_t = 0;
    int orientation = 1;

    [[nodiscard]] CurveJet jet(double tau, const ParamRect& rect) const noexcept;
    [[nodiscard]] ParamPoint point(double tau, const ParamRect& rect) const noexcept
    {
        const auto c = jet(tau, rect).c;
        return {c.x(), c.y()};
    }

    /// Circle of the given radius in the chart, counterclockwise for
    /// orientation +1.
    static BoundaryCurve circle(ParamPoint center, double radius, int orientation = 1);
    /// Axis-parallel ellipse in the chart.
    static BoundaryCurve ellipse(ParamPoint center, double rs, double rt, int orientation = 1);
    /// The line t = t_level traversed once around a periodic s direction.
    static BoundaryCurve s_loop(double t_level, int orientation = 1);
};

} // namespace sweepchi
