#include "sweepchi/curve.hpp"

#include <cmath>
#include <numbers>

namespace sweepchi {

std::array<double, 3> FourierSeries::eval(double tau) const noexcept
{
    double x = cos.empty() ? 0.0 : cos[0];
    double dx = 0.0, ddx = 0.0;
    for (std::size_t k = 1; k < cos.size(); ++k) {
        const double w = static_cast<double>(k);
        const double c = std::cos(w * tau), s = std::sin(w * tau);
        x += cos[k] * c;
        dx -= cos[k] * w * s;
        ddx -= cos[k] * w * w * c;
    }
    for (std::size_t k = 0; k < sin.size(); ++k) {
        const double w = static_cast<double>(k + 1);
        const double c = std::cos(w * tau), s = std::sin(w * tau);
        x += sin[k] * s;
        dx += sin[k] * w * c;
        ddx -= sin[k] * w * w * s;
    }
    return {x, dx, ddx};
}

CurveJet BoundaryCurve::jet(double tau, const ParamRect& rect) const noexcept
{
    const double sigma = orientation < 0 ? -1.0 : 1.0;
    const double tt = sigma * tau;
    const auto [s0, s1, s2] = s.eval(tt);
    const auto [t0, t1, t2] = t.eval(tt);

    // linear drift that closes the curve up to a lattice translation
    const double drift_s = winding_s * rect.period_s() / (2.0 * std::numbers::pi);
    const double drift_t = winding_t * rect.period_t() / (2.0 * std::numbers::pi);

    CurveJet j;
    j.c = {s0 + drift_s * tt, t0 + drift_t * tt};
    j.dc = {sigma * (s1 + drift_s), sigma * (t1 + drift_t)};
    j.ddc = {s2, t2};
    return j;
}

BoundaryCurve BoundaryCurve::circle(ParamPoint center, double radius, int orientation)
{
    return ellipse(center, radius, radius, orientation);
}

BoundaryCurve BoundaryCurve::ellipse(ParamPoint center, double rs, double rt, int orientation)
{
    BoundaryCurve c;
    c.s.cos = {center.s, rs};
    c.t.cos = {center.t};
    c.t.sin = {rt};
    c.orientation = orientation;
    return c;
}

BoundaryCurve BoundaryCurve::s_loop(double t_level, int orientation)
{
    BoundaryCurve c;
    c.s.cos = {0.0};
    c.t.cos = {t_level};
    c.winding_s = 1;
    c.orientation = orientation;
    return c;
}

} // namespace sweepchi
