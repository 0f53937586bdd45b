#include "sweepchi/surface.hpp"

#include <cmath>
#include <numbers>

#include "sweepchi/errors.hpp"

namespace sweepchi {

namespace {

double wrap_into(double x, double lo, double period)
{
    double r = std::fmod(x - lo, period);
    if (r < 0.0) r += period;
    // fmod can return exactly `period` after the correction above
    if (r >= period) r = 0.0;
    return lo + r;
}

double shortest(double d, double period)
{
    d = std::remainder(d, period);
    return d;
}

// Unit sphere by stereographic projection; sign = +1 projects from the south
// pole (z = +1 at the chart origin), -1 from the north pole.
SurfaceJet stereographic_jet(double a, double b, double sign)
{
    const double q = 1.0 + a * a + b * b;
    const double r = 1.0 / q;
    const double r2 = r * r;
    const double r3 = r2 * r;

    const double ra = -2.0 * a * r2;
    const double rb = -2.0 * b * r2;
    const double raa = -2.0 * r2 + 8.0 * a * a * r3;
    const double rab = 8.0 * a * b * r3;
    const double rbb = -2.0 * r2 + 8.0 * b * b * r3;

    SurfaceJet j;
    j.p = Vec3(2.0 * a * r, 2.0 * b * r, sign * (2.0 * r - 1.0));
    j.ps = Vec3(2.0 * r + 2.0 * a * ra, 2.0 * b * ra, sign * 2.0 * ra);
    j.pt = Vec3(2.0 * a * rb, 2.0 * r + 2.0 * b * rb, sign * 2.0 * rb);
    j.pss = Vec3(4.0 * ra + 2.0 * a * raa, 2.0 * b * raa, sign * 2.0 * raa);
    j.pst = Vec3(2.0 * rb + 2.0 * a * rab, 2.0 * ra + 2.0 * b * rab, sign * 2.0 * rab);
    j.ptt = Vec3(2.0 * a * rbb, 4.0 * rb + 2.0 * b * rbb, sign * 2.0 * rbb);
    return j;
}

ParamRect square(double half_extent)
{
    if (!(half_extent > 0.0) || !std::isfinite(half_extent)) {
        throw Error(ErrorKind::InvalidArgument, "chart half extent must be positive");
    }
    return ParamRect{-half_extent, half_extent, -half_extent, half_extent, false, false};
}

// x^n with the convention that a negative exponent yields 0 (the coefficient
// it multiplies is 0 in that case anyway).
double ipow(double x, int n)
{
    if (n < 0) return 0.0;
    double r = 1.0;
    for (int k = 0; k < n; ++k) r *= x;
    return r;
}

} // namespace

Direction::Direction(const Vec3& v)
{
    const double n = v.norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw Error(ErrorKind::InvalidArgument, "direction must be non-zero");
    }
    u_ = v / n;
}

ParamPoint ParamRect::wrap(ParamPoint p) const noexcept
{
    if (wrap_s) p.s = wrap_into(p.s, s0, period_s());
    if (wrap_t) p.t = wrap_into(p.t, t0, period_t());
    return p;
}

bool ParamRect::contains(ParamPoint p) const noexcept
{
    const bool in_s = wrap_s || (p.s >= s0 && p.s <= s1);
    const bool in_t = wrap_t || (p.t >= t0 && p.t <= t1);
    return in_s && in_t && std::isfinite(p.s) && std::isfinite(p.t);
}

Eigen::Vector2d ParamRect::delta(ParamPoint a, ParamPoint b) const noexcept
{
    double ds = b.s - a.s;
    double dt = b.t - a.t;
    if (wrap_s) ds = shortest(ds, period_s());
    if (wrap_t) dt = shortest(dt, period_t());
    return {ds, dt};
}

double ParamRect::distance(ParamPoint a, ParamPoint b) const noexcept
{
    return delta(a, b).norm();
}

std::string_view surface_kind_name(SurfaceKind kind) noexcept
{
    switch (kind) {
    case SurfaceKind::Plane: return "plane";
    case SurfaceKind::Sphere: return "sphere";
    case SurfaceKind::Torus: return "torus";
    case SurfaceKind::Ellipsoid: return "ellipsoid";
    case SurfaceKind::Graph: return "graph";
    }
    return "unknown";
}

std::optional<ParamPoint> Surface::invert(const Vec3&) const
{
    return std::nullopt;
}

// --- Plane ------------------------------------------------------------------

Plane::Plane(double half_extent) : Surface(square(half_extent)) {}

SurfaceJet Plane::jet(ParamPoint p) const
{
    SurfaceJet j;
    j.p = Vec3(p.s, p.t, 0.0);
    j.ps = Vec3::UnitX();
    j.pt = Vec3::UnitY();
    j.pss = j.pst = j.ptt = Vec3::Zero();
    return j;
}

std::optional<ParamPoint> Plane::invert(const Vec3& x) const
{
    if (std::abs(x.z()) > 1e-9) return std::nullopt;
    const ParamPoint p{x.x(), x.y()};
    if (!rect().contains(p)) return std::nullopt;
    return p;
}

// --- Sphere -----------------------------------------------------------------

Sphere::Sphere(double half_extent, ProjectionPole pole) : Surface(square(half_extent)), pole_(pole) {}

SurfaceJet Sphere::jet(ParamPoint p) const
{
    return stereographic_jet(p.s, p.t, pole_ == ProjectionPole::South ? 1.0 : -1.0);
}

std::optional<ParamPoint> Sphere::invert(const Vec3& x) const
{
    if (std::abs(x.norm() - 1.0) > 1e-9) return std::nullopt;
    const double sign = pole_ == ProjectionPole::South ? 1.0 : -1.0;
    const double denom = 1.0 + sign * x.z();
    if (denom < 1e-12) return std::nullopt;  // the projection point itself
    const ParamPoint p{x.x() / denom, x.y() / denom};
    if (!rect().contains(p)) return std::nullopt;
    return p;
}

// --- Ellipsoid --------------------------------------------------------------

Ellipsoid::Ellipsoid(double a, double b, double c, double half_extent)
    : Surface(square(half_extent)), axes_(a, b, c)
{
    if (!(a > 0.0 && b > 0.0 && c > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "ellipsoid semi-axes must be positive");
    }
}

SurfaceJet Ellipsoid::jet(ParamPoint p) const
{
    SurfaceJet j = stereographic_jet(p.s, p.t, 1.0);
    for (Vec3* v : {&j.p, &j.ps, &j.pt, &j.pss, &j.pst, &j.ptt}) {
        *v = v->cwiseProduct(axes_);
    }
    return j;
}

// --- Torus ------------------------------------------------------------------

Torus::Torus(double major, double minor)
    : Surface(ParamRect{0.0, 2.0 * std::numbers::pi, 0.0, 2.0 * std::numbers::pi, true, true}),
      major_(major), minor_(minor)
{
    if (!(minor > 0.0) || !(major > minor)) {
        throw Error(ErrorKind::InvalidArgument, "torus needs R > r > 0");
    }
}

SurfaceJet Torus::jet(ParamPoint p) const
{
    const double cs = std::cos(p.s), ss = std::sin(p.s);
    const double ct = std::cos(p.t), st = std::sin(p.t);
    const double rho = major_ + minor_ * ct;
    const double r = minor_;

    SurfaceJet j;
    j.p = Vec3(rho * cs, rho * ss, r * st);
    j.ps = Vec3(-rho * ss, rho * cs, 0.0);
    j.pt = Vec3(-r * st * cs, -r * st * ss, r * ct);
    j.pss = Vec3(-rho * cs, -rho * ss, 0.0);
    j.pst = Vec3(r * st * ss, -r * st * cs, 0.0);
    j.ptt = Vec3(-r * ct * cs, -r * ct * ss, -r * st);
    return j;
}

// --- Graph ------------------------------------------------------------------

Graph::Graph(std::vector<Monomial> terms, double half_extent)
    : Surface(square(half_extent)), terms_(std::move(terms))
{
    for (const auto& m : terms_) {
        if (m.i < 0 || m.j < 0) {
            throw Error(ErrorKind::InvalidArgument, "graph monomial exponents must be non-negative");
        }
    }
}

SurfaceJet Graph::jet(ParamPoint p) const
{
    double f = 0, fs = 0, ft = 0, fss = 0, fst = 0, ftt = 0;
    for (const auto& m : terms_) {
        const double i = m.i, jj = m.j;
        f += m.c * ipow(p.s, m.i) * ipow(p.t, m.j);
        fs += m.c * i * ipow(p.s, m.i - 1) * ipow(p.t, m.j);
        ft += m.c * jj * ipow(p.s, m.i) * ipow(p.t, m.j - 1);
        fss += m.c * i * (i - 1) * ipow(p.s, m.i - 2) * ipow(p.t, m.j);
        fst += m.c * i * jj * ipow(p.s, m.i - 1) * ipow(p.t, m.j - 1);
        ftt += m.c * jj * (jj - 1) * ipow(p.s, m.i) * ipow(p.t, m.j - 2);
    }
    SurfaceJet j;
    j.p = Vec3(p.s, p.t, f);
    j.ps = Vec3(1.0, 0.0, fs);
    j.pt = Vec3(0.0, 1.0, ft);
    j.pss = Vec3(0.0, 0.0, fss);
    j.pst = Vec3(0.0, 0.0, fst);
    j.ptt = Vec3(0.0, 0.0, ftt);
    return j;
}

std::optional<ParamPoint> Graph::invert(const Vec3& x) const
{
    const ParamPoint p{x.x(), x.y()};
    if (!rect().contains(p)) return std::nullopt;
    if (std::abs(jet(p).p.z() - x.z()) > 1e-9) return std::nullopt;
    return p;
}

} // namespace sweepchi
