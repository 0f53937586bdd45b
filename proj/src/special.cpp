#include "sweepchi/special.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sweepchi/errors.hpp"
#include "sweepchi/geometry.hpp"
#include "sweepchi/roots.hpp"

namespace sweepchi {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

int sign_of(double x) noexcept
{
    return (x > 0.0) - (x < 0.0);
}

double normalize_tau(double tau) noexcept
{
    tau = std::fmod(tau, kTwoPi);
    return tau < 0.0 ? tau + kTwoPi : tau;
}

void require_unit_sphere(const Domain& domain)
{
    if (domain.surface().kind() != SurfaceKind::Sphere) {
        throw Error(ErrorKind::InvalidArgument, "formula applies to domains on the unit sphere only");
    }
}

Vec3 velocity(const Domain& domain, std::size_t c, double tau)
{
    const CurveJet cj = domain.curve_jet(c, tau);
    const SurfaceJet sj = domain.surface().jet({cj.c.x(), cj.c.y()});
    return sj.ps * cj.dc.x() + sj.pt * cj.dc.y();
}

// #({u, -u} in D). A pole within tol.pole of the boundary makes the count
// ill-defined.
int pole_count(const Domain& domain, const Direction& u, const Tolerances& tol)
{
    int count = 0;
    for (const Vec3& x : {Vec3(u.vec()), Vec3(-u.vec())}) {
        const auto p = domain.surface().invert(x);
        if (!p) continue;
        if (domain.distance_to_boundary(*p) < tol.pole) {
            throw Error(ErrorKind::PoleOnBoundary, "a pole of u lies on the boundary");
        }
        try {
            count += domain.contains(*p, tol) ? 1 : 0;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::OnBoundary) throw;
            throw Error(ErrorKind::PoleOnBoundary, "a pole of u lies on the boundary");
        }
    }
    return count;
}

void check_away_from_poles(const SphericalFrame::Coords& c, const Tolerances& tol)
{
    if (c.polar < tol.pole || std::numbers::pi - c.polar < tol.pole) {
        throw Error(ErrorKind::PoleOnBoundary, "boundary tangency at a pole of u");
    }
}

SpecialResult finish(std::vector<SpecialTangency> tangencies, int poles)
{
    SpecialResult r;
    std::vector<int> signs;
    for (const auto& t : tangencies) {
        signs.push_back(t.sign);
        r.boundary_sum += t.sign;
    }
    std::vector<int> interior(static_cast<std::size_t>(poles), 1);
    r.chi = morse_count(interior, signs);
    r.poles = poles;
    r.tangencies = std::move(tangencies);
    return r;
}

} // namespace

SphericalFrame::SphericalFrame(const Direction& u) : u_(u)
{
    // e1 from the coordinate axis least aligned with u
    const Vec3 a = u.vec().cwiseAbs();
    Vec3 ref = Vec3::UnitX();
    if (a.y() <= a.x() && a.y() <= a.z()) ref = Vec3::UnitY();
    else if (a.z() <= a.x() && a.z() <= a.y()) ref = Vec3::UnitZ();
    e1_ = (ref - u.vec() * u.dot(ref)).normalized();
    e2_ = u.vec().cross(e1_);
}

double SphericalFrame::Coords::latitude() const noexcept
{
    return std::numbers::pi / 2.0 - polar;
}

SphericalFrame::Coords SphericalFrame::coords(const Vec3& x) const
{
    const double z = u_.dot(x);
    const double x1 = e1_.dot(x);
    const double x2 = e2_.dot(x);
    return {std::atan2(x2, x1), std::atan2(std::hypot(x1, x2), z)};
}

Vec3 SphericalFrame::point(const Coords& c) const
{
    const double sg = std::sin(c.polar);
    return u_.vec() * std::cos(c.polar) + e1_ * (sg * std::cos(c.longitude)) + e2_ * (sg * std::sin(c.longitude));
}

SpecialResult chi_planar(const Domain& domain, const Eigen::Vector2d& u, const Tolerances& tol)
{
    if (domain.surface().kind() != SurfaceKind::Plane) {
        throw Error(ErrorKind::InvalidArgument, "planar formula applies to plane domains only");
    }
    if (!(u.norm() > 0.0)) throw Error(ErrorKind::InvalidArgument, "direction must be non-zero");
    const Eigen::Vector2d d = u.normalized();

    std::vector<SpecialTangency> found;
    for (std::size_t c = 0; c < domain.boundaries().size(); ++c) {
        const auto f = [&](double tau) { return d.dot(domain.curve_jet(c, tau).dc); };
        for (double tau : periodic_roots(f, Domain::kSamples)) {
            tau = normalize_tau(tau);
            const CurveJet j = domain.curve_jet(c, tau);
            const double speed = j.dc.norm();
            const double k = (j.dc.x() * j.ddc.y() - j.dc.y() * j.ddc.x()) / (speed * speed * speed);
            if (std::abs(k) < tol.geodesic) {
                throw Error(ErrorKind::DegenerateBoundaryTangency,
                            "inflection tangency on boundary curve " + std::to_string(c));
            }
            found.push_back({c, tau, Vec3(j.c.x(), j.c.y(), 0.0), k, sign_of(k)});
        }
    }
    return finish(std::move(found), 0);
}

SpecialResult chi_sphere_parallels(const Domain& domain, const Direction& u, const Tolerances& tol)
{
    require_unit_sphere(domain);
    const SphericalFrame frame(u);
    const int poles = pole_count(domain, u, tol);

    std::vector<SpecialTangency> found;
    for (std::size_t c = 0; c < domain.boundaries().size(); ++c) {
        const auto f = [&](double tau) { return u.dot(velocity(domain, c, tau)); };
        for (double tau : periodic_roots(f, Domain::kSamples)) {
            tau = normalize_tau(tau);
            const CurveGeometry g = curve_geometry(domain.surface(), domain.boundaries()[c], tau, tol);
            const auto sc = frame.coords(g.position);
            check_away_from_poles(sc, tol);
            // The parallel through y has geodesic curvature -tan(latitude)
            // relative to the normal pointing away from u. n = +-u~ here, so
            // relative to n it is -side * tan(latitude).
            const int side = u.dot(g.inward) < 0.0 ? 1 : -1;
            const double q = g.geodesic + side * std::tan(sc.latitude());
            if (std::abs(q) < tol.geodesic) {
                throw Error(ErrorKind::DegenerateBoundaryTangency,
                            "boundary osculates a parallel on curve " + std::to_string(c));
            }
            found.push_back({c, tau, g.position, q, sign_of(q)});
        }
    }
    return finish(std::move(found), poles);
}

SpecialResult chi_sphere_meridians(const Domain& domain, const Direction& u, const Tolerances& tol)
{
    require_unit_sphere(domain);
    const SphericalFrame frame(u);
    const int poles = pole_count(domain, u, tol);

    std::vector<SpecialTangency> found;
    for (std::size_t c = 0; c < domain.boundaries().size(); ++c) {
        // numerator of d theta_u / d tau
        const auto f = [&](double tau) {
            const CurveJet cj = domain.curve_jet(c, tau);
            const SurfaceJet sj = domain.surface().jet({cj.c.x(), cj.c.y()});
            const Vec3 v = sj.ps * cj.dc.x() + sj.pt * cj.dc.y();
            return frame.e1().dot(sj.p) * frame.e2().dot(v) - frame.e2().dot(sj.p) * frame.e1().dot(v);
        };
        for (double tau : periodic_roots(f, Domain::kSamples)) {
            tau = normalize_tau(tau);
            const CurveGeometry g = curve_geometry(domain.surface(), domain.boundaries()[c], tau, tol);
            check_away_from_poles(frame.coords(g.position), tol);
            if (std::abs(g.geodesic) < tol.geodesic) {
                throw Error(ErrorKind::DegenerateMeridianTangency,
                            "geodesic curvature vanishes at a meridian tangency on curve " + std::to_string(c));
            }
            found.push_back({c, tau, g.position, g.geodesic, sign_of(g.geodesic)});
        }
    }
    return finish(std::move(found), poles);
}

ExcisionCheck meridian_excision_check(const Domain& domain, const Direction& u, Rng& rng, const SweepOptions& opts)
{
    const SpecialResult meridians = chi_sphere_meridians(domain, u, opts.tol);

    Domain excised = domain;
    for (const Vec3& x : {Vec3(u.vec()), Vec3(-u.vec())}) {
        const auto p = domain.surface().invert(x);
        if (!p || !domain.contains(*p, opts.tol)) continue;
        const double room = std::min(domain.distance_to_boundary(*p), domain.rect().distance(*p, domain.seed()));
        excised = excised.with_boundary(BoundaryCurve::circle(*p, std::min(0.05, 0.25 * room), -1));
    }
    excised = orient_boundaries(excised);
    validate_domain(excised, opts.tol);

    ExcisionCheck check;
    check.chi = euler_characteristic(domain, random_direction(rng), rng, opts).chi;
    check.chi_excised = euler_characteristic(excised, random_direction(rng), rng, opts).chi;
    check.poles = meridians.poles;
    check.meridian_half_sum = morse_count({}, std::vector<int>{meridians.boundary_sum});
    return check;
}

} // namespace sweepchi
