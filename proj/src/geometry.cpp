#include "sweepchi/geometry.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "sweepchi/errors.hpp"

namespace sweepchi {

double SurfaceGeometry::area_element() const noexcept
{
    return std::sqrt(E * G - F * F);
}

SurfaceGeometry surface_geometry(const Surface& surface, ParamPoint p, const Tolerances& tol)
{
    const SurfaceJet j = surface.jet(p);
    const Vec3 cross = j.ps.cross(j.pt);
    const double len = cross.norm();
    if (!(len >= tol.chart)) {
        throw Error(ErrorKind::DegenerateChart, "|P_s x P_t| vanishes at the chart point");
    }

    SurfaceGeometry g;
    g.normal = cross / len;
    g.E = j.ps.dot(j.ps);
    g.F = j.ps.dot(j.pt);
    g.G = j.pt.dot(j.pt);
    g.e = j.pss.dot(g.normal);
    g.f = j.pst.dot(g.normal);
    g.g = j.ptt.dot(g.normal);
    g.gauss = (g.e * g.g - g.f * g.f) / (g.E * g.G - g.F * g.F);
    return g;
}

CurveGeometry curve_geometry(const Surface& surface, const BoundaryCurve& curve, double tau,
                             const Tolerances& tol)
{
    const CurveJet c = curve.jet(tau, surface.rect());
    const ParamPoint p{c.c.x(), c.c.y()};
    const SurfaceJet j = surface.jet(p);

    const double ds = c.dc.x(), dt = c.dc.y();
    const Vec3 vel = j.ps * ds + j.pt * dt;
    const Vec3 acc = j.pss * (ds * ds) + j.pst * (2.0 * ds * dt) + j.ptt * (dt * dt)
                     + j.ps * c.ddc.x() + j.pt * c.ddc.y();

    const double speed = vel.norm();
    if (!(speed >= tol.curve_speed)) {
        throw Error(ErrorKind::SingularCurvePoint, "boundary curve velocity vanishes");
    }

    const Vec3 cross = j.ps.cross(j.pt);
    const double len = cross.norm();
    if (!(len >= tol.chart)) {
        throw Error(ErrorKind::DegenerateChart, "|P_s x P_t| vanishes on the boundary curve");
    }

    CurveGeometry g;
    g.param = p;
    g.position = j.p;
    g.speed = speed;
    g.tangent = vel / speed;
    g.normal = cross / len;
    g.inward = g.normal.cross(g.tangent);
    // arc-length acceleration: drop the tangential part, rescale by speed^2
    g.accel = (acc - g.tangent * acc.dot(g.tangent)) / (speed * speed);
    g.geodesic = g.accel.dot(g.inward);
    g.normal_curvature = g.accel.dot(g.normal);
    return g;
}

double section_curve_curvature(const SurfaceGeometry& surf, const CurveGeometry& curve,
                               const Direction& u, const Tolerances& tol)
{
    const double un = u.dot(curve.inward);
    if (std::abs(un) < tol.transverse) {
        throw Error(ErrorKind::NonTransverseSection, "<u, n> vanishes at the tangency");
    }
    return -curve.normal_curvature * u.dot(surf.normal) / un;
}

Vec3 tangential_projection(const SurfaceGeometry& surf, const Direction& u, const Tolerances& tol)
{
    const Vec3 v = u.vec() - surf.normal * u.dot(surf.normal);
    const double len = v.norm();
    if (len < tol.projection) {
        throw Error(ErrorKind::ProjectionUndefined, "u is parallel to the surface normal");
    }
    return v / len;
}

Eigen::Vector2d pullback(const SurfaceJet& jet, const Vec3& v)
{
    Eigen::Matrix2d first;
    first << jet.ps.dot(jet.ps), jet.ps.dot(jet.pt), jet.ps.dot(jet.pt), jet.pt.dot(jet.pt);
    return first.inverse() * Eigen::Vector2d(v.dot(jet.ps), v.dot(jet.pt));
}

} // namespace sweepchi
