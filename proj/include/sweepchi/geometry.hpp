#pragma once

#include "sweepchi/curve.hpp"
#include "sweepchi/surface.hpp"
#include "sweepchi/tolerances.hpp"

namespace sweepchi {

/// Normal, fundamental forms and Gauss curvature at one chart point.
struct SurfaceGeometry {
    Vec3 normal;
    double E = 0, F = 0, G = 0;  // first fundamental form
    double e = 0, f = 0, g = 0;  // second fundamental form
    double gauss = 0;            // K = (eg - f^2) / (EG - F^2)

    [[nodiscard]] double area_element() const noexcept;
};

/// Frame and curvatures of a boundary curve at one point, arc-length
/// normalized. `n = N x T`; `accel` is d^2 alpha / ds^2 = k_n N + k_g n.
struct CurveGeometry {
    ParamPoint param;
    Vec3 position;
    Vec3 tangent;
    Vec3 normal;        // surface normal N at the point
    Vec3 inward;        // n
    Vec3 accel;
    double speed = 0;   // |d alpha / d tau|
    double geodesic = 0;
    double normal_curvature = 0;
};

[[nodiscard]] SurfaceGeometry surface_geometry(const Surface& surface, ParamPoint p,
                                               const Tolerances& tol = {});

[[nodiscard]] CurveGeometry curve_geometry(const Surface& surface, const BoundaryCurve& curve,
                                           double tau, const Tolerances& tol = {});

/// Geodesic curvature k_g^u of the plane section through a boundary tangency
/// point, oriented like the boundary there:
/// k_g^u = -k_n <u,N> / <u,n>.
[[nodiscard]] double section_curve_curvature(const SurfaceGeometry& surf, const CurveGeometry& curve,
                                             const Direction& u, const Tolerances& tol = {});

/// Normalized projection of u onto the tangent plane with normal N.
[[nodiscard]] Vec3 tangential_projection(const SurfaceGeometry& surf, const Direction& u,
                                         const Tolerances& tol = {});

/// Pulls a tangent vector of the surface back to a chart vector (a, b) with
/// a P_s + b P_t = v.
[[nodiscard]] Eigen::Vector2d pullback(const SurfaceJet& jet, const Vec3& v);

} // namespace sweepchi
