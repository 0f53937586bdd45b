#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "sweepchi/domain.hpp"
#include "sweepchi/sweep.hpp"
#include "sweepchi/tolerances.hpp"

namespace sweepchi {

/// Spherical coordinates on the unit sphere about the axis u: longitude
/// theta measured in the plane orthogonal to u from a fixed frame (e1, e2),
/// polar distance gamma from u in [0, pi].
class SphericalFrame {
public:
    explicit SphericalFrame(const Direction& u);

    struct Coords {
        double longitude = 0.0;
        double polar = 0.0;
        /// Latitude pi/2 - polar, positive towards u.
        [[nodiscard]] double latitude() const noexcept;
    };

    [[nodiscard]] const Direction& axis() const noexcept { return u_; }
    [[nodiscard]] const Vec3& e1() const noexcept { return e1_; }
    [[nodiscard]] const Vec3& e2() const noexcept { return e2_; }

    [[nodiscard]] Coords coords(const Vec3& x) const;
    [[nodiscard]] Vec3 point(const Coords& c) const;

private:
    Direction u_;
    Vec3 e1_, e2_;
};

/// One boundary tangency used by a specialized formula.
struct SpecialTangency {
    std::size_t curve = 0;
    double tau = 0.0;
    Vec3 position = Vec3::Zero();
    /// The curvature whose sign is counted: k for planar curves, k_g + tan
    /// gamma_u for parallels, k_g for meridians.
    double quantity = 0.0;
    int sign = 0;
};

struct SpecialResult {
    int chi = 0;
    int boundary_sum = 0;  // sum of signs over tangencies
    int poles = 0;         // #({u, -u} in D); zero for planar domains
    std::vector<SpecialTangency> tangencies;
};

/// Planar domains: chi = 1/2 sum over points where the inward normal is +-u
/// of sign k, k the signed curvature of the boundary (positive when it bends
/// into D). u is a direction in the chart plane.
[[nodiscard]] SpecialResult chi_planar(const Domain& domain, const Eigen::Vector2d& u, const Tolerances& tol = {});

/// Domains on the unit sphere, swept by the parallels about u:
/// chi = 1/2 sum sign(k_g + tan gamma_u) + #({u, -u} in D), with gamma_u the
/// latitude of the tangency.
[[nodiscard]] SpecialResult chi_sphere_parallels(const Domain& domain, const Direction& u,
                                                 const Tolerances& tol = {});

/// Domains on the unit sphere, swept by the meridians through +-u (zero
/// geodesic curvature): chi = 1/2 sum sign k_g + #({u, -u} in D), summed over
/// the critical points of the longitude along the boundary.
[[nodiscard]] SpecialResult chi_sphere_meridians(const Domain& domain, const Direction& u,
                                                 const Tolerances& tol = {});

struct ExcisionCheck {
    int chi = 0;            // sweep chi of D
    int chi_excised = 0;    // sweep chi of D minus small disks around the poles in D
    int poles = 0;
    int meridian_half_sum = 0;

    /// chi(D) = chi(D~) + #poles and the meridian boundary half-sum equals
    /// chi(D~).
    [[nodiscard]] bool consistent() const noexcept
    {
        return chi == chi_excised + poles && meridian_half_sum == chi_excised;
    }
};

/// Removes a small chart disk around each of +-u lying in D and compares
/// sweep counts of D and the excised domain with the meridian formula.
[[nodiscard]] ExcisionCheck meridian_excision_check(const Domain& domain, const Direction& u, Rng& rng,
                                                    const SweepOptions& opts = {});

} // namespace sweepchi
