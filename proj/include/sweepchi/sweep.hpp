#pragma once

#include <cstddef>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "sweepchi/domain.hpp"
#include "sweepchi/surface.hpp"
#include "sweepchi/tolerances.hpp"

namespace sweepchi {

using Rng = std::mt19937_64;

/// h(s,t) = <P(s,t), u> with chart gradient and Hessian by composition.
class HeightField {
public:
    explicit HeightField(Direction u) : u_(u) {}

    [[nodiscard]] const Direction& direction() const noexcept { return u_; }
    [[nodiscard]] double value(const SurfaceJet& j) const noexcept { return u_.dot(j.p); }
    [[nodiscard]] Eigen::Vector2d gradient(const SurfaceJet& j) const noexcept
    {
        return {u_.dot(j.ps), u_.dot(j.pt)};
    }
    [[nodiscard]] Eigen::Matrix2d hessian(const SurfaceJet& j) const noexcept
    {
        Eigen::Matrix2d h;
        h << u_.dot(j.pss), u_.dot(j.pst), u_.dot(j.pst), u_.dot(j.ptt);
        return h;
    }

private:
    Direction u_;
};

enum class TangencyKind { Interior, Boundary };
enum class BoundaryType { Island, Bridge };

/// One contact of the sweeping plane <x,u> = level with D (Interior) or with
/// the boundary (Boundary).
struct TangencyEvent {
    TangencyKind kind = TangencyKind::Interior;
    ParamPoint location;
    Vec3 position = Vec3::Zero();
    double level = 0.0;

    // Interior: Gauss curvature, Morse index (+1 extreme, -1 saddle) and the
    // sign of det Hess h in the chart, which must agree with sign K.
    double gauss = 0.0;
    int index = 0;
    int hessian_sign = 0;

    // Boundary
    std::size_t curve = 0;
    double tau = 0.0;
    double geodesic = 0.0;          // k_g
    double normal_curvature = 0.0;  // k_n
    double section = 0.0;           // k_g^u
    double height_accel = 0.0;      // <u, alpha''> at arc length
    double u_dot_n = 0.0;
    BoundaryType type = BoundaryType::Island;

    /// Contribution sign: Morse index for interior events, +1 island / -1
    /// bridge for boundary events.
    [[nodiscard]] int sign() const noexcept;
    /// Interior: sign det Hess h == sign K. Boundary:
    /// sign(k_g - k_g^u) == sign<u,alpha''> * sign<u,n>.
    [[nodiscard]] bool coherent() const noexcept;
    /// K for interior events, k_g - k_g^u for boundary events.
    [[nodiscard]] double quantity() const noexcept;
};

struct GenericityReport {
    Direction requested{0.0, 0.0, 1.0};
    Direction accepted{0.0, 0.0, 1.0};
    int retries = 0;
    std::vector<std::string> rejections;
};

[[nodiscard]] std::vector<TangencyEvent> interior_tangencies(const Domain& domain, const Direction& u,
                                                             const SweepOptions& opts = {});

[[nodiscard]] std::vector<TangencyEvent> boundary_tangencies(const Domain& domain, const Direction& u,
                                                             const SweepOptions& opts = {});

/// Interior followed by boundary events for a fixed u; throws on any
/// degeneracy.
[[nodiscard]] std::vector<TangencyEvent> tangencies(const Domain& domain, const Direction& u,
                                                    const SweepOptions& opts = {});

/// Returns u if it is generic for the domain, otherwise the first random
/// perturbation (angle base_angle * 2^(k-1) on retry k >= 1) that is.
[[nodiscard]] std::pair<Direction, GenericityReport> ensure_generic(const Domain& domain, const Direction& u,
                                                                    Rng& rng, const SweepOptions& opts = {});

struct SweepResult {
    int chi = 0;
    std::vector<TangencyEvent> events;
    GenericityReport report;
};

/// chi(D) = sum over interior events of sign K + 1/2 sum over boundary
/// events of sign(k_g - k_g^u), for u or its accepted perturbation.
[[nodiscard]] SweepResult euler_characteristic(const Domain& domain, const Direction& u, Rng& rng,
                                               const SweepOptions& opts = {});

/// sum interior + 1/2 sum boundary; throws NonIntegralResult if the boundary
/// half-sum is not an integer.
[[nodiscard]] int morse_count(std::span<const int> interior, std::span<const int> boundary);
[[nodiscard]] int morse_count(std::span<const TangencyEvent> events);

[[nodiscard]] Direction random_direction(Rng& rng);
/// Rotates u by `angle` about a uniformly random axis orthogonal to u.
[[nodiscard]] Direction perturb(const Direction& u, double angle, Rng& rng);

} // namespace sweepchi
