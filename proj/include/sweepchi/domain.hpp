#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "sweepchi/curve.hpp"
#include "sweepchi/surface.hpp"
#include "sweepchi/tolerances.hpp"

namespace sweepchi {

/// A compact domain D on a surface, bounded by closed chart curves. Membership
/// is crossing parity relative to a seed point declared to be inside D.
/// Immutable after construction.
class Domain {
public:
    /// Samples per boundary curve used for membership and validation.
    static constexpr int kSamples = 4096;

    Domain(SurfacePtr surface, std::vector<BoundaryCurve> boundaries, ParamPoint seed,
           std::optional<int> reference_chi = std::nullopt);

    [[nodiscard]] const Surface& surface() const noexcept { return *surface_; }
    [[nodiscard]] const SurfacePtr& surface_ptr() const noexcept { return surface_; }
    [[nodiscard]] const ParamRect& rect() const noexcept { return surface_->rect(); }
    [[nodiscard]] const std::vector<BoundaryCurve>& boundaries() const noexcept { return boundaries_; }
    [[nodiscard]] ParamPoint seed() const noexcept { return seed_; }
    [[nodiscard]] std::optional<int> reference_chi() const noexcept { return reference_chi_; }

    [[nodiscard]] CurveJet curve_jet(std::size_t curve, double tau) const noexcept
    {
        return boundaries_[curve].jet(tau, rect());
    }

    /// True iff p lies in the closed region D. Throws OnBoundary when p is
    /// within tol.on_boundary of a boundary curve.
    [[nodiscard]] bool contains(ParamPoint p, const Tolerances& tol = {}) const;
    /// Membership of a point of R^3, through the chart inverse. Points the
    /// chart does not cover are outside D.
    [[nodiscard]] bool contains(const Vec3& x, const Tolerances& tol = {}) const;

    /// Number of boundary crossings along a polyline given in lifted chart
    /// coordinates (vertices may leave the fundamental rectangle in periodic
    /// directions).
    [[nodiscard]] int crossings(std::span<const ParamPoint> path, const Tolerances& tol = {}) const;

    /// Parameter distance from p to the nearest boundary point (periodic
    /// images included). Infinite when there is no boundary.
    [[nodiscard]] double distance_to_boundary(ParamPoint p) const;

    /// Sampled lifted polyline of one curve: kSamples + 1 points, the last
    /// being the first advanced by the winding translation.
    [[nodiscard]] std::span<const Eigen::Vector2d> samples(std::size_t curve) const
    {
        return sampled_[curve].pts;
    }

    /// Copy of this domain with one more boundary curve (e.g. a hole).
    [[nodiscard]] Domain with_boundary(BoundaryCurve curve) const;
    /// Copy with a different seed point.
    [[nodiscard]] Domain with_seed(ParamPoint seed) const;

private:
    struct Chunk {
        int first = 0;  // sample index; the chunk spans samples [first, last]
        int last = 0;
        Eigen::Vector2d lo, hi;
    };
    struct Sampled {
        std::vector<Eigen::Vector2d> pts;
        std::vector<Chunk> chunks;
        Eigen::Vector2d lo, hi;
        double pad = 0.0;  // bound on the chord-to-arc gap
    };

    int segment_crossings(std::size_t curve, Eigen::Vector2d a, Eigen::Vector2d b,
                          const Tolerances& tol) const;

    SurfacePtr surface_;
    std::vector<BoundaryCurve> boundaries_;
    ParamPoint seed_;
    std::optional<int> reference_chi_;
    std::vector<Sampled> sampled_;

    friend void validate_domain(const Domain&, const Tolerances&);
};

/// Integer lattice translations (k_s, k_t) under which a box [lo, hi] of a
/// lifted curve can meet the box [qlo, qhi].
[[nodiscard]] std::vector<Eigen::Vector2d> lattice_shifts(const ParamRect& rect, const Eigen::Vector2d& lo,
                                                          const Eigen::Vector2d& hi, const Eigen::Vector2d& qlo,
                                                          const Eigen::Vector2d& qhi);

/// Checks every domain invariant, throwing ValidationError naming the first
/// violation: curves inside the chart, regular, simple and pairwise disjoint;
/// seed strictly inside; inward orientation by probing +-1e-4 along n.
void validate_domain(const Domain& domain, const Tolerances& tol = {});

/// Flips the orientation flag of every curve whose inward normal points out
/// of D (as judged from the seed). Used to author catalog scenes.
[[nodiscard]] Domain orient_boundaries(const Domain& domain);

struct Scene {
    std::string name;
    std::string description;
    Domain domain;
};

} // namespace sweepchi
