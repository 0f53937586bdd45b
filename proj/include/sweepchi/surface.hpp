#pragma once

#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace sweepchi {

using Vec3 = Eigen::Vector3d;

/// A unit vector in R^3 (a point of S^2). Construction normalizes; a zero
/// vector is rejected with InvalidArgument.
class Direction {
public:
    explicit Direction(const Vec3& v);
    Direction(double x, double y, double z) : Direction(Vec3(x, y, z)) {}

    [[nodiscard]] const Vec3& vec() const noexcept { return u_; }
    [[nodiscard]] double dot(const Vec3& v) const noexcept { return u_.dot(v); }
    [[nodiscard]] Direction operator-() const { return Direction(-u_); }

private:
    Vec3 u_;
};

/// Chart coordinates (s, t).
struct ParamPoint {
    double s = 0.0;
    double t = 0.0;

    friend bool operator==(const ParamPoint&, const ParamPoint&) = default;
};

/// The parameter rectangle [s0,s1] x [t0,t1] with optional periodic wrap in
/// either direction (period = side length).
struct ParamRect {
    double s0 = 0.0, s1 = 1.0;
    double t0 = 0.0, t1 = 1.0;
    bool wrap_s = false;
    bool wrap_t = false;

    [[nodiscard]] double period_s() const noexcept { return s1 - s0; }
    [[nodiscard]] double period_t() const noexcept { return t1 - t0; }

    /// Reduces periodic coordinates into [s0, s1) / [t0, t1).
    [[nodiscard]] ParamPoint wrap(ParamPoint p) const noexcept;
    [[nodiscard]] bool contains(ParamPoint p) const noexcept;
    /// Euclidean parameter distance using the shortest periodic image.
    [[nodiscard]] double distance(ParamPoint a, ParamPoint b) const noexcept;
    /// Difference b - a reduced to the shortest periodic image.
    [[nodiscard]] Eigen::Vector2d delta(ParamPoint a, ParamPoint b) const noexcept;
};

/// Position and first/second partials of the parametrization at one point.
struct SurfaceJet {
    Vec3 p, ps, pt, pss, pst, ptt;
};

enum class SurfaceKind { Plane, Sphere, Torus, Ellipsoid, Graph };

std::string_view surface_kind_name(SurfaceKind kind) noexcept;

/// A regular parametrized surface with closed-form partials. Orientation is
/// N = (P_s x P_t) / |P_s x P_t|.
class Surface {
public:
    explicit Surface(ParamRect rect) : rect_(rect) {}
    virtual ~Surface() = default;

    [[nodiscard]] virtual SurfaceKind kind() const noexcept = 0;
    [[nodiscard]] virtual SurfaceJet jet(ParamPoint p) const = 0;
    /// Chart inverse, where the chart has one. Returns nullopt when the point
    /// is off the surface or outside the parameter rectangle.
    [[nodiscard]] virtual std::optional<ParamPoint> invert(const Vec3& x) const;

    [[nodiscard]] const ParamRect& rect() const noexcept { return rect_; }
    [[nodiscard]] Vec3 point(ParamPoint p) const { return jet(p).p; }

private:
    ParamRect rect_;
};

/// z = 0 plane, P(s,t) = (s, t, 0).
class Plane final : public Surface {
public:
    explicit Plane(double half_extent);

    [[nodiscard]] SurfaceKind kind() const noexcept override { return SurfaceKind::Plane; }
    [[nodiscard]] SurfaceJet jet(ParamPoint p) const override;
    [[nodiscard]] std::optional<ParamPoint> invert(const Vec3& x) const override;

    [[nodiscard]] double half_extent() const noexcept { return rect().s1; }
};

/// Which point of the unit sphere the stereographic chart projects from.
enum class ProjectionPole { South, North };

/// Unit sphere in a stereographic chart. Projecting from the south pole,
/// P(a,b) = (2a, 2b, 1 - a^2 - b^2) / (1 + a^2 + b^2); from the north pole
/// the z component changes sign. Circles of the chart are circles of the
/// sphere, and the chart is regular everywhere on its rectangle.
class Sphere final : public Surface {
public:
    explicit Sphere(double half_extent, ProjectionPole pole = ProjectionPole::South);

    [[nodiscard]] SurfaceKind kind() const noexcept override { return SurfaceKind::Sphere; }
    [[nodiscard]] SurfaceJet jet(ParamPoint p) const override;
    [[nodiscard]] std::optional<ParamPoint> invert(const Vec3& x) const override;

    [[nodiscard]] ProjectionPole pole() const noexcept { return pole_; }
    [[nodiscard]] double half_extent() const noexcept { return rect().s1; }

private:
    ProjectionPole pole_;
};

/// Ellipsoid diag(a,b,c) applied to the south-projected stereographic sphere.
class Ellipsoid final : public Surface {
public:
    Ellipsoid(double a, double b, double c, double half_extent);

    [[nodiscard]] SurfaceKind kind() const noexcept override { return SurfaceKind::Ellipsoid; }
    [[nodiscard]] SurfaceJet jet(ParamPoint p) const override;

    [[nodiscard]] const Vec3& axes() const noexcept { return axes_; }
    [[nodiscard]] double half_extent() const noexcept { return rect().s1; }

private:
    Vec3 axes_;
};

/// Torus of revolution about the z axis:
/// P(s,t) = ((R + r cos t) cos s, (R + r cos t) sin s, r sin t), both
/// parameters 2pi-periodic.
class Torus final : public Surface {
public:
    Torus(double major, double minor);

    [[nodiscard]] SurfaceKind kind() const noexcept override { return SurfaceKind::Torus; }
    [[nodiscard]] SurfaceJet jet(ParamPoint p) const override;

    [[nodiscard]] double major() const noexcept { return major_; }
    [[nodiscard]] double minor() const noexcept { return minor_; }

private:
    double major_;
    double minor_;
};

/// One monomial c * s^i * t^j of a graph height polynomial.
struct Monomial {
    int i = 0;
    int j = 0;
    double c = 0.0;
};

/// Graph z = f(s,t) of a bivariate polynomial over a rectangle.
class Graph final : public Surface {
public:
    Graph(std::vector<Monomial> terms, double half_extent);

    [[nodiscard]] SurfaceKind kind() const noexcept override { return SurfaceKind::Graph; }
    [[nodiscard]] SurfaceJet jet(ParamPoint p) const override;
    [[nodiscard]] std::optional<ParamPoint> invert(const Vec3& x) const override;

    [[nodiscard]] const std::vector<Monomial>& terms() const noexcept { return terms_; }
    [[nodiscard]] double half_extent() const noexcept { return rect().s1; }

private:
    std::vector<Monomial> terms_;
};

using SurfacePtr = std::shared_ptr<const Surface>;

} // namespace sweepchi
