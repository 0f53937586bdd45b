#include "sweepchi/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "sweepchi/errors.hpp"
#include "sweepchi/geometry.hpp"
#include "sweepchi/roots.hpp"

namespace sweepchi {

namespace {

constexpr int kNewtonIterations = 64;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

int sign_of(double x) noexcept
{
    return (x > 0.0) - (x < 0.0);
}

std::string scientific(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

// Newton on grad h = 0 in the chart. Falls back to a Levenberg-Marquardt
// step where the Hessian is singular, so degenerate critical sets are still
// reached (and then rejected by the curvature test).
std::optional<ParamPoint> newton_critical_point(const Surface& surface, const HeightField& h, ParamPoint x,
                                                double max_step)
{
    const ParamRect& rect = surface.rect();
    for (int it = 0; it < kNewtonIterations; ++it) {
        const SurfaceJet j = surface.jet(x);
        const Eigen::Vector2d grad = h.gradient(j);
        const Eigen::Matrix2d hess = h.hessian(j);
        const double hn = hess.squaredNorm();

        Eigen::Vector2d step;
        if (std::abs(hess.determinant()) > 1e-10 * hn) {
            step = -hess.inverse() * grad;
        } else {
            const Eigen::Matrix2d normal =
                hess.transpose() * hess + Eigen::Matrix2d::Identity() * (1e-12 * hn + 1e-300);
            step = -normal.ldlt().solve(hess.transpose() * grad);
        }
        if (!step.allFinite()) return std::nullopt;
        const double len = step.norm();
        if (len > max_step) step *= max_step / len;

        x.s += step.x();
        x.t += step.y();
        if (!rect.contains(x)) return std::nullopt;
        if (step.norm() <= 1e-15 * (1.0 + std::abs(x.s) + std::abs(x.t))) break;
    }
    const SurfaceJet j = surface.jet(x);
    const double scale = j.ps.norm() + j.pt.norm();
    if (!(h.gradient(j).norm() <= 1e-10 * scale)) return std::nullopt;
    return rect.wrap(x);
}

struct Cluster {
    ParamPoint first;
    Eigen::Vector2d offset_sum = Eigen::Vector2d::Zero();
    int count = 0;
};

} // namespace

int TangencyEvent::sign() const noexcept
{
    if (kind == TangencyKind::Interior) return index;
    return type == BoundaryType::Island ? 1 : -1;
}

bool TangencyEvent::coherent() const noexcept
{
    if (kind == TangencyKind::Interior) return hessian_sign == sign_of(gauss) && hessian_sign != 0;
    return sign_of(geodesic - section) == sign_of(height_accel) * sign_of(u_dot_n);
}

double TangencyEvent::quantity() const noexcept
{
    return kind == TangencyKind::Interior ? gauss : geodesic - section;
}

std::vector<TangencyEvent> interior_tangencies(const Domain& domain, const Direction& u, const SweepOptions& opts)
{
    const Surface& surface = domain.surface();
    const ParamRect& rect = domain.rect();
    const HeightField h(u);
    const int n = opts.grid;
    if (n < kMinGrid) throw Error(ErrorKind::InvalidArgument, "grid resolution below minimum");

    const double hs = rect.period_s() / n;
    const double ht = rect.period_t() / n;

    // gradient of h on the (n+1)^2 vertex lattice
    const std::size_t stride = static_cast<std::size_t>(n) + 1;
    std::vector<Eigen::Vector2d> grad(stride * stride);
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) {
            grad[static_cast<std::size_t>(i) * stride + static_cast<std::size_t>(j)] =
                h.gradient(surface.jet({rect.s0 + i * hs, rect.t0 + j * ht}));
        }
    }
    auto vertex = [&](int i, bool wrap) {
        if (wrap) return ((i % n) + n) % n;
        return std::clamp(i, 0, n);
    };

    // A cell is a seed when both gradient components can vanish on the 4x4
    // vertex block around it.
    std::vector<ParamPoint> roots;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            Eigen::Vector2d lo = Eigen::Vector2d::Constant(std::numeric_limits<double>::infinity());
            Eigen::Vector2d hi = -lo;
            for (int di = -1; di <= 2; ++di) {
                for (int dj = -1; dj <= 2; ++dj) {
                    const auto vi = static_cast<std::size_t>(vertex(i + di, rect.wrap_s));
                    const auto vj = static_cast<std::size_t>(vertex(j + dj, rect.wrap_t));
                    const Eigen::Vector2d& g = grad[vi * stride + vj];
                    lo = lo.cwiseMin(g);
                    hi = hi.cwiseMax(g);
                }
            }
            if (lo.x() > 0.0 || hi.x() < 0.0 || lo.y() > 0.0 || hi.y() < 0.0) continue;
            const ParamPoint seed{rect.s0 + (i + 0.5) * hs, rect.t0 + (j + 0.5) * ht};
            if (auto root = newton_critical_point(surface, h, seed, 4.0 * std::max(hs, ht))) {
                roots.push_back(*root);
            }
        }
    }

    std::vector<ParamPoint> in_domain;
    for (const ParamPoint& r : roots) {
        bool inside = false;
        try {
            inside = domain.contains(r, opts.tol);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::OnBoundary) throw;
            throw Error(ErrorKind::InteriorCriticalOnBoundary, "critical point of h_u on the boundary");
        }
        if (inside) in_domain.push_back(r);
    }

    std::vector<Cluster> clusters;
    for (const ParamPoint& r : in_domain) {
        auto it = std::find_if(clusters.begin(), clusters.end(),
                               [&](const Cluster& c) { return rect.distance(c.first, r) <= opts.tol.dedup; });
        if (it == clusters.end()) {
            clusters.push_back({r, Eigen::Vector2d::Zero(), 1});
        } else {
            it->offset_sum += rect.delta(it->first, r);
            ++it->count;
        }
    }

    std::vector<TangencyEvent> events;
    for (const Cluster& c : clusters) {
        ParamPoint centroid{c.first.s + c.offset_sum.x() / c.count, c.first.t + c.offset_sum.y() / c.count};
        centroid = rect.wrap(centroid);
        if (auto polished = newton_critical_point(surface, h, centroid, 4.0 * std::max(hs, ht))) {
            centroid = *polished;
        }

        const SurfaceJet j = surface.jet(centroid);
        const SurfaceGeometry g = surface_geometry(surface, centroid, opts.tol);
        if (std::abs(g.gauss) < opts.tol.gauss) {
            throw Error(ErrorKind::DegenerateTangency,
                        "critical point with |K| = " + scientific(std::abs(g.gauss)) + " below tolerance");
        }

        TangencyEvent ev;
        ev.kind = TangencyKind::Interior;
        ev.location = centroid;
        ev.position = j.p;
        ev.level = h.value(j);
        ev.gauss = g.gauss;
        ev.index = g.gauss > 0.0 ? 1 : -1;
        ev.hessian_sign = sign_of(h.hessian(j).determinant());
        events.push_back(ev);
    }

    std::sort(events.begin(), events.end(), [](const TangencyEvent& a, const TangencyEvent& b) {
        return std::pair(a.location.s, a.location.t) < std::pair(b.location.s, b.location.t);
    });
    return events;
}

std::vector<TangencyEvent> boundary_tangencies(const Domain& domain, const Direction& u, const SweepOptions& opts)
{
    const Surface& surface = domain.surface();
    const ParamRect& rect = domain.rect();
    const int m = opts.samples;
    if (m < kMinSamples) throw Error(ErrorKind::InvalidArgument, "boundary sample count below minimum");

    std::vector<TangencyEvent> events;
    for (std::size_t c = 0; c < domain.boundaries().size(); ++c) {
        const BoundaryCurve& curve = domain.boundaries()[c];

        // phi'(tau) = <d alpha / d tau, u>
        const auto dphi = [&](double tau) {
            const CurveJet cj = curve.jet(tau, rect);
            const SurfaceJet sj = surface.jet({cj.c.x(), cj.c.y()});
            return u.dot(sj.ps * cj.dc.x() + sj.pt * cj.dc.y());
        };

        std::vector<double> values(static_cast<std::size_t>(m));
        double max_abs = 0.0, max_speed = 0.0;
        for (int i = 0; i < m; ++i) {
            const double tau = kTwoPi * i / m;
            const CurveJet cj = curve.jet(tau, rect);
            const SurfaceJet sj = surface.jet({cj.c.x(), cj.c.y()});
            const Vec3 vel = sj.ps * cj.dc.x() + sj.pt * cj.dc.y();
            values[static_cast<std::size_t>(i)] = u.dot(vel);
            max_abs = std::max(max_abs, std::abs(values[static_cast<std::size_t>(i)]));
            max_speed = std::max(max_speed, vel.norm());
        }
        if (max_abs <= opts.tol.geodesic * max_speed) {
            throw Error(ErrorKind::DegenerateBoundaryTangency,
                        "height is constant along boundary curve " + std::to_string(c));
        }

        for (double tau : periodic_roots(dphi, values)) {
            tau = std::fmod(tau, kTwoPi);
            if (tau < 0.0) tau += kTwoPi;

            const CurveGeometry cg = curve_geometry(surface, curve, tau, opts.tol);
            const SurfaceGeometry sg = surface_geometry(surface, cg.param, opts.tol);
            if (std::abs(u.dot(sg.normal)) > 1.0 - opts.tol.normal) {
                throw Error(ErrorKind::InteriorCriticalOnBoundary,
                            "u is normal to the surface at a boundary point of curve " + std::to_string(c));
            }
            const double section = section_curve_curvature(sg, cg, u, opts.tol);
            const double diff = cg.geodesic - section;
            if (std::abs(diff) < opts.tol.geodesic) {
                throw Error(ErrorKind::DegenerateBoundaryTangency,
                            "k_g - k_g^u = " + scientific(diff) + " on boundary curve " + std::to_string(c));
            }

            TangencyEvent ev;
            ev.kind = TangencyKind::Boundary;
            ev.location = rect.wrap(cg.param);
            ev.position = cg.position;
            ev.level = u.dot(cg.position);
            ev.curve = c;
            ev.tau = tau;
            ev.geodesic = cg.geodesic;
            ev.normal_curvature = cg.normal_curvature;
            ev.section = section;
            ev.height_accel = u.dot(cg.accel);
            ev.u_dot_n = u.dot(cg.inward);
            ev.type = diff > 0.0 ? BoundaryType::Island : BoundaryType::Bridge;
            events.push_back(ev);
        }
    }
    std::sort(events.begin(), events.end(), [](const TangencyEvent& a, const TangencyEvent& b) {
        return std::pair(a.curve, a.tau) < std::pair(b.curve, b.tau);
    });
    return events;
}

std::vector<TangencyEvent> tangencies(const Domain& domain, const Direction& u, const SweepOptions& opts)
{
    auto events = interior_tangencies(domain, u, opts);
    auto boundary = boundary_tangencies(domain, u, opts);
    events.insert(events.end(), boundary.begin(), boundary.end());
    return events;
}

namespace {

struct Attempt {
    Direction accepted;
    GenericityReport report;
    std::vector<TangencyEvent> events;
};

Attempt generic_sweep(const Domain& domain, const Direction& u, Rng& rng, const SweepOptions& opts)
{
    GenericityReport report;
    report.requested = u;
    for (int k = 0; k <= opts.max_retries; ++k) {
        const Direction candidate = k == 0 ? u : perturb(u, opts.base_angle * std::ldexp(1.0, k - 1), rng);
        try {
            auto events = tangencies(domain, candidate, opts);
            report.accepted = candidate;
            report.retries = k;
            return {candidate, std::move(report), std::move(events)};
        } catch (const Error& e) {
            if (!is_genericity_failure(e.kind())) throw;
            report.rejections.push_back("attempt " + std::to_string(k) + ": " + e.what());
        }
    }
    std::string all;
    for (const auto& r : report.rejections) all += "\n  " + r;
    throw Error(ErrorKind::GenericityExhausted,
                "no generic direction after " + std::to_string(opts.max_retries) + " retries" + all);
}

} // namespace

std::pair<Direction, GenericityReport> ensure_generic(const Domain& domain, const Direction& u, Rng& rng,
                                                      const SweepOptions& opts)
{
    Attempt a = generic_sweep(domain, u, rng, opts);
    return {a.accepted, std::move(a.report)};
}

SweepResult euler_characteristic(const Domain& domain, const Direction& u, Rng& rng, const SweepOptions& opts)
{
    Attempt a = generic_sweep(domain, u, rng, opts);
    SweepResult result;
    result.chi = morse_count(a.events);
    result.events = std::move(a.events);
    result.report = std::move(a.report);
    return result;
}

int morse_count(std::span<const int> interior, std::span<const int> boundary)
{
    long twice = 0;
    for (int i : interior) twice += 2L * i;
    for (int b : boundary) twice += b;
    if (twice % 2 != 0) {
        throw Error(ErrorKind::NonIntegralResult,
                    "boundary index sum is odd (" + std::to_string(twice) + "/2); a tangency was missed");
    }
    return static_cast<int>(twice / 2);
}

int morse_count(std::span<const TangencyEvent> events)
{
    std::vector<int> interior, boundary;
    for (const auto& e : events) {
        (e.kind == TangencyKind::Interior ? interior : boundary).push_back(e.sign());
    }
    return morse_count(interior, boundary);
}

Direction random_direction(Rng& rng)
{
    std::normal_distribution<double> normal(0.0, 1.0);
    for (;;) {
        const Vec3 v(normal(rng), normal(rng), normal(rng));
        if (v.norm() > 1e-6) return Direction(v);
    }
}

Direction perturb(const Direction& u, double angle, Rng& rng)
{
    std::normal_distribution<double> normal(0.0, 1.0);
    Vec3 axis;
    do {
        const Vec3 g(normal(rng), normal(rng), normal(rng));
        axis = g - u.vec() * u.dot(g);
    } while (axis.norm() < 1e-6);
    axis.normalize();
    return Direction(u.vec() * std::cos(angle) + axis * std::sin(angle));
}

} // namespace sweepchi
