#include "sweepchi/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/tools/minima.hpp>

#include "sweepchi/errors.hpp"
#include "sweepchi/geometry.hpp"
#include "sweepchi/roots.hpp"

namespace sweepchi {

namespace {

constexpr int kChunk = 64;
constexpr int kProbes = 64;
constexpr double kProbeStep = 1e-4;
constexpr double kSeedClearance = 1e-4;
constexpr double kMinSpeed = 1e-8;

double tau_at(int i)
{
    return 2.0 * std::numbers::pi * i / Domain::kSamples;
}

double cross2(const Eigen::Vector2d& a, const Eigen::Vector2d& b)
{
    return a.x() * b.y() - a.y() * b.x();
}

Eigen::Vector2d vec(ParamPoint p)
{
    return {p.s, p.t};
}

bool boxes_overlap(const Eigen::Vector2d& alo, const Eigen::Vector2d& ahi, const Eigen::Vector2d& blo,
                   const Eigen::Vector2d& bhi)
{
    return alo.x() <= bhi.x() && blo.x() <= ahi.x() && alo.y() <= bhi.y() && blo.y() <= ahi.y();
}

bool segments_cross(const Eigen::Vector2d& p1, const Eigen::Vector2d& p2, const Eigen::Vector2d& q1,
                    const Eigen::Vector2d& q2)
{
    const double d1 = cross2(q2 - q1, p1 - q1);
    const double d2 = cross2(q2 - q1, p2 - q1);
    const double d3 = cross2(p2 - p1, q1 - p1);
    const double d4 = cross2(p2 - p1, q2 - p1);
    return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

double point_segment_distance(const Eigen::Vector2d& p, const Eigen::Vector2d& a, const Eigen::Vector2d& b)
{
    const Eigen::Vector2d d = b - a;
    const double len2 = d.squaredNorm();
    const double mu = len2 > 0.0 ? std::clamp((p - a).dot(d) / len2, 0.0, 1.0) : 0.0;
    return (a + mu * d - p).norm();
}

// Distance between two closed segments (zero when they cross).
double segment_distance(const Eigen::Vector2d& p1, const Eigen::Vector2d& p2, const Eigen::Vector2d& q1,
                        const Eigen::Vector2d& q2)
{
    if (segments_cross(p1, p2, q1, q2)) return 0.0;
    return std::min({point_segment_distance(p1, q1, q2), point_segment_distance(p2, q1, q2),
                     point_segment_distance(q1, p1, p2), point_segment_distance(q2, p1, p2)});
}

[[noreturn]] void invalid(const std::string& what)
{
    throw Error(ErrorKind::ValidationError, what);
}

// Parameter-space step along the inward normal n at curve point tau.
Eigen::Vector2d inward_param_direction(const Domain& domain, std::size_t curve, double tau)
{
    const auto& surface = domain.surface();
    const CurveGeometry g = curve_geometry(surface, domain.boundaries()[curve], tau);
    Eigen::Vector2d d = pullback(surface.jet(g.param), g.inward);
    return d.normalized();
}

enum class Probe { Inward, Outward, Inconclusive };

Probe probe(const Domain& domain, std::size_t curve, double tau)
{
    const CurveJet c = domain.curve_jet(curve, tau);
    const Eigen::Vector2d d = inward_param_direction(domain, curve, tau) * kProbeStep;
    try {
        const bool plus = domain.contains(ParamPoint{c.c.x() + d.x(), c.c.y() + d.y()});
        const bool minus = domain.contains(ParamPoint{c.c.x() - d.x(), c.c.y() - d.y()});
        if (plus && !minus) return Probe::Inward;
        if (!plus && minus) return Probe::Outward;
    } catch (const Error&) {
    }
    return Probe::Inconclusive;
}

} // namespace

std::vector<Eigen::Vector2d> lattice_shifts(const ParamRect& rect, const Eigen::Vector2d& lo,
                                            const Eigen::Vector2d& hi, const Eigen::Vector2d& qlo,
                                            const Eigen::Vector2d& qhi)
{
    auto range = [](bool wrap, double period, double lo, double hi, double qlo, double qhi) {
        if (!wrap) return std::pair<long, long>{0, 0};
        return std::pair<long, long>{static_cast<long>(std::ceil((qlo - hi) / period)),
                                     static_cast<long>(std::floor((qhi - lo) / period))};
    };
    const auto [s_lo, s_hi] = range(rect.wrap_s, rect.period_s(), lo.x(), hi.x(), qlo.x(), qhi.x());
    const auto [t_lo, t_hi] = range(rect.wrap_t, rect.period_t(), lo.y(), hi.y(), qlo.y(), qhi.y());

    std::vector<Eigen::Vector2d> shifts;
    for (long ks = s_lo; ks <= s_hi; ++ks) {
        for (long kt = t_lo; kt <= t_hi; ++kt) {
            shifts.emplace_back(static_cast<double>(ks) * rect.period_s(), static_cast<double>(kt) * rect.period_t());
        }
    }
    return shifts;
}

Domain::Domain(SurfacePtr surface, std::vector<BoundaryCurve> boundaries, ParamPoint seed,
               std::optional<int> reference_chi)
    : surface_(std::move(surface)), boundaries_(std::move(boundaries)), seed_(seed), reference_chi_(reference_chi)
{
    if (!surface_) throw Error(ErrorKind::InvalidArgument, "domain needs a surface");
    const double h = 2.0 * std::numbers::pi / kSamples;

    sampled_.reserve(boundaries_.size());
    for (const auto& curve : boundaries_) {
        Sampled sc;
        sc.pts.reserve(kSamples + 1);
        double max_acc = 0.0;
        for (int i = 0; i < kSamples; ++i) {
            const CurveJet j = curve.jet(tau_at(i), rect());
            sc.pts.push_back(j.c);
            max_acc = std::max(max_acc, j.ddc.norm());
        }
        // Close the lift exactly; jet(2pi) differs from jet(0) by rounding and
        // a crossing at the seam could otherwise be lost.
        sc.pts.push_back(sc.pts.front() + curve.orientation * Eigen::Vector2d(curve.winding_s * rect().period_s(),
                                                                             curve.winding_t * rect().period_t()));
        sc.pad = max_acc * h * h + 1e-9;
        sc.lo = sc.hi = sc.pts.front();
        for (int first = 0; first < kSamples; first += kChunk) {
            Chunk ch;
            ch.first = first;
            ch.last = std::min(first + kChunk, kSamples);
            ch.lo = ch.hi = sc.pts[static_cast<std::size_t>(first)];
            for (int i = first; i <= ch.last; ++i) {
                ch.lo = ch.lo.cwiseMin(sc.pts[static_cast<std::size_t>(i)]);
                ch.hi = ch.hi.cwiseMax(sc.pts[static_cast<std::size_t>(i)]);
            }
            sc.lo = sc.lo.cwiseMin(ch.lo);
            sc.hi = sc.hi.cwiseMax(ch.hi);
            sc.chunks.push_back(ch);
        }
        sampled_.push_back(std::move(sc));
    }
}

int Domain::segment_crossings(std::size_t curve, Eigen::Vector2d a, Eigen::Vector2d b,
                              const Tolerances& tol) const
{
    const Sampled& sc = sampled_[curve];
    const Eigen::Vector2d d = b - a;
    const double dd = d.squaredNorm();
    if (dd == 0.0) return 0;

    const Eigen::Vector2d pad = Eigen::Vector2d::Constant(sc.pad);
    const Eigen::Vector2d qlo = a.cwiseMin(b);
    const Eigen::Vector2d qhi = a.cwiseMax(b);

    int count = 0;
    for (const Eigen::Vector2d& shift : lattice_shifts(rect(), sc.lo - pad, sc.hi + pad, qlo, qhi)) {
        const Eigen::Vector2d origin = a - shift;  // work in the curve's own lift
        auto side = [&](const Eigen::Vector2d& p) { return cross2(d, p - origin); };

        for (const Chunk& ch : sc.chunks) {
            const Eigen::Vector2d lo = ch.lo + shift - pad;
            const Eigen::Vector2d hi = ch.hi + shift + pad;
            if (!boxes_overlap(lo, hi, qlo, qhi)) continue;
            const double c0 = cross2(d, Eigen::Vector2d(lo.x(), lo.y()) - a);
            const double c1 = cross2(d, Eigen::Vector2d(hi.x(), lo.y()) - a);
            const double c2 = cross2(d, Eigen::Vector2d(lo.x(), hi.y()) - a);
            const double c3 = cross2(d, Eigen::Vector2d(hi.x(), hi.y()) - a);
            if ((c0 > 0 && c1 > 0 && c2 > 0 && c3 > 0) || (c0 < 0 && c1 < 0 && c2 < 0 && c3 < 0)) continue;

            double g0 = side(sc.pts[static_cast<std::size_t>(ch.first)]);
            for (int i = ch.first; i < ch.last; ++i) {
                const double g1 = side(sc.pts[static_cast<std::size_t>(i + 1)]);
                if ((g0 > 0.0) != (g1 > 0.0)) {
                    const auto f = [&](double tau) {
                        return side(boundaries_[curve].jet(tau, rect()).c);
                    };
                    const double tau = refine_root(f, tau_at(i), tau_at(i + 1), g0, g1);
                    const Eigen::Vector2d y = boundaries_[curve].jet(tau, rect()).c + shift;
                    if ((y - b).norm() < tol.on_boundary || (y - a).norm() < tol.on_boundary) {
                        throw Error(ErrorKind::OnBoundary, "point lies on the domain boundary");
                    }
                    const double mu = (y - a).dot(d) / dd;
                    if (mu >= 0.0 && mu < 1.0) ++count;
                }
                g0 = g1;
            }
        }
    }
    return count;
}

int Domain::crossings(std::span<const ParamPoint> path, const Tolerances& tol) const
{
    int count = 0;
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
        for (std::size_t c = 0; c < boundaries_.size(); ++c) {
            count += segment_crossings(c, vec(path[k]), vec(path[k + 1]), tol);
        }
    }
    return count;
}

bool Domain::contains(ParamPoint p, const Tolerances& tol) const
{
    if (!rect().contains(p)) return false;
    p = rect().wrap(p);
    if (boundaries_.empty()) return true;
    const ParamPoint path[2] = {seed_, p};
    return crossings(path, tol) % 2 == 0;
}

bool Domain::contains(const Vec3& x, const Tolerances& tol) const
{
    const auto p = surface_->invert(x);
    return p && contains(*p, tol);
}

double Domain::distance_to_boundary(ParamPoint p) const
{
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < boundaries_.size(); ++c) {
        const auto& pts = sampled_[c].pts;
        auto dist2 = [&](const Eigen::Vector2d& q) {
            return rect().delta(ParamPoint{q.x(), q.y()}, p).squaredNorm();
        };
        int arg = 0;
        double d2 = std::numeric_limits<double>::infinity();
        for (int i = 0; i < kSamples; ++i) {
            const double v = dist2(pts[static_cast<std::size_t>(i)]);
            if (v < d2) {
                d2 = v;
                arg = i;
            }
        }
        const auto f = [&](double tau) { return dist2(boundaries_[c].jet(tau, rect()).c); };
        const auto [tau, v] =
            boost::math::tools::brent_find_minima(f, tau_at(arg - 1), tau_at(arg + 1), 50);
        best = std::min(best, std::sqrt(std::min(v, d2)));
        (void)tau;
    }
    return best;
}

Domain Domain::with_boundary(BoundaryCurve curve) const
{
    auto curves = boundaries_;
    curves.push_back(std::move(curve));
    return Domain(surface_, std::move(curves), seed_, reference_chi_);
}

Domain Domain::with_seed(ParamPoint seed) const
{
    return Domain(surface_, boundaries_, seed, reference_chi_);
}

void validate_domain(const Domain& domain, const Tolerances& tol)
{
    const ParamRect& rect = domain.rect();
    const Surface& surface = domain.surface();
    const auto& curves = domain.boundaries();

    if (!rect.contains(domain.seed())) invalid("seed point lies outside the chart rectangle");
    try {
        (void)surface_geometry(surface, domain.seed(), tol);
    } catch (const Error&) {
        invalid("chart is degenerate at the seed point");
    }

    for (std::size_t c = 0; c < curves.size(); ++c) {
        const auto& curve = curves[c];
        const std::string label = "boundary curve " + std::to_string(c);
        if (curve.orientation != 1 && curve.orientation != -1) invalid(label + ": orientation must be +1 or -1");
        if ((!rect.wrap_s && curve.winding_s != 0) || (!rect.wrap_t && curve.winding_t != 0)) {
            invalid(label + ": winding around a non-periodic chart direction");
        }
        for (int i = 0; i < Domain::kSamples; ++i) {
            const CurveJet j = curve.jet(tau_at(i), rect);
            const ParamPoint p{j.c.x(), j.c.y()};
            if (!std::isfinite(p.s) || !std::isfinite(p.t)) invalid(label + ": non-finite coefficients");
            if (!rect.contains(p)) invalid(label + ": leaves the chart rectangle");
            if (j.dc.norm() <= kMinSpeed) invalid(label + ": not regular (vanishing velocity)");
            const SurfaceJet sj = domain.surface().jet(p);
            if (sj.ps.cross(sj.pt).norm() < tol.chart) invalid(label + ": crosses a degenerate chart point");
        }
    }

    // simplicity and pairwise disjointness of the sampled polylines
    for (std::size_t a = 0; a < curves.size(); ++a) {
        for (std::size_t b = a; b < curves.size(); ++b) {
            const auto& sa = domain.sampled_[a];
            const auto& sb = domain.sampled_[b];
            for (const Eigen::Vector2d& shift : lattice_shifts(rect, sb.lo, sb.hi, sa.lo, sa.hi)) {
                for (const auto& ca : sa.chunks) {
                    for (const auto& cb : sb.chunks) {
                        if (!boxes_overlap(ca.lo, ca.hi, cb.lo + shift, cb.hi + shift)) continue;
                        for (int i = ca.first; i < ca.last; ++i) {
                            const auto& p1 = sa.pts[static_cast<std::size_t>(i)];
                            const auto& p2 = sa.pts[static_cast<std::size_t>(i + 1)];
                            for (int k = cb.first; k < cb.last; ++k) {
                                const Eigen::Vector2d q1 = sb.pts[static_cast<std::size_t>(k)] + shift;
                                const Eigen::Vector2d q2 = sb.pts[static_cast<std::size_t>(k + 1)] + shift;
                                if (a == b) {
                                    // neighbouring segments of one curve share a vertex
                                    const int gap = std::abs(i - k) % Domain::kSamples;
                                    const int cyclic = std::min(gap, Domain::kSamples - gap);
                                    if (cyclic == 0 && shift.isZero()) continue;
                                    if (cyclic <= 1 && std::min({(p1 - q1).norm(), (p1 - q2).norm(),
                                                                 (p2 - q1).norm(), (p2 - q2).norm()}) < 1e-12) {
                                        continue;
                                    }
                                }
                                if (segment_distance(p1, p2, q1, q2) <= tol.on_boundary) {
                                    if (a == b) invalid("self-intersection in boundary curve " + std::to_string(a));
                                    invalid("boundary curves " + std::to_string(a) + " and " + std::to_string(b)
                                            + " intersect");
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    if (domain.distance_to_boundary(domain.seed()) <= kSeedClearance) {
        invalid("seed point is not strictly inside (too close to the boundary)");
    }

    for (std::size_t c = 0; c < curves.size(); ++c) {
        for (int k = 0; k < kProbes; ++k) {
            const double tau = 2.0 * std::numbers::pi * k / kProbes;
            if (probe(domain, c, tau) != Probe::Inward) {
                invalid("orientation probe failed on boundary curve " + std::to_string(c));
            }
        }
    }
}

Domain orient_boundaries(const Domain& domain)
{
    auto curves = domain.boundaries();
    for (std::size_t c = 0; c < curves.size(); ++c) {
        if (probe(domain, c, 0.0) == Probe::Outward) curves[c].orientation = -curves[c].orientation;
    }
    return Domain(domain.surface_ptr(), std::move(curves), domain.seed(), domain.reference_chi());
}

} // namespace sweepchi
